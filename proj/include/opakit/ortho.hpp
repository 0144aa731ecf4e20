#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opakit/opa.hpp"

namespace opakit {

// Monic polynomials pairwise orthogonal in <.,.>_f, spanning each P_k.
struct OrthoFamily {
  SpaceSpec space;
  MPoly f;
  std::vector<MPoly> members;
};

inline OrthoFamily weighted_gram_schmidt(const SpaceSpec& s, const MPoly& f, int n) {
  if (f.is_zero()) throw std::invalid_argument("weighted_gram_schmidt: f must be nonzero");
  int d = s.dim();
  OrthoFamily fam{s, f, {}};
  std::vector<ExactScalar> norms2;
  for (int k = 0; k <= n; ++k) {
    MPoly phi = MPoly::chi(k, d);
    for (int j = 0; j < k; ++j) {
      ExactScalar proj = s.weighted_inner(f, phi, fam.members[j]) / norms2[j];
      phi = phi - fam.members[j].scale(proj);
    }
    ExactScalar n2 = s.weighted_inner(f, phi, phi);
    if (n2.is_zero()) throw std::logic_error("weighted_gram_schmidt: degenerate member at index " + std::to_string(k));
    norms2.push_back(n2);
    fam.members.push_back(std::move(phi));
  }
  return fam;
}

// Successive differences p_n^* - p_{n-1}^*; entry 0 is p_0^* itself.
inline std::vector<MPoly> opa_differences(const std::vector<OpaResult>& seq) {
  std::vector<MPoly> out;
  for (std::size_t n = 0; n < seq.size(); ++n)
    out.push_back(n == 0 ? seq[0].approximant : seq[n].approximant - seq[n - 1].approximant);
  return out;
}

struct RecoveryReport {
  bool ok = true;
  int failing_n = -1;
  std::string detail;
};

// Dichotomy behind the difference formula: each difference is either zero with
// <1, f phi_n> = 0, or the nonzero multiple <1, f phi_n> / ||phi_n||_f^2 of the
// monic phi_n.
inline RecoveryReport verify_recovery(const OrthoFamily& fam, const std::vector<MPoly>& diffs) {
  RecoveryReport rep;
  const SpaceSpec& s = fam.space;
  MPoly one = MPoly::constant(s.dim(), ExactScalar(1));
  for (std::size_t n = 1; n < diffs.size() && n < fam.members.size(); ++n) {
    const MPoly& phi = fam.members[n];
    ExactScalar lead = s.inner(one, phi * fam.f);
    if (diffs[n].is_zero()) {
      if (!lead.is_zero()) {
        rep = {false, static_cast<int>(n), "zero difference but <1, f phi_n> != 0"};
        return rep;
      }
      continue;
    }
    ExactScalar scale = lead / s.weighted_inner(fam.f, phi, phi);
    if (scale.is_zero() || diffs[n] != phi.scale(scale)) {
      rep = {false, static_cast<int>(n), "difference is not the predicted multiple of phi_n"};
      return rep;
    }
  }
  return rep;
}

struct DiagonalRow {
  std::int64_t index = 0;
  int axis = 0;   // 0 for z1, 1 for z2
  int gap = 0;    // |deg_z1 - deg_z2| of chi_index
  MPoly r;        // one-variable polynomial with phi = z_axis^gap r(z1 z2)
};

// Structure of orthogonal polynomials for diagonal weights f = sum a_k (z1 z2)^k:
// each phi_N is z_axis^M times a polynomial in z1 z2. Throws if the support
// pattern is violated.
inline std::vector<DiagonalRow> diagonal_structure(const SpaceSpec& s, const MPoly& f, int cap) {
  if (s.dim() != 2) throw std::invalid_argument("diagonal_structure: bidisk only");
  for (const auto& [m, c] : f.terms())
    if (m[0] != m[1]) throw std::invalid_argument("diagonal_structure: f must be a polynomial in z1*z2");
  OrthoFamily fam = weighted_gram_schmidt(s, f, cap);
  std::vector<DiagonalRow> rows;
  for (int N = 0; N <= cap; ++N) {
    MultiIndex lead = deglex_unrank(N, 2);
    DiagonalRow row;
    row.index = N;
    row.axis = lead[0] >= lead[1] ? 0 : 1;
    row.gap = std::abs(lead[0] - lead[1]);
    row.r = MPoly(1);
    for (const auto& [m, c] : fam.members[static_cast<std::size_t>(N)].terms()) {
      int off_axis = row.axis == 0 ? m[1] : m[0];
      int on_axis = row.axis == 0 ? m[0] : m[1];
      if (on_axis - off_axis != row.gap)
        throw std::logic_error("diagonal_structure: off-pattern monomial in phi_" + std::to_string(N) +
                               ": " + MPoly::monomial(2, m).str());
      row.r.add_term({off_axis}, c);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// r_m(x) = (1/(m+1)) sum_{k<=m} (k+1) x^k.
inline MPoly hardy_diag_r(int m) {
  MPoly r(1);
  for (int k = 0; k <= m; ++k) r.set({k}, ExactScalar(Rational(k + 1, m + 1)));
  return r;
}

// Basis member z_axis^M r_m(z1 z2) of the Hardy space weighted by 1 - z1 z2.
inline MPoly hardy_diag_basis(int axis, int M, int m) {
  MPoly r = hardy_diag_r(m);
  MPoly out(2);
  for (const auto& [e, c] : r.terms()) {
    MultiIndex mi{e[0], e[0]};
    mi[axis] += M;
    out.set(mi, c);
  }
  return out;
}

}  // namespace opakit
