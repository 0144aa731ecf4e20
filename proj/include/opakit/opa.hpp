#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "opakit/linalg.hpp"
#include "opakit/spaces.hpp"

namespace opakit {

// Optimal approximant p_n^* with its defining Grammian system and norm data.
struct OpaResult {
  SpaceSpec space;
  MPoly f;
  int n = 0;
  ExactMatrix grammian;
  ExactVector rhs;
  ExactVector coeffs;
  MPoly approximant;
  ExactScalar nu2;  // real: ||p_n^* f - 1||^2
  double nu = 0;
};

struct GrammianSystem {
  ExactMatrix M;
  ExactVector b;
};

// M_ij = <chi_j f, chi_i f>, b_i = <1, chi_i f>.
inline GrammianSystem grammian(const SpaceSpec& s, const MPoly& f, int n) {
  if (f.is_zero()) throw std::invalid_argument("grammian: f must be nonzero");
  if (n < 0) throw std::invalid_argument("grammian: negative order");
  int d = s.dim();
  MPoly one = MPoly::constant(d, ExactScalar(1));
  std::vector<MPoly> basis;
  for (int j = 0; j <= n; ++j) basis.push_back(MPoly::chi(j, d) * f);
  GrammianSystem sys;
  sys.M.assign(basis.size(), ExactVector(basis.size()));
  sys.b.resize(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    sys.b[i] = s.inner(one, basis[i]);
    for (std::size_t j = 0; j < basis.size(); ++j) sys.M[i][j] = s.inner(basis[j], basis[i]);
  }
  return sys;
}

inline OpaResult opa(const SpaceSpec& s, const MPoly& f, int n) {
  GrammianSystem sys = grammian(s, f, n);
  ExactVector c = solve_exact(sys.M, sys.b);
  int d = s.dim();
  MPoly p(d);
  for (int j = 0; j <= n; ++j) p.add_term(deglex_unrank(j, d), c[static_cast<std::size_t>(j)]);
  MPoly residual = p * f - MPoly::constant(d, ExactScalar(1));
  ExactScalar nu2 = s.norm2(residual);
  OpaResult r{s, f, n, std::move(sys.M), std::move(sys.b), std::move(c), std::move(p), nu2,
              std::sqrt(nu2.re().to_double())};
  return r;
}

inline std::vector<OpaResult> opa_sequence(const SpaceSpec& s, const MPoly& f, int cap) {
  std::vector<OpaResult> out;
  for (int n = 0; n <= cap; ++n) {
    out.push_back(opa(s, f, n));
    if (n > 0 && out[n].nu2.re() > out[n - 1].nu2.re())
      throw std::logic_error("opa_sequence: optimal norm increased at order " + std::to_string(n));
  }
  return out;
}

struct WeakInnerReport {
  bool weakly_inner = true;
  std::int64_t offending_j = -1;
  ExactScalar offending_value;
};

// Checks <g, chi_j g> = 0 for 1 <= j <= cap.
inline WeakInnerReport weak_inner_test(const SpaceSpec& s, const MPoly& g, std::int64_t cap) {
  if (g.is_zero()) throw std::invalid_argument("weak_inner_test: g must be nonzero");
  for (std::int64_t j = 1; j <= cap; ++j) {
    ExactScalar ip = s.inner(g, MPoly::chi(j, s.dim()) * g);
    if (!ip.is_zero()) return {false, j, ip};
  }
  return {};
}

struct ConstantOpaReport {
  bool applicable = false;  // false when g is not weakly inner up to the cap
  bool holds = false;
  WeakInnerReport inner_check;
};

// For weakly inner g, every p_n^* equals conj(g(0)) / ||g||^2.
inline ConstantOpaReport constant_opa_check(const SpaceSpec& s, const MPoly& g, int cap) {
  ConstantOpaReport rep;
  rep.inner_check = weak_inner_test(s, g, cap);
  if (!rep.inner_check.weakly_inner) return rep;
  rep.applicable = true;
  ExactScalar expected = g.at_origin().conj() / s.norm2(g);
  MPoly expected_poly = MPoly::constant(s.dim(), expected);
  rep.holds = true;
  for (int n = 0; n <= cap; ++n)
    if (opa(s, g, n).approximant != expected_poly) {
      rep.holds = false;
      break;
    }
  return rep;
}

// Float-mode mirror of opa for spaces without exact weights.
struct OpaFloatResult {
  std::vector<std::complex<double>> coeffs;
  double condition_advisory = 0;
};

inline OpaFloatResult opa_float(const SpaceSpec& s, const MPoly& f, int n) {
  if (f.is_zero()) throw std::invalid_argument("opa_float: f must be nonzero");
  int d = s.dim();
  MPoly one = MPoly::constant(d, ExactScalar(1));
  std::vector<MPoly> basis;
  for (int j = 0; j <= n; ++j) basis.push_back(MPoly::chi(j, d) * f);
  FloatMatrix M(basis.size(), FloatVector(basis.size()));
  FloatVector b(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    b[i] = s.inner_f(one, basis[i]);
    for (std::size_t j = 0; j < basis.size(); ++j) M[i][j] = s.inner_f(basis[j], basis[i]);
  }
  auto sol = solve_float(std::move(M), std::move(b));
  return {std::move(sol.x), sol.condition_advisory};
}

}  // namespace opakit
