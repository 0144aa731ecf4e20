#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "opakit/linalg.hpp"
#include "opakit/ortho.hpp"

namespace opakit {

// One-variable weight sequence, used through the diagonal embeddings.
class WeightSequence {
 public:
  enum class Provenance { Dirichlet, DruryArvesonDiag, Custom };

  static WeightSequence dirichlet(long alpha_sum) {
    WeightSequence w;
    w.prov_ = Provenance::Dirichlet;
    w.alpha_sum_ = alpha_sum;
    return w;
  }
  static WeightSequence drury_arveson_diag(int d) {
    WeightSequence w;
    w.prov_ = Provenance::DruryArvesonDiag;
    w.d_ = d;
    return w;
  }
  static WeightSequence custom(std::vector<Rational> table) {
    WeightSequence w;
    w.prov_ = Provenance::Custom;
    w.table_ = std::move(table);
    return w;
  }

  Provenance provenance() const { return prov_; }
  long alpha_sum() const { return alpha_sum_; }
  int ball_dim() const { return d_; }

  // w_d(k) = d^{dk} (k!)^d / (dk)! for the ball diagonal; (k+1)^{a1+a2} for the bidisk.
  Rational omega(int k) const {
    switch (prov_) {
      case Provenance::Dirichlet:
        return Rational(k + 1).pow(alpha_sum_);
      case Provenance::DruryArvesonDiag: {
        mpz_class num;
        mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(d_),
                      static_cast<unsigned long>(d_) * static_cast<unsigned long>(k));
        mpz_class fk = factorial(static_cast<unsigned long>(k));
        for (int i = 0; i < d_; ++i) num *= fk;
        return Rational(num, factorial(static_cast<unsigned long>(d_) * static_cast<unsigned long>(k)));
      }
      case Provenance::Custom:
        if (k >= static_cast<int>(table_.size()))
          throw std::out_of_range("WeightSequence: table exhausted at k=" + std::to_string(k));
        return table_[static_cast<std::size_t>(k)];
    }
    throw std::logic_error("unreachable");
  }

  // Power-law decay exponent of omega, when known; drives limit-mode tails.
  double decay_exponent() const {
    switch (prov_) {
      case Provenance::Dirichlet: return static_cast<double>(alpha_sum_);
      case Provenance::DruryArvesonDiag: return (d_ - 1) / 2.0;
      case Provenance::Custom: throw ModeError("no decay model for a finite custom table");
    }
    throw std::logic_error("unreachable");
  }

 private:
  Provenance prov_ = Provenance::Custom;
  long alpha_sum_ = 0;
  int d_ = 1;
  std::vector<Rational> table_;
};

// One-variable optimal approximant to 1/(1-z) in H_omega:
// coefficient of z^k is 1 - S_k / S_{n+1}, with S_k the partial sums of 1/omega.
inline MPoly fms_opa(const WeightSequence& w, int n) {
  std::vector<Rational> partial(static_cast<std::size_t>(n) + 2);
  Rational acc;
  for (int k = 0; k <= n + 1; ++k) {
    acc += Rational(1) / w.omega(k);
    partial[static_cast<std::size_t>(k)] = acc;
  }
  MPoly p(1);
  for (int k = 0; k <= n; ++k)
    p.set({k}, ExactScalar(Rational(1) - partial[static_cast<std::size_t>(k)] / partial.back()));
  return p;
}

// nu_n(1-z, H_omega)^2 = 1 / sum_{k<=n+1} 1/omega(k), exact.
inline Rational fms_distance2(const WeightSequence& w, int n) {
  Rational acc;
  for (int k = 0; k <= n + 1; ++k) acc += Rational(1) / w.omega(k);
  return Rational(1) / acc;
}

struct DistanceLimit {
  bool cyclic = false;  // divergent weight-reciprocal sum
  double nu = 0;        // limit of nu_n; 0 when cyclic
};

// Limit of nu_n via a tail-corrected partial sum of 1/omega.
inline DistanceLimit fms_distance_limit(const WeightSequence& w, int terms = 500) {
  double s = w.decay_exponent();
  if (s <= 1.0) return {true, 0.0};
  double acc = 0;
  for (int k = 0; k < terms; ++k) acc += 1.0 / w.omega(k).to_double();
  // Power-law tail: the summand behaves like c k^{-s}; integrate past the window.
  double last = 1.0 / w.omega(terms - 1).to_double();
  acc += last * (terms - 1) / (s - 1.0);
  return {false, std::sqrt(1.0 / acc)};
}

struct DiagEmbedResult {
  MPoly approximant;        // polynomial in (z1...zd)^k
  std::int64_t valid_from;  // = diag_threshold(n, d)
  std::int64_t valid_to;    // exclusive: diag_threshold(n+1, d)
};

// Optimal approximant to 1/(1 - z1 z2) in D_{a1,a2}, via the disk embedding.
inline DiagEmbedResult diag_embed_opa_bidisk(long a1, long a2, int n) {
  MPoly one_var = fms_opa(WeightSequence::dirichlet(a1 + a2), n);
  MPoly p(2);
  for (const auto& [m, c] : one_var.terms()) p.set({m[0], m[0]}, c);
  return {std::move(p), diag_threshold(n, 2), diag_threshold(n + 1, 2)};
}

// Optimal approximant to 1/(1 - d^{d/2} z1...zd) in H^2_d. The substitution
// multiplies the k-th coefficient by d^{dk/2}, which is rational only for even
// d; odd d is not representable over Q(sqrt 2).
inline DiagEmbedResult diag_embed_opa_ball(int d, int n) {
  if (d % 2 != 0) throw ModeError("diag_embed_opa_ball: d^{d/2} irrational for odd d");
  MPoly one_var = fms_opa(WeightSequence::drury_arveson_diag(d), n);
  MPoly p(d);
  for (const auto& [m, c] : one_var.terms()) {
    mpz_class a;
    mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(d),
                  static_cast<unsigned long>(d) * static_cast<unsigned long>(m[0]) / 2);
    p.set(MultiIndex(d, m[0]), c * ExactScalar(Rational(a)));
  }
  return {std::move(p), diag_threshold(n, d), diag_threshold(n + 1, d)};
}

struct CyclicityVerdict {
  bool cyclic = false;
  double nu_limit = 0;
};

// 1 - z1 z2 is cyclic in D_{a1,a2} iff a1 + a2 <= 1.
inline CyclicityVerdict cyclicity_bidisk_diag(long a1, long a2) {
  WeightSequence w = WeightSequence::dirichlet(a1 + a2);
  if (a1 + a2 <= 1) return {true, 0.0};
  auto lim = fms_distance_limit(w);
  return {false, lim.nu};
}

// 1 - d^{d/2} z1...zd is cyclic in H^2_d iff d <= 3.
inline CyclicityVerdict cyclicity_ball_diag(int d) {
  if (d <= 3) return {true, 0.0};
  auto lim = fms_distance_limit(WeightSequence::drury_arveson_diag(d));
  return {false, lim.nu};
}

struct AsymptoticRow {
  int k;
  double omega;
  double ratio;  // omega_d(k) / k^{(d-1)/2}
};

struct AsymptoticReport {
  std::vector<AsymptoticRow> rows;
  double drift;  // relative spread of the ratio over the second half of the window
};

inline AsymptoticReport da_weight_asymptotic(int d, int kmax) {
  if (kmax < 10) throw std::invalid_argument("da_weight_asymptotic: kmax must be at least 10");
  WeightSequence w = WeightSequence::drury_arveson_diag(d);
  AsymptoticReport rep;
  double lo = 0, hi = 0;
  for (int k = 1; k <= kmax; ++k) {
    double wd = w.omega(k).to_double();
    double ratio = wd / std::pow(k, (d - 1) / 2.0);
    rep.rows.push_back({k, wd, ratio});
    if (k >= kmax / 2) {
      if (lo == 0 || ratio < lo) lo = ratio;
      if (ratio > hi) hi = ratio;
    }
  }
  rep.drift = (hi - lo) / hi;
  return rep;
}

// Full-degree-block optimal approximant for 1 - (z1+z2)/sqrt(2) in H^2_2:
// q_n((z1+z2)/sqrt 2) with q_n the one-variable Hardy approximant to 1/(1-z).
// Requires P_N to be exactly the span of all monomials of degree <= n.
inline MPoly ball_rotation_opa(int N) {
  int n = 0;
  while ((n + 1) * (n + 2) / 2 < N + 1) ++n;
  if ((n + 1) * (n + 2) / 2 != N + 1)
    throw std::invalid_argument("ball_rotation_opa: N is not of full-degree-block form n(n+3)/2");
  MPoly q = fms_opa(WeightSequence::dirichlet(0), n);
  MPoly out(2);
  for (const auto& [m, c] : q.terms()) {
    int k = m[0];
    // ((z1+z2)/sqrt 2)^k = 2^{-k/2} sum_j C(k,j) z1^j z2^{k-j}.
    ExactScalar root_scale = (k % 2 == 0)
        ? ExactScalar(Rational(mpz_class(1), mpz_class(1) << (k / 2)))
        : ExactScalar(QuadExt(Rational(0), Rational(mpz_class(1), mpz_class(1) << ((k + 1) / 2))));
    for (int j = 0; j <= k; ++j)
      out.add_term({j, k - j}, c * root_scale * ExactScalar(Rational(binomial(k, j))));
  }
  return out;
}

// The weakly inner determinant combination of kernels vanishing on Lambda.
struct SSFunction {
  SpaceSpec space;
  std::vector<std::vector<Rational>> points;  // real rational coordinates
  std::vector<Rational> cofactors;            // C_0 against 1, C_m against K_{lambda_m}
  MPoly truncation;                           // exact degree-N Taylor truncation
  int trunc_degree = 0;
  double norm_tail = 0;  // bound on ||s - s_N|| in the space norm

  std::complex<double> eval_closed(const std::vector<std::complex<double>>& z) const {
    std::complex<double> acc = cofactors[0].to_double();
    for (std::size_t m = 1; m < cofactors.size(); ++m) {
      std::vector<std::complex<double>> lam;
      for (const auto& c : points[m - 1]) lam.emplace_back(c.to_double(), 0.0);
      acc += cofactors[m].to_double() * space.kernel(lam, z);
    }
    return acc;
  }
};

namespace detail {

// Upper bound on sum_{|k|=t} |lambda^k| |z^k| / w(k) for the closed-form spaces.
inline double kernel_block_bound(const SpaceSpec& s, double r, int t) {
  if (s.family() == SpaceSpec::Family::DruryArveson)
    return std::pow(s.dim() * r, t);  // multinomial identity: sum |k|!/k! r^t x block
  double c = 1;  // product over factors of (k_i+1)^{-alpha_i} <= (t+1)^{max(0,-alpha)}
  for (int i = 0; i < s.dim(); ++i)
    if (s.alpha(i) < 0) c *= std::pow(t + 1, -s.alpha(i));
  double block = (s.dim() == 1) ? 1.0 : t + 1.0;
  return std::pow(r, t) * c * block;
}

// sum_{t>N} kernel_block_bound(t), closed off with a geometric cap once the
// term ratio settles below 1.
inline double kernel_tail(const SpaceSpec& s, double r, int N) {
  if (r >= 1.0) throw DomainError("kernel_tail: radius must be below 1");
  double acc = 0;
  double g = kernel_block_bound(s, r, N + 1);
  for (int t = N + 1; t <= N + 100000; ++t) {
    acc += g;
    double next = kernel_block_bound(s, r, t + 1);
    double ratio = next / g;
    if (ratio < 0.999) {
      acc += next / (1.0 - ratio);  // ratios only decrease from here
      return acc;
    }
    g = next;
  }
  throw std::logic_error("kernel_tail: envelope failed to contract");
}

}  // namespace detail

// Builds s_Lambda by cofactor expansion of the bordered kernel matrix along its
// first column; entries are exact at rational points.
inline SSFunction shapiro_shields(const SpaceSpec& s, const std::vector<std::vector<Rational>>& points,
                                  int trunc_degree) {
  std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("shapiro_shields: empty point set");
  for (const auto& p : points) {
    bool all_zero = true;
    double norm2 = 0;
    for (const auto& c : p) {
      if (!c.is_zero()) all_zero = false;
      norm2 += c.to_double() * c.to_double();
    }
    if (all_zero) throw std::invalid_argument("shapiro_shields: points must be nonzero");
    if (s.family() == SpaceSpec::Family::DruryArveson ? norm2 >= 1.0
                                                      : std::abs(p[0].to_double()) >= 1.0)
      throw DomainError("shapiro_shields: point outside the domain");
  }

  // Bordered matrix: row 0 = (*, 1, ..., 1); row i = (*, <K_i, K_j> ...).
  // Column 0 holds the function slot; cofactor m multiplies its m-th entry.
  ExactMatrix bordered(n + 1, ExactVector(n + 1));
  bordered[0][0] = ExactScalar(1);
  for (std::size_t j = 1; j <= n; ++j) bordered[0][j] = ExactScalar(1);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      bordered[i][j] = ExactScalar(s.kernel_exact(points[j - 1], points[i - 1]));

  // Gram determinant of the kernels: principal minor without the border.
  {
    ExactMatrix gram(n, ExactVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram[i][j] = bordered[i + 1][j + 1];
    if (det_exact(gram).is_zero())
      throw std::invalid_argument("shapiro_shields: degenerate configuration (kernels dependent)");
  }

  SSFunction ss;
  ss.space = s;
  ss.points = points;
  ss.trunc_degree = trunc_degree;
  for (std::size_t m = 0; m <= n; ++m) {
    ExactMatrix minor;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == m) continue;
      ExactVector row;
      for (std::size_t j = 1; j <= n; ++j) row.push_back(bordered[i][j]);
      minor.push_back(std::move(row));
    }
    ExactScalar c = det_exact(minor);
    if (m % 2 == 1) c = -c;
    ss.cofactors.push_back(c.re().rat());
  }

  MPoly trunc = MPoly::constant(s.dim(), ExactScalar(ss.cofactors[0]));
  double norm_tail = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    trunc = trunc + s.kernel_taylor(points[m - 1], trunc_degree).scale(ExactScalar(ss.cofactors[m]));
    double r = 0;
    for (const auto& c : points[m - 1]) r = std::max(r, std::abs(c.to_double()));
    // ||K - T_N K||^2 <= tail of squared coefficients; the linear envelope
    // dominates it for r < 1, so reuse it.
    norm_tail += std::abs(ss.cofactors[m].to_double()) *
                 std::sqrt(detail::kernel_tail(s, r * r, trunc_degree));
  }
  ss.truncation = std::move(trunc);
  ss.norm_tail = norm_tail;
  return ss;
}

struct SSVerifyRow {
  std::int64_t j;
  double residual;
  double bound;
};

struct SSVerifyReport {
  bool ok = true;
  std::vector<SSVerifyRow> weak_inner_rows;
  std::vector<double> point_values;  // |s_N(lambda_i)|
  std::vector<double> point_bounds;
};

// Residuals of the truncated function against the weakly inner property and
// against vanishing on Lambda, each compared to its truncation-tail bound.
// Coordinate multipliers are contractions in all supported spaces (alpha <= 0,
// Drury-Arveson), so |<chi_j s_N, s_N>| <= tail (2 ||s_N|| + tail).
inline SSVerifyReport ss_verify(const SSFunction& ss, std::int64_t jmax) {
  SSVerifyReport rep;
  const SpaceSpec& s = ss.space;
  double norm_sn = std::sqrt(s.norm2(ss.truncation).re().to_double());
  double ip_bound = ss.norm_tail * (2 * norm_sn + ss.norm_tail);
  for (std::int64_t j = 1; j <= jmax; ++j) {
    double res = std::abs(s.inner(MPoly::chi(j, s.dim()) * ss.truncation, ss.truncation).to_complex());
    rep.weak_inner_rows.push_back({j, res, ip_bound});
    if (res > ip_bound) rep.ok = false;
  }
  for (const auto& p : ss.points) {
    double rz = 0;
    for (const auto& c : p) rz = std::max(rz, std::abs(c.to_double()));
    // Rational point: evaluate the truncation exactly before demoting.
    ExactScalar acc;
    for (const auto& [m, c] : ss.truncation.terms()) {
      Rational mono(1);
      for (int i = 0; i < s.dim(); ++i) mono *= p[static_cast<std::size_t>(i)].pow(m[i]);
      acc += c * ExactScalar(mono);
    }
    double val = std::abs(acc.to_complex());
    double bound = 0;
    for (std::size_t m = 1; m < ss.cofactors.size(); ++m) {
      double rl = 0;
      for (const auto& c : ss.points[m - 1]) rl = std::max(rl, std::abs(c.to_double()));
      bound += std::abs(ss.cofactors[m].to_double()) * detail::kernel_tail(s, rl * rz, ss.trunc_degree);
    }
    rep.point_values.push_back(val);
    rep.point_bounds.push_back(bound);
    if (val > bound) rep.ok = false;
  }
  return rep;
}

}  // namespace opakit
