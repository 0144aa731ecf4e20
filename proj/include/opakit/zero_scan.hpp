#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "opakit/mpoly.hpp"

namespace opakit {

namespace detail {

inline std::complex<double> horner(const std::vector<std::complex<double>>& c,
                                   std::complex<double> z) {
  std::complex<double> acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

inline std::complex<double> horner_deriv(const std::vector<std::complex<double>>& c,
                                         std::complex<double> z) {
  std::complex<double> acc = 0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * z + static_cast<double>(i) * c[i];
  return acc;
}

// Drops trailing coefficients that are negligible against the largest one, so
// slices whose top coefficients vanish at the fixed value get their true degree.
inline void trim_slice(std::vector<std::complex<double>>& coeffs, double rel = 1e-12) {
  double cmax = 0;
  for (auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= rel * cmax) coeffs.pop_back();
}

}  // namespace detail

struct RootFindError : std::runtime_error {
  std::vector<std::size_t> unconverged;
  RootFindError(std::string what, std::vector<std::size_t> idx)
      : std::runtime_error(std::move(what)), unconverged(std::move(idx)) {}
};

// All roots by simultaneous (Aberth-Ehrlich) iteration. Residual target is
// 1e-10 relative to the largest coefficient; up to 10 perturbed restarts.
inline std::vector<std::complex<double>> univariate_roots(std::vector<std::complex<double>> coeffs,
                                                          double trim_threshold = 1e-12) {
  double cmax = 0;
  for (auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0) throw std::invalid_argument("univariate_roots: zero polynomial");
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= trim_threshold * cmax) coeffs.pop_back();
  std::size_t deg = coeffs.size() - 1;
  if (deg < 1) throw std::invalid_argument("univariate_roots: degree zero after trimming");

  // Cauchy-style radius for the initial circle.
  double radius = 0;
  for (std::size_t i = 0; i < deg; ++i)
    radius = std::max(radius, 2.0 * std::pow(std::abs(coeffs[i] / coeffs[deg]), 1.0 / (deg - i)));
  radius = std::max(radius, 0.5);

  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  double tol = 1e-10 * cmax;

  for (int restart = 0; restart < 10; ++restart) {
    std::vector<std::complex<double>> z(deg);
    for (std::size_t i = 0; i < deg; ++i) {
      double theta = 2 * std::numbers::pi * (static_cast<double>(i) + 0.35) / deg +
                     restart * jitter(rng);
      double r = radius * (1.0 + restart * jitter(rng));
      z[i] = std::polar(r, theta);
    }
    for (int iter = 0; iter < 200; ++iter) {
      double move = 0;
      for (std::size_t i = 0; i < deg; ++i) {
        std::complex<double> p = detail::horner(coeffs, z[i]);
        std::complex<double> dp = detail::horner_deriv(coeffs, z[i]);
        if (dp == std::complex<double>(0, 0)) { z[i] += 1e-6; continue; }
        std::complex<double> w = p / dp;
        std::complex<double> rep = 0;
        for (std::size_t k = 0; k < deg; ++k)
          if (k != i) rep += 1.0 / (z[i] - z[k]);
        std::complex<double> denom = 1.0 - w * rep;
        std::complex<double> step = (denom == std::complex<double>(0, 0)) ? w : w / denom;
        z[i] -= step;
        move = std::max(move, std::abs(step));
      }
      if (move < 1e-14 * radius) break;
    }
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < deg; ++i)
      if (std::abs(detail::horner(coeffs, z[i])) > tol) bad.push_back(i);
    if (bad.empty()) {
      std::sort(z.begin(), z.end(), [](auto a, auto b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b);
      });
      return z;
    }
    if (restart == 9) throw RootFindError("univariate_roots: iteration cap reached", bad);
  }
  throw std::logic_error("unreachable");
}

struct FaceSample {
  double t;
  std::vector<std::complex<double>> roots;
  double min_modulus;  // +inf marker when degenerate
  bool degenerate = false;
};

// Sampled facial root data: roots of p with one variable swept along the torus.
struct FaceProfile {
  int face_variable;  // the variable pinned to e^{it}
  std::vector<FaceSample> samples;
  double global_min = 0;

  std::string csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "t,min_modulus\n";
    for (const auto& s : samples)
      if (!s.degenerate) os << s.t << "," << s.min_modulus << "\n";
    return os.str();
  }
};

inline FaceProfile face_profile(const MPoly& p, int face, int grid) {
  if (p.dim() != 2) throw std::invalid_argument("face_profile: two variables required");
  if (face < 0 || face > 1) throw std::invalid_argument("face_profile: face must be 0 or 1");
  int free_var = 1 - face;
  FaceProfile prof;
  prof.face_variable = face;
  prof.global_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    double t = 2 * std::numbers::pi * (i + 0.5) / grid;
    std::vector<std::complex<double>> fixed(2);
    fixed[face] = std::polar(1.0, t);
    FaceSample sample;
    sample.t = t;
    auto coeffs = p.slice(free_var, fixed);
    detail::trim_slice(coeffs);
    double cmax = 0;
    for (auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
    if (cmax < 1e-13 || coeffs.size() < 2) {
      sample.degenerate = true;
      sample.min_modulus = std::numeric_limits<double>::infinity();
    } else {
      sample.roots = univariate_roots(coeffs);
      sample.min_modulus = std::abs(sample.roots.front());
      prof.global_min = std::min(prof.global_min, sample.min_modulus);
    }
    prof.samples.push_back(std::move(sample));
  }
  return prof;
}

struct ZeroFreeVerdict {
  enum class Kind { ZeroFreeClosed, ZeroFound, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::vector<std::complex<double>> witness;  // populated for ZeroFound
  double witness_value = 0;                   // |p(witness)|
  double face_min[2] = {0, 0};
  int grid = 0;
  double margin = 0;
};

// Grid certificate for zero-freeness on the closed bidisk: interior anchor
// slices plus facial profiles in both variables. Not a proof; the verdict
// records the grid and margin it was obtained with.
inline ZeroFreeVerdict polydisk_zero_free(const MPoly& p, int grid = 2048, double margin = 1e-3) {
  if (p.dim() != 2) throw std::invalid_argument("polydisk_zero_free: two variables required");
  ZeroFreeVerdict v;
  v.grid = grid;
  v.margin = margin;

  auto check_witness = [&](std::vector<std::complex<double>> z) {
    double val = std::abs(p.eval(z));
    if (val < 1e-10) {
      v.kind = ZeroFreeVerdict::Kind::ZeroFound;
      v.witness = std::move(z);
      v.witness_value = val;
      return true;
    }
    return false;
  };

  bool anchors_clear = true;
  for (int anchor_var = 0; anchor_var < 2; ++anchor_var) {
    int free_var = 1 - anchor_var;
    for (std::complex<double> a : {std::complex<double>(0, 0), std::complex<double>(0.5, 0)}) {
      std::vector<std::complex<double>> fixed(2);
      fixed[anchor_var] = a;
      auto coeffs = p.slice(free_var, fixed);
      detail::trim_slice(coeffs);
      double cmax = 0;
      for (auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
      if (cmax < 1e-13) {
        // Slice identically zero: the whole plane is a zero set.
        std::vector<std::complex<double>> z(2);
        z[anchor_var] = a;
        z[free_var] = 0.25;
        if (check_witness(std::move(z))) return v;
        anchors_clear = false;
        continue;
      }
      if (coeffs.size() < 2) continue;  // nonvanishing constant slice
      for (auto r : univariate_roots(coeffs)) {
        if (std::abs(r) < 1.0) {
          std::vector<std::complex<double>> z(2);
          z[anchor_var] = a;
          z[free_var] = r;
          if (check_witness(std::move(z))) return v;
        }
        if (std::abs(r) <= 1.0 + margin) anchors_clear = false;
      }
      if (a == std::complex<double>(0, 0)) break;  // fallback anchor only for degenerate slices
    }
  }

  for (int face = 0; face < 2; ++face) {
    FaceProfile prof = face_profile(p, face, grid);
    v.face_min[face] = prof.global_min;
    for (const auto& s : prof.samples) {
      if (s.degenerate || s.min_modulus >= 1.0) continue;
      std::vector<std::complex<double>> z(2);
      z[face] = std::polar(1.0, s.t);
      z[1 - face] = s.roots.front();
      if (check_witness(std::move(z))) return v;
    }
  }

  if (anchors_clear && v.face_min[0] > 1.0 + margin && v.face_min[1] > 1.0 + margin)
    v.kind = ZeroFreeVerdict::Kind::ZeroFreeClosed;
  return v;
}

// Zero-free radius for diagonal-factor approximants (w0 - z1 z2) Q in
// D_{a1,a2}: the whole bidisk for nonnegative exponents, 2^{(a1+a2)/2} when
// both are negative.
inline double advisory_diag_radius(double a1, double a2) {
  if (a1 >= 0 && a2 >= 0) return 1.0;
  return std::pow(2.0, (a1 + a2) / 2.0);
}

}  // namespace opakit
