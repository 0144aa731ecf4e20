#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "opakit/mpoly.hpp"

namespace opakit {

struct ModeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Declaration of a diagonal RKHS via its monomial weight function.
class SpaceSpec {
 public:
  enum class Family { DirichletDisk, DirichletBidisk, DruryArveson, CustomOmega };

  static SpaceSpec dirichlet_disk(double alpha) {
    SpaceSpec s;
    s.family_ = Family::DirichletDisk;
    s.d_ = 1;
    s.alpha_ = {alpha};
    return s;
  }
  static SpaceSpec dirichlet_bidisk(double a1, double a2) {
    SpaceSpec s;
    s.family_ = Family::DirichletBidisk;
    s.d_ = 2;
    s.alpha_ = {a1, a2};
    return s;
  }
  static SpaceSpec drury_arveson(int d) {
    SpaceSpec s;
    s.family_ = Family::DruryArveson;
    s.d_ = d;
    return s;
  }
  static SpaceSpec custom_omega(std::vector<Rational> table) {
    for (const auto& w : table)
      if (w.sign() <= 0) throw std::invalid_argument("custom_omega: weights must be positive");
    SpaceSpec s;
    s.family_ = Family::CustomOmega;
    s.d_ = 1;
    s.table_ = std::move(table);
    return s;
  }

  Family family() const { return family_; }
  int dim() const { return d_; }
  double alpha(int i) const { return alpha_.at(i); }
  const std::vector<Rational>& table() const { return table_; }

  // Exact weights exist for integer alpha, Drury-Arveson, and tables.
  bool exact() const {
    for (double a : alpha_)
      if (a != std::floor(a)) return false;
    return true;
  }

  Rational weight(const MultiIndex& k) const {
    check_arity(k);
    switch (family_) {
      case Family::DirichletDisk:
      case Family::DirichletBidisk: {
        if (!exact()) throw ModeError("exact weight requested for non-integer alpha");
        Rational w(1);
        for (int i = 0; i < d_; ++i) w *= Rational(k[i] + 1).pow(static_cast<long>(alpha_[i]));
        return w;
      }
      case Family::DruryArveson: {
        mpz_class num(1);
        unsigned long tot = 0;
        for (int i = 0; i < d_; ++i) {
          num *= factorial(static_cast<unsigned long>(k[i]));
          tot += static_cast<unsigned long>(k[i]);
        }
        return Rational(num, factorial(tot));
      }
      case Family::CustomOmega: {
        if (k[0] >= static_cast<int>(table_.size()))
          throw std::out_of_range("custom_omega: weight table exhausted at k=" + std::to_string(k[0]));
        return table_[static_cast<std::size_t>(k[0])];
      }
    }
    throw std::logic_error("unreachable");
  }

  double weight_f(const MultiIndex& k) const {
    check_arity(k);
    if (family_ == Family::DirichletDisk || family_ == Family::DirichletBidisk) {
      double w = 1;
      for (int i = 0; i < d_; ++i) w *= std::pow(k[i] + 1, alpha_[i]);
      return w;
    }
    return weight(k).to_double();
  }

  // Sum_k w(k) p_k conj(q_k) over the common support, exact.
  ExactScalar inner(const MPoly& p, const MPoly& q) const {
    ExactScalar acc;
    for (const auto& [m, c] : p.terms()) {
      ExactScalar qc = q.coeff(m);
      if (qc.is_zero()) continue;
      acc += ExactScalar(weight(m)) * c * qc.conj();
    }
    return acc;
  }
  ExactScalar norm2(const MPoly& p) const { return inner(p, p); }

  // <g, h>_f = <g f, h f>.
  ExactScalar weighted_inner(const MPoly& f, const MPoly& g, const MPoly& h) const {
    if (f.is_zero()) throw std::invalid_argument("weighted_inner: zero weight polynomial");
    return inner(g * f, h * f);
  }

  std::complex<double> inner_f(const MPoly& p, const MPoly& q) const {
    std::complex<double> acc = 0;
    for (const auto& [m, c] : p.terms()) {
      ExactScalar qc = q.coeff(m);
      if (qc.is_zero()) continue;
      acc += weight_f(m) * c.to_complex() * std::conj(qc.to_complex());
    }
    return acc;
  }

  // Closed-form kernel value; product of one-variable kernels on the polydisk.
  std::complex<double> kernel(const std::vector<std::complex<double>>& lambda,
                              const std::vector<std::complex<double>>& z) const {
    check_point(lambda);
    check_point(z);
    switch (family_) {
      case Family::DirichletDisk:
      case Family::DirichletBidisk: {
        std::complex<double> prod = 1;
        for (int i = 0; i < d_; ++i) {
          if (alpha_[i] != 0 && alpha_[i] != -1)
            throw ModeError("no rational closed-form kernel for alpha=" + std::to_string(alpha_[i]) +
                            "; use kernel_taylor");
          std::complex<double> g = 1.0 / (1.0 - std::conj(lambda[i]) * z[i]);
          prod *= (alpha_[i] == -1) ? g * g : g;
        }
        return prod;
      }
      case Family::DruryArveson: {
        std::complex<double> ip = 0;
        for (int i = 0; i < d_; ++i) ip += z[i] * std::conj(lambda[i]);
        return 1.0 / (1.0 - ip);
      }
      case Family::CustomOmega:
        throw ModeError("custom_omega kernel has no closed form; use kernel_taylor");
    }
    throw std::logic_error("unreachable");
  }

  // Exact kernel value at real rational points (weight families with closed forms).
  Rational kernel_exact(const std::vector<Rational>& lambda, const std::vector<Rational>& z) const {
    if (static_cast<int>(lambda.size()) != d_ || static_cast<int>(z.size()) != d_)
      throw std::invalid_argument("kernel_exact: point arity mismatch");
    switch (family_) {
      case Family::DirichletDisk:
      case Family::DirichletBidisk: {
        Rational prod(1);
        for (int i = 0; i < d_; ++i) {
          if (alpha_[i] != 0 && alpha_[i] != -1)
            throw ModeError("kernel_exact: alpha must be 0 or -1");
          Rational g = Rational(1) / (Rational(1) - lambda[i] * z[i]);
          prod *= (alpha_[i] == -1) ? g * g : g;
        }
        return prod;
      }
      case Family::DruryArveson: {
        Rational ip(0);
        for (int i = 0; i < d_; ++i) ip += z[i] * lambda[i];
        return Rational(1) / (Rational(1) - ip);
      }
      case Family::CustomOmega:
        throw ModeError("kernel_exact: custom_omega has no closed form");
    }
    throw std::logic_error("unreachable");
  }

  // Degree-capped kernel Taylor expansion at a real rational point:
  // sum_{|k|<=N} lambda^k / w(k) z^k.
  MPoly kernel_taylor(const std::vector<Rational>& lambda, int cap) const {
    if (static_cast<int>(lambda.size()) != d_)
      throw std::invalid_argument("kernel_taylor: point arity mismatch");
    MPoly out(d_);
    std::int64_t j = 0;
    while (true) {
      MultiIndex m = deglex_unrank(j++, d_);
      if (total_degree(m) > cap) break;
      Rational num(1);
      for (int i = 0; i < d_; ++i) num *= lambda[i].pow(m[i]);
      if (!num.is_zero()) out.set(m, ExactScalar(num / weight(m)));
    }
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    switch (family_) {
      case Family::DirichletDisk: os << "dirichlet:" << alpha_[0]; break;
      case Family::DirichletBidisk: os << "dirichlet:" << alpha_[0] << "," << alpha_[1]; break;
      case Family::DruryArveson: os << "da:" << d_; break;
      case Family::CustomOmega: {
        os << "omega:[";
        for (std::size_t i = 0; i < table_.size(); ++i) os << (i ? "," : "") << table_[i].str();
        os << "]";
        break;
      }
    }
    return os.str();
  }

 private:
  void check_arity(const MultiIndex& k) const {
    if (static_cast<int>(k.size()) != d_)
      throw std::invalid_argument("SpaceSpec: multi-index arity mismatch");
  }
  void check_point(const std::vector<std::complex<double>>& z) const {
    if (static_cast<int>(z.size()) != d_) throw std::invalid_argument("SpaceSpec: point arity mismatch");
    if (family_ == Family::DruryArveson) {
      double n2 = 0;
      for (auto& c : z) n2 += std::norm(c);
      if (n2 >= 1.0) throw DomainError("point outside the open unit ball");
    } else {
      for (auto& c : z)
        if (std::abs(c) >= 1.0) throw DomainError("point outside the open polydisk");
    }
  }

  Family family_ = Family::DirichletDisk;
  int d_ = 1;
  std::vector<double> alpha_;
  std::vector<Rational> table_;
};

// Descriptor grammar: "dirichlet:a" | "dirichlet:a1,a2" | "da:d" |
// "omega:[w0,w1,...]", plus the aliases hardy2 / bergman2 / dirichlet2.
inline SpaceSpec parse_space(const std::string& s) {
  if (s == "hardy2") return SpaceSpec::dirichlet_bidisk(0, 0);
  if (s == "bergman2") return SpaceSpec::dirichlet_bidisk(-1, -1);
  if (s == "dirichlet2") return SpaceSpec::dirichlet_bidisk(1, 1);
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("space descriptor: missing ':' in '" + s + "'");
  std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
  if (kind == "dirichlet") {
    auto comma = rest.find(',');
    if (comma == std::string::npos) return SpaceSpec::dirichlet_disk(std::stod(rest));
    return SpaceSpec::dirichlet_bidisk(std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)));
  }
  if (kind == "da") return SpaceSpec::drury_arveson(std::stoi(rest));
  if (kind == "omega") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
      throw std::invalid_argument("space descriptor: omega table must be [w0,w1,...]");
    std::vector<Rational> t;
    std::stringstream body(rest.substr(1, rest.size() - 2));
    std::string item;
    while (std::getline(body, item, ',')) t.push_back(Rational::parse(item));
    return SpaceSpec::custom_omega(std::move(t));
  }
  throw std::invalid_argument("space descriptor: unknown family '" + kind + "'");
}

}  // namespace opakit
