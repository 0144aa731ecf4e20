#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "opakit/scalar.hpp"

namespace opakit {

using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

// Degree lexicographic order: blocks of increasing total degree, ties broken so
// that earlier variables carrying higher exponents come first (1, z1, z2, z1^2,
// z1z2, z2^2, ...).
struct DeglexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;  // within a block, lexicographically larger exponents rank earlier
  }
};

namespace detail {

// Number of d-variable monomials of total degree exactly n.
inline mpz_class block_size(int n, int d) {
  if (d == 0) return n == 0 ? 1 : 0;
  return binomial(static_cast<unsigned long>(n + d - 1), static_cast<unsigned long>(d - 1));
}

}  // namespace detail

inline std::int64_t deglex_rank(const MultiIndex& m) {
  int d = static_cast<int>(m.size());
  int n = total_degree(m);
  mpz_class r = 0;
  for (int t = 0; t < n; ++t) r += detail::block_size(t, d);
  // Position within the degree-n block.
  int rem = n;
  for (int i = 0; i + 1 < d; ++i) {
    for (int v = rem; v > m[i]; --v) r += detail::block_size(rem - v, d - i - 1);
    rem -= m[i];
  }
  if (!r.fits_slong_p()) throw std::overflow_error("deglex_rank: index overflow");
  return r.get_si();
}

inline MultiIndex deglex_unrank(std::int64_t j, int d) {
  if (j < 0) throw std::invalid_argument("deglex_unrank: negative index");
  mpz_class rest = j;
  int n = 0;
  while (rest >= detail::block_size(n, d)) {
    rest -= detail::block_size(n, d);
    ++n;
  }
  MultiIndex m(d, 0);
  int rem = n;
  for (int i = 0; i + 1 < d; ++i) {
    int v = rem;
    while (detail::block_size(rem - v, d - i - 1) <= rest) {
      rest -= detail::block_size(rem - v, d - i - 1);
      --v;
    }
    m[i] = v;
    rem -= v;
  }
  m[d - 1] = rem;
  return m;
}

// First deglex index m with (z_1...z_d)^n in P_m.
inline std::int64_t diag_threshold(int n, int d) {
  return deglex_rank(MultiIndex(d, n));
}

// Sparse multivariate polynomial over ExactScalar, terms kept in deglex order.
class MPoly {
 public:
  using TermMap = std::map<MultiIndex, ExactScalar, DeglexLess>;

  explicit MPoly(int d = 1) : d_(d) {}

  static MPoly constant(int d, ExactScalar c) {
    MPoly p(d);
    p.set(MultiIndex(d, 0), std::move(c));
    return p;
  }
  static MPoly monomial(int d, const MultiIndex& m, ExactScalar c = ExactScalar(1)) {
    MPoly p(d);
    p.set(m, std::move(c));
    return p;
  }
  static MPoly chi(std::int64_t j, int d) { return monomial(d, deglex_unrank(j, d)); }

  int dim() const { return d_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  int degree() const {
    int deg = 0;
    for (const auto& [m, c] : terms_) deg = std::max(deg, total_degree(m));
    return deg;
  }
  int degree_in(int var) const {
    int deg = 0;
    for (const auto& [m, c] : terms_) deg = std::max(deg, m[var]);
    return deg;
  }

  ExactScalar coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ExactScalar() : it->second;
  }
  ExactScalar at_origin() const { return coeff(MultiIndex(d_, 0)); }

  void set(const MultiIndex& m, ExactScalar c) {
    if (static_cast<int>(m.size()) != d_) throw std::invalid_argument("MPoly: exponent arity mismatch");
    if (c.is_zero()) terms_.erase(m);
    else terms_[m] = std::move(c);
  }
  void add_term(const MultiIndex& m, const ExactScalar& c) { set(m, coeff(m) + c); }

  MPoly operator-() const {
    MPoly r(d_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  MPoly operator+(const MPoly& o) const {
    check_dim(o);
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  MPoly operator-(const MPoly& o) const { return *this + (-o); }
  MPoly operator*(const MPoly& o) const {
    check_dim(o);
    MPoly r(d_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        MultiIndex m(d_);
        for (int i = 0; i < d_; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  MPoly scale(const ExactScalar& c) const {
    MPoly r(d_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
  }

  bool operator==(const MPoly& o) const { return d_ == o.d_ && terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly conj_coeffs() const {
    MPoly r(d_);
    for (const auto& [m, c] : terms_) r.terms_[m] = c.conj();
    return r;
  }

  // Coefficient of z^m scaled by rho^{|m|}.
  MPoly dilate(const Rational& rho) const {
    if (rho.sign() <= 0) throw std::invalid_argument("dilate: nonpositive radius");
    MPoly r(d_);
    for (const auto& [m, c] : terms_)
      r.terms_[m] = c * ExactScalar(rho.pow(total_degree(m)));
    return r;
  }

  std::complex<double> eval(const std::vector<std::complex<double>>& z) const {
    if (static_cast<int>(z.size()) != d_) throw std::invalid_argument("eval: point arity mismatch");
    std::complex<double> acc = 0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (int i = 0; i < d_; ++i)
        for (int e = 0; e < m[i]; ++e) t *= z[i];
      acc += t;
    }
    return acc;
  }

  // Coefficients of the univariate polynomial in variable `var` after fixing
  // every other variable to the given values. Index = exponent of `var`.
  std::vector<std::complex<double>> slice(int var, const std::vector<std::complex<double>>& fixed) const {
    std::vector<std::complex<double>> cs(degree_in(var) + 1, 0.0);
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (int i = 0; i < d_; ++i) {
        if (i == var) continue;
        for (int e = 0; e < m[i]; ++e) t *= fixed[i];
      }
      cs[m[var]] += t;
    }
    return cs;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = c.str();
      bool compound = cs.find_first_of("+-", 1) != std::string::npos && cs.front() != '(';
      if (compound) cs = "(" + cs + ")";
      if (!first) {
        if (cs.front() == '-' && !compound) { out += "-"; cs = cs.substr(1); }
        else out += "+";
      }
      first = false;
      std::string mono;
      for (int i = 0; i < d_; ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "z" + std::to_string(i + 1);
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      if (mono.empty()) out += cs;
      else if (cs == "1") out += mono;
      else if (cs == "-1") out += "-" + mono;
      else out += cs + "*" + mono;
    }
    return out;
  }

 private:
  void check_dim(const MPoly& o) const {
    if (d_ != o.d_) throw std::invalid_argument("MPoly: dimension mismatch");
  }

  int d_;
  TermMap terms_;
};

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos) : std::runtime_error(what), position(pos) {}
};

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

// One factor: a parenthesized or bare scalar literal, or z<k>[^e] (or "z" for d=1).
struct PolyParser {
  const std::string& s;
  int d;
  std::size_t i = 0;

  MPoly parse() {
    MPoly acc(d);
    skip_ws(s, i);
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) { sign = s[i] == '-' ? -1 : 1; ++i; }
    acc = acc + term(sign);
    while (true) {
      skip_ws(s, i);
      if (i >= s.size()) break;
      if (s[i] != '+' && s[i] != '-') throw ParseError("expected '+' or '-'", i);
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      acc = acc + term(sign);
    }
    return acc;
  }

  MPoly term(int sign) {
    MPoly prod = MPoly::constant(d, ExactScalar(sign));
    while (true) {
      prod = prod * factor();
      skip_ws(s, i);
      if (i < s.size() && s[i] == '*') { ++i; continue; }
      break;
    }
    return prod;
  }

  MPoly factor() {
    skip_ws(s, i);
    if (i >= s.size()) throw ParseError("unexpected end of input", i);
    if (s[i] == '(') {
      std::size_t close = s.find(')', i);
      if (close == std::string::npos) throw ParseError("unbalanced '('", i);
      std::string body = s.substr(i, close - i + 1);
      std::size_t at = i;
      i = close + 1;
      try {
        return MPoly::constant(d, parse_scalar(body));
      } catch (const std::exception& e) {
        throw ParseError(e.what(), at);
      }
    }
    if (s[i] == 'z') {
      std::size_t j = i + 1;
      int var = 1;
      if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        var = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          var = var * 10 + (s[j++] - '0');
      } else if (d != 1) {
        throw ParseError("bare 'z' only valid in one variable", i);
      }
      if (var < 1 || var > d) throw ParseError("variable index out of range", i);
      int exp = 1;
      if (j < s.size() && s[j] == '^') {
        ++j;
        if (j >= s.size() || !std::isdigit(static_cast<unsigned char>(s[j])))
          throw ParseError("expected exponent digits", j);
        exp = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          exp = exp * 10 + (s[j++] - '0');
      }
      i = j;
      MultiIndex m(d, 0);
      m[var - 1] = exp;
      return MPoly::monomial(d, m);
    }
    // Bare scalar literal: digits, '/', '.', and the token s2.
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/' ||
                            s[j] == '.' || (s[j] == 's' && j + 1 < s.size() && s[j + 1] == '2')))
      j += (s[j] == 's') ? 2 : 1;
    if (j == i) throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
    std::string lit = s.substr(i, j - i);
    std::size_t at = i;
    i = j;
    try {
      return MPoly::constant(d, parse_scalar(lit));
    } catch (const std::exception& e) {
      throw ParseError(e.what(), at);
    }
  }
};

}  // namespace detail

inline MPoly parse_mpoly(const std::string& s, int d) {
  detail::PolyParser p{s, d};
  return p.parse();
}

}  // namespace opakit
