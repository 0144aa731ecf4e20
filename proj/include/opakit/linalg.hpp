#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "opakit/scalar.hpp"

namespace opakit {

using ExactMatrix = std::vector<std::vector<ExactScalar>>;
using ExactVector = std::vector<ExactScalar>;

struct SingularMatrix : std::runtime_error {
  std::size_t pivot_index;
  explicit SingularMatrix(std::size_t idx)
      : std::runtime_error("singular matrix: vanishing pivot at index " + std::to_string(idx)),
        pivot_index(idx) {}
};

// Exact Gaussian elimination; the solution is substituted back into the
// original system before returning.
inline ExactVector solve_exact(const ExactMatrix& M, const ExactVector& b) {
  std::size_t n = M.size();
  if (b.size() != n) throw std::invalid_argument("solve_exact: size mismatch");
  ExactMatrix A = M;
  ExactVector r = b;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col].is_zero()) ++piv;
    if (piv == n) throw SingularMatrix(col);
    std::swap(A[piv], A[col]);
    std::swap(r[piv], r[col]);
    ExactScalar inv = A[col][col].inverse();
    for (std::size_t row = col + 1; row < n; ++row) {
      if (A[row][col].is_zero()) continue;
      ExactScalar factor = A[row][col] * inv;
      for (std::size_t k = col; k < n; ++k) A[row][k] -= factor * A[col][k];
      r[row] -= factor * r[col];
    }
  }
  ExactVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    ExactScalar acc = r[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= A[i][k] * x[k];
    x[i] = acc * A[i][i].inverse();
  }
  // Residual check on the untouched input.
  for (std::size_t i = 0; i < n; ++i) {
    ExactScalar acc;
    for (std::size_t k = 0; k < n; ++k) acc += M[i][k] * x[k];
    if (acc != b[i]) throw std::logic_error("solve_exact: residual check failed");
  }
  return x;
}

inline ExactScalar det_exact(const ExactMatrix& M) {
  std::size_t n = M.size();
  ExactMatrix A = M;
  ExactScalar det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col].is_zero()) ++piv;
    if (piv == n) return ExactScalar();
    if (piv != col) {
      std::swap(A[piv], A[col]);
      det = -det;
    }
    det *= A[col][col];
    ExactScalar inv = A[col][col].inverse();
    for (std::size_t row = col + 1; row < n; ++row) {
      if (A[row][col].is_zero()) continue;
      ExactScalar factor = A[row][col] * inv;
      for (std::size_t k = col; k < n; ++k) A[row][k] -= factor * A[col][k];
    }
  }
  return det;
}

using FloatMatrix = std::vector<std::vector<std::complex<double>>>;
using FloatVector = std::vector<std::complex<double>>;

struct FloatSolveResult {
  FloatVector x;
  double condition_advisory;  // ratio of largest to smallest pivot magnitude
};

// Partial-pivoting elimination for the float path.
inline FloatSolveResult solve_float(FloatMatrix A, FloatVector b) {
  std::size_t n = A.size();
  double pmax = 0, pmin = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
    if (std::abs(A[piv][col]) == 0) throw SingularMatrix(col);
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    double mag = std::abs(A[col][col]);
    pmax = std::max(pmax, mag);
    pmin = (col == 0) ? mag : std::min(pmin, mag);
    for (std::size_t row = col + 1; row < n; ++row) {
      std::complex<double> factor = A[row][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[row][k] -= factor * A[col][k];
      b[row] -= factor * b[col];
    }
  }
  FloatVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    std::complex<double> acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= A[i][k] * x[k];
    x[i] = acc / A[i][i];
  }
  return {std::move(x), pmin > 0 ? pmax / pmin : 0.0};
}

}  // namespace opakit
