#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "opakit/opa.hpp"
#include "opakit/zero_scan.hpp"

namespace opakit {

// Rectangular data array, 1-based (j,k) externally per the recursion's
// convention; out-of-range reads are zero.
class DataArray {
 public:
  DataArray(int rows, int cols) : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {}

  static DataArray impulse(int rows, int cols) {
    DataArray a(rows, cols);
    a.at(1, 1) = ExactScalar(1);
    return a;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  ExactScalar& at(int j, int k) { return entries_[idx(j, k)]; }
  ExactScalar get(int j, int k) const {
    if (j < 1 || k < 1 || j > rows_ || k > cols_) return ExactScalar();
    return entries_[idx(j, k)];
  }

  bool operator==(const DataArray& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

  DataArray operator+(const DataArray& o) const {
    DataArray r(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
    return r;
  }

  std::string csv() const {
    std::ostringstream os;
    for (int j = 1; j <= rows_; ++j) {
      for (int k = 1; k <= cols_; ++k) os << (k > 1 ? "," : "") << get(j, k).str();
      os << "\n";
    }
    return os.str();
  }

  static DataArray parse_csv(const std::string& text) {
    std::vector<std::vector<ExactScalar>> rows;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<ExactScalar> row;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) row.push_back(parse_scalar(cell));
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("DataArray: empty CSV");
    DataArray a(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[j].size() != rows[0].size()) throw std::invalid_argument("DataArray: ragged CSV");
      for (std::size_t k = 0; k < rows[j].size(); ++k)
        a.at(static_cast<int>(j) + 1, static_cast<int>(k) + 1) = rows[j][k];
    }
    return a;
  }

 private:
  std::size_t idx(int j, int k) const {
    return static_cast<std::size_t>(j - 1) * cols_ + static_cast<std::size_t>(k - 1);
  }
  int rows_, cols_;
  std::vector<ExactScalar> entries_;
};

// Recursive filter A/B; the constant term of B must be nonzero.
struct FilterSpec {
  MPoly A;
  MPoly B;

  FilterSpec(MPoly a, MPoly b) : A(std::move(a)), B(std::move(b)) {
    if (B.at_origin().is_zero())
      throw std::invalid_argument("FilterSpec: constant term of B must be nonzero");
  }
};

// Output recursion r_{m,n} = sum (a_{j,k}/b11) d_{m-j+1,n-k+1}
//                          - sum (b_{j,k}/b11) r_{m-j+1,n-k+1}, row-major.
inline DataArray run_recursion(const FilterSpec& fs, const DataArray& data, int out_rows, int out_cols) {
  ExactScalar b11_inv = fs.B.at_origin().inverse();
  DataArray out(out_rows, out_cols);
  for (int m = 1; m <= out_rows; ++m)
    for (int n = 1; n <= out_cols; ++n) {
      ExactScalar acc;
      for (const auto& [e, a] : fs.A.terms())
        acc += a * b11_inv * data.get(m - e[0], n - e[1]);
      for (const auto& [e, b] : fs.B.terms()) {
        if (e[0] == 0 && e[1] == 0) continue;
        acc -= b * b11_inv * out.get(m - e[0], n - e[1]);
      }
      out.at(m, n) = acc;
    }
  return out;
}

struct ImpulseReport {
  DataArray response;
  double max_abs = 0;
  double frame_decay = 0;  // geometric fit on anti-diagonal frame maxima, report-only
};

inline ImpulseReport impulse_response(const FilterSpec& fs, int rows, int cols) {
  ImpulseReport rep{run_recursion(fs, DataArray::impulse(rows, cols), rows, cols)};
  int frames = rows + cols - 1;
  std::vector<double> frame_max(static_cast<std::size_t>(frames), 0.0);
  for (int m = 1; m <= rows; ++m)
    for (int n = 1; n <= cols; ++n) {
      double v = std::abs(rep.response.get(m, n).to_complex());
      rep.max_abs = std::max(rep.max_abs, v);
      auto& f = frame_max[static_cast<std::size_t>(m + n - 2)];
      f = std::max(f, v);
    }
  // Average ratio of successive frame maxima over the last quarter of the window.
  int start = 3 * frames / 4;
  double acc = 0;
  int count = 0;
  for (int i = std::max(start, 1); i < frames; ++i)
    if (frame_max[static_cast<std::size_t>(i - 1)] > 0) {
      acc += frame_max[static_cast<std::size_t>(i)] / frame_max[static_cast<std::size_t>(i - 1)];
      ++count;
    }
  rep.frame_decay = count ? acc / count : 0.0;
  return rep;
}

struct StabilityVerdict {
  enum class Kind { Stable, Unstable, Inconclusive };
  Kind kind = Kind::Inconclusive;
  ZeroFreeVerdict zero_scan;
};

// Justice-Shanks: 1/B is BIBO stable iff B is zero-free on the closed bidisk.
inline StabilityVerdict stability_check(const MPoly& B, int grid = 2048, double margin = 1e-3) {
  StabilityVerdict v;
  v.zero_scan = polydisk_zero_free(B, grid, margin);
  switch (v.zero_scan.kind) {
    case ZeroFreeVerdict::Kind::ZeroFreeClosed: v.kind = StabilityVerdict::Kind::Stable; break;
    case ZeroFreeVerdict::Kind::ZeroFound: v.kind = StabilityVerdict::Kind::Unstable; break;
    case ZeroFreeVerdict::Kind::Inconclusive: v.kind = StabilityVerdict::Kind::Inconclusive; break;
  }
  return v;
}

struct StabilizeReport {
  MPoly p_n_star;
  StabilityVerdict substitute_stability;
  StabilityVerdict original_stability;
  bool succeeded = false;
  double original_frame_decay = 0;
  double substitute_frame_decay = 0;
};

// Hardy-bidisk optimal approximant substitution for 1/B; reports whether the
// substitute is itself stable (it need not be).
inline StabilizeReport stabilize(const MPoly& B, int order, int grid = 2048, double margin = 1e-3) {
  if (B.at_origin().is_zero()) throw std::invalid_argument("stabilize: B(0,0) must be nonzero");
  SpaceSpec hardy = SpaceSpec::dirichlet_bidisk(0, 0);
  StabilizeReport rep{opa(hardy, B, order).approximant};
  rep.original_stability = stability_check(B, grid, margin);
  rep.substitute_stability = stability_check(rep.p_n_star, grid, margin);
  rep.succeeded = rep.substitute_stability.kind == StabilityVerdict::Kind::Stable;
  MPoly one = MPoly::constant(2, ExactScalar(1));
  rep.original_frame_decay = impulse_response(FilterSpec(one, B), 16, 16).frame_decay;
  rep.substitute_frame_decay = impulse_response(FilterSpec(one, rep.p_n_star), 16, 16).frame_decay;
  return rep;
}

}  // namespace opakit
