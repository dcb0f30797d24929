#pragma once

// Packing linear programs
//
//   maximize    sum_j c_j x_j
//   subject to  sum_j a_ij x_j <= b_i     i in [m]
//               0 <= x_j <= 1             j in [n]
//
// with a_ij in [0,1], b >= 0, c >= 0. The matrix is stored column-major
// (compressed sparse columns) since every hot loop in the library walks
// columns: pricing, thresholding and feasibility checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "packlp/errors.hpp"

namespace packlp {

struct Entry {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Read-only view of one column's nonzeros, rows ascending.
struct ColumnView {
  std::span<const std::uint32_t> rows;
  std::span<const double> values;

  std::size_t size() const noexcept { return rows.size(); }

  /// sum_i a_ij * y_i
  double dot(std::span<const double> y) const noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) s += values[k] * y[rows[k]];
    return s;
  }
};

class PackingLp {
 public:
  PackingLp() = default;

  /// Builds from triplets in any order. Throws ValidationError on duplicate
  /// (i, j) pairs, out-of-range indices or out-of-domain values.
  PackingLp(std::size_t m, std::size_t n, std::vector<double> b, std::vector<double> c,
            std::vector<Entry> entries)
      : m_(m), n_(n), b_(std::move(b)), c_(std::move(c)) {
    check_shape();
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
      return x.col != y.col ? x.col < y.col : x.row < y.row;
    });
    col_ptr_.assign(n_ + 1, 0);
    rows_.reserve(entries.size());
    values_.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const Entry& e = entries[k];
      if (e.row >= m_ || e.col >= n_) {
        throw ValidationError("entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                              ") out of range");
      }
      if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
        throw ValidationError("duplicate entry (" + std::to_string(e.row) + ", " +
                              std::to_string(e.col) + ")");
      }
      check_coefficient(e.row, e.col, e.value);
      ++col_ptr_[e.col + 1];
      rows_.push_back(static_cast<std::uint32_t>(e.row));
      values_.push_back(e.value);
    }
    std::partial_sum(col_ptr_.begin(), col_ptr_.end(), col_ptr_.begin());
  }

  /// Builds directly from compressed columns. Rows within a column must be
  /// strictly ascending.
  static PackingLp from_columns(std::size_t m, std::vector<double> b, std::vector<double> c,
                                std::vector<std::size_t> col_ptr, std::vector<std::uint32_t> rows,
                                std::vector<double> values) {
    PackingLp lp;
    lp.m_ = m;
    lp.n_ = c.size();
    lp.b_ = std::move(b);
    lp.c_ = std::move(c);
    lp.check_shape();
    if (col_ptr.size() != lp.n_ + 1 || col_ptr.front() != 0 || col_ptr.back() != rows.size() ||
        rows.size() != values.size()) {
      throw ValidationError("inconsistent compressed column arrays");
    }
    for (std::size_t j = 0; j < lp.n_; ++j) {
      if (col_ptr[j] > col_ptr[j + 1]) throw ValidationError("column pointers not monotone");
      for (std::size_t k = col_ptr[j]; k < col_ptr[j + 1]; ++k) {
        if (rows[k] >= m) throw ValidationError("row index out of range");
        if (k > col_ptr[j] && rows[k] <= rows[k - 1]) {
          throw ValidationError("rows not strictly ascending in column " + std::to_string(j));
        }
        lp.check_coefficient(rows[k], j, values[k]);
      }
    }
    lp.col_ptr_ = std::move(col_ptr);
    lp.rows_ = std::move(rows);
    lp.values_ = std::move(values);
    return lp;
  }

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return rows_.size(); }
  std::span<const double> b() const noexcept { return b_; }
  std::span<const double> c() const noexcept { return c_; }

  ColumnView column(std::size_t j) const noexcept {
    const std::size_t lo = col_ptr_[j];
    const std::size_t len = col_ptr_[j + 1] - lo;
    return {std::span<const std::uint32_t>(rows_).subspan(lo, len),
            std::span<const double>(values_).subspan(lo, len)};
  }

  /// Nonzeros in column-major order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(nnz());
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) out.push_back({rows_[k], j, values_[k]});
    }
    return out;
  }

  std::span<const std::size_t> col_ptr() const noexcept { return col_ptr_; }
  std::span<const std::uint32_t> row_indices() const noexcept { return rows_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Same matrix and costs, new right-hand side.
  PackingLp with_rhs(std::vector<double> b) const {
    PackingLp lp = *this;
    lp.b_ = std::move(b);
    lp.check_shape();
    return lp;
  }

  /// Same matrix and right-hand side, new costs.
  PackingLp with_costs(std::vector<double> c) const {
    PackingLp lp = *this;
    lp.c_ = std::move(c);
    lp.check_shape();
    return lp;
  }

  friend bool operator==(const PackingLp&, const PackingLp&) = default;

 private:
  void check_shape() const {
    if (m_ == 0 || n_ == 0) throw ValidationError("m and n must be positive");
    if (b_.size() != m_) throw ValidationError("b has length " + std::to_string(b_.size()) + ", expected " + std::to_string(m_));
    if (c_.size() != n_) throw ValidationError("c has length " + std::to_string(c_.size()) + ", expected " + std::to_string(n_));
    for (std::size_t i = 0; i < m_; ++i) {
      if (!(b_[i] >= 0.0) || !std::isfinite(b_[i])) throw ValidationError("b[" + std::to_string(i) + "] must be finite and >= 0");
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (!(c_[j] >= 0.0) || !std::isfinite(c_[j])) throw ValidationError("c[" + std::to_string(j) + "] must be finite and >= 0");
    }
  }

  static void check_coefficient(std::size_t i, std::size_t j, double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw ValidationError("a(" + std::to_string(i) + ", " + std::to_string(j) + ") = " +
                            std::to_string(a) + " outside [0, 1]");
    }
  }

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<double> b_;
  std::vector<double> c_;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<std::uint32_t> rows_;
  std::vector<double> values_;
};

struct PrimalSolution {
  std::vector<double> x;
  double objective = 0.0;
};

/// phi: duals of the packing rows. psi: duals of the x_j <= 1 bounds of the
/// LP that was solved.
struct DualSolution {
  std::vector<double> phi;
  std::vector<double> psi;
};

inline void require_length(std::span<const double> v, std::size_t expected, const char* what) {
  if (v.size() != expected) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(expected));
  }
}

inline double objective(const PackingLp& lp, std::span<const double> x) {
  require_length(x, lp.n(), "x");
  const auto c = lp.c();
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += c[j] * x[j];
  return s;
}

/// A x
inline std::vector<double> row_activity(const PackingLp& lp, std::span<const double> x) {
  require_length(x, lp.n(), "x");
  std::vector<double> ax(lp.m(), 0.0);
  for (std::size_t j = 0; j < lp.n(); ++j) {
    if (x[j] == 0.0) continue;
    const auto col = lp.column(j);
    for (std::size_t k = 0; k < col.size(); ++k) ax[col.rows[k]] += col.values[k] * x[j];
  }
  return ax;
}

/// b.phi + sum psi
inline double dual_objective(const PackingLp& lp, const DualSolution& y) {
  require_length(y.phi, lp.m(), "phi");
  require_length(y.psi, lp.n(), "psi");
  const auto b = lp.b();
  double s = 0.0;
  for (std::size_t i = 0; i < lp.m(); ++i) s += b[i] * y.phi[i];
  for (double p : y.psi) s += p;
  return s;
}

inline constexpr double kDefaultFeasibilityTol = 1e-7;

enum class Domain {
  box,     // 0 <= x_j <= 1
  binary,  // x_j in {0, 1} exactly
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<double> slack;                 // b_i - (A x)_i
  double worst_violation = 0.0;              // max(0, largest row or bound excess)
  std::vector<std::size_t> violated_rows;
  std::vector<std::size_t> violated_vars;
};

inline FeasibilityReport check_feasible(const PackingLp& lp, std::span<const double> x,
                                        double tol = kDefaultFeasibilityTol,
                                        Domain domain = Domain::box) {
  if (tol < 0.0) throw SpecError("tolerance must be nonnegative");
  FeasibilityReport r;
  const auto ax = row_activity(lp, x);
  const auto b = lp.b();
  r.slack.resize(lp.m());
  for (std::size_t i = 0; i < lp.m(); ++i) {
    r.slack[i] = b[i] - ax[i];
    if (ax[i] > b[i] + tol) r.violated_rows.push_back(i);
    r.worst_violation = std::max(r.worst_violation, ax[i] - b[i]);
  }
  for (std::size_t j = 0; j < lp.n(); ++j) {
    const double v = x[j];
    bool bad = !(v >= -tol && v <= 1.0 + tol);
    if (domain == Domain::binary) bad = bad || !(v == 0.0 || v == 1.0);
    if (bad) r.violated_vars.push_back(j);
    r.worst_violation = std::max({r.worst_violation, -v, v - 1.0});
    if (std::isnan(v)) r.worst_violation = std::numeric_limits<double>::infinity();
  }
  r.feasible = r.violated_rows.empty() && r.violated_vars.empty();
  return r;
}

/// B = min_i b_i
inline double min_b(const PackingLp& lp) {
  const auto b = lp.b();
  return *std::min_element(b.begin(), b.end());
}

/// 1 - obj / opt
inline double relative_error(double obj, double opt) {
  if (!(opt > 0.0)) throw InvalidReferenceError("reference objective must be positive");
  return 1.0 - obj / opt;
}

inline bool is_binary(std::span<const double> x) noexcept {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

}  // namespace packlp
