#pragma once

// Independent oracles for the tests. Nothing here calls the library's
// solvers; everything works on a dense copy of the instance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "packlp/packing_lp.hpp"
#include "packlp/rng.hpp"

namespace support {

using Dense = std::vector<std::vector<double>>;  // [i][j]

inline Dense dense(const packlp::PackingLp& lp) {
  Dense a(lp.m(), std::vector<double>(lp.n(), 0.0));
  for (const auto& e : lp.entries()) a[e.row][e.col] = e.value;
  return a;
}

inline std::vector<double> dense_activity(const Dense& a, const std::vector<double>& x) {
  std::vector<double> ax(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) ax[i] += a[i][j] * x[j];
  }
  return ax;
}

/// Small random packing LP built entry by entry from its own generator.
inline packlp::PackingLp random_lp(std::size_t m, std::size_t n, double p, std::uint64_t seed,
                                   double b_lo = 0.5, double b_hi = 3.0) {
  packlp::SplitMix64 rng(seed ^ 0xabcdef12345ULL);
  std::vector<double> b(m), c(n);
  for (auto& v : b) v = rng.uniform(b_lo, b_hi);
  for (auto& v : c) v = rng.uniform(1.0, 10.0);
  std::vector<packlp::Entry> entries;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.uniform01() < p) entries.push_back({i, j, rng.uniform(0.05, 1.0)});
    }
  }
  return packlp::PackingLp(m, n, std::move(b), std::move(c), std::move(entries));
}

/// Solves the k x k system M z = r by Gaussian elimination with partial
/// pivoting. Returns false when M is (numerically) singular.
inline bool solve_dense(Dense mat, std::vector<double> r, std::vector<double>& z) {
  const std::size_t k = r.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < k; ++row) {
      if (std::abs(mat[row][col]) > std::abs(mat[piv][col])) piv = row;
    }
    if (std::abs(mat[piv][col]) < 1e-10) return false;
    std::swap(mat[piv], mat[col]);
    std::swap(r[piv], r[col]);
    for (std::size_t row = 0; row < k; ++row) {
      if (row == col) continue;
      const double f = mat[row][col] / mat[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < k; ++c) mat[row][c] -= f * mat[col][c];
      r[row] -= f * r[col];
    }
  }
  z.resize(k);
  for (std::size_t i = 0; i < k; ++i) z[i] = r[i] / mat[i][i];
  return true;
}

/// OPT by exhaustive vertex enumeration of the dual
///   min_{phi >= 0} b.phi + sum_j max(0, c_j - a_j.phi).
/// The function is convex piecewise linear on a pointed region, so its
/// minimum sits at a vertex of the arrangement formed by the hyperplanes
/// a_j.phi = c_j and phi_i = 0; every choice of m of them is tried.
inline double opt_by_dual_vertices(const packlp::PackingLp& lp) {
  const auto a = dense(lp);
  const std::size_t m = lp.m(), n = lp.n();
  const auto b = lp.b();
  const auto c = lp.c();
  auto g = [&](const std::vector<double>& phi) {
    double v = 0.0;
    for (std::size_t i = 0; i < m; ++i) v += b[i] * phi[i];
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += a[i][j] * phi[i];
      v += std::max(0.0, c[j] - dot);
    }
    return v;
  };

  const std::size_t planes = n + m;  // 0..n-1 columns, n..n+m-1 coordinate planes
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(m);
  for (std::size_t k = 0; k < m; ++k) pick[k] = k;
  std::vector<double> phi;
  while (true) {
    Dense mat(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      const std::size_t h = pick[r];
      if (h < n) {
        for (std::size_t i = 0; i < m; ++i) mat[r][i] = a[i][h];
        rhs[r] = c[h];
      } else {
        mat[r][h - n] = 1.0;
      }
    }
    if (solve_dense(mat, rhs, phi) &&
        std::all_of(phi.begin(), phi.end(), [](double v) { return v >= -1e-9; })) {
      for (double& v : phi) v = std::max(0.0, v);
      best = std::min(best, g(phi));
    }
    // next combination
    std::size_t k = m;
    while (k > 0 && pick[k - 1] == planes - m + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t t = k; t < m; ++t) pick[t] = pick[t - 1] + 1;
  }
  return best;
}

/// Brute force over x in {0,1}^n (n <= 20).
inline double best_binary(const packlp::PackingLp& lp) {
  const auto a = dense(lp);
  const std::size_t n = lp.n();
  double best = 0.0;
  std::vector<double> x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1 ? 1.0 : 0.0;
    const auto ax = dense_activity(a, x);
    bool ok = true;
    for (std::size_t i = 0; i < lp.m(); ++i) ok = ok && ax[i] <= lp.b()[i] + 1e-12;
    if (!ok) continue;
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += lp.c()[j] * x[j];
    best = std::max(best, obj);
  }
  return best;
}

inline std::filesystem::path temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "packlp_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace support
