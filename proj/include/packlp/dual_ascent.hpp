#pragma once

// Greedy water-filling dual ascent. Experimental: its alpha_d is measured on
// the returned pair, not certified.
//
// Start at phi = 0 with x_j = 1 for every c_j > 0. While some row is
// violated, raise phi uniformly on the violated rows. A kept column j loses
// reduced cost at rate g_j = sum over violated rows of a_ij, so it reaches
// zero at t_j = (c_j - a_j.phi) / g_j. Let t* be the smallest such t_j;
// every column with t_j <= (1 + delta) t* is dropped (x_j = 0) and phi rises
// by the largest dropped t_j. Dropped columns end with reduced cost <= 0 and
// kept ones with reduced cost > 0, so primal slackness holds with
// alpha_p = 1 and x stays binary.

#include <algorithm>
#include <chrono>
#include <limits>
#include <string>
#include <vector>

#include "packlp/errors.hpp"
#include "packlp/packing_lp.hpp"
#include "packlp/solver.hpp"

namespace packlp {

struct DualAscentOptions {
  double delta = 1e-3;
  std::size_t max_rounds = 10000;
  double tol = 1e-9;
};

class DualAscentSolver final : public Solver {
 public:
  explicit DualAscentSolver(DualAscentOptions opt = {}) : opt_(opt) {
    if (!(opt_.delta > 0.0)) throw SpecError("dual ascent: delta must be positive");
  }

  std::string_view name() const noexcept override { return "dual-ascent"; }

  /// alpha_d is only known after a solve; the outcome carries the measured value.
  SolverContract declared_contract() const noexcept override { return {1.0, 1.0, false}; }

  SolverOutcome solve(const PackingLp& lp) const override {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t m = lp.m(), n = lp.n();
    const auto b = lp.b();
    const auto c = lp.c();

    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) x[j] = c[j] > 0.0 ? 1.0 : 0.0;
    std::vector<double> phi(m, 0.0);
    std::vector<double> ax = row_activity(lp, x);
    std::vector<double> reduced(c.begin(), c.end());  // c_j - a_j.phi for kept columns
    std::vector<char> raised(m);
    std::vector<double> t(n);

    std::size_t rounds = 0;
    for (;;) {
      bool any = false;
      for (std::size_t i = 0; i < m; ++i) {
        raised[i] = ax[i] > b[i] + opt_.tol * std::max(1.0, b[i]);
        any = any || raised[i];
      }
      if (!any) break;
      if (++rounds > opt_.max_rounds) {
        throw SolverError("dual ascent: no convergence within " + std::to_string(opt_.max_rounds) +
                          " rounds");
      }

      constexpr double inf = std::numeric_limits<double>::infinity();
      double t_min = inf;
      for (std::size_t j = 0; j < n; ++j) {
        t[j] = inf;
        if (x[j] == 0.0) continue;
        const auto col = lp.column(j);
        double g = 0.0;
        for (std::size_t k = 0; k < col.size(); ++k) {
          if (raised[col.rows[k]]) g += col.values[k];
        }
        if (g > 0.0) {
          t[j] = std::max(0.0, reduced[j] / g);
          t_min = std::min(t_min, t[j]);
        }
      }
      if (t_min == inf) throw SolverError("dual ascent: violated row with no removable column");

      const double window = t_min * (1.0 + opt_.delta);
      double raise = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (t[j] <= window) raise = std::max(raise, t[j]);
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (raised[i]) phi[i] += raise;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (x[j] == 0.0 || t[j] == inf) continue;
        const auto col = lp.column(j);
        double g = 0.0;
        for (std::size_t k = 0; k < col.size(); ++k) {
          if (raised[col.rows[k]]) g += col.values[k];
        }
        reduced[j] -= raise * g;
        if (t[j] <= window) {
          x[j] = 0.0;
          for (std::size_t k = 0; k < col.size(); ++k) ax[col.rows[k]] -= col.values[k];
        }
      }
    }

    SolverOutcome out;
    out.dual.phi = phi;
    out.dual.psi.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      out.dual.psi[j] = std::max(0.0, c[j] - lp.column(j).dot(phi));
    }
    out.primal.objective = objective(lp, x);
    out.primal.x = std::move(x);
    out.iterations = rounds;
    const auto report = check_slackness(lp, out.primal.x, out.dual, 1.0,
                                        std::numeric_limits<double>::infinity(), 1e-9);
    out.contract = {1.0, report.measured_alpha_d, false};
    out.wall_time = std::chrono::steady_clock::now() - start;
    return out;
  }

  const DualAscentOptions& options() const noexcept { return opt_; }

 private:
  DualAscentOptions opt_;
};

inline SolverOutcome dual_ascent_solve(const PackingLp& lp, double delta) {
  DualAscentOptions opt;
  opt.delta = delta;
  return DualAscentSolver(opt).solve(lp);
}

}  // namespace packlp
