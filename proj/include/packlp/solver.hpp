#pragma once

// Black-box solver interface and the approximate complementary slackness
// verifier.
//
// A solver returns a primal x in [0,1]^n and dual prices y = [phi, psi]. Its
// contract (alpha_p, alpha_d) states how far the pair may be from exact
// complementary slackness:
//
//   x_j > 0    =>  c_j <= a_j.phi + psi_j <= alpha_p c_j
//   phi_i > 0  =>  b_i / alpha_d <= (A x)_i <= b_i
//   psi_j > 0  =>  1 / alpha_d <= x_j <= 1
//
// and such a pair is within a factor alpha_p * alpha_d of optimal.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "packlp/packing_lp.hpp"
#include "packlp/rng.hpp"

namespace packlp {

struct SolverContract {
  double alpha_p = 1.0;
  double alpha_d = 1.0;
  bool certified = true;  // false when alpha_d is measured after the fact
};

struct SolverOutcome {
  PrimalSolution primal;
  DualSolution dual;
  std::size_t iterations = 0;
  std::chrono::nanoseconds wall_time{0};
  SolverContract contract;
};

/// Implementations must be safe to call concurrently on distinct instances:
/// `solve` is const and keeps all working state local to the call.
class Solver {
 public:
  virtual ~Solver() = default;
  virtual std::string_view name() const noexcept = 0;
  virtual SolverContract declared_contract() const noexcept = 0;
  virtual SolverOutcome solve(const PackingLp& lp) const = 0;
};

struct SlacknessViolation {
  enum class Kind {
    primal_column,  // x_j > 0 with a_j.y outside [c_j, alpha_p c_j]
    dual_row,       // phi_i > 0 with (A x)_i outside [b_i / alpha_d, b_i]
    dual_bound,     // psi_j > 0 with x_j outside [1 / alpha_d, 1]
  };
  Kind kind;
  std::size_t index;

  friend bool operator==(const SlacknessViolation&, const SlacknessViolation&) = default;
};

struct SlacknessReport {
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool primal_ok = true;
  bool dual_ok = true;
  double measured_alpha_p = 1.0;
  double measured_alpha_d = 1.0;
  std::vector<SlacknessViolation> violating_indices;
};

inline SlacknessReport check_slackness(const PackingLp& lp, std::span<const double> x,
                                       const DualSolution& y, double alpha_p, double alpha_d,
                                       double tol) {
  require_length(x, lp.n(), "x");
  require_length(y.phi, lp.m(), "phi");
  require_length(y.psi, lp.n(), "psi");
  constexpr double inf = std::numeric_limits<double>::infinity();

  SlacknessReport r;
  r.primal_feasible = check_feasible(lp, x, tol).feasible;

  const auto c = lp.c();
  const auto b = lp.b();
  bool dual_feasible = std::all_of(y.phi.begin(), y.phi.end(), [&](double v) { return v >= -tol; }) &&
                       std::all_of(y.psi.begin(), y.psi.end(), [&](double v) { return v >= -tol; });

  for (std::size_t j = 0; j < lp.n(); ++j) {
    const double priced = lp.column(j).dot(y.phi) + y.psi[j];
    if (priced < c[j] - tol) dual_feasible = false;
    if (!(x[j] > tol)) continue;

    double need = 1.0;
    if (priced < c[j] - tol) {
      need = inf;
    } else if (priced > tol) {
      need = c[j] > 0.0 ? (priced - tol) / c[j] : inf;
    }
    r.measured_alpha_p = std::max(r.measured_alpha_p, need);
    if (need > alpha_p) {
      r.primal_ok = false;
      r.violating_indices.push_back({SlacknessViolation::Kind::primal_column, j});
    }
  }
  r.dual_feasible = dual_feasible;

  const auto ax = row_activity(lp, x);
  for (std::size_t i = 0; i < lp.m(); ++i) {
    if (!(y.phi[i] > tol)) continue;
    double need = 1.0;
    if (ax[i] > b[i] + tol) {
      need = inf;
    } else if (b[i] > 0.0) {
      need = ax[i] + tol > 0.0 ? b[i] / (ax[i] + tol) : inf;
    }
    r.measured_alpha_d = std::max(r.measured_alpha_d, need);
    if (need > alpha_d) {
      r.dual_ok = false;
      r.violating_indices.push_back({SlacknessViolation::Kind::dual_row, i});
    }
  }
  for (std::size_t j = 0; j < lp.n(); ++j) {
    if (!(y.psi[j] > tol)) continue;
    double need = 1.0;
    if (x[j] > 1.0 + tol) {
      need = inf;
    } else {
      need = x[j] + tol > 0.0 ? 1.0 / (x[j] + tol) : inf;
    }
    r.measured_alpha_d = std::max(r.measured_alpha_d, need);
    if (need > alpha_d) {
      r.dual_ok = false;
      r.violating_indices.push_back({SlacknessViolation::Kind::dual_bound, j});
    }
  }
  r.measured_alpha_p = std::max(r.measured_alpha_p, 1.0);
  r.measured_alpha_d = std::max(r.measured_alpha_d, 1.0);
  return r;
}

/// c_j <- c_j (1 + u_j), u_j ~ Uniform[0, magnitude], drawn in index order.
/// Breaks ties among columns so that at most m of them can sit exactly on
/// any price hyperplane phi.a_j = c_j.
inline PackingLp perturb_costs(const PackingLp& lp, std::uint64_t seed, double magnitude = 1e-9) {
  SplitMix64 rng(seed);
  std::vector<double> c(lp.c().begin(), lp.c().end());
  for (double& v : c) v *= 1.0 + rng.uniform(0.0, magnitude);
  return lp.with_costs(std::move(c));
}

}  // namespace packlp
