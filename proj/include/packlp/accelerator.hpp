#pragma once

// Sample-and-threshold acceleration for packing LPs.
//
// accelerate_once: draw s = ceil(eps_s n) columns uniformly, solve the LP on
// those columns with the right-hand side scaled to (1-eps_f) eps_s/alpha_d b,
// and set every original x_j to 1 exactly when its column is strictly
// cheaper than c_j at the sample's row prices phi.
//
// accelerate: walk an increasing eps_f schedule starting at 0 and return the
// first thresholded vector that is feasible for the full instance. When the
// schedule runs out the all-zeros vector is returned with eps_f_used = 1 and
// the fallback flag set, so the result is always feasible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stop_token>
#include <string>
#include <unordered_map>
#include <vector>

#include "packlp/errors.hpp"
#include "packlp/packing_lp.hpp"
#include "packlp/report.hpp"
#include "packlp/rng.hpp"
#include "packlp/solver.hpp"

namespace packlp {

using Seconds = std::chrono::duration<double>;

struct SampleLp {
  PackingLp lp;                         // s columns, scaled right-hand side
  std::vector<std::size_t> index_map;   // sample position -> original column
  double eps_s = 1.0;
  double eps_f = 0.0;
  double alpha_d = 1.0;
};

/// 0, 0.01, ..., 0.99
inline std::vector<double> default_ef_schedule() {
  std::vector<double> s(100);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = static_cast<double>(k) / 100.0;
  return s;
}

struct AcceleratorConfig {
  double eps_s = 0.01;
  std::vector<double> ef_schedule = default_ef_schedule();
  std::optional<double> alpha_d;  // defaults to the solver's declared alpha_d
  std::uint64_t seed = 0;
  bool resample_per_ef = true;    // false: one sample, re-solved per eps_f
  std::string solver = "simplex";
  double feasibility_tol = kDefaultFeasibilityTol;
  std::ostream* log = nullptr;    // per-attempt sample-LP details

  void validate() const {
    if (!(eps_s > 0.0 && eps_s <= 1.0)) throw SpecError("eps_s must lie in (0, 1]");
    if (ef_schedule.empty()) throw SpecError("eps_f schedule is empty");
    for (std::size_t k = 0; k < ef_schedule.size(); ++k) {
      if (!(ef_schedule[k] >= 0.0 && ef_schedule[k] < 1.0)) throw SpecError("eps_f values must lie in [0, 1)");
      if (k > 0 && !(ef_schedule[k] > ef_schedule[k - 1])) {
        throw SpecError("eps_f schedule must be strictly increasing");
      }
    }
    if (alpha_d && !(*alpha_d >= 1.0)) throw SpecError("alpha_d must be >= 1");
  }
};

/// ceil(eps_s n), guarded against representation error in eps_s (0.07 * 100
/// evaluates to 7.000000000000001).
inline std::size_t sample_size(std::size_t n, double eps_s) {
  const double raw = eps_s * static_cast<double>(n);
  auto s = static_cast<std::size_t>(std::ceil(raw - 1e-9 * std::max(1.0, raw)));
  return std::clamp<std::size_t>(s, 1, n);
}

/// Uniform sample without replacement, ascending. Draw order is a partial
/// Fisher-Yates shuffle of 0..n-1: step k swaps position k with
/// k + below(n - k).
inline std::vector<std::size_t> sample_variables(std::size_t n, double eps_s, SplitMix64& rng) {
  if (n == 0) throw SpecError("n must be positive");
  if (!(eps_s > 0.0 && eps_s <= 1.0)) throw SpecError("eps_s must lie in (0, 1]");
  const std::size_t s = sample_size(n, eps_s);
  std::unordered_map<std::size_t, std::size_t> moved;  // sparse view of the shuffled array
  moved.reserve(2 * s);
  auto at = [&](std::size_t k) {
    const auto it = moved.find(k);
    return it == moved.end() ? k : it->second;
  };
  std::vector<std::size_t> out(s);
  for (std::size_t k = 0; k < s; ++k) {
    const std::size_t pick = k + rng.below(n - k);
    const std::size_t vk = at(k), vp = at(pick);
    moved[pick] = vk;
    moved[k] = vp;
    out[k] = vp;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline SampleLp build_sample_lp(const PackingLp& lp, std::span<const std::size_t> sample, double eps_s,
                                double eps_f, double alpha_d) {
  if (!(eps_f >= 0.0 && eps_f < 1.0)) throw SpecError("eps_f must lie in [0, 1)");
  if (!(alpha_d >= 1.0)) throw SpecError("alpha_d must be >= 1");
  if (!(eps_s > 0.0 && eps_s <= 1.0)) throw SpecError("eps_s must lie in (0, 1]");
  if (sample.empty()) throw IndexError("empty sample");

  std::vector<double> rhs(lp.m());
  for (std::size_t i = 0; i < lp.m(); ++i) rhs[i] = (1.0 - eps_f) * eps_s / alpha_d * lp.b()[i];

  std::vector<double> c;
  std::vector<std::size_t> col_ptr{0};
  std::vector<std::uint32_t> rows;
  std::vector<double> values;
  c.reserve(sample.size());
  col_ptr.reserve(sample.size() + 1);
  for (std::size_t j : sample) {
    if (j >= lp.n()) throw IndexError("sample index " + std::to_string(j) + " out of range");
    c.push_back(lp.c()[j]);
    const auto col = lp.column(j);
    rows.insert(rows.end(), col.rows.begin(), col.rows.end());
    values.insert(values.end(), col.values.begin(), col.values.end());
    col_ptr.push_back(rows.size());
  }
  return {PackingLp::from_columns(lp.m(), std::move(rhs), std::move(c), std::move(col_ptr),
                                  std::move(rows), std::move(values)),
          std::vector<std::size_t>(sample.begin(), sample.end()), eps_s, eps_f, alpha_d};
}

/// x_j = 1 iff sum_i a_ij phi_i < c_j, compared exactly; ties give 0.
inline std::vector<double> threshold(const PackingLp& lp, std::span<const double> phi) {
  require_length(phi, lp.m(), "phi");
  if (std::any_of(phi.begin(), phi.end(), [](double v) { return !(v >= 0.0); })) {
    throw ValidationError("row prices must be nonnegative");
  }
  const auto c = lp.c();
  std::vector<double> x(lp.n());
  for (std::size_t j = 0; j < lp.n(); ++j) x[j] = lp.column(j).dot(phi) < c[j] ? 1.0 : 0.0;
  return x;
}

struct AccelerateOnceResult {
  std::vector<double> x;
  SampleLp sample;
  SolverOutcome outcome;
  Seconds solve_time{0};
  Seconds threshold_time{0};
};

/// One solve on a given sample followed by thresholding.
inline AccelerateOnceResult threshold_from_sample(const PackingLp& lp, const Solver& solver,
                                                  std::span<const std::size_t> sample, double eps_s,
                                                  double eps_f, double alpha_d) {
  using clock = std::chrono::steady_clock;
  AccelerateOnceResult r;
  r.sample = build_sample_lp(lp, sample, eps_s, eps_f, alpha_d);
  const auto t0 = clock::now();
  r.outcome = solver.solve(r.sample.lp);
  const auto t1 = clock::now();
  r.x = threshold(lp, r.outcome.dual.phi);
  const auto t2 = clock::now();
  r.solve_time = t1 - t0;
  r.threshold_time = t2 - t1;
  return r;
}

/// Sample, solve, threshold. The result is binary but not necessarily feasible.
inline AccelerateOnceResult accelerate_once(const PackingLp& lp, const Solver& solver, double eps_s,
                                            double eps_f, SplitMix64& rng,
                                            std::optional<double> alpha_d = std::nullopt) {
  const auto sample = sample_variables(lp.n(), eps_s, rng);
  return threshold_from_sample(lp, solver, sample, eps_s, eps_f,
                               alpha_d.value_or(solver.declared_contract().alpha_d));
}

struct AccelerateResult {
  std::vector<double> x;
  double eps_f_used = 1.0;
  bool fallback = false;
  bool cancelled = false;
  RunReport report;
  std::vector<std::string> diagnostics;  // solver failures per schedule point
};

inline AccelerateResult accelerate(const PackingLp& lp, const Solver& solver, const AcceleratorConfig& config,
                                   std::stop_token stop = {}) {
  using clock = std::chrono::steady_clock;
  config.validate();
  const auto start = clock::now();
  const double alpha_d = config.alpha_d.value_or(solver.declared_contract().alpha_d);

  AccelerateResult result;
  RunReport& rep = result.report;
  rep.method = "accelerate";
  rep.eps_s = config.eps_s;
  rep.alpha_d = alpha_d;

  SplitMix64 rng(config.seed);
  std::vector<std::size_t> sample;
  if (!config.resample_per_ef) sample = sample_variables(lp.n(), config.eps_s, rng);

  Seconds solve_time{0}, threshold_time{0};
  std::size_t failures = 0;
  bool found = false;
  for (double eps_f : config.ef_schedule) {
    if (stop.stop_requested()) {
      result.cancelled = true;
      break;
    }
    if (config.resample_per_ef) sample = sample_variables(lp.n(), config.eps_s, rng);
    ++rep.attempts;
    AccelerateOnceResult once;
    try {
      once = threshold_from_sample(lp, solver, sample, config.eps_s, eps_f, alpha_d);
    } catch (const SolverError& e) {
      ++failures;
      result.diagnostics.push_back("eps_f=" + std::to_string(eps_f) + ": " + e.what());
      continue;
    }
    solve_time += once.solve_time;
    threshold_time += once.threshold_time;
    const auto feas = check_feasible(lp, once.x, config.feasibility_tol);
    if (config.log) {
      *config.log << "eps_f " << eps_f << " sample obj " << once.outcome.primal.objective << " obj "
                  << objective(lp, once.x) << " worst violation " << feas.worst_violation
                  << (feas.feasible ? " feasible" : " infeasible") << '\n';
    }
    if (feas.feasible) {
      result.x = std::move(once.x);
      result.eps_f_used = eps_f;
      found = true;
      break;
    }
  }

  if (!result.cancelled && failures == config.ef_schedule.size()) {
    std::string msg = "solver failed at every schedule point:";
    for (const auto& d : result.diagnostics) msg += "\n  " + d;
    throw AcceleratorError(msg);
  }
  if (!found) {
    result.x.assign(lp.n(), 0.0);
    result.eps_f_used = 1.0;
    result.fallback = true;
  }
  rep.eps_f_used = result.eps_f_used;
  rep.fallback = result.fallback;
  rep.objective = objective(lp, result.x);
  rep.feasible = check_feasible(lp, result.x, config.feasibility_tol).feasible;
  rep.solve_time = solve_time.count();
  rep.threshold_time = threshold_time.count();
  rep.total_time = Seconds(clock::now() - start).count();
  return result;
}

struct TheoreticalEf {
  double value = 0.0;
  bool out_of_regime = false;  // value > 1: the guarantee says nothing
};

/// Smallest eps_f with a feasibility and approximation guarantee:
/// 3 sqrt(6 (m+2) ln n / (eps_s B)).
inline TheoreticalEf theoretical_ef(double m, double n, double eps_s, double B) {
  const double v = 3.0 * std::sqrt(6.0 * (m + 2.0) * std::log(n) / (eps_s * B));
  return {v, v > 1.0};
}

}  // namespace packlp
