#pragma once

// Experiment runner and CSV reports.
//
// A plan is a generator spec, a list of eps_s values, a trial count and a set
// of methods. Trial t uses the instance seed derive_seed(master, t); the
// accelerator seed for the e-th eps_s value is derive_seed(instance_seed,
// 1 + e) and the clone master seed is derive_seed(instance_seed, 1001 + e).
// Every instance is solved in full once, which gives OPT and the baseline
// time; accelerated rows then carry relative error and speedup.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "packlp/accelerator.hpp"
#include "packlp/cloning.hpp"
#include "packlp/config.hpp"
#include "packlp/errors.hpp"
#include "packlp/instances.hpp"
#include "packlp/io.hpp"
#include "packlp/report.hpp"
#include "packlp/solvers.hpp"

namespace packlp {

struct ExperimentPlan {
  GeneratorSpec spec;
  std::vector<double> eps_s_values{0.01};
  std::size_t trials = 20;
  std::vector<std::string> methods{"full", "accelerate"};
  std::uint64_t master_seed = 0;
  AcceleratorConfig accel;            // eps_s and seed are set per row
  CloneOptions clones;                // master_seed is set per row
  SolverSettings solver_settings;
  std::size_t full_max_nnz = 0;       // 0: no limit; larger instances get no baseline
  bool warmup = true;
  std::ostream* progress = nullptr;

  bool wants(std::string_view method) const {
    return std::find(methods.begin(), methods.end(), method) != methods.end();
  }

  void validate() const {
    if (trials == 0) throw SpecError("trials must be >= 1");
    if (eps_s_values.empty()) throw SpecError("no eps_s values");
    for (const auto& m : methods) {
      if (m != "full" && m != "accelerate" && m != "clones") throw SpecError("unknown method '" + m + "'");
    }
    if (methods.empty()) throw SpecError("no methods");
  }

  /// Keys: the generator keys, plus eps_s (list), trials, methods (list),
  /// master_seed, solver, ef_schedule (list), alpha_d, resample_per_ef,
  /// full_max_nnz, clones.K, clones.k, clones.master_seed (ignored: derived),
  /// clones.straggler, clones.concurrency.
  static ExperimentPlan from_config(const KeyValueConfig& cfg) {
    ExperimentPlan plan;
    plan.spec = GeneratorSpec::from_config(cfg);
    if (auto v = cfg.get("eps_s")) plan.eps_s_values = detail::parse_double_list(*v);
    plan.trials = cfg.integer_or("trials", plan.trials);
    if (auto v = cfg.get("methods")) {
      plan.methods.clear();
      std::string_view s = *v;
      while (!s.empty()) {
        const auto comma = s.find(',');
        plan.methods.emplace_back(detail::trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
      }
    }
    plan.master_seed = cfg.integer_or("master_seed", 0);
    plan.accel.solver = cfg.get_or("solver", "simplex");
    if (auto v = cfg.get("ef_schedule")) plan.accel.ef_schedule = detail::parse_double_list(*v);
    if (auto v = cfg.get("alpha_d")) plan.accel.alpha_d = detail::parse_double(*v);
    plan.accel.resample_per_ef = cfg.get_or("resample_per_ef", "true") != "false";
    plan.full_max_nnz = cfg.integer_or("full_max_nnz", 0);
    plan.clones.K = cfg.integer_or("clones.K", plan.clones.K);
    plan.clones.k = cfg.integer_or("clones.k", plan.clones.k);
    plan.clones.concurrency = cfg.integer_or("clones.concurrency", 0);
    if (auto v = cfg.get("clones.straggler")) plan.clones.straggler = StragglerModel::parse(*v);
    plan.validate();
    return plan;
  }
};

inline std::vector<RunReport> run_experiment(const ExperimentPlan& plan) {
  using clock = std::chrono::steady_clock;
  plan.validate();
  const auto solver = make_solver(plan.accel.solver, plan.solver_settings);
  const auto exact = make_solver("simplex", plan.solver_settings);
  std::vector<RunReport> rows;

  for (std::size_t t = 0; t < plan.trials; ++t) {
    GeneratorSpec spec = plan.spec;
    spec.seed = derive_seed(plan.master_seed, t);
    const PackingLp lp = generate(spec);
    const std::string fp = spec.fingerprint();

    if (plan.warmup && t == 0) {
      AcceleratorConfig cfg = plan.accel;
      cfg.eps_s = plan.eps_s_values.front();
      cfg.seed = ~spec.seed;
      (void)accelerate(lp, *solver, cfg);
    }

    std::optional<double> opt;
    std::optional<double> full_time;
    RunReport full;
    full.instance = fp;
    full.instance_seed = spec.seed;
    full.method = "full";
    full.trial_index = t;
    if (plan.full_max_nnz == 0 || lp.nnz() <= plan.full_max_nnz) {
      try {
        const auto t0 = clock::now();
        const auto out = exact->solve(lp);
        const double secs = Seconds(clock::now() - t0).count();
        opt = out.primal.objective;
        full_time = secs;
        full.objective = out.primal.objective;
        full.solve_time = secs;
        full.total_time = secs;
        full.feasible = check_feasible(lp, out.primal.x, plan.accel.feasibility_tol).feasible;
        if (*opt > 0.0) {
          full.opt_reference = opt;
          full.relative_error = 0.0;
        }
      } catch (const SolverError&) {
        opt.reset();
        full_time.reset();
      }
    }
    if (!full_time) {
      full.objective = std::nan("");
      full.feasible = false;
    }
    if (plan.wants("full")) rows.push_back(full);
    if (plan.progress) {
      *plan.progress << "trial " << t << " " << fp << " full "
                     << (full_time ? format_real(*full_time) + " s" : std::string("unavailable")) << '\n';
    }

    auto finish = [&](RunReport& r) {
      r.instance = fp;
      r.instance_seed = spec.seed;
      r.trial_index = t;
      if (opt && *opt > 0.0) {
        r.opt_reference = opt;
        r.relative_error = relative_error(r.objective, *opt);
      }
      if (full_time && r.total_time > 0.0) r.speedup = *full_time / r.total_time;
      rows.push_back(r);
    };

    for (std::size_t e = 0; e < plan.eps_s_values.size(); ++e) {
      AcceleratorConfig cfg = plan.accel;
      cfg.eps_s = plan.eps_s_values[e];
      cfg.seed = derive_seed(spec.seed, 1 + e);
      if (plan.wants("accelerate")) {
        auto res = accelerate(lp, *solver, cfg);
        finish(res.report);
      }
      if (plan.wants("clones")) {
        CloneOptions co = plan.clones;
        co.master_seed = derive_seed(spec.seed, 1001 + e);
        const auto res = run_clones(lp, *solver, cfg, co);
        RunReport r;
        r.method = "clones";
        r.eps_s = cfg.eps_s;
        r.alpha_d = cfg.alpha_d.value_or(solver->declared_contract().alpha_d);
        r.eps_f_used = res.best.eps_f_used;
        r.objective = res.best.objective;
        r.feasible = res.best.x && check_feasible(lp, *res.best.x, cfg.feasibility_tol).feasible;
        r.fallback = res.fallback;
        r.total_time = res.wall_time.count();
        r.clones_total = co.K;
        r.clones_awaited = co.k;
        finish(r);
      }
    }
  }
  return rows;
}

// ---- CSV ----

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "instance",     "instance_seed",  "method",     "trial_index", "eps_s",
      "eps_f_used",   "alpha_d",        "objective",  "opt_reference", "relative_error",
      "solve_time",   "threshold_time", "total_time", "speedup",     "feasible",
      "fallback",     "attempts",       "clones_K",   "clones_k"};
  return cols;
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quote", lineno);
  out.push_back(std::move(cur));
  return out;
}

inline std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

}  // namespace detail

inline void emit_csv(std::span<const RunReport> reports, std::ostream& out) {
  if (reports.empty()) throw SpecError("no reports to write");
  const auto& cols = csv_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
  out << '\n';
  for (const auto& r : reports) {
    out << detail::csv_quote(r.instance) << ',' << r.instance_seed << ',' << r.method << ','
        << r.trial_index << ',' << format_real(r.eps_s) << ',' << format_real(r.eps_f_used) << ','
        << format_real(r.alpha_d) << ',' << format_real(r.objective) << ','
        << detail::opt_real(r.opt_reference) << ',' << detail::opt_real(r.relative_error) << ','
        << format_real(r.solve_time) << ',' << format_real(r.threshold_time) << ','
        << format_real(r.total_time) << ',' << detail::opt_real(r.speedup) << ','
        << (r.feasible ? 1 : 0) << ',' << (r.fallback ? 1 : 0) << ',' << r.attempts << ','
        << r.clones_total << ',' << r.clones_awaited << '\n';
  }
}

inline void emit_csv(std::span<const RunReport> reports, const std::string& path) {
  if (reports.empty()) throw SpecError("no reports to write");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(reports, out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::vector<RunReport> parse_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError("empty CSV", 1);
  if (detail::csv_split(line, 1) != csv_columns()) throw ParseError("unexpected CSV header", 1);
  std::vector<RunReport> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = detail::csv_split(line, lineno);
    if (f.size() != csv_columns().size()) throw ParseError("wrong field count", lineno);
    auto num = [&](std::size_t k) { return detail::parse_double(f[k], lineno); };
    auto opt = [&](std::size_t k) -> std::optional<double> {
      if (f[k].empty()) return std::nullopt;
      return num(k);
    };
    auto u64 = [&](std::size_t k) { return detail::parse_u64(f[k], lineno); };
    RunReport r;
    r.instance = f[0];
    r.instance_seed = u64(1);
    r.method = f[2];
    r.trial_index = u64(3);
    r.eps_s = num(4);
    r.eps_f_used = num(5);
    r.alpha_d = num(6);
    r.objective = num(7);
    r.opt_reference = opt(8);
    r.relative_error = opt(9);
    r.solve_time = num(10);
    r.threshold_time = num(11);
    r.total_time = num(12);
    r.speedup = opt(13);
    r.feasible = u64(14) != 0;
    r.fallback = u64(15) != 0;
    r.attempts = u64(16);
    r.clones_total = u64(17);
    r.clones_awaited = u64(18);
    out.push_back(std::move(r));
  }
  return out;
}

// ---- aggregation ----

struct MeanStd {
  double mean = std::nan("");
  double stddev = std::nan("");
  std::size_t count = 0;
};

inline MeanStd mean_std(std::span<const double> v) {
  MeanStd s;
  s.count = v.size();
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  double sq = 0.0;
  for (double x : v) sq += (x - s.mean) * (x - s.mean);
  s.stddev = v.size() > 1 ? std::sqrt(sq / static_cast<double>(v.size() - 1)) : 0.0;
  return s;
}

struct CellSummary {
  std::string method;
  double eps_s = 0.0;
  std::size_t rows = 0;
  std::size_t feasible = 0;
  MeanStd relative_error;
  MeanStd speedup;
  MeanStd total_time;
  MeanStd eps_f_used;
};

/// Mean and standard deviation per (method, eps_s) cell. Full-solve rows
/// form one cell with eps_s = 1.
inline std::vector<CellSummary> summarize(std::span<const RunReport> reports) {
  std::map<std::pair<std::string, double>, std::vector<const RunReport*>> cells;
  for (const auto& r : reports) cells[{r.method, r.method == "full" ? 1.0 : r.eps_s}].push_back(&r);
  std::vector<CellSummary> out;
  for (const auto& [key, rs] : cells) {
    CellSummary c;
    c.method = key.first;
    c.eps_s = key.second;
    c.rows = rs.size();
    std::vector<double> err, spd, tt, ef;
    for (const auto* r : rs) {
      c.feasible += r->feasible ? 1 : 0;
      if (r->relative_error) err.push_back(*r->relative_error);
      if (r->speedup) spd.push_back(*r->speedup);
      tt.push_back(r->total_time);
      ef.push_back(r->eps_f_used);
    }
    c.relative_error = mean_std(err);
    c.speedup = mean_std(spd);
    c.total_time = mean_std(tt);
    c.eps_f_used = mean_std(ef);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace packlp
