// packlp: generate, solve, accelerate and benchmark packing LPs.
//
// Exit codes: 0 success, 1 infeasible or invalid input, 2 solver failure,
// 3 I/O or parse failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "packlp/packlp.hpp"

namespace {

using namespace packlp;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kSolverFailure = 2;
constexpr int kIo = 3;

struct Common {
  std::uint64_t seed = 0;
  std::string eps_s = "0.01";
  std::string ef_schedule;
  std::string solver = "simplex";
  std::string out;
  std::string config;
  std::optional<double> alpha_d;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Common& c, bool list_eps_s = false) {
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--eps-s", c.eps_s, list_eps_s ? "Sampling fractions, comma-separated" : "Sampling fraction");
  cmd->add_option("--ef-schedule", c.ef_schedule, "eps_f values, comma-separated (default 0,0.01,...,0.99)");
  cmd->add_option("--solver", c.solver, "simplex | dual-ascent")->check(CLI::IsMember({"simplex", "dual-ascent"}));
  cmd->add_option("--out", c.out, "Output file");
  cmd->add_option("--config", c.config, "key = value file");
  cmd->add_option("--alpha-d", c.alpha_d, "Override the solver's alpha_d");
  cmd->add_flag("-v,--verbose", c.verbose, "Per-attempt details on stderr");
}

AcceleratorConfig accel_config(const Common& c) {
  AcceleratorConfig cfg;
  cfg.eps_s = detail::parse_double(c.eps_s);
  if (!c.ef_schedule.empty()) cfg.ef_schedule = detail::parse_double_list(c.ef_schedule);
  cfg.alpha_d = c.alpha_d;
  cfg.seed = c.seed;
  cfg.solver = c.solver;
  if (c.verbose) cfg.log = &std::cerr;
  return cfg;
}

void print_report(const RunReport& r) {
  std::printf("objective %.17g\n", r.objective);
  std::printf("eps_f_used %.17g\n", r.eps_f_used);
  std::printf("feasible %d\n", r.feasible ? 1 : 0);
  std::printf("fallback %d\n", r.fallback ? 1 : 0);
  std::printf("total_time %.6f\n", r.total_time);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packing LP acceleration toolkit"};
  app.require_subcommand(1);

  // gen
  Common gen_c;
  GeneratorSpec gen_spec;
  std::string gen_kind = "random";
  std::string gen_b = "0.1n";
  auto* gen = app.add_subcommand("gen", "Write a generated instance");
  add_common(gen, gen_c);
  gen->add_option("--kind", gen_kind, "random | vicinity")->check(CLI::IsMember({"random", "vicinity"}));
  gen->add_option("-m", gen_spec.m, "Rows (random)");
  gen->add_option("-n", gen_spec.n, "Columns (random)");
  gen->add_option("-p", gen_spec.p, "Nonzero probability (random)");
  gen->add_option("--b", gen_b, "Right-hand side: 0.1n or a number");
  gen->add_option("--nodes", gen_spec.nodes, "Ring nodes (vicinity)");
  gen->add_option("--vicinities", gen_spec.vicinities, "Vicinities, one row each (vicinity)");
  gen->add_option("--vicinity-size", gen_spec.vicinity_size, "Members per vicinity (vicinity)");
  gen->add_option("--cap", gen_spec.cap, "Row capacity (vicinity)");

  // solve
  Common solve_c;
  std::string solve_in, solve_duals;
  auto* solve = app.add_subcommand("solve", "Solve an instance in full");
  add_common(solve, solve_c);
  solve->add_option("instance", solve_in, "Instance file")->required();
  solve->add_option("--duals-out", solve_duals, "Write phi then psi, one per line");

  // accel
  Common accel_c;
  std::string accel_in;
  bool fixed_sample = false;
  auto* accel = app.add_subcommand("accel", "Sample, solve, threshold");
  add_common(accel, accel_c);
  accel->add_option("instance", accel_in, "Instance file")->required();
  accel->add_flag("--fixed-sample", fixed_sample, "Reuse one sample across the schedule");

  // clones
  Common clones_c;
  std::string clones_in;
  CloneOptions clone_opts;
  std::string straggler = "off";
  auto* clones = app.add_subcommand("clones", "Speculative run of K clones, best of the first k");
  add_common(clones, clones_c);
  clones->add_option("instance", clones_in, "Instance file")->required();
  clones->add_option("-K", clone_opts.K, "Clones launched");
  clones->add_option("-k", clone_opts.k, "Completions awaited");
  clones->add_option("--concurrency", clone_opts.concurrency, "Compute slots (0: hardware threads)");
  clones->add_option("--straggler", straggler, "off | fixed:clone=I,delay=S | pareto:scale=S,shape=A");

  // bench
  Common bench_c;
  std::size_t bench_trials = 0;
  std::string bench_methods;
  std::size_t bench_m = 0, bench_n = 0;
  auto* bench = app.add_subcommand("bench", "Run a sweep and write CSV");
  add_common(bench, bench_c, true);
  bench->add_option("--trials", bench_trials, "Instances per sweep point");
  bench->add_option("--methods", bench_methods, "full,accelerate,clones");
  bench->add_option("-m", bench_m, "Rows");
  bench->add_option("-n", bench_n, "Columns");

  // check
  Common check_c;
  std::string check_in, check_x, check_duals;
  double check_tol = kDefaultFeasibilityTol;
  double alpha_p = 1.0;
  bool check_binary = false;
  auto* check = app.add_subcommand("check", "Verify feasibility and slackness of a solution file");
  add_common(check, check_c);
  check->add_option("instance", check_in, "Instance file")->required();
  check->add_option("solution", check_x, "Solution file")->required();
  check->add_option("--duals", check_duals, "phi (m lines), optionally followed by psi (n lines)");
  check->add_option("--tol", check_tol, "Absolute tolerance");
  check->add_option("--alpha-p", alpha_p, "Primal slackness factor");
  check->add_flag("--binary", check_binary, "Require x in {0,1}");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      GeneratorSpec spec = gen_spec;
      if (!gen_c.config.empty()) spec = GeneratorSpec::from_config(KeyValueConfig::load(gen_c.config));
      if (gen_kind == "vicinity") {
        spec = GeneratorSpec::vicinity(gen_spec.nodes, gen_spec.vicinities, gen_spec.vicinity_size, gen_spec.cap, 0);
      }
      if (gen_b != "0.1n") {
        spec.b_tenth_n = false;
        spec.b_value = detail::parse_double(gen_b);
      }
      spec.seed = gen_c.seed;
      const auto lp = generate(spec);
      if (gen_c.out.empty()) {
        write_instance(lp, std::cout);
      } else {
        write_instance(lp, gen_c.out);
      }
      std::cerr << spec.fingerprint() << " nnz=" << lp.nnz() << '\n';
      return kOk;
    }

    if (*solve) {
      const auto lp = read_instance(solve_in);
      SolverSettings settings;
      if (solve_c.verbose) settings.simplex.log = &std::cerr;
      const auto out = make_solver(solve_c.solver, settings)->solve(lp);
      std::printf("objective %.17g\n", out.primal.objective);
      std::printf("dual_objective %.17g\n", dual_objective(lp, out.dual));
      std::printf("iterations %zu\n", out.iterations);
      std::printf("alpha_d %.17g\n", out.contract.alpha_d);
      std::printf("time %.6f\n", std::chrono::duration<double>(out.wall_time).count());
      if (!solve_c.out.empty()) write_vector(out.primal.x, solve_c.out);
      if (!solve_duals.empty()) {
        std::vector<double> y(out.dual.phi);
        y.insert(y.end(), out.dual.psi.begin(), out.dual.psi.end());
        write_vector(y, solve_duals);
      }
      return kOk;
    }

    if (*accel) {
      const auto lp = read_instance(accel_in);
      auto cfg = accel_config(accel_c);
      cfg.resample_per_ef = !fixed_sample;
      const auto solver = make_solver(cfg.solver);
      const auto res = accelerate(lp, *solver, cfg);
      print_report(res.report);
      std::printf("attempts %zu\n", res.report.attempts);
      for (const auto& d : res.diagnostics) std::cerr << d << '\n';
      if (!accel_c.out.empty()) write_vector(res.x, accel_c.out);
      return kOk;
    }

    if (*clones) {
      const auto lp = read_instance(clones_in);
      const auto cfg = accel_config(clones_c);
      CloneOptions opts = clone_opts;
      opts.master_seed = clones_c.seed;
      opts.straggler = StragglerModel::parse(straggler);
      const auto solver = make_solver(cfg.solver);
      const auto res = run_clones(lp, *solver, cfg, opts);
      std::printf("objective %.17g\n", res.best.objective);
      std::printf("best_clone %zu\n", res.best.clone_id);
      std::printf("eps_f_used %.17g\n", res.best.eps_f_used);
      std::printf("fallback %d\n", res.fallback ? 1 : 0);
      std::printf("wall_time %.6f\n", res.wall_time.count());
      for (const auto& r : res.completed) {
        std::printf("clone %zu objective %.17g feasible %d wall %.6f\n", r.clone_id, r.objective,
                    r.feasible ? 1 : 0, r.wall_time.count());
      }
      if (!clones_c.out.empty()) write_vector(*res.best.x, clones_c.out);
      return kOk;
    }

    if (*bench) {
      KeyValueConfig kv;
      if (!bench_c.config.empty()) kv = KeyValueConfig::load(bench_c.config);
      if (bench->count("--eps-s")) kv.set("eps_s", bench_c.eps_s);
      if (!bench_c.ef_schedule.empty()) kv.set("ef_schedule", bench_c.ef_schedule);
      if (bench->count("--solver")) kv.set("solver", bench_c.solver);
      if (bench->count("--seed")) kv.set("master_seed", std::to_string(bench_c.seed));
      if (bench_trials) kv.set("trials", std::to_string(bench_trials));
      if (!bench_methods.empty()) kv.set("methods", bench_methods);
      if (bench_m) kv.set("m", std::to_string(bench_m));
      if (bench_n) kv.set("n", std::to_string(bench_n));
      if (bench_c.alpha_d) kv.set("alpha_d", format_real(*bench_c.alpha_d));
      auto plan = ExperimentPlan::from_config(kv);
      if (bench_c.verbose) {
        plan.progress = &std::cerr;
        plan.accel.log = &std::cerr;
      }
      const auto rows = run_experiment(plan);
      if (bench_c.out.empty()) {
        emit_csv(rows, std::cout);
      } else {
        emit_csv(rows, bench_c.out);
      }
      auto pm = [](const MeanStd& v, int digits) {
        if (v.count == 0) return std::string("-");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f±%.*f", digits, v.mean, digits, v.count > 1 ? v.stddev : 0.0);
        return std::string(buf);
      };
      for (const auto& cell : summarize(rows)) {
        std::fprintf(stderr, "%-10s eps_s=%-6g rows=%zu feasible=%zu err=%s speedup=%s time=%.4f\n",
                     cell.method.c_str(), cell.eps_s, cell.rows, cell.feasible, pm(cell.relative_error, 4).c_str(),
                     pm(cell.speedup, 2).c_str(), cell.total_time.mean);
      }
      return kOk;
    }

    if (*check) {
      const auto lp = read_instance(check_in);
      const auto x = read_vector(check_x);
      require_length(x, lp.n(), "solution");
      const auto feas = check_feasible(lp, x, check_tol, check_binary ? Domain::binary : Domain::box);
      std::printf("objective %.17g\n", objective(lp, x));
      std::printf("feasible %d\n", feas.feasible ? 1 : 0);
      std::printf("worst_violation %.17g\n", feas.worst_violation);
      for (auto i : feas.violated_rows) std::printf("violated_row %zu\n", static_cast<std::size_t>(i));
      for (auto j : feas.violated_vars) std::printf("violated_var %zu\n", static_cast<std::size_t>(j));
      bool ok = feas.feasible;
      if (!check_duals.empty()) {
        const auto y = read_vector(check_duals);
        DualSolution dual;
        if (y.size() == lp.m()) {
          dual.phi = y;
          dual.psi.resize(lp.n());
          for (std::size_t j = 0; j < lp.n(); ++j) dual.psi[j] = std::max(0.0, lp.c()[j] - lp.column(j).dot(y));
        } else if (y.size() == lp.m() + lp.n()) {
          dual.phi.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(lp.m()));
          dual.psi.assign(y.begin() + static_cast<std::ptrdiff_t>(lp.m()), y.end());
        } else {
          throw DimensionError("duals: expected " + std::to_string(lp.m()) + " or " +
                               std::to_string(lp.m() + lp.n()) + " values, got " + std::to_string(y.size()));
        }
        const auto s = check_slackness(lp, x, dual, alpha_p, check_c.alpha_d.value_or(1.0), check_tol);
        std::printf("dual_objective %.17g\n", dual_objective(lp, dual));
        std::printf("dual_feasible %d\n", s.dual_feasible ? 1 : 0);
        std::printf("primal_slackness %d\n", s.primal_ok ? 1 : 0);
        std::printf("dual_slackness %d\n", s.dual_ok ? 1 : 0);
        std::printf("measured_alpha_p %.17g\n", s.measured_alpha_p);
        std::printf("measured_alpha_d %.17g\n", s.measured_alpha_d);
        ok = ok && s.dual_feasible && s.primal_ok && s.dual_ok;
      }
      return ok ? kOk : kInvalid;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const AcceleratorError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const CloningError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}
