#pragma once

// Speculative execution: K independent clones of the accelerator, each with
// its own sample stream, run concurrently; the coordinator keeps the first k
// successful completions and returns the best feasible one among them.
// Remaining clones are told to stop and whatever they produce afterwards is
// dropped.
//
// Every clone has its own thread. Actual computation is gated by
// `concurrency` slots (default: hardware threads, capped at K), so an
// injected straggler delay, which models external contention, holds no
// compute slot while it waits.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "packlp/accelerator.hpp"
#include "packlp/config.hpp"
#include "packlp/errors.hpp"
#include "packlp/rng.hpp"

namespace packlp {

/// Test hook that delays clones before they start computing.
///
///   off
///   fixed:clone=<id>,delay=<seconds>      one clone, fixed delay
///   pareto:scale=<seconds>,shape=<a>      every clone, delay = scale (U^(-1/a) - 1)
///
/// Pareto draws use SplitMix64(mix64(clone seed)).
struct StragglerModel {
  enum class Kind { off, fixed, pareto };
  Kind kind = Kind::off;
  std::size_t clone = 0;
  double delay = 0.0;
  double scale = 0.0;
  double shape = 1.5;

  static StragglerModel fixed(std::size_t clone_id, double seconds) {
    StragglerModel s;
    s.kind = Kind::fixed;
    s.clone = clone_id;
    s.delay = seconds;
    return s;
  }

  static StragglerModel pareto(double scale, double shape) {
    StragglerModel s;
    s.kind = Kind::pareto;
    s.scale = scale;
    s.shape = shape;
    return s;
  }

  static StragglerModel parse(std::string_view text) {
    text = detail::trim(text);
    if (text.empty() || text == "off") return {};
    const auto colon = text.find(':');
    const auto name = text.substr(0, colon);
    KeyValueConfig args;
    if (colon != std::string_view::npos) {
      std::string body(text.substr(colon + 1));
      std::replace(body.begin(), body.end(), ',', '\n');
      args = KeyValueConfig::parse(body);
    }
    if (name == "fixed") return fixed(args.integer_or("clone", 0), args.number_or("delay", 0.0));
    if (name == "pareto") {
      auto s = pareto(args.number_or("scale", 0.0), args.number_or("shape", 1.5));
      if (!(s.shape > 0.0)) throw SpecError("pareto shape must be positive");
      return s;
    }
    throw SpecError("unknown straggler model '" + std::string(name) + "'");
  }

  std::chrono::duration<double> delay_for(std::size_t clone_id, std::uint64_t seed) const {
    switch (kind) {
      case Kind::fixed:
        return std::chrono::duration<double>(clone_id == clone ? delay : 0.0);
      case Kind::pareto: {
        SplitMix64 rng(mix64(seed));
        const double u = 1.0 - rng.uniform01();  // (0, 1]
        return std::chrono::duration<double>(scale * (std::pow(u, -1.0 / shape) - 1.0));
      }
      default:
        return std::chrono::duration<double>(0.0);
    }
  }
};

struct CloneOptions {
  std::size_t K = 8;
  std::size_t k = 4;
  std::uint64_t master_seed = 0;
  std::size_t concurrency = 0;       // 0: hardware threads, capped at K
  StragglerModel straggler;
  bool full_search = true;           // false: one sample at `single_eps_f`
  double single_eps_f = 0.0;
};

struct CloneResult {
  std::size_t clone_id = 0;
  std::optional<std::vector<double>> x;  // empty on failure
  double objective = 0.0;
  bool feasible = false;
  double eps_f_used = 1.0;
  std::chrono::duration<double> wall_time{0};   // start of run_clones to completion
  std::chrono::duration<double> compute_time{0};
  std::uint64_t seed = 0;
  std::string error;
};

struct ClonesResult {
  CloneResult best;
  bool fallback = false;                 // no feasible result among the first k
  std::vector<CloneResult> completed;    // first k completions, in completion order
  std::chrono::duration<double> wall_time{0};  // until the k-th completion
};

/// Seed of clone `id`.
inline std::uint64_t clone_seed(std::uint64_t master, std::size_t id) { return derive_seed(master, id); }

/// One clone, run to completion on the calling thread.
inline CloneResult run_single_clone(const PackingLp& lp, const Solver& solver, const AcceleratorConfig& config,
                                    const CloneOptions& options, std::size_t id, std::stop_token stop = {}) {
  using clock = std::chrono::steady_clock;
  CloneResult r;
  r.clone_id = id;
  r.seed = clone_seed(options.master_seed, id);
  const auto t0 = clock::now();
  try {
    AcceleratorConfig cfg = config;
    cfg.seed = r.seed;
    if (options.full_search) {
      auto res = accelerate(lp, solver, cfg, stop);
      if (res.cancelled) {
        r.error = "cancelled";
      } else {
        r.objective = res.report.objective;
        r.feasible = res.report.feasible;
        r.eps_f_used = res.eps_f_used;
        r.x = std::move(res.x);
      }
    } else {
      SplitMix64 rng(r.seed);
      auto once = accelerate_once(lp, solver, cfg.eps_s, options.single_eps_f, rng, cfg.alpha_d);
      r.objective = objective(lp, once.x);
      r.feasible = check_feasible(lp, once.x, cfg.feasibility_tol).feasible;
      r.eps_f_used = options.single_eps_f;
      r.x = std::move(once.x);
    }
  } catch (const Error& e) {
    r.error = e.what();
    r.x.reset();
  }
  r.compute_time = clock::now() - t0;
  return r;
}

inline ClonesResult run_clones(const PackingLp& lp, const Solver& solver, const AcceleratorConfig& config,
                               const CloneOptions& options) {
  using clock = std::chrono::steady_clock;
  if (options.K == 0 || options.k == 0 || options.k > options.K) {
    throw SpecError("clone counts must satisfy 1 <= k <= K");
  }
  config.validate();
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t slots = std::min(options.K, options.concurrency ? options.concurrency : hw);

  struct Shared {
    std::mutex mu;
    std::condition_variable_any cv;
    std::vector<CloneResult> completed;
    std::vector<std::string> failures;
    std::size_t finished = 0;
    std::chrono::duration<double> kth_time{0};
  } shared;
  std::stop_source stop;
  const auto start = clock::now();

  // Compute slots go to ready clones in clone-id order, so a run with one
  // slot and no delays is reproducible. A delayed clone becomes ready when
  // its delay ends.
  std::vector<std::chrono::duration<double>> delays(options.K);
  std::mutex gate_mu;
  std::condition_variable_any gate_cv;
  std::set<std::size_t> ready;
  std::size_t free_slots = slots;
  for (std::size_t id = 0; id < options.K; ++id) {
    delays[id] = options.straggler.delay_for(id, clone_seed(options.master_seed, id));
    if (delays[id].count() <= 0.0) ready.insert(id);
  }

  auto clone_body = [&](std::size_t id) {
    const std::stop_token token = stop.get_token();
    if (delays[id].count() > 0.0) {
      {
        std::unique_lock lock(shared.mu);
        shared.cv.wait_for(lock, token, delays[id], [] { return false; });
      }
      std::lock_guard lock(gate_mu);
      ready.insert(id);
    }
    bool ran = false;
    CloneResult r;
    bool admitted = false;
    {
      std::unique_lock lock(gate_mu);
      admitted = gate_cv.wait(lock, token, [&] { return free_slots > 0 && *ready.begin() == id; });
      ready.erase(id);
      if (admitted) --free_slots;
      gate_cv.notify_all();
    }
    if (admitted) {
      r = run_single_clone(lp, solver, config, options, id, token);
      ran = true;
    }
    r.wall_time = clock::now() - start;

    // Record before giving the slot back so completion order follows slot order.
    {
      std::lock_guard lock(shared.mu);
      ++shared.finished;
      if (ran && !token.stop_requested() && shared.completed.size() < options.k) {
        if (r.x) {
          shared.completed.push_back(std::move(r));
          if (shared.completed.size() == options.k) shared.kth_time = clock::now() - start;
        } else {
          shared.failures.push_back("clone " + std::to_string(id) + ": " + r.error);
        }
      }
    }
    if (admitted) {
      std::lock_guard lock(gate_mu);
      ++free_slots;
      gate_cv.notify_all();
    }
    shared.cv.notify_all();
  };

  ClonesResult out;
  {
    std::vector<std::jthread> threads;
    threads.reserve(options.K);
    for (std::size_t id = 0; id < options.K; ++id) threads.emplace_back(clone_body, id);

    std::unique_lock lock(shared.mu);
    shared.cv.wait(lock, [&] { return shared.completed.size() >= options.k || shared.finished == options.K; });
    if (shared.completed.size() < options.k) shared.kth_time = clock::now() - start;
    stop.request_stop();
    shared.cv.notify_all();
    out.wall_time = shared.kth_time;
    out.completed = shared.completed;  // later finishers are ignored once stop is requested
    lock.unlock();
  }  // joins

  if (out.completed.empty()) {
    std::string msg = "all clones failed:";
    for (const auto& f : shared.failures) msg += "\n  " + f;
    throw CloningError(msg);
  }

  const CloneResult* best = nullptr;
  for (const auto& r : out.completed) {
    if (!r.feasible) continue;
    if (!best || r.objective > best->objective ||
        (r.objective == best->objective && r.clone_id < best->clone_id)) {
      best = &r;
    }
  }
  if (best) {
    out.best = *best;
  } else {
    out.fallback = true;
    out.best.clone_id = options.K;
    out.best.x = std::vector<double>(lp.n(), 0.0);
    out.best.feasible = true;
    out.best.objective = 0.0;
    out.best.eps_f_used = 1.0;
  }
  return out;
}

}  // namespace packlp
