#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace packlp {

/// One measured run. Times are wall-clock seconds from a monotonic clock.
struct RunReport {
  std::string instance;  // generator fingerprint or file name
  std::uint64_t instance_seed = 0;
  std::string method;    // "full" | "accelerate" | "clones"
  double eps_s = 1.0;
  double eps_f_used = 0.0;
  double alpha_d = 1.0;
  double objective = 0.0;
  std::optional<double> opt_reference;
  std::optional<double> relative_error;
  double solve_time = 0.0;      // solver calls only
  double threshold_time = 0.0;  // thresholding passes only
  double total_time = 0.0;
  std::optional<double> speedup;
  bool feasible = false;
  bool fallback = false;        // schedule exhausted, all-zeros returned
  std::size_t trial_index = 0;
  std::size_t attempts = 0;     // schedule points tried
  std::size_t clones_total = 0;     // K, clones only
  std::size_t clones_awaited = 0;   // k, clones only
};

}  // namespace packlp
