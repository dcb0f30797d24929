#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "packlp/dual_ascent.hpp"
#include "packlp/errors.hpp"
#include "packlp/simplex.hpp"

namespace packlp {

struct SolverSettings {
  SimplexOptions simplex;
  DualAscentOptions dual_ascent;
};

/// "simplex" | "dual-ascent"
inline std::unique_ptr<Solver> make_solver(std::string_view name, const SolverSettings& settings = {}) {
  if (name == "simplex") return std::make_unique<SimplexSolver>(settings.simplex);
  if (name == "dual-ascent") return std::make_unique<DualAscentSolver>(settings.dual_ascent);
  throw SpecError("unknown solver '" + std::string(name) + "' (expected simplex or dual-ascent)");
}

}  // namespace packlp
