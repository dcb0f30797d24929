#pragma once

#include "packlp/accelerator.hpp"
#include "packlp/bench.hpp"
#include "packlp/cloning.hpp"
#include "packlp/config.hpp"
#include "packlp/dual_ascent.hpp"
#include "packlp/errors.hpp"
#include "packlp/instances.hpp"
#include "packlp/io.hpp"
#include "packlp/packing_lp.hpp"
#include "packlp/report.hpp"
#include "packlp/rng.hpp"
#include "packlp/simplex.hpp"
#include "packlp/solver.hpp"
#include "packlp/solvers.hpp"
