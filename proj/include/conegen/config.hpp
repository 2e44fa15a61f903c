#pragma once

#include <cstdlib>
#include <string>

#include "conegen/error.hpp"

namespace conegen {

/// Every numerical tolerance used by the library, in one place.
struct Tolerances {
  double membership = 1e-9;        // cone membership, absolute
  double interior_margin = 1e-12;  // strict interior test
  double strict_norm = 1e-8;       // "nonzero" threshold for strict cone order
  double lp_feasibility = 1e-9;    // simplex feasibility / optimality
  double pivot = 1e-11;            // smallest admissible pivot magnitude
  double fd_step = 1e-5;           // finite-difference step for derivative checks
  double fd_tolerance = 1e-4;
  double gap = 1e-5;               // duality gap asserted under modified Slater
  double kkt = 1e-6;               // KKT residual of primal solutions
  double certificate = 1e-9;       // slack admitted by stationarity certificates
  double psd_floor = -1e-10;       // smallest eigenvalue accepted for PSD matrices
  double active_bound = 1e-7;      // |x - bound| below which a bound is active
};

/// Iteration caps for the iterative solvers.
struct IterationLimits {
  int simplex_pivots = 50000;
  int lcp_pivots = 50000;
  int dual_ascent = 50000;
  int projected_gradient = 200000;
};

struct Config {
  Tolerances tol;
  IterationLimits limits;
};

/// Default configuration, with `CONEGEN_TOL` (absolute membership tolerance)
/// applied when present in the environment.
inline Config default_config() {
  Config cfg;
  if (const char* env = std::getenv("CONEGEN_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v >= 0.0)) {
      throw InputError(std::string("CONEGEN_TOL is not a nonnegative number: ") + env);
    }
    cfg.tol.membership = v;
  }
  return cfg;
}

}  // namespace conegen
