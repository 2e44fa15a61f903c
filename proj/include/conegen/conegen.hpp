#pragma once

// Umbrella header for the numerical library (no JSON or CLI dependencies).

#include "conegen/config.hpp"
#include "conegen/error.hpp"
#include "conegen/types.hpp"

#include "conegen/numkernel/enumerate.hpp"
#include "conegen/numkernel/lcp.hpp"
#include "conegen/numkernel/lp.hpp"
#include "conegen/numkernel/oracles.hpp"
#include "conegen/numkernel/projection.hpp"
#include "conegen/numkernel/qp.hpp"

#include "conegen/cones.hpp"
#include "conegen/demos.hpp"
#include "conegen/duality.hpp"
#include "conegen/gauge.hpp"
#include "conegen/lattice.hpp"
#include "conegen/penalty.hpp"
#include "conegen/scalarization.hpp"
