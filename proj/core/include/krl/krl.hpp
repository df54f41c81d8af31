#pragma once

#include "krl/cones.hpp"
#include "krl/errors.hpp"
#include "krl/grid.hpp"
#include "krl/instances.hpp"
#include "krl/io.hpp"
#include "krl/operator.hpp"
#include "krl/oracles.hpp"
#include "krl/properties.hpp"
#include "krl/sampling.hpp"
#include "krl/solver.hpp"
#include "krl/trace.hpp"
#include "krl/types.hpp"
