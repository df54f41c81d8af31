#pragma once

#include <random>

#include "krl/cones.hpp"
#include "krl/types.hpp"

namespace krl {

using Rng = std::mt19937_64;

/// Random point of the cone: coordinates |N(0,1)| with round(0.2 n) of them zeroed.
[[nodiscard]] Vector sample_cone_point(Index n, Rng& rng);

/// Random nonzero point on the boundary of the orthant: a random support of at most
/// n - 1 coordinates, or a single coordinate.
[[nodiscard]] Vector sample_boundary_point(Index n, Rng& rng);

/// sample_cone_point rescaled to unit sup norm (never zero).
[[nodiscard]] Vector sample_unit_cone_point(Index n, Rng& rng);

}  // namespace krl
