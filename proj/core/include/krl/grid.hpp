#pragma once

#include "krl/types.hpp"

namespace krl {

/// Uniform grid on (a, b) with n interior nodes a + (i+1) h, h = (b - a)/(n + 1).
/// Boundary values at a and b are implicit.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    Index n = 0;

    [[nodiscard]] double spacing() const { return (b - a) / static_cast<double>(n + 1); }
    [[nodiscard]] double node(Index i) const { return a + static_cast<double>(i + 1) * spacing(); }
    [[nodiscard]] Vector nodes() const;

    /// Throws ConfigError unless n >= 3 and a < b.
    void validate() const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Interior values on a grid; Dirichlet boundary values are identically zero.
struct GridFunction {
    Grid grid;
    Vector values;
};

/// Piecewise-linear tent vanishing at both ends with peak 1 at the midpoint.
[[nodiscard]] Vector hat_function(const Grid& grid);

}  // namespace krl
