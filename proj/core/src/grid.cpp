#include "krl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krl/errors.hpp"

namespace krl {

Vector Grid::nodes() const {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = node(i);
    return x;
}

void Grid::validate() const {
    if (n < 3) throw ConfigError("grid needs at least 3 interior nodes, got n = " + std::to_string(n));
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw ConfigError("grid interval must satisfy a < b");
}

Vector hat_function(const Grid& grid) {
    const double mid = 0.5 * (grid.a + grid.b);
    const double half = 0.5 * (grid.b - grid.a);
    Vector u(grid.n);
    for (Index i = 0; i < grid.n; ++i) u(i) = 1.0 - std::abs(grid.node(i) - mid) / half;
    return u;
}

}  // namespace krl
