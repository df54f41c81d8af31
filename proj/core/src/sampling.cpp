#include "krl/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace krl {

Vector sample_cone_point(Index n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = std::abs(normal(rng));

    const auto zeros = static_cast<Index>(std::lround(0.2 * static_cast<double>(n)));
    std::vector<Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Index{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    for (Index k = 0; k < zeros; ++k) x(idx[static_cast<std::size_t>(k)]) = 0.0;
    return x;
}

Vector sample_boundary_point(Index n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution keep(0.5);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    Vector x = Vector::Zero(n);
    for (Index i = 0; i < n; ++i)
        if (keep(rng)) x(i) = std::abs(normal(rng)) + 1e-3;
    // Force at least one zero and at least one nonzero coordinate.
    if (n > 1) x(pick(rng)) = 0.0;
    if ((x.array() == 0.0).all()) x(pick(rng)) = 1.0;
    return x;
}

Vector sample_unit_cone_point(Index n, Rng& rng) {
    Vector x = sample_cone_point(n, rng);
    double s = sup_norm(x);
    while (s == 0.0) {
        x = sample_cone_point(n, rng);
        s = sup_norm(x);
    }
    return x / s;
}

}  // namespace krl
