#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "krl/errors.hpp"
#include "krl/instances.hpp"

namespace krl {

double HardySobolevSpec::best_constant() const {
    return std::pow((static_cast<double>(n_dim) - p) / p, p);
}

void HardySobolevSpec::validate() const {
    if (!(p > 1.0)) throw ConfigError("Hardy-Sobolev requires p > 1, got p = " + std::to_string(p));
    if (!(static_cast<double>(n_dim) > p))
        throw ConfigError("Hardy-Sobolev requires n_dim > p (n_dim = " + std::to_string(n_dim) +
                          ", p = " + std::to_string(p) + ")");
    const double cstar = best_constant();
    if (!(mu >= 0.0 && mu < cstar)) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "mu = " << mu << " must lie in [0, ((n_dim - p)/p)^p) = [0, " << cstar
            << "), the Hardy best constant bound";
        throw ConfigError(msg.str());
    }
    grid.validate();
    if (grid.a != 0.0) throw ConfigError("Hardy-Sobolev grid must start at r = 0");
    if (!weight) throw ConfigError("Hardy-Sobolev weight V is empty");
    for (Index i = 0; i < grid.n; ++i)
        if (!(weight(grid.node(i)) > 0.0)) throw ConfigError("Hardy-Sobolev weight V must be positive");
    if (max_iters <= 0) throw ConfigError("Hardy-Sobolev max_iters must be positive");
}

GridFunction hardy_sobolev_dirichlet_solve(const HardySobolevSpec& spec, const GridFunction& g) {
    spec.validate();
    if (g.values.size() != spec.grid.n)
        throw DimensionMismatch(spec.grid.n, g.values.size(), "hardy_sobolev_dirichlet_solve");

    GridFunction v = radial_plaplace_dirichlet_solve(spec.p, spec.n_dim, spec.grid, g);
    if (spec.mu == 0.0) return v;

    // Cell average of the Hardy weight r^{-p} against r^{n_dim-1} dr; cell 0 is [0, 1.5 h].
    const Index n = spec.grid.n;
    const double h = spec.grid.spacing();
    const double N = static_cast<double>(spec.n_dim);
    const double p = spec.p;
    Vector hardy(n);
    double lower = 0.0;
    for (Index i = 0; i < n; ++i) {
        const double upper = (static_cast<double>(i) + 1.5) * h;
        const double volume = (std::pow(upper, N) - std::pow(lower, N)) / N;
        const double singular = (std::pow(upper, N - p) - std::pow(lower, N - p)) / (N - p);
        hardy(i) = singular / volume;
        lower = upper;
    }

    GridFunction data = g;
    for (int it = 0; it < spec.max_iters; ++it) {
        for (Index i = 0; i < n; ++i) data.values(i) = g.values(i) + spec.mu * hardy(i) * phi(v.values(i), p);
        GridFunction next = radial_plaplace_dirichlet_solve(p, spec.n_dim, spec.grid, data);
        const double change = sup_norm(next.values - v.values);
        const double scale = sup_norm(next.values);
        v = std::move(next);
        if (change <= 1e-14 * scale) return v;
    }
    throw EvaluationFailure("hardy_sobolev_dirichlet_solve: Hardy-term iteration did not converge in " +
                            std::to_string(spec.max_iters) + " steps");
}

}  // namespace krl
