#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "krl/errors.hpp"
#include "krl/instances.hpp"
#include "tridiagonal.hpp"

namespace krl {
namespace {

// Coefficient that realizes M(e) = a e.
double active_coefficient(double e, const PucciSpec& spec) {
    const bool upper = spec.variant == PucciVariant::Plus ? e > 0.0 : e < 0.0;
    return upper ? spec.big_lambda : spec.lambda_p;
}

Vector second_difference(const Vector& u, double h) {
    const Index n = u.size();
    Vector e(n);
    for (Index i = 0; i < n; ++i) {
        const double left = i > 0 ? u(i - 1) : 0.0;
        const double right = i + 1 < n ? u(i + 1) : 0.0;
        e(i) = (right - 2.0 * u(i) + left) / (h * h);
    }
    return e;
}

}  // namespace

void PucciSpec::validate() const {
    if (!(lambda_p > 0.0 && lambda_p <= big_lambda) || !std::isfinite(big_lambda))
        throw ConfigError("Pucci ellipticity constants must satisfy 0 < lambda_p <= big_lambda (got " +
                          std::to_string(lambda_p) + ", " + std::to_string(big_lambda) + ")");
    grid.validate();
    if (max_policy_iters < 0) throw ConfigError("Pucci max_policy_iters must be nonnegative");
}

double pucci(double e, double lambda_p, double big_lambda, PucciVariant variant) {
    return variant == PucciVariant::Plus ? std::max(lambda_p * e, big_lambda * e)
                                         : std::min(lambda_p * e, big_lambda * e);
}

GridFunction pucci_dirichlet_solve(const PucciSpec& spec, const GridFunction& f) {
    spec.validate();
    const Index n = spec.grid.n;
    if (f.values.size() != n) throw DimensionMismatch(n, f.values.size(), "pucci_dirichlet_solve");
    const double h = spec.grid.spacing();
    const int max_iters = spec.max_policy_iters > 0 ? spec.max_policy_iters : static_cast<int>(2 * n + 10);

    // Nonnegative data suggests a concave solution; start from the matching policy.
    std::vector<bool> upper(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) upper[static_cast<std::size_t>(i)] = active_coefficient(-f.values(i), spec) == spec.big_lambda;
    std::set<std::vector<bool>> seen;

    const auto coefficient = [&](Index i) { return upper[static_cast<std::size_t>(i)] ? spec.big_lambda : spec.lambda_p; };

    Vector u;
    for (int it = 0; it < max_iters; ++it) {
        if (!seen.insert(upper).second)
            throw PolicyCycle("pucci_dirichlet_solve: policy repeated after " + std::to_string(it) + " steps");

        Vector rhs(n);
        for (Index i = 0; i < n; ++i) rhs(i) = h * h * f.values(i) / coefficient(i);
        u = detail::solve_dirichlet_laplacian(rhs);

        const Vector e = second_difference(u, h);
        const double scale = sup_norm(f.values) + 4.0 * spec.big_lambda * sup_norm(u) / (h * h);
        bool changed = false;
        for (Index i = 0; i < n; ++i) {
            const double best = active_coefficient(e(i), spec);
            const double current = coefficient(i);
            // Switch only when the pointwise gain is above roundoff.
            if (best != current && std::abs((best - current) * e(i)) > 1e-14 * scale) {
                upper[static_cast<std::size_t>(i)] = best == spec.big_lambda;
                changed = true;
            }
        }
        if (!changed) {
            double residual = 0.0;
            for (Index i = 0; i < n; ++i)
                residual = std::max(residual, std::abs(-pucci(e(i), spec.lambda_p, spec.big_lambda, spec.variant) -
                                                       f.values(i)));
            if (!(residual <= 1e-12 * std::max(scale, 1e-300)) && scale > 0.0)
                throw EvaluationFailure("pucci_dirichlet_solve: residual " + std::to_string(residual) +
                                        " above tolerance");
            return {spec.grid, u};
        }
    }
    throw EvaluationFailure("pucci_dirichlet_solve: no stable policy after " + std::to_string(max_iters) + " steps");
}

}  // namespace krl
