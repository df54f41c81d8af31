#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "krl/errors.hpp"
#include "krl/instances.hpp"

namespace krl {
namespace {

// Derivative of phi_inverse; +inf at s = 0 when p > 2.
double phi_inverse_derivative(double s, double p) {
    if (p == 2.0) return 1.0;
    const double q = 1.0 / (p - 1.0);
    return q * std::pow(std::abs(s), q - 1.0);
}

void check_data(const Grid& grid, const GridFunction& g, const char* where) {
    if (g.values.size() != grid.n) throw DimensionMismatch(grid.n, g.values.size(), where);
}

}  // namespace

// |s|^e with exact fast paths for the exponents hit by p in {1.5, 2, 3}.
double abs_pow(double s, double e) {
    const double a = std::abs(s);
    if (e == 1.0) return a;
    if (e == 2.0) return a * a;
    if (e == 3.0) return a * a * a;
    if (e == 0.5) return std::sqrt(a);
    if (e == 1.5) return a * std::sqrt(a);
    return std::pow(a, e);
}

double phi(double s, double p) {
    if (p == 2.0) return s;
    return std::copysign(abs_pow(s, p - 1.0), s);
}

double phi_inverse(double s, double p) {
    if (p == 2.0) return s;
    return std::copysign(abs_pow(s, 1.0 / (p - 1.0)), s);
}

void PLaplaceSpec::validate() const {
    if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("p-Laplacian requires p > 1, got p = " + std::to_string(p));
    grid.validate();
    if (max_iters <= 0) throw ConfigError("p-Laplacian max_iters must be positive");
}

GridFunction plaplace_dirichlet_solve(const PLaplaceSpec& spec, const GridFunction& g) {
    spec.validate();
    check_data(spec.grid, g, "plaplace_dirichlet_solve");
    const double p = spec.p;
    const Index n = spec.grid.n;
    const double h = spec.grid.spacing();

    // Faces k = 0..n; flux through face k is q - C_k with C_k = h * sum_{i<k} g_i.
    Vector C(n + 1);
    C(0) = 0.0;
    for (Index k = 1; k <= n; ++k) C(k) = C(k - 1) + h * g.values(k - 1);

    const auto slope_sum = [&](double q, double* derivative, double* magnitude) {
        double s = 0.0, ds = 0.0, mag = 0.0;
        for (Index k = 0; k <= n; ++k) {
            const double f = q - C(k);
            const double d = phi_inverse(f, p);
            s += d;
            mag += std::abs(d);
            if (derivative) ds += phi_inverse_derivative(f, p);
        }
        if (derivative) *derivative = ds;
        if (magnitude) *magnitude = mag;
        return s;
    };

    double lo = C.minCoeff();
    double hi = C.maxCoeff();
    double q = std::clamp(C.mean(), lo, hi);
    bool converged = lo == hi;
    if (converged) q = lo;
    for (int it = 0; it < spec.max_iters && !converged; ++it) {
        double ds = 0.0, mag = 0.0;
        const double s = slope_sum(q, &ds, &mag);
        if (std::abs(s) <= 4.0 * std::numeric_limits<double>::epsilon() * mag) {
            converged = true;
            break;
        }
        (s < 0.0 ? lo : hi) = q;
        double next = (std::isfinite(ds) && ds > 0.0) ? q - s / ds : lo;
        if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
        if (!(next > lo && next < hi)) {
            // Bracket collapsed to adjacent doubles.
            converged = true;
            break;
        }
        q = next;
    }
    if (!converged) throw EvaluationFailure("plaplace_dirichlet_solve: boundary-flux iteration did not converge");

    GridFunction v{spec.grid, Vector(n)};
    double acc = 0.0;
    for (Index i = 0; i < n; ++i) {
        acc += h * phi_inverse(q - C(i), p);
        v.values(i) = acc;
    }

    // First-order optimality of the discrete energy.
    double worst = 0.0;
    const auto value = [&](Index i) { return (i < 0 || i >= n) ? 0.0 : v.values(i); };
    for (Index i = 0; i < n; ++i) {
        const double left = phi((value(i) - value(i - 1)) / h, p);
        const double right = phi((value(i + 1) - value(i)) / h, p);
        worst = std::max(worst, std::abs(left - right - h * g.values(i)));
    }
    const double gnorm = sup_norm(g.values);
    if (!(worst <= 1e-10 * std::max(1.0, gnorm)))
        throw EvaluationFailure("plaplace_dirichlet_solve: optimality residual " + std::to_string(worst) +
                                " exceeds tolerance");
    return v;
}

GridFunction radial_plaplace_dirichlet_solve(double p, int n_dim, const Grid& grid, const GridFunction& g) {
    if (!(p > 1.0)) throw ConfigError("radial p-Laplacian requires p > 1");
    if (n_dim < 1) throw ConfigError("radial p-Laplacian requires n_dim >= 1");
    grid.validate();
    if (grid.a != 0.0) throw ConfigError("radial grid must start at r = 0");
    check_data(grid, g, "radial_plaplace_dirichlet_solve");

    const Index n = grid.n;
    const double h = grid.spacing();
    const double N = static_cast<double>(n_dim);

    // Cell i is [r_i - h/2, r_i + h/2], except cell 0 = [0, 1.5 h]; face i sits at (i + 1.5) h.
    GridFunction v{grid, Vector(n)};
    Vector flux(n);
    double cumulative = 0.0;
    double lower = 0.0;
    for (Index i = 0; i < n; ++i) {
        const double upper = (static_cast<double>(i) + 1.5) * h;
        const double volume = (std::pow(upper, N) - std::pow(lower, N)) / N;
        cumulative -= volume * g.values(i);
        flux(i) = cumulative / std::pow(upper, N - 1.0);
        lower = upper;
    }
    double next = 0.0;  // v at r = R
    for (Index i = n - 1; i >= 0; --i) {
        next -= h * phi_inverse(flux(i), p);
        v.values(i) = next;
    }
    return v;
}

}  // namespace krl
