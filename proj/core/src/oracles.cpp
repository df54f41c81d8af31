#include "krl/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <string>

#include "krl/errors.hpp"

namespace krl {

SpectrumResult dense_spectrum(const Matrix& A) {
    if (A.rows() != A.cols()) throw ConfigError("dense_spectrum: matrix must be square");
    if (A.rows() > kMaxDenseOracleSize)
        throw ConfigError("dense_spectrum: n = " + std::to_string(A.rows()) + " exceeds the oracle cap of 64");

    Eigen::EigenSolver<Matrix> solver(A, true);
    if (solver.info() != Eigen::Success) throw Error("dense_spectrum: eigensolver failed");
    const auto values = solver.eigenvalues();

    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    for (Index i = 0; i < values.size(); ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double ma = std::abs(values(a)), mb = std::abs(values(b));
        if (ma != mb) return ma > mb;
        if (values(a).real() != values(b).real()) return values(a).real() > values(b).real();
        return values(a).imag() > values(b).imag();
    });

    SpectrumResult result;
    for (Index i : order) result.eigenvalues.push_back(values(i));
    result.spectral_radius = result.eigenvalues.empty() ? 0.0 : std::abs(result.eigenvalues.front());

    const double rho = result.spectral_radius;
    for (Index i : order) {
        const auto lam = values(i);
        if (std::abs(lam) < rho * (1.0 - 1e-10)) break;
        if (std::abs(lam.imag()) > 1e-12 * std::max(1.0, rho) || lam.real() < 0.0) continue;
        Vector v = solver.eigenvectors().col(i).real();
        if (v.sum() < 0.0) v = -v;
        const double s = sup_norm(v);
        if (s == 0.0) continue;
        v /= s;
        if (v.minCoeff() >= -1e-10) {
            result.perron_vector = v.cwiseMax(0.0);
            break;
        }
    }
    return result;
}

Index eigenspace_dimension(const Matrix& A, double mu, double tol) {
    const Matrix B = A - mu * Matrix::Identity(A.rows(), A.cols());
    Eigen::JacobiSVD<Matrix> svd(B);
    const auto& s = svd.singularValues();
    Eigen::JacobiSVD<Matrix> norm_svd(A);
    const double scale = std::max(1.0, norm_svd.singularValues()(0));
    return static_cast<Index>((s.array() <= tol * scale).count());
}

Vector dirichlet_laplacian_eigenvalues(const Grid& grid) {
    grid.validate();
    const Index n = grid.n;
    const double h = grid.spacing();
    Matrix L = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        L(i, i) = 2.0 / (h * h);
        if (i > 0) L(i, i - 1) = -1.0 / (h * h);
        if (i + 1 < n) L(i, i + 1) = -1.0 / (h * h);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(L, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

namespace {

struct QuotientParts {
    double numerator = 0.0;
    double denominator = 0.0;
};

QuotientParts quotient_parts(double p, double h, const Vector& u) {
    const Index n = u.size();
    QuotientParts q;
    for (Index k = 0; k <= n; ++k) {
        const double right = k < n ? u(k) : 0.0;
        const double left = k > 0 ? u(k - 1) : 0.0;
        q.numerator += abs_pow((right - left) / h, p);
    }
    for (Index i = 0; i < n; ++i) q.denominator += abs_pow(u(i), p);
    return q;
}

// Gradient of the quotient N/D: (grad N - R grad D) / D.
Vector quotient_gradient(double p, double h, const Vector& u, double R, double D) {
    const Index n = u.size();
    Vector flux(n + 1);
    for (Index k = 0; k <= n; ++k) {
        const double right = k < n ? u(k) : 0.0;
        const double left = k > 0 ? u(k - 1) : 0.0;
        flux(k) = phi((right - left) / h, p);
    }
    Vector g(n);
    for (Index i = 0; i < n; ++i) g(i) = p * ((flux(i) - flux(i + 1)) / h - R * phi(u(i), p)) / D;
    return g;
}

Vector normalize_lp(const Vector& u, double p) {
    double s = 0.0;
    for (Index i = 0; i < u.size(); ++i) s += abs_pow(u(i), p);
    return u / std::pow(s, 1.0 / p);
}

struct Minimum {
    double value = 0.0;
    Vector u;
};

Minimum minimize_from(double p, double h, Vector u, const RayleighOptions& opt) {
    u = normalize_lp(u, p);
    QuotientParts parts = quotient_parts(p, h, u);
    double R = parts.numerator / parts.denominator;
    Vector g = quotient_gradient(p, h, u, R, parts.denominator);
    double alpha = 1.0 / std::max(g.lpNorm<Eigen::Infinity>(), 1e-300) * 1e-3;
    std::deque<double> history{R};

    // Reference size of the gradient for the relative stopping test.
    const auto gradient_scale = [&](const Vector& x) {
        double s = 0.0;
        for (Index i = 0; i < x.size(); ++i) s = std::max(s, std::abs(p * R * phi(x(i), p)));
        return std::max(s, 1e-300);
    };

    double best = R;
    int stalled = 0;
    for (int it = 0; it < opt.max_iters; ++it) {
        if (g.lpNorm<Eigen::Infinity>() <= opt.gradient_tol * gradient_scale(u)) break;
        // Roundoff floor: the quotient has stopped improving.
        if (R < best * (1.0 - 1e-14)) {
            best = R;
            stalled = 0;
        } else if (++stalled > 200) {
            break;
        }
        const double reference = *std::max_element(history.begin(), history.end());
        const double gg = g.squaredNorm();
        Vector trial;
        double R_trial = 0.0;
        QuotientParts trial_parts;
        int backtracks = 0;
        for (;;) {
            trial = normalize_lp(u - alpha * g, p);
            trial_parts = quotient_parts(p, h, trial);
            R_trial = trial_parts.numerator / trial_parts.denominator;
            if (R_trial <= reference - 1e-4 * alpha * gg || backtracks > 60) break;
            alpha *= 0.5;
            ++backtracks;
        }
        if (backtracks > 60) break;
        const Vector g_trial = quotient_gradient(p, h, trial, R_trial, trial_parts.denominator);
        const Vector s = trial - u;
        const Vector y = g_trial - g;
        const double sy = s.dot(y);
        alpha = sy > 0.0 ? s.squaredNorm() / sy : 2.0 * alpha;
        u = trial;
        g = g_trial;
        R = R_trial;
        history.push_back(R);
        if (history.size() > 10) history.pop_front();
    }
    return {R, u};
}

// Linear interpolation of a grid function (zero ends) onto another grid of the same interval.
Vector prolong(const Grid& coarse, const Vector& u, const Grid& fine) {
    const double hc = coarse.spacing();
    Vector out(fine.n);
    for (Index i = 0; i < fine.n; ++i) {
        const double t = (fine.node(i) - coarse.a) / hc;  // coarse node j sits at t = j + 1
        const auto j = static_cast<Index>(std::floor(t));
        const double w = t - static_cast<double>(j);
        const double left = (j >= 1 && j <= coarse.n) ? u(j - 1) : 0.0;
        const double right = (j + 1 >= 1 && j + 1 <= coarse.n) ? u(j) : 0.0;
        out(i) = (1.0 - w) * left + w * right;
    }
    return out;
}

// Grids from coarse to fine, halving the cell count down to about 16 cells.
std::vector<Grid> hierarchy(const Grid& grid) {
    std::vector<Grid> levels{grid};
    Index cells = grid.n + 1;
    while (cells / 2 >= 16) {
        cells /= 2;
        levels.push_back(Grid{grid.a, grid.b, cells - 1});
    }
    std::reverse(levels.begin(), levels.end());
    return levels;
}

}  // namespace

double rayleigh_quotient(double p, const Grid& grid, const Vector& u) {
    if (u.size() != grid.n) throw DimensionMismatch(grid.n, u.size(), "rayleigh_quotient");
    const QuotientParts parts = quotient_parts(p, grid.spacing(), u);
    return parts.numerator / parts.denominator;
}

double rayleigh_quotient_min(double p, const Grid& grid, const RayleighOptions& options) {
    if (!(p > 1.0)) throw ConfigError("rayleigh_quotient_min requires p > 1");
    grid.validate();
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    // Each random start is minimized on a coarse grid and carried to the target grid by
    // interpolation, re-minimizing on every level (nested iteration).
    const std::vector<Grid> levels = hierarchy(grid);
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < std::max(1, options.starts); ++s) {
        Vector u(levels.front().n);
        for (Index i = 0; i < u.size(); ++i) u(i) = unif(rng);
        Minimum m;
        for (std::size_t l = 0; l < levels.size(); ++l) {
            if (l > 0) u = prolong(levels[l - 1], m.u, levels[l]);
            m = minimize_from(p, levels[l].spacing(), u, options);
        }
        best = std::min(best, m.value);
    }
    return best;
}

double pucci_shooting(double lambda_p, double big_lambda, PucciVariant variant, double L) {
    if (!(lambda_p > 0.0 && lambda_p <= big_lambda)) throw ConfigError("pucci_shooting: need 0 < lambda_p <= big_lambda");
    if (!(L > 0.0)) throw ConfigError("pucci_shooting: need L > 0");

    constexpr int kSteps = 20000;
    const double dt = L / kSteps;

    // u'' solves M(u'') = -mu u; M is increasing, so the coefficient follows sign(-mu u).
    const auto accel = [&](double mu, double u) {
        const double target = -mu * u;
        const double a = pucci(target >= 0.0 ? 1.0 : -1.0, lambda_p, big_lambda, variant);
        return target / std::abs(a);
    };
    // True when u stays positive on (0, L].
    const auto positive_on_interval = [&](double mu) {
        double u = 0.0, v = 1.0;
        for (int k = 0; k < kSteps; ++k) {
            const double k1u = v, k1v = accel(mu, u);
            const double k2u = v + 0.5 * dt * k1v, k2v = accel(mu, u + 0.5 * dt * k1u);
            const double k3u = v + 0.5 * dt * k2v, k3v = accel(mu, u + 0.5 * dt * k2u);
            const double k4u = v + dt * k3v, k4v = accel(mu, u + dt * k3u);
            u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            if (u <= 0.0) return false;
        }
        return true;
    };

    double lo = 0.0;
    double hi = 4.0 * big_lambda * std::numbers::pi * std::numbers::pi / (L * L);
    if (positive_on_interval(hi)) throw BracketFailure("pucci_shooting: no sign change below 4 Lambda pi^2 / L^2");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (positive_on_interval(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace krl
