#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <krl/krl.hpp>

namespace krl::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix A(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (double v : row) A(i, j++) = v;
        ++i;
    }
    return A;
}

inline Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

/// Strongly connected digraph of the nonzero pattern (a 1x1 matrix must be nonzero).
inline bool irreducible(const Matrix& A) {
    const Index n = A.rows();
    if (n == 1) return A(0, 0) > 0.0;
    for (Index s = 0; s < n; ++s) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        std::vector<Index> stack{s};
        seen[static_cast<std::size_t>(s)] = true;
        while (!stack.empty()) {
            const Index i = stack.back();
            stack.pop_back();
            for (Index j = 0; j < n; ++j)
                if (A(i, j) > 0.0 && !seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = true;
                    stack.push_back(j);
                }
        }
        for (bool b : seen)
            if (!b) return false;
    }
    return true;
}

/// U(0,1) entries with about 30% zeroed, redrawn until irreducible.
inline Matrix random_irreducible(Index n, Rng& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (;;) {
        Matrix A(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) A(i, j) = U(rng) < 0.3 ? 0.0 : U(rng);
        if (irreducible(A)) return A;
    }
}

/// Entries in [0.05, 1).
inline Matrix random_positive(Index n, Rng& rng) {
    std::uniform_real_distribution<double> U(0.05, 1.0);
    Matrix A(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) A(i, j) = U(rng);
    return A;
}

inline Vector random_vector(Index n, Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> N(0.0, scale);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = N(rng);
    return v;
}

struct PowerResult {
    double radius;
    Vector vector;
};

/// Power iteration on (A + I) for a nonnegative irreducible A (the shift removes periodicity).
inline PowerResult power_iteration(const Matrix& A, int iters = 200000, double tol = 1e-15) {
    const Index n = A.rows();
    const Matrix B = A + Matrix::Identity(n, n);
    Vector x = Vector::Ones(n);
    double rho = 0.0;
    for (int k = 0; k < iters; ++k) {
        Vector y = B * x;
        const double ny = y.cwiseAbs().maxCoeff();
        y /= ny;
        const double change = (y - x).cwiseAbs().maxCoeff();
        x = y;
        rho = ny;
        if (change < tol) break;
    }
    return {rho - 1.0, x};
}

/// Closed-form eigenvalues of tridiag(-1, 2, -1)/h^2: (4/h^2) sin^2(k pi h / (2 L)).
inline double discrete_laplacian_eigenvalue(const Grid& grid, int k = 1) {
    const double h = grid.spacing();
    const double L = grid.b - grid.a;
    const double s = std::sin(k * std::numbers::pi * h / (2.0 * L));
    return 4.0 / (h * h) * s * s;
}

/// Direct tridiagonal solve of tridiag(-1, 2, -1) v = h^2 g (Thomas algorithm).
inline Vector poisson_solve(const Grid& grid, const Vector& g) {
    const Index n = grid.n;
    const double h = grid.spacing();
    Vector c(n), d(n), v(n);
    double denom = 2.0;
    c(0) = -1.0 / denom;
    d(0) = h * h * g(0) / denom;
    for (Index i = 1; i < n; ++i) {
        denom = 2.0 + c(i - 1);
        c(i) = -1.0 / denom;
        d(i) = (h * h * g(i) + d(i - 1)) / denom;
    }
    v(n - 1) = d(n - 1);
    for (Index i = n - 2; i >= 0; --i) v(i) = d(i) - c(i) * v(i + 1);
    return v;
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace krl::testing
