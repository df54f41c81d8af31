#pragma once

#include "krl/types.hpp"

namespace krl::detail {

/// Solves the Dirichlet Laplacian system 2 u_i - u_{i-1} - u_{i+1} = rhs_i (u_{-1} = u_n = 0).
/// Thomas elimination; the matrix is a nonsingular M-matrix so no pivoting is needed.
inline Vector solve_dirichlet_laplacian(const Vector& rhs) {
    const Index n = rhs.size();
    Vector c(n), d(n), u(n);
    double denom = 2.0;
    c(0) = -1.0 / denom;
    d(0) = rhs(0) / denom;
    for (Index i = 1; i < n; ++i) {
        denom = 2.0 + c(i - 1);
        c(i) = -1.0 / denom;
        d(i) = (rhs(i) + d(i - 1)) / denom;
    }
    u(n - 1) = d(n - 1);
    for (Index i = n - 2; i >= 0; --i) u(i) = d(i) - c(i) * u(i + 1);
    return u;
}

}  // namespace krl::detail
