#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "krl/grid.hpp"
#include "krl/instances.hpp"
#include "krl/types.hpp"

namespace krl {

/// Dense spectra are certification devices; larger matrices are rejected.
inline constexpr Index kMaxDenseOracleSize = 64;

struct SpectrumResult {
    /// Sorted by modulus, descending.
    std::vector<std::complex<double>> eigenvalues;
    double spectral_radius = 0.0;
    /// Nonnegative eigenvector of a real eigenvalue of maximal modulus, sup-normalized,
    /// when one exists.
    std::optional<Vector> perron_vector;
};

/// Full eigendecomposition of a general real matrix (n <= 64). Throws ConfigError otherwise.
[[nodiscard]] SpectrumResult dense_spectrum(const Matrix& A);

/// dim ker(A - mu I), counting singular values <= tol * max(1, |A|_2).
[[nodiscard]] Index eigenspace_dimension(const Matrix& A, double mu, double tol = 1e-8);

/// Eigenvalues (ascending) of the Dirichlet Laplacian (2 u_i - u_{i-1} - u_{i+1}) / h^2 on the grid,
/// from a dense symmetric eigensolve.
[[nodiscard]] Vector dirichlet_laplacian_eigenvalues(const Grid& grid);

/// Discrete quotient sum_faces |Du|^p / sum_nodes |u|^p (Du forward differences, zero ends).
[[nodiscard]] double rayleigh_quotient(double p, const Grid& grid, const Vector& u);

struct RayleighOptions {
    int starts = 10;
    int max_iters = 200000;
    double gradient_tol = 1e-10;
    std::uint64_t seed = 7;
};

/// Smallest value of rayleigh_quotient reached by projected gradient descent (Barzilai-Borwein
/// steps, nonmonotone backtracking) on the unit l^p sphere from random positive starts.
/// This is the first eigenvalue of the discrete -Delta_p u = Lambda phi_p(u).
[[nodiscard]] double rayleigh_quotient_min(double p, const Grid& grid, const RayleighOptions& options = {});

/// Principal eigenvalue mu of -M(u'') = mu u on (0, L) with u(0) = u(L) = 0, by RK4 shooting
/// from u(0) = 0, u'(0) = 1 and bisection on mu. Throws BracketFailure if u keeps
/// its sign on (0, L] for mu = 4 Lambda pi^2 / L^2.
[[nodiscard]] double pucci_shooting(double lambda_p, double big_lambda, PucciVariant variant, double L);

}  // namespace krl
