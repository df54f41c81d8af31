#pragma once

#include <functional>

#include "krl/grid.hpp"
#include "krl/operator.hpp"
#include "krl/types.hpp"

namespace krl {

/// |s|^e.
[[nodiscard]] double abs_pow(double s, double e);
/// phi_p(s) = |s|^{p-2} s.
[[nodiscard]] double phi(double s, double p);
/// Inverse of phi_p: |s|^{1/(p-1)} sign(s).
[[nodiscard]] double phi_inverse(double s, double p);

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// T(x) = A x on the nonnegative orthant. Throws NegativeEntry for any a_ij < 0.
[[nodiscard]] MonotoneOperator build_matrix_operator(const Matrix& A, double eta = kDefaultConeTolerance);

// ---------------------------------------------------------------------------
// p-Laplacian on an interval
// ---------------------------------------------------------------------------

struct PLaplaceSpec {
    double p = 2.0;
    Grid grid;
    /// Iteration cap for the scalar boundary-flux equation.
    int max_iters = 200;

    void validate() const;
};

/// Minimizer of J_h(v) = h sum_faces |Dv|^p / p - h sum_nodes g v over grid functions
/// vanishing at both ends (Dv are forward differences).
///
/// The Euler-Lagrange system telescopes: the face fluxes phi_p(Dv_k) differ by h g_i, so
/// the only unknown is the flux through the left face, fixed by requiring the slopes to
/// integrate to zero. That scalar equation is monotone and is solved by Newton's method
/// safeguarded by bisection. Throws EvaluationFailure when the result misses
/// |grad J_h|_inf <= 1e-10 max(1, |g|_inf).
[[nodiscard]] GridFunction plaplace_dirichlet_solve(const PLaplaceSpec& spec, const GridFunction& g);

// ---------------------------------------------------------------------------
// Radial Hardy-Sobolev operator L_mu = -Delta_p - mu |x|^{-p} phi_p on a ball
// ---------------------------------------------------------------------------

struct HardySobolevSpec {
    double p = 2.0;
    /// Spatial dimension; enters only through the radial measure r^{n_dim - 1} dr.
    int n_dim = 3;
    double mu = 0.0;
    /// Radial grid on (0, R): nodes r_i = (i+1) h, zero Dirichlet value at r = R,
    /// natural (zero-flux) condition at the origin. `grid.a` must be 0.
    Grid grid{0.0, 1.0, 0};
    /// Eigen-weight V(r) > 0.
    std::function<double(double)> weight = [](double) { return 1.0; };
    int max_iters = 20000;

    /// ((n_dim - p)/p)^p.
    [[nodiscard]] double best_constant() const;
    void validate() const;
};

/// Radial p-Laplacian solve (mu = 0): finite-volume energy with face weights
/// rho^{n_dim-1} at face midpoints and node weights equal to the exact cell integrals
/// of r^{n_dim-1}. With a zero-flux origin the system is explicit.
[[nodiscard]] GridFunction radial_plaplace_dirichlet_solve(double p, int n_dim, const Grid& grid,
                                                           const GridFunction& g);

/// L_mu v = g. For mu > 0 the Hardy term is treated as data,
/// v <- S_0(g + mu w phi_p(v)), which for g >= 0 increases monotonically to the
/// solution. Throws ConfigError when mu is outside [0, best constant).
[[nodiscard]] GridFunction hardy_sobolev_dirichlet_solve(const HardySobolevSpec& spec, const GridFunction& g);

// ---------------------------------------------------------------------------
// 1D Pucci extremal operators
// ---------------------------------------------------------------------------

enum class PucciVariant { Plus, Minus };

struct PucciSpec {
    /// Ellipticity constants 0 < lambda_p <= big_lambda.
    double lambda_p = 1.0;
    double big_lambda = 1.0;
    PucciVariant variant = PucciVariant::Plus;
    Grid grid;
    int max_policy_iters = 0;  // 0 selects 2 n + 10

    void validate() const;
};

/// M+(e) = max(lambda e, Lambda e), M-(e) = min(lambda e, Lambda e).
[[nodiscard]] double pucci(double e, double lambda_p, double big_lambda, PucciVariant variant);

/// Solves -M(D_h^2 u) = f with zero boundary values by policy iteration over the
/// per-node coefficient a_i in {lambda, Lambda}; each policy step is one tridiagonal solve.
/// Throws PolicyCycle if a policy repeats.
[[nodiscard]] GridFunction pucci_dirichlet_solve(const PucciSpec& spec, const GridFunction& f);

// ---------------------------------------------------------------------------
// Solution operators
// ---------------------------------------------------------------------------

/// T f = S(phi_p(f)), S the p-Laplacian Dirichlet solve. PDE eigenvalue = lambda0^{p-1}.
[[nodiscard]] MonotoneOperator build_inverse_operator(const PLaplaceSpec& spec,
                                                      double eta = kDefaultConeTolerance);
/// T f = L_mu^{-1}(V phi_p(f)). PDE eigenvalue = lambda0^{p-1}.
[[nodiscard]] MonotoneOperator build_inverse_operator(const HardySobolevSpec& spec,
                                                      double eta = kDefaultConeTolerance);
/// T g = v with -M(D^2 v) = g, so g >= 0 gives v >= 0. PDE eigenvalue = lambda0.
[[nodiscard]] MonotoneOperator build_inverse_operator(const PucciSpec& spec, double eta = kDefaultConeTolerance);

/// Eigenvalue of the underlying equation for an operator eigenvalue lambda0 of a
/// p-homogeneous problem (p = 2 for matrices and Pucci, where it is the identity).
[[nodiscard]] double pde_eigenvalue(double lambda0, double p);

}  // namespace krl
