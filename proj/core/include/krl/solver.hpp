#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "krl/operator.hpp"
#include "krl/properties.hpp"
#include "krl/trace.hpp"
#include "krl/types.hpp"

namespace krl {

/// Geometric eps schedule eps0, eps0 r, eps0 r^2, ... ending exactly at eps_min.
struct ContinuationConfig {
    double eps0 = 1e-1;
    double ratio = 0.5;
    double eps_min = 1e-8;
    int max_inner_iters = 10000;
    double inner_tol = 1e-12;
    /// Seed of the default start vector.
    std::uint64_t seed = kDefaultSeed;

    void validate() const;
    [[nodiscard]] std::vector<double> schedule() const;

    friend bool operator==(const ContinuationConfig&, const ContinuationConfig&) = default;
};

/// Residual threshold on |x0 - lambda0 T(x0)|_inf for an accepted eigenpair.
inline constexpr double kEigenResidualThreshold = 1e-6;

/// (lambda0, x0) with x0 = lambda0 T(x0), |x0|_inf = 1 (sup norm).
struct EigenPair {
    double lambda = 0.0;
    Vector x;
    double residual = 0.0;
    bool in_cone = false;
};

struct EpsSolution {
    double lambda = 0.0;
    Vector x;
    int iterations = 0;
    /// Last fixed-point increment.
    double residual = 0.0;
    bool damped = false;
};

/// Fixed point of x = lambda T(x + eps u) with |x|_inf = 1, by the normalized iteration
/// y = T(x_k + eps u), lambda = 1/|y|_inf, x_{k+1} = lambda y. If that fails to converge
/// the damped update x_{k+1} = (x_k + lambda y)/2 (renormalized) is tried once.
/// Throws NoConvergence or ZeroImage.
[[nodiscard]] EpsSolution solve_eps(const MonotoneOperator& T, const Vector& u, double eps, const Vector& start,
                                    const ContinuationConfig& cfg);

struct ContinuationResult {
    EigenPair pair;
    ContinuationTrace trace;
};

/// Runs solve_eps along the eps schedule, warm-starting each level from the previous one,
/// and returns the last level with the residual recomputed for eps = 0.
/// Without `start`, a random unit cone point drawn from cfg.seed is used.
/// Errors derive from SolverError and carry the levels completed so far.
[[nodiscard]] ContinuationResult continuation(const MonotoneOperator& T, const Vector& u,
                                              const ContinuationConfig& cfg,
                                              const std::optional<Vector>& start = std::nullopt);

/// |x - lambda T(x)|_inf.
[[nodiscard]] double residual(const MonotoneOperator& T, double lambda, const Vector& x);

/// All-ones for the orthant, the hat function for grid cones.
[[nodiscard]] Vector default_u(const MonotoneOperator& T);

/// Checks along a converged trace, at cone tolerance `tol`:
///  (a) lambda_eps <= M (relative tol);
///  (b) lambda_eps eps T(u) <= x_eps and lambda_eps T(x_eps) <= x_eps;
///  (c) (lambda_eps / M)^k eps u <= x_eps for k = 1..depth.
[[nodiscard]] PropertyReport verify_branch_bounds(const MonotoneOperator& T, const Vector& u, const HConstant& H,
                                                  const ContinuationTrace& trace, int depth = 8,
                                                  double tol = 1e-8);

struct UniquenessReport {
    PropertyReport report;
    double max_distance = 0.0;
    double lambda_spread = 0.0;
    std::size_t runs = 0;
    std::size_t failures = 0;
    /// Result of check_strong_positivity; uniqueness is only claimed when it holds.
    bool precondition_met = false;
};

/// Continuation from k random starts paired with k random admissible u.
/// Passes when the operator is strongly positive, no run failed, the eigenvectors agree
/// to `distance_tol` and the eigenvalues to `spread_tol` (relative to the first run).
[[nodiscard]] UniquenessReport uniqueness_probe(const MonotoneOperator& T, const ContinuationConfig& cfg, int k,
                                                double distance_tol = 1e-5, double spread_tol = 1e-6);

/// Matrix instances only: |lambda0| <= 1/|mu| + tol for every nonzero eigenvalue mu of A
/// and |lambda0 rho(A) - 1| <= tol.
[[nodiscard]] PropertyReport minimality_check(const MonotoneOperator& T, double lambda0, double tol = 1e-8);

/// Matrix instances only: the eigenspace of A at 1/lambda0 is one-dimensional.
[[nodiscard]] PropertyReport simplicity_check(const MonotoneOperator& T, double lambda0, double tol = 1e-8);

}  // namespace krl
