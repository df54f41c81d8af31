#pragma once

#include <limits>

#include "krl/types.hpp"

namespace krl {

inline constexpr double kDefaultConeTolerance = 1e-10;

enum class ConeKind {
    /// x_i >= 0 for every coordinate.
    NonNegOrthant,
    /// Grid analogue of {w >= 0 in the domain, dw/dn <= 0 on the boundary}: interior
    /// values are nonnegative and the one-sided boundary slopes point inward.
    DiscreteInteriorCone,
};

/// A closed convex cone with a coordinate-wise membership test.
///
/// Membership is decided on the "governed coordinates" of a vector: the vector itself
/// for the orthant, and for the interior cone additionally w_1/h and w_n/h (the negated
/// outward slopes (w_1 - w_0)/h and (w_{n-1} - w_n)/h with w_0 = w_{n+1} = 0).
/// A vector is accepted when each governed coordinate is >= -eta * max(1, |x|_inf).
struct ConeSpec {
    ConeKind kind = ConeKind::NonNegOrthant;
    double tolerance = kDefaultConeTolerance;
    Index dimension = 0;
    /// Grid spacing; only meaningful for DiscreteInteriorCone.
    double spacing = 0.0;

    static ConeSpec orthant(Index n, double eta = kDefaultConeTolerance);
    static ConeSpec discrete_interior(Index n, double h, double eta = kDefaultConeTolerance);

    [[nodiscard]] ConeSpec with_tolerance(double eta) const;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;

    friend bool operator==(const ConeSpec&, const ConeSpec&) = default;
};

/// Values of the coordinate functionals that define membership.
[[nodiscard]] Vector governed_coordinates(const ConeSpec& K, const Vector& x);

/// Tolerance scale max(1, |x|_inf).
[[nodiscard]] inline double tolerance_scale(const Vector& x) { return std::max(1.0, sup_norm(x)); }

[[nodiscard]] bool contains(const ConeSpec& K, const Vector& x);
/// x <= y in the order induced by K, i.e. y - x in K.
[[nodiscard]] bool leq(const ConeSpec& K, const Vector& x, const Vector& y);
[[nodiscard]] bool is_interior(const ConeSpec& K, const Vector& x);

/// Largest normalized amount by which x leaves K: max_j max(0, -g_j(x)) / max(1, |x|_inf).
/// contains(K, x) is equivalent to cone_violation(K, x) <= K.tolerance.
[[nodiscard]] double cone_violation(const ConeSpec& K, const Vector& x);

struct DeltaValue {
    double value = 0.0;
    bool infinite = false;

    static DeltaValue infinity() { return {std::numeric_limits<double>::infinity(), true}; }
};

/// Supremum of lambda >= 0 such that x + t*y lies in K for all t in [0, lambda].
/// Infinite when y itself lies in K. Throws NotInCone when x is not in K.
[[nodiscard]] DeltaValue delta(const ConeSpec& K, const Vector& x, const Vector& y);

}  // namespace krl
