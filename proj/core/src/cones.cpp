#include "krl/cones.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krl/errors.hpp"

namespace krl {
namespace {

void require_dim(const ConeSpec& K, const Vector& x, const char* where) {
    if (x.size() != K.dimension) throw DimensionMismatch(K.dimension, x.size(), where);
}

// Governed coordinates are a positive linear image of x: for the interior cone they
// append x_0/h and x_{n-1}/h to x itself.
Index governed_size(const ConeSpec& K) {
    return K.kind == ConeKind::DiscreteInteriorCone ? K.dimension + 2 : K.dimension;
}

}  // namespace

ConeSpec ConeSpec::orthant(Index n, double eta) {
    ConeSpec K{ConeKind::NonNegOrthant, eta, n, 0.0};
    K.validate();
    return K;
}

ConeSpec ConeSpec::discrete_interior(Index n, double h, double eta) {
    ConeSpec K{ConeKind::DiscreteInteriorCone, eta, n, h};
    K.validate();
    return K;
}

ConeSpec ConeSpec::with_tolerance(double eta) const {
    ConeSpec K = *this;
    K.tolerance = eta;
    K.validate();
    return K;
}

void ConeSpec::validate() const {
    if (!(tolerance >= 0.0 && tolerance < 1.0))
        throw ConfigError("cone tolerance must lie in [0, 1), got " + std::to_string(tolerance));
    if (dimension <= 0) throw ConfigError("cone dimension must be positive");
    if (kind == ConeKind::DiscreteInteriorCone && !(spacing > 0.0))
        throw ConfigError("DiscreteInteriorCone needs a positive grid spacing");
}

Vector governed_coordinates(const ConeSpec& K, const Vector& x) {
    require_dim(K, x, "governed_coordinates");
    if (K.kind == ConeKind::NonNegOrthant) return x;
    const Index n = K.dimension;
    Vector g(governed_size(K));
    g.head(n) = x;
    g(n) = x(0) / K.spacing;
    g(n + 1) = x(n - 1) / K.spacing;
    return g;
}

double cone_violation(const ConeSpec& K, const Vector& x) {
    const Vector g = governed_coordinates(K, x);
    const double worst = std::max(0.0, -g.minCoeff());
    return worst / tolerance_scale(x);
}

bool contains(const ConeSpec& K, const Vector& x) {
    require_dim(K, x, "contains");
    const Vector g = governed_coordinates(K, x);
    return (g.array() >= -K.tolerance * tolerance_scale(x)).all();
}

bool leq(const ConeSpec& K, const Vector& x, const Vector& y) {
    require_dim(K, x, "leq");
    require_dim(K, y, "leq");
    return contains(K, y - x);
}

bool is_interior(const ConeSpec& K, const Vector& x) {
    require_dim(K, x, "is_interior");
    const Vector g = governed_coordinates(K, x);
    return (g.array() > K.tolerance * tolerance_scale(x)).all();
}

DeltaValue delta(const ConeSpec& K, const Vector& x, const Vector& y) {
    require_dim(K, x, "delta");
    require_dim(K, y, "delta");
    if (!contains(K, x)) throw NotInCone("delta: base point is not in the cone");
    if (contains(K, y)) return DeltaValue::infinity();

    // Exact (eta = 0) answer from the coordinate formula min g_j(x) / -g_j(y).
    const Vector gx = governed_coordinates(K, x);
    const Vector gy = governed_coordinates(K, y);
    double exact = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < gx.size(); ++j) {
        if (gy(j) < 0.0) exact = std::min(exact, std::max(0.0, gx(j)) / -gy(j));
    }
    if (!std::isfinite(exact)) {
        // Only reachable when eta > 0 rejects y on scale alone; the scan below handles it.
        exact = 0.0;
    }

    const auto inside = [&](double t) { return contains(K, Vector(x + t * y)); };

    // Roundoff can push the extremal coordinate a hair below zero when eta = 0.
    double lo = exact;
    for (int i = 0; i < 64 && lo > 0.0 && !inside(lo); ++i) lo = std::nextafter(lo, 0.0) * (1.0 - 1e-15);
    if (!inside(lo)) lo = 0.0;

    if (K.tolerance == 0.0) return {lo, false};

    // The tolerance band widens K slightly; push to the edge of the connected
    // feasible interval that starts at lo.
    double step = std::max(lo, 1.0) * K.tolerance;
    double hi = lo + step;
    int guard = 0;
    while (inside(hi)) {
        lo = hi;
        step *= 2.0;
        hi = lo + step;
        if (++guard > 2000) return DeltaValue::infinity();
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        (inside(mid) ? lo : hi) = mid;
    }
    return {lo, false};
}

}  // namespace krl
