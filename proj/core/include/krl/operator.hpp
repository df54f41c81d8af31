#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "krl/cones.hpp"
#include "krl/types.hpp"

namespace krl {

/// An increasing, positively 1-homogeneous map T: R^n -> R^n together with the cone
/// that orders its domain.
///
/// Instances are immutable once built; `apply` may be called concurrently.
class MonotoneOperator {
public:
    using Map = std::function<Vector(const Vector&)>;

    MonotoneOperator(std::string label, ConeSpec cone, Map map);

    /// Linear instance backed by a dense matrix (kept for spectral certificates).
    static MonotoneOperator from_matrix(std::string label, ConeSpec cone, Matrix A);

    /// T(x). Throws DimensionMismatch, and EvaluationFailure when an inner solve fails.
    [[nodiscard]] Vector apply(const Vector& x) const;
    [[nodiscard]] Vector operator()(const Vector& x) const { return apply(x); }

    [[nodiscard]] Index dimension() const { return cone_.dimension; }
    [[nodiscard]] const ConeSpec& cone() const { return cone_; }
    [[nodiscard]] const std::string& label() const { return label_; }

    /// Non-null for matrix instances.
    [[nodiscard]] const Matrix* matrix() const { return matrix_.get(); }

    /// The operator c*T for c > 0.
    [[nodiscard]] MonotoneOperator scaled(double c) const;

private:
    std::string label_;
    ConeSpec cone_;
    Map map_;
    std::shared_ptr<const Matrix> matrix_;
};

}  // namespace krl
