#include "krl/operator.hpp"

#include "krl/errors.hpp"

namespace krl {

MonotoneOperator::MonotoneOperator(std::string label, ConeSpec cone, Map map)
    : label_(std::move(label)), cone_(cone), map_(std::move(map)) {
    cone_.validate();
    if (!map_) throw ConfigError("MonotoneOperator: empty evaluation map");
}

MonotoneOperator MonotoneOperator::from_matrix(std::string label, ConeSpec cone, Matrix A) {
    if (A.rows() != cone.dimension || A.cols() != cone.dimension)
        throw DimensionMismatch(cone.dimension, A.rows(), "MonotoneOperator::from_matrix");
    auto shared = std::make_shared<const Matrix>(std::move(A));
    MonotoneOperator T(std::move(label), cone, [shared](const Vector& x) -> Vector { return *shared * x; });
    T.matrix_ = std::move(shared);
    return T;
}

Vector MonotoneOperator::apply(const Vector& x) const {
    if (x.size() != dimension()) throw DimensionMismatch(dimension(), x.size(), label_);
    Vector y = map_(x);
    if (y.size() != dimension()) throw DimensionMismatch(dimension(), y.size(), label_ + " (image)");
    return y;
}

MonotoneOperator MonotoneOperator::scaled(double c) const {
    if (!(c > 0.0)) throw ConfigError("MonotoneOperator::scaled: factor must be positive");
    if (matrix_) return from_matrix(label_, cone_, c * *matrix_);
    return MonotoneOperator(label_, cone_, [inner = map_, c](const Vector& x) -> Vector { return c * inner(x); });
}

}  // namespace krl
