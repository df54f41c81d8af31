#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace krl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr std::uint64_t kDefaultSeed = 20061028;

/// Sup norm; every normalization in the library uses it.
inline double sup_norm(const Vector& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

}  // namespace krl
