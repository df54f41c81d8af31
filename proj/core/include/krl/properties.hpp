#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "krl/operator.hpp"
#include "krl/types.hpp"

namespace krl {

/// Outcome of an empirical check. A failing report always carries a witness.
struct PropertyReport {
    std::string property;
    bool pass = true;
    double worst_violation = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = kDefaultSeed;
    std::optional<nlohmann::json> witness;
};

/// {property, pass, worst_violation, samples, seed, witness?}
void to_json(nlohmann::json& j, const PropertyReport& r);
void from_json(const nlohmann::json& j, PropertyReport& r);

/// Witness of hypothesis (H): M * T(u) >= u.
struct HConstant {
    double M = 0.0;
    Vector u;
};

inline constexpr double kDefaultScales[] = {1e-3, 0.5, 1.0, 2.0, 1e3};

/// |T(t x) - t T(x)|_inf <= tol * max(1, t |T(x)|_inf) for sampled x in K and every t.
/// The reported violation is the normalized left-hand side.
[[nodiscard]] PropertyReport check_homogeneity(const MonotoneOperator& T, std::size_t samples,
                                               std::span<const double> scales, double tol,
                                               std::uint64_t seed = kDefaultSeed);

/// T(x) <= T(x + d) for x, d in K, with the cone tolerance widened by tol.
/// Probes x = 0, d = e_i on the first few coordinates before the random pairs.
[[nodiscard]] PropertyReport check_monotonicity(const MonotoneOperator& T, std::size_t samples, double tol,
                                                std::uint64_t seed = kDefaultSeed);

/// M = max u_i / (Tu)_i over the support of u, verified as u <= M T(u).
/// Throws NoHConstant when supp(u) is not contained in supp(Tu) or verification fails.
[[nodiscard]] HConstant find_h_constant(const MonotoneOperator& T, const Vector& u);

/// is_interior(T(x)) for boundary points x of K \ {0}, including coordinate vectors.
/// `tol` replaces the cone tolerance in the interior test.
[[nodiscard]] PropertyReport check_strong_positivity(const MonotoneOperator& T, std::size_t samples, double tol,
                                                     std::uint64_t seed = kDefaultSeed);

/// Passes when some sampled x, y in K have |T(x+y) - T(x) - T(y)|_inf > threshold * |T(x+y)|_inf.
[[nodiscard]] PropertyReport check_nonlinearity(const MonotoneOperator& T, std::size_t samples,
                                                double threshold = 1e-3, std::uint64_t seed = kDefaultSeed);

}  // namespace krl
