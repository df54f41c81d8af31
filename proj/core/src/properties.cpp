#include "krl/properties.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "krl/cones.hpp"
#include "krl/errors.hpp"
#include "krl/sampling.hpp"

namespace krl {
namespace {

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

void to_json(nlohmann::json& j, const PropertyReport& r) {
    j = nlohmann::json{{"property", r.property},
                       {"pass", r.pass},
                       {"worst_violation", r.worst_violation},
                       {"samples", r.samples},
                       {"seed", r.seed}};
    if (r.witness) j["witness"] = *r.witness;
}

void from_json(const nlohmann::json& j, PropertyReport& r) {
    j.at("property").get_to(r.property);
    j.at("pass").get_to(r.pass);
    j.at("worst_violation").get_to(r.worst_violation);
    j.at("samples").get_to(r.samples);
    j.at("seed").get_to(r.seed);
    if (j.contains("witness")) r.witness = j.at("witness");
    else r.witness.reset();
}

PropertyReport check_homogeneity(const MonotoneOperator& T, std::size_t samples, std::span<const double> scales,
                                 double tol, std::uint64_t seed) {
    for (double t : scales)
        if (!(t > 0.0)) throw ConfigError("check_homogeneity: scales must be positive");

    PropertyReport report{"homogeneity", true, 0.0, 0, seed, std::nullopt};
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const Vector x = sample_cone_point(T.dimension(), rng);
        const Vector Tx = T(x);
        for (double t : scales) {
            const Vector lhs = T(Vector(t * x));
            const double err = sup_norm(lhs - t * Tx) / std::max(1.0, t * sup_norm(Tx));
            ++report.samples;
            if (err > report.worst_violation) {
                report.worst_violation = err;
                if (err > tol) report.witness = nlohmann::json{{"x", to_std(x)}, {"t", t}};
            }
        }
    }
    report.pass = report.worst_violation <= tol;
    return report;
}

PropertyReport check_monotonicity(const MonotoneOperator& T, std::size_t samples, double tol, std::uint64_t seed) {
    const ConeSpec K = T.cone();
    const Index n = T.dimension();
    PropertyReport report{"monotonicity", true, 0.0, 0, seed, std::nullopt};

    const auto probe = [&](const Vector& x, const Vector& d) {
        const Vector diff = T(Vector(x + d)) - T(x);
        const double v = cone_violation(K, diff);
        ++report.samples;
        if (v > report.worst_violation) {
            report.worst_violation = v;
            if (v > K.tolerance + tol) report.witness = nlohmann::json{{"x", to_std(x)}, {"d", to_std(d)}};
        }
    };

    const Index unit_probes = std::min<Index>(n, 4);
    for (Index i = 0; i < unit_probes; ++i) probe(Vector::Zero(n), Vector::Unit(n, i));

    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const Vector x = sample_cone_point(n, rng);
        const Vector d = sample_cone_point(n, rng);
        probe(x, d);
    }
    report.pass = report.worst_violation <= K.tolerance + tol;
    return report;
}

HConstant find_h_constant(const MonotoneOperator& T, const Vector& u) {
    const ConeSpec& K = T.cone();
    if (u.size() != T.dimension()) throw DimensionMismatch(T.dimension(), u.size(), "find_h_constant");
    if (!contains(K, u) || sup_norm(u) == 0.0) throw NoHConstant("find_h_constant: u must be a nonzero cone element");

    const Vector v = T(u);
    const Vector gu = governed_coordinates(K, u);
    const Vector gv = governed_coordinates(K, v);
    const double eta = K.tolerance;
    const double su = eta * tolerance_scale(u);
    const double sv = eta * tolerance_scale(v);

    double M = 0.0;
    for (Index i = 0; i < gu.size(); ++i) {
        if (gu(i) <= su) continue;
        if (gv(i) <= sv)
            throw NoHConstant("find_h_constant: T(u) vanishes on the support of u (governed coordinate " +
                              std::to_string(i) + ")");
        M = std::max(M, gu(i) / gv(i));
    }
    if (!(M > 0.0) || !std::isfinite(M)) throw NoHConstant("find_h_constant: no finite positive M");
    if (!leq(K, u, Vector(M * v))) throw NoHConstant("find_h_constant: u <= M T(u) fails verification");
    return {M, u};
}

PropertyReport check_strong_positivity(const MonotoneOperator& T, std::size_t samples, double tol,
                                       std::uint64_t seed) {
    const Index n = T.dimension();
    const ConeSpec K = T.cone().with_tolerance(tol);
    PropertyReport report{"strong_positivity", true, 0.0, 0, seed, std::nullopt};
    std::size_t failures = 0;

    const auto probe = [&](const Vector& x) {
        const Vector y = T(x);
        const Vector g = governed_coordinates(K, y);
        const double margin = g.minCoeff() / tolerance_scale(y);
        const double v = std::max(0.0, tol - margin);
        ++report.samples;
        if (!is_interior(K, y)) {
            ++failures;
            if (v >= report.worst_violation) {
                report.worst_violation = v;
                report.witness = nlohmann::json{{"x", to_std(x)}, {"Tx", to_std(y)}};
            }
        }
    };

    // Coordinate vectors spread over the index range, ends included.
    const auto units = static_cast<Index>(std::min<std::size_t>(static_cast<std::size_t>(n), (samples + 1) / 2));
    for (Index k = 0; k < units; ++k) {
        const Index i = units == 1 ? 0 : (k * (n - 1)) / (units - 1);
        probe(Vector::Unit(n, i));
    }
    Rng rng(seed);
    for (std::size_t s = static_cast<std::size_t>(units); s < samples; ++s) probe(sample_boundary_point(n, rng));

    report.pass = failures == 0;
    return report;
}

PropertyReport check_nonlinearity(const MonotoneOperator& T, std::size_t samples, double threshold,
                                  std::uint64_t seed) {
    PropertyReport report{"nonlinearity", false, 0.0, 0, seed, std::nullopt};
    Rng rng(seed);
    double best = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const Vector x = sample_cone_point(T.dimension(), rng);
        const Vector y = sample_cone_point(T.dimension(), rng);
        const Vector Txy = T(Vector(x + y));
        const double gap = sup_norm(Txy - T(x) - T(y)) / std::max(sup_norm(Txy), 1e-300);
        ++report.samples;
        if (gap > best) {
            best = gap;
            report.witness = nlohmann::json{{"x", to_std(x)}, {"y", to_std(y)}, {"relative_gap", gap}};
        }
    }
    report.pass = best > threshold;
    // For this check a "violation" is the absence of a witness: how far the best gap falls short.
    report.worst_violation = std::max(0.0, threshold - best);
    if (!report.witness) report.witness = nlohmann::json{{"relative_gap", best}};
    return report;
}

}  // namespace krl
