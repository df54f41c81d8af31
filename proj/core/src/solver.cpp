#include "krl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krl/cones.hpp"
#include "krl/errors.hpp"
#include "krl/grid.hpp"
#include "krl/oracles.hpp"
#include "krl/sampling.hpp"

namespace krl {
namespace {

struct IterationOutcome {
    EpsSolution solution;
    bool converged = false;
};

IterationOutcome iterate(const MonotoneOperator& T, const Vector& u, double eps, const Vector& start,
                         const ContinuationConfig& cfg, double theta) {
    const double zero_level = T.cone().tolerance;
    IterationOutcome out;
    Vector x = start;
    double lambda_prev = std::numeric_limits<double>::quiet_NaN();
    double increment = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= cfg.max_inner_iters; ++k) {
        const Vector y = T(Vector(x + eps * u));
        const double ny = sup_norm(y);
        if (!(ny > zero_level) || !std::isfinite(ny))
            throw ZeroImage("solve_eps: |T(x + eps u)|_inf = " + std::to_string(ny) + " at eps = " +
                            std::to_string(eps));
        const double lambda = 1.0 / ny;
        Vector next = y / ny;
        if (theta < 1.0) {
            next = (1.0 - theta) * x + theta * next;
            next /= sup_norm(next);
        }
        increment = sup_norm(next - x);
        x = std::move(next);
        out.solution = {lambda, x, k, increment, theta < 1.0};
        if (increment <= cfg.inner_tol && std::abs(lambda - lambda_prev) <= cfg.inner_tol * lambda_prev) {
            out.converged = true;
            return out;
        }
        lambda_prev = lambda;
    }
    return out;
}

}  // namespace

void ContinuationConfig::validate() const {
    if (!(eps0 > 0.0)) throw ConfigError("eps0 must be positive");
    if (!(eps_min > 0.0)) throw ConfigError("eps_min must be positive");
    if (!(eps_min < eps0)) throw ConfigError("eps_min must be smaller than eps0");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("ratio must lie in (0, 1)");
    if (max_inner_iters <= 0) throw ConfigError("max_iters must be positive");
    if (!(inner_tol > 0.0)) throw ConfigError("tol must be positive");
}

std::vector<double> ContinuationConfig::schedule() const {
    validate();
    std::vector<double> levels;
    for (double eps = eps0; eps > eps_min; eps *= ratio) levels.push_back(eps);
    levels.push_back(eps_min);
    return levels;
}

EpsSolution solve_eps(const MonotoneOperator& T, const Vector& u, double eps, const Vector& start,
                      const ContinuationConfig& cfg) {
    if (u.size() != T.dimension()) throw DimensionMismatch(T.dimension(), u.size(), "solve_eps (u)");
    if (start.size() != T.dimension()) throw DimensionMismatch(T.dimension(), start.size(), "solve_eps (start)");
    if (!(eps > 0.0)) throw ConfigError("solve_eps: eps must be positive");

    IterationOutcome plain = iterate(T, u, eps, start, cfg, 1.0);
    if (plain.converged) return plain.solution;
    IterationOutcome damped = iterate(T, u, eps, start, cfg, 0.5);
    if (damped.converged) return damped.solution;

    throw NoConvergence("solve_eps: no convergence at eps = " + std::to_string(eps) + " after " +
                            std::to_string(cfg.max_inner_iters) + " iterations (plain and damped); last increment " +
                            std::to_string(damped.solution.residual),
                        damped.solution.x, damped.solution.residual);
}

double residual(const MonotoneOperator& T, double lambda, const Vector& x) {
    return sup_norm(x - lambda * T(x));
}

Vector default_u(const MonotoneOperator& T) {
    const ConeSpec& K = T.cone();
    if (K.kind == ConeKind::NonNegOrthant) return Vector::Ones(T.dimension());
    const Grid grid{0.0, K.spacing * static_cast<double>(K.dimension + 1), K.dimension};
    return hat_function(grid);
}

ContinuationResult continuation(const MonotoneOperator& T, const Vector& u, const ContinuationConfig& cfg,
                                const std::optional<Vector>& start) {
    const std::vector<double> levels = cfg.schedule();
    if (u.size() != T.dimension()) throw DimensionMismatch(T.dimension(), u.size(), "continuation (u)");
    if (!contains(T.cone(), u) || sup_norm(u) == 0.0)
        throw NoHConstant("continuation: u must be a nonzero cone element");

    Vector x;
    if (start) {
        if (start->size() != T.dimension()) throw DimensionMismatch(T.dimension(), start->size(), "continuation");
        if (sup_norm(*start) == 0.0) throw ConfigError("continuation: start vector is zero");
        x = *start / sup_norm(*start);
    } else {
        Rng rng(cfg.seed);
        x = sample_unit_cone_point(T.dimension(), rng);
    }

    ContinuationResult result;
    try {
        for (double eps : levels) {
            const EpsSolution s = solve_eps(T, u, eps, x, cfg);
            const double step = result.trace.empty() ? 0.0 : sup_norm(s.x - x);
            result.trace.records.push_back({eps, s.lambda, s.iterations, s.residual, step, s.x});
            x = s.x;
        }
        const TraceRecord& last = result.trace.records.back();
        result.pair.lambda = last.lambda;
        result.pair.x = last.x;
        result.pair.residual = residual(T, last.lambda, last.x);
        result.pair.in_cone = contains(T.cone(), last.x);
        if (!(result.pair.residual <= kEigenResidualThreshold))
            throw ResidualTooLarge("continuation: final residual " + std::to_string(result.pair.residual) +
                                       " exceeds 1e-6",
                                   result.pair.lambda, result.pair.x, result.pair.residual);
    } catch (SolverError& e) {
        e.partial_trace = result.trace;
        throw;
    }
    return result;
}

PropertyReport verify_branch_bounds(const MonotoneOperator& T, const Vector& u, const HConstant& H,
                                    const ContinuationTrace& trace, int depth, double tol) {
    const ConeSpec K = T.cone().with_tolerance(tol);
    PropertyReport report{"branch_bounds", true, 0.0, 0, 0, std::nullopt};
    const Vector Tu = T(u);

    const auto record = [&](double violation, const TraceRecord& r, const char* which, int k) {
        ++report.samples;
        if (violation > report.worst_violation) report.worst_violation = violation;
        if (violation > tol && report.pass) {
            report.pass = false;
            report.witness = nlohmann::json{{"inequality", which}, {"eps", r.eps}, {"lambda", r.lambda}, {"M", H.M}};
            if (k > 0) (*report.witness)["n"] = k;
        }
    };

    for (const TraceRecord& r : trace.records) {
        // (a) the branch stays in [0, M] x K
        record(std::max(0.0, r.lambda - H.M) / H.M, r, "lambda_le_M", 0);
        // (b) x >= lambda eps T(u) and x >= lambda T(x)
        record(cone_violation(K, Vector(r.x - r.lambda * r.eps * Tu)), r, "x_ge_lambda_eps_Tu", 0);
        record(cone_violation(K, Vector(r.x - r.lambda * T(r.x))), r, "x_ge_lambda_Tx", 0);
        // (c) x >= (lambda/M)^k eps u
        double factor = 1.0;
        for (int k = 1; k <= depth; ++k) {
            factor *= r.lambda / H.M;
            record(cone_violation(K, Vector(r.x - factor * r.eps * u)), r, "x_ge_power_eps_u", k);
        }
    }
    return report;
}

UniquenessReport uniqueness_probe(const MonotoneOperator& T, const ContinuationConfig& cfg, int k,
                                  double distance_tol, double spread_tol) {
    if (k < 2) throw ConfigError("uniqueness_probe needs k >= 2");
    UniquenessReport out;
    out.report = PropertyReport{"uniqueness", false, 0.0, 0, cfg.seed, std::nullopt};
    out.precondition_met = check_strong_positivity(T, 20, T.cone().tolerance, cfg.seed).pass;

    Rng rng(cfg.seed);
    std::vector<EigenPair> pairs;
    for (int i = 0; i < k; ++i) {
        const Vector start = sample_unit_cone_point(T.dimension(), rng);
        Vector u = sample_unit_cone_point(T.dimension(), rng);
        bool admissible = false;
        for (int attempt = 0; attempt < 10 && !admissible; ++attempt) {
            try {
                (void)find_h_constant(T, u);
                admissible = true;
            } catch (const NoHConstant&) {
                u = sample_unit_cone_point(T.dimension(), rng);
            }
        }
        ++out.runs;
        if (!admissible) {
            ++out.failures;
            continue;
        }
        try {
            pairs.push_back(continuation(T, u, cfg, start).pair);
        } catch (const SolverError&) {
            ++out.failures;
        }
    }

    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            out.max_distance = std::max(out.max_distance, sup_norm(pairs[i].x - pairs[j].x));
            out.lambda_spread =
                std::max(out.lambda_spread, std::abs(pairs[i].lambda - pairs[j].lambda) / pairs.front().lambda);
        }

    out.report.samples = pairs.size();
    out.report.worst_violation = out.max_distance;
    out.report.pass = out.precondition_met && out.failures == 0 && pairs.size() >= 2 &&
                      out.max_distance < distance_tol && out.lambda_spread < spread_tol;
    if (!out.report.pass) {
        out.report.witness = nlohmann::json{{"strongly_positive", out.precondition_met},
                                            {"failures", out.failures},
                                            {"max_distance", out.max_distance},
                                            {"lambda_spread", out.lambda_spread}};
    }
    return out;
}

PropertyReport minimality_check(const MonotoneOperator& T, double lambda0, double tol) {
    const Matrix* A = T.matrix();
    if (!A) throw ConfigError("minimality_check applies to matrix instances only");
    const SpectrumResult spec = dense_spectrum(*A);
    PropertyReport report{"minimality", true, 0.0, 0, 0, std::nullopt};
    const double zero = 1e-14 * std::max(1.0, spec.spectral_radius);
    for (const auto& mu : spec.eigenvalues) {
        const double m = std::abs(mu);
        if (m <= zero) continue;
        ++report.samples;
        const double v = std::max(0.0, std::abs(lambda0) - 1.0 / m) * m;  // relative to 1/|mu|
        if (v > report.worst_violation) {
            report.worst_violation = v;
            if (v > tol) report.witness = nlohmann::json{{"mu_re", mu.real()}, {"mu_im", mu.imag()}, {"lambda0", lambda0}};
        }
    }
    const double product_gap = std::abs(lambda0 * spec.spectral_radius - 1.0);
    if (product_gap > report.worst_violation) report.worst_violation = product_gap;
    report.pass = report.worst_violation <= tol;
    if (!report.pass && !report.witness)
        report.witness = nlohmann::json{{"lambda0", lambda0}, {"spectral_radius", spec.spectral_radius}};
    return report;
}

PropertyReport simplicity_check(const MonotoneOperator& T, double lambda0, double tol) {
    const Matrix* A = T.matrix();
    if (!A) throw ConfigError("simplicity_check applies to matrix instances only");
    PropertyReport report{"simplicity", true, 0.0, 1, 0, std::nullopt};
    const Index dim = eigenspace_dimension(*A, 1.0 / lambda0, tol);
    report.pass = dim == 1;
    report.worst_violation = static_cast<double>(std::abs(dim - 1));
    if (!report.pass) report.witness = nlohmann::json{{"eigenspace_dimension", dim}, {"lambda0", lambda0}};
    return report;
}

}  // namespace krl
