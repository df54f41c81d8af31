#include <doctest.h>

#include <numbers>

#include "support/testing.hpp"

using namespace krl;
using krl::testing::mat;
using krl::testing::vec;

namespace {
const double kPi2 = std::numbers::pi * std::numbers::pi;
}

TEST_CASE("config defaults and schedule") {
    ContinuationConfig cfg;
    CHECK(cfg.eps0 == 0.1);
    CHECK(cfg.ratio == 0.5);
    CHECK(cfg.eps_min == 1e-8);
    CHECK(cfg.max_inner_iters == 10000);
    CHECK(cfg.inner_tol == 1e-12);
    const auto s = cfg.schedule();
    CHECK(s.front() == 0.1);
    CHECK(s.back() == 1e-8);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] < s[i - 1]);

    ContinuationConfig bad;
    bad.ratio = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = {};
    bad.eps_min = 0.2;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("solve_eps examples") {
    ContinuationConfig cfg;
    const auto A = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    const auto a = solve_eps(A, vec({1, 1}), 0.1, vec({1, 0.5}), cfg);
    CHECK(a.lambda == doctest::Approx(10.0 / 33.0).epsilon(1e-12));
    CHECK(a.x(0) == doctest::Approx(1.0));
    CHECK(a.x(1) == doctest::Approx(1.0));

    const auto I = build_matrix_operator(mat({{1, 0}, {0, 1}}));
    const auto b = solve_eps(I, vec({1, 1}), 0.5, vec({1, 1}), cfg);
    CHECK(b.lambda == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(b.x(0) == doctest::Approx(1.0));
    CHECK(b.x(1) == doctest::Approx(1.0));
}

TEST_CASE("solve_eps on the p = 2 Laplacian inverse is within 2% of pi^2") {
    const Grid grid{0.0, 1.0, 199};
    const auto T = build_inverse_operator(PLaplaceSpec{2.0, grid});
    const Vector u = hat_function(grid);
    const auto s = solve_eps(T, u, 1e-2, u / sup_norm(u), ContinuationConfig{});
    const double oracle = dirichlet_laplacian_eigenvalues(grid)(0);
    CHECK(krl::testing::relative_error(s.lambda, oracle) < 0.02);
    CHECK(krl::testing::relative_error(s.lambda, kPi2) < 0.02);
}

TEST_CASE("solve_eps errors") {
    ContinuationConfig cfg;
    cfg.max_inner_iters = 3;
    cfg.inner_tol = 1e-15;
    const auto A = build_matrix_operator(mat({{1, 1}, {1, 0}}));
    CHECK_THROWS_AS((void)solve_eps(A, vec({1, 1}), 0.1, vec({0, 1}), cfg), NoConvergence);

    const auto Z = build_matrix_operator(mat({{0, 0}, {0, 0}}));
    CHECK_THROWS_AS((void)solve_eps(Z, vec({1, 1}), 0.1, vec({1, 1}), ContinuationConfig{}), ZeroImage);
}

TEST_CASE("NoConvergence reports the last iterate") {
    ContinuationConfig cfg;
    cfg.max_inner_iters = 2;
    cfg.inner_tol = 1e-15;
    const auto A = build_matrix_operator(mat({{1, 1}, {1, 0}}));
    try {
        (void)solve_eps(A, vec({1, 1}), 0.1, vec({0, 1}), cfg);
        FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
        CHECK(e.last_iterate.size() == 2);
        CHECK(e.residual > 0.0);
    }
}

TEST_CASE("continuation examples") {
    ContinuationConfig cfg;
    const auto A = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    const auto r = continuation(A, vec({1, 1}), cfg);
    CHECK(r.pair.lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
    CHECK(r.pair.x(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.pair.x(1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.pair.in_cone);
    CHECK(r.pair.residual <= kEigenResidualThreshold);
    CHECK(std::abs(sup_norm(r.pair.x) - 1.0) <= 1e-12);

    const auto I = build_matrix_operator(mat({{1, 0}, {0, 1}}));
    const auto id = continuation(I, vec({1, 1}), cfg, vec({1, 1}));
    CHECK(id.pair.lambda == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(id.pair.x(0) == doctest::Approx(1.0));
    CHECK(id.pair.x(1) == doctest::Approx(1.0));
}

TEST_CASE("continuation trace invariants") {
    ContinuationConfig cfg;
    const auto A = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    const auto r = continuation(A, vec({1, 1}), cfg);
    REQUIRE(r.trace.size() == cfg.schedule().size());
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto& rec = r.trace.records[i];
        CHECK(rec.residual <= cfg.inner_tol);
        if (i > 0) CHECK(rec.eps < r.trace.records[i - 1].eps);
        CHECK(std::abs(sup_norm(rec.x) - 1.0) <= 1e-12);
    }
    CHECK(r.trace.records.front().step_delta == 0.0);
}

TEST_CASE("continuation on Pucci M+ (1,2) is within 1% of pi^2") {
    const auto T = build_inverse_operator(PucciSpec{1.0, 2.0, PucciVariant::Plus, Grid{0.0, 1.0, 199}});
    const auto r = continuation(T, default_u(T), ContinuationConfig{});
    CHECK(krl::testing::relative_error(r.pair.lambda, kPi2) < 0.01);
    CHECK(krl::testing::relative_error(r.pair.lambda, pucci_shooting(1.0, 2.0, PucciVariant::Plus, 1.0)) < 0.01);
}

TEST_CASE("continuation propagates failures with the partial trace") {
    int calls = 0;
    const MonotoneOperator T("breaks", ConeSpec::orthant(2), [&calls](const Vector& x) {
        if (++calls > 20) throw EvaluationFailure("inner solve diverged");
        return Vector(2.0 * x);
    });
    try {
        (void)continuation(T, vec({1, 1}), ContinuationConfig{}, vec({1, 1}));
        FAIL("expected EvaluationFailure");
    } catch (const EvaluationFailure& e) {
        CHECK(e.partial_trace.size() >= 1);
        CHECK(e.partial_trace.size() < ContinuationConfig{}.schedule().size());
    }
}

TEST_CASE("residual") {
    const auto A = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    CHECK(residual(A, 1.0 / 3.0, vec({1, 1})) == doctest::Approx(0.0));
    CHECK(residual(A, 1.0, vec({1, 0})) == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)residual(A, 1.0, vec({1})), DimensionMismatch);
}

TEST_CASE("default_u") {
    CHECK(default_u(build_matrix_operator(mat({{1, 0}, {0, 1}}))) == vec({1, 1}));
    const Grid grid{0.0, 1.0, 9};
    const Vector u = default_u(build_inverse_operator(PLaplaceSpec{2.0, grid}));
    CHECK(u == hat_function(grid));
    CHECK(u.maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("verify_branch_bounds examples") {
    const auto A = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    const Vector u = vec({1, 1});
    const auto H = find_h_constant(A, u);
    CHECK(H.M == doctest::Approx(1.0 / 3.0));
    ContinuationTrace trace;
    trace.records.push_back({0.1, 10.0 / 33.0, 1, 0.0, 0.0, vec({1, 1})});
    const auto r = verify_branch_bounds(A, u, H, trace);
    CHECK(r.pass);
    CHECK(r.property == "branch_bounds");
    // (lambda/M) eps u = (10/11)(0.1)(1,1) <= (1,1)
    const Vector lhs = (10.0 / 33.0) / H.M * 0.1 * u;
    CHECK(lhs(0) == doctest::Approx(10.0 / 110.0));
    CHECK(leq(A.cone(), lhs, vec({1, 1})));
}

TEST_CASE("verify_branch_bounds catches a level above M") {
    const auto A = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    const Vector u = vec({1, 1});
    const auto H = find_h_constant(A, u);
    ContinuationTrace trace;
    trace.records.push_back({0.1, 0.5, 1, 0.0, 0.0, vec({1, 1})});
    const auto r = verify_branch_bounds(A, u, H, trace);
    CHECK_FALSE(r.pass);
    REQUIRE(r.witness);
    CHECK((*r.witness)["inequality"] == "lambda_le_M");
}

TEST_CASE("verify_branch_bounds on a p = 3 trace") {
    const auto T = build_inverse_operator(PLaplaceSpec{3.0, Grid{0.0, 1.0, 99}});
    const Vector u = default_u(T);
    const auto H = find_h_constant(T, u);
    const auto r = continuation(T, u, ContinuationConfig{});
    const auto report = verify_branch_bounds(T, u, H, r.trace, 8, 1e-8);
    CHECK(report.pass);
    CHECK(report.samples >= r.trace.size() * 11);
}

TEST_CASE("uniqueness_probe") {
    const auto A = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    ContinuationConfig cfg;
    cfg.eps_min = 1e-12;
    const auto pos = uniqueness_probe(A, cfg, 20);
    CHECK(pos.report.pass);
    CHECK(pos.precondition_met);
    CHECK(pos.max_distance < 1e-8);
    CHECK(pos.failures == 0);

    const auto I = build_matrix_operator(mat({{1, 0}, {0, 1}}));
    const auto id = uniqueness_probe(I, cfg, 20);
    CHECK_FALSE(id.report.pass);
    CHECK_FALSE(id.precondition_met);
    CHECK(id.max_distance > 1e-2);
    REQUIRE(id.report.witness);
    CHECK((*id.report.witness)["strongly_positive"] == false);

    const auto P = build_inverse_operator(PLaplaceSpec{1.5, Grid{0.0, 1.0, 99}});
    const auto pl = uniqueness_probe(P, ContinuationConfig{}, 8);
    CHECK(pl.report.pass);
    CHECK(pl.max_distance < 1e-5);

    CHECK_THROWS_AS((void)uniqueness_probe(A, cfg, 1), ConfigError);
}

TEST_CASE("minimality_check") {
    const auto A = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    CHECK(minimality_check(A, 1.0 / 3.0).pass);
    CHECK_FALSE(minimality_check(A, 1.0).pass);
    const auto S = build_matrix_operator(mat({{0, 1}, {1, 0}}));
    CHECK(minimality_check(S, 1.0).pass);

    const auto P = build_inverse_operator(PLaplaceSpec{2.0, Grid{0.0, 1.0, 9}});
    CHECK_THROWS_AS((void)minimality_check(P, 1.0), ConfigError);
}

TEST_CASE("simplicity_check") {
    CHECK(simplicity_check(build_matrix_operator(mat({{2, 1}, {1, 2}})), 1.0 / 3.0).pass);
    CHECK_FALSE(simplicity_check(build_matrix_operator(mat({{1, 0}, {0, 1}})), 1.0).pass);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST_CASE("property: lambda_eps <= M along every converged trace") {
    Rng rng(21);
    for (int s = 0; s < 10; ++s) {
        const auto A = build_matrix_operator(krl::testing::random_irreducible(6, rng));
        const Vector u = default_u(A);
        const auto H = find_h_constant(A, u);
        const auto r = continuation(A, u, ContinuationConfig{});
        for (const auto& rec : r.trace.records) CHECK(rec.lambda <= H.M * (1 + 1e-12));
    }
}

TEST_CASE("property: bit-reproducible reruns") {
    const auto T = build_inverse_operator(PLaplaceSpec{3.0, Grid{0.0, 1.0, 49}});
    ContinuationConfig cfg;
    cfg.seed = 77;
    const auto a = continuation(T, default_u(T), cfg);
    const auto b = continuation(T, default_u(T), cfg);
    CHECK(a.pair.lambda == b.pair.lambda);
    CHECK(a.pair.x == b.pair.x);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace.records[i].lambda == b.trace.records[i].lambda);
}

TEST_CASE("property: scaling invariance") {
    Rng rng(22);
    for (int s = 0; s < 10; ++s) {
        const auto A = build_matrix_operator(krl::testing::random_positive(5, rng));
        ContinuationConfig cfg;
        cfg.eps_min = 1e-12;
        const Vector u = default_u(A);
        for (double c : {0.01, 3.0, 250.0}) {
            const auto base = continuation(A, u, cfg);
            const auto scaled = continuation(A.scaled(c), u, cfg);
            CHECK(krl::testing::relative_error(scaled.pair.lambda, base.pair.lambda / c) < 1e-9);
            CHECK(sup_norm(Vector(scaled.pair.x - base.pair.x)) < 1e-9);
        }
    }
    const auto P = build_inverse_operator(PLaplaceSpec{3.0, Grid{0.0, 1.0, 49}});
    const auto base = continuation(P, default_u(P), ContinuationConfig{});
    const auto scaled = continuation(P.scaled(2.0), default_u(P), ContinuationConfig{});
    CHECK(sup_norm(Vector(scaled.pair.x - base.pair.x)) < 1e-6);
}

TEST_CASE("property: eps-robustness across ratios") {
    Rng rng(23);
    for (int s = 0; s < 10; ++s) {
        const auto A = build_matrix_operator(krl::testing::random_irreducible(5, rng));
        ContinuationConfig half;
        ContinuationConfig quarter;
        quarter.ratio = 0.25;
        const auto a = continuation(A, default_u(A), half);
        const auto b = continuation(A, default_u(A), quarter);
        CHECK(krl::testing::relative_error(a.pair.lambda, b.pair.lambda) < 1e-8);
        CHECK(sup_norm(Vector(a.pair.x - b.pair.x)) < 1e-8);
    }
}

TEST_CASE("property: simplicity surrogate on 50 positive matrices") {
    Rng rng(24);
    ContinuationConfig cfg;
    cfg.eps_min = 1e-12;
    for (int s = 0; s < 50; ++s) {
        const auto A = build_matrix_operator(krl::testing::random_positive(6, rng));
        const auto r = continuation(A, default_u(A), cfg);
        CHECK(simplicity_check(A, r.pair.lambda).pass);
    }
}
