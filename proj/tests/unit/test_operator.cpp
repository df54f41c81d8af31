#include <doctest.h>

#include <future>

#include "support/testing.hpp"

using namespace krl;
using krl::testing::mat;
using krl::testing::vec;

TEST_CASE("matrix operator applies A x") {
    const auto T = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    CHECK(T(vec({1, 0})) == vec({2, 1}));
    CHECK(T.dimension() == 2);
    REQUIRE(T.matrix() != nullptr);
    CHECK(T.cone().kind == ConeKind::NonNegOrthant);
    CHECK_THROWS_AS((void)T(vec({1, 0, 0})), DimensionMismatch);
}

TEST_CASE("apply(0) = 0 for every instance family") {
    const Grid grid{0.0, 1.0, 49};
    std::vector<MonotoneOperator> ops = {
        build_matrix_operator(mat({{2, 1}, {1, 2}})),
        build_inverse_operator(PLaplaceSpec{3.0, grid}),
        build_inverse_operator(PLaplaceSpec{1.5, grid}),
        build_inverse_operator(HardySobolevSpec{.p = 2.0, .n_dim = 3, .mu = 0.1, .grid = grid}),
        build_inverse_operator(PucciSpec{1.0, 2.0, PucciVariant::Minus, grid}),
    };
    for (const auto& T : ops) {
        CAPTURE(T.label());
        const Vector z = T(Vector::Zero(T.dimension()));
        CHECK(sup_norm(z) == 0.0);
    }
}

TEST_CASE("apply is deterministic") {
    const Grid grid{0.0, 1.0, 99};
    const auto T = build_inverse_operator(PLaplaceSpec{3.0, grid});
    Rng rng(3);
    const Vector x = sample_cone_point(grid.n, rng);
    const Vector a = T(x);
    const Vector b = T(x);
    CHECK(a == b);
}

TEST_CASE("p-Laplacian inverse maps the hat function to a strictly positive grid function") {
    const Grid grid{0.0, 1.0, 99};
    const auto T = build_inverse_operator(PLaplaceSpec{3.0, grid});
    const Vector v = T(hat_function(grid));
    CHECK(v.minCoeff() > 0.0);
    CHECK(is_interior(T.cone(), v));
}

TEST_CASE("scaled operator") {
    const auto T = build_matrix_operator(mat({{2, 1}, {1, 2}}));
    const auto S = T.scaled(3.0);
    CHECK(S(vec({1, 0})) == vec({6, 3}));
    CHECK(S.cone() == T.cone());
}

TEST_CASE("custom operators check output dimension") {
    const MonotoneOperator bad("bad", ConeSpec::orthant(2), [](const Vector&) { return Vector::Zero(3).eval(); });
    CHECK_THROWS_AS((void)bad(vec({1, 1})), DimensionMismatch);
}

TEST_CASE("concurrent apply on one instance") {
    const Grid grid{0.0, 1.0, 199};
    const auto T = build_inverse_operator(PucciSpec{1.0, 2.0, PucciVariant::Plus, grid});
    Rng rng(4);
    const Vector x = sample_cone_point(grid.n, rng);
    const Vector expected = T(x);
    std::vector<std::future<Vector>> jobs;
    for (int i = 0; i < 4; ++i) jobs.push_back(std::async(std::launch::async, [&] { return T(x); }));
    for (auto& j : jobs) CHECK(j.get() == expected);
}
