#include <doctest.h>

#include "support/testing.hpp"

using namespace krl;
using krl::testing::vec;

TEST_CASE("contains on the orthant") {
    const auto K0 = ConeSpec::orthant(2, 0.0);
    CHECK(contains(K0, vec({0, 0})));
    CHECK_FALSE(contains(K0, vec({1, -1})));
    CHECK(contains(ConeSpec::orthant(3, 1e-12), vec({1, 2, -1e-13})));
    CHECK_FALSE(contains(ConeSpec::orthant(3, 1e-12), vec({1, 2, -1e-11})));
    CHECK_THROWS_AS((void)contains(K0, vec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("tolerance is relative to max(1, |x|)") {
    const auto K = ConeSpec::orthant(2, 1e-6);
    CHECK(contains(K, vec({1e6, -0.5})));
    CHECK_FALSE(contains(K, vec({1e6, -2.0})));
    CHECK(contains(K, vec({1e-3, -1e-7})));
}

TEST_CASE("leq") {
    const auto K = ConeSpec::orthant(2, 0.0);
    CHECK(leq(K, vec({1, 1}), vec({2, 1})));
    CHECK(leq(K, vec({1, 1}), vec({1, 1})));
    CHECK_FALSE(leq(K, vec({2, 0}), vec({1, 3})));
    CHECK_THROWS_AS((void)leq(K, vec({1}), vec({1, 1})), DimensionMismatch);
}

TEST_CASE("is_interior") {
    const auto K = ConeSpec::orthant(2);
    CHECK(is_interior(K, vec({1, 2})));
    CHECK_FALSE(is_interior(K, vec({1, 0})));
    CHECK_FALSE(is_interior(K, vec({0, 0})));
    CHECK_THROWS_AS((void)is_interior(K, vec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("discrete interior cone governs boundary slopes") {
    const auto K = ConeSpec::discrete_interior(4, 0.2, 0.0);
    const Vector g = governed_coordinates(K, vec({1, 2, 3, 4}));
    REQUIRE(g.size() == 6);
    CHECK(g(4) == doctest::Approx(5.0));
    CHECK(g(5) == doctest::Approx(20.0));
    CHECK(contains(K, vec({0, 1, 1, 0})));
    CHECK_FALSE(is_interior(K, vec({0, 1, 1, 0})));
    CHECK(is_interior(K, vec({0.1, 1, 1, 0.1})));
}

TEST_CASE("delta examples") {
    const auto K = ConeSpec::orthant(2, 0.0);
    CHECK(delta(K, vec({1, 1}), vec({1, -2})).value == doctest::Approx(0.5));
    CHECK(delta(K, vec({1, 2}), vec({-1, -1})).value == doctest::Approx(1.0));
    const auto inf = delta(K, vec({1, 1}), vec({3, 0}));
    CHECK(inf.infinite);
    CHECK(std::isinf(inf.value));
    CHECK_THROWS_AS((void)delta(K, vec({-1, 1}), vec({1, -1})), NotInCone);
}

TEST_CASE("delta on the boundary may be zero, in the interior it is positive") {
    const auto K = ConeSpec::orthant(2, 0.0);
    CHECK(delta(K, vec({0, 1}), vec({-1, 1})).value == 0.0);
    CHECK(delta(K, vec({0.5, 1}), vec({-1, 1})).value > 0.0);
}

TEST_CASE("delta with a tolerance band") {
    const double eta = 1e-10;
    const auto K = ConeSpec::orthant(3, eta);
    const Vector x = vec({1, 2, 0.5});
    const Vector y = vec({-1, 0.3, -2});
    const auto d = delta(K, x, y);
    REQUIRE_FALSE(d.infinite);
    CHECK(contains(K, Vector(x + d.value * y)));
    CHECK_FALSE(contains(K, Vector(x + (1 + 10 * eta) * (d.value + eta) * y)));
    CHECK(d.value == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("cone spec validation") {
    CHECK_THROWS_AS((void)ConeSpec::orthant(2, -1e-3), ConfigError);
    CHECK_THROWS_AS((void)ConeSpec::orthant(2, 1.0), ConfigError);
    CHECK_THROWS_AS((void)ConeSpec::orthant(0), ConfigError);
    CHECK_THROWS_AS((void)ConeSpec::discrete_interior(3, 0.0), ConfigError);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST_CASE("property: cone axioms and scale invariance") {
    Rng rng(11);
    std::uniform_real_distribution<double> T(0.0, 100.0);
    for (const auto& K : {ConeSpec::orthant(6, 0.0), ConeSpec::discrete_interior(6, 0.1, 0.0)}) {
        CHECK(contains(K, Vector::Zero(6)));
        for (int s = 0; s < 200; ++s) {
            const Vector x = sample_cone_point(6, rng);
            const Vector y = sample_cone_point(6, rng);
            const double t = T(rng);
            CHECK(contains(K, x));
            CHECK(contains(K, Vector(x + y)));
            CHECK(contains(K, Vector(t * x)));
            const Vector z = krl::testing::random_vector(6, rng);
            CHECK(contains(K, z) == contains(K, Vector((t + 1e-3) * z)));
        }
    }
}

TEST_CASE("property: assumption (A) at eta = 0") {
    Rng rng(12);
    for (const auto& K : {ConeSpec::orthant(5, 0.0), ConeSpec::discrete_interior(5, 0.25, 0.0)}) {
        for (int s = 0; s < 500; ++s) {
            Vector x = krl::testing::random_vector(5, rng);
            if (s % 3 == 0) x.setZero();
            if (contains(K, x) && contains(K, Vector(-x))) CHECK(x.isZero(0.0));
        }
    }
}

TEST_CASE("property: ordering compatibility and antisymmetry") {
    Rng rng(13);
    std::uniform_real_distribution<double> T(0.0, 10.0);
    for (double eta : {0.0, 1e-10, 1e-6}) {
        const auto K = ConeSpec::orthant(4, eta);
        int compatible_cases = 0;
        for (int s = 0; s < 2000; ++s) {
            const Vector x = krl::testing::random_vector(4, rng);
            const Vector d = sample_cone_point(4, rng);
            const Vector y = s % 2 == 0 ? Vector(x + d) : krl::testing::random_vector(4, rng);
            const Vector z = krl::testing::random_vector(4, rng);
            const double t = T(rng);
            if (leq(K, x, y)) {
                ++compatible_cases;
                if (eta == 0.0) {
                    CHECK(leq(K, Vector(x + z), Vector(y + z)));
                    CHECK(leq(K, Vector(t * x), Vector(t * y)));
                }
            }
            if (leq(K, x, y) && leq(K, y, x)) {
                const double bound = 2 * eta * std::max({1.0, sup_norm(x), sup_norm(y)});
                CHECK(sup_norm(Vector(x - y)) <= bound);
            }
        }
        CHECK(compatible_cases >= 1000);
    }
}

namespace {

// Independent oracle: bisection on lambda with a plain coordinate test.
double bisection_delta(const Vector& x, const Vector& y) {
    auto inside = [&](double t) { return ((x + t * y).array() >= 0.0).all(); };
    double lo = 0.0, hi = 1.0;
    while (inside(hi)) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (inside(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

TEST_CASE("property: delta matches a bisection oracle on 100 instances") {
    Rng rng(14);
    std::uniform_int_distribution<Index> dim(1, 50);
    std::uniform_real_distribution<double> U(0.1, 3.0);
    for (int s = 0; s < 100; ++s) {
        const Index n = dim(rng);
        Vector x(n);
        for (Index i = 0; i < n; ++i) x(i) = U(rng);
        Vector y = krl::testing::random_vector(n, rng);
        if ((y.array() >= 0.0).all()) y(0) = -1.0;
        const auto K = ConeSpec::orthant(n, 0.0);
        const auto d = delta(K, x, y);
        REQUIRE_FALSE(d.infinite);
        CHECK(d.value > 0.0);
        const double oracle = bisection_delta(x, y);
        CHECK(std::abs(d.value - oracle) <= 1e-9 * oracle);
        CHECK(contains(K, Vector(x + d.value * y)));
        CHECK_FALSE(contains(K, Vector(x + (d.value + 1e-6 * sup_norm(x)) * y)));
    }
}

TEST_CASE("property: delta guarantee with eta > 0") {
    Rng rng(15);
    for (const double eta : {1e-10, 1e-8}) {
        for (int s = 0; s < 100; ++s) {
            const Index n = 8;
            const auto K = s % 2 == 0 ? ConeSpec::orthant(n, eta) : ConeSpec::discrete_interior(n, 0.1, eta);
            Vector x = sample_cone_point(n, rng);
            x.array() += 0.05;
            Vector y = krl::testing::random_vector(n, rng);
            if (contains(K, y)) continue;
            const auto d = delta(K, x, y);
            REQUIRE_FALSE(d.infinite);
            CHECK(contains(K, Vector(x + d.value * y)));
            CHECK_FALSE(contains(K, Vector(x + (1 + 10 * eta) * (d.value + eta) * y)));
        }
    }
}
