#include <doctest.h>

#include <cmath>

#include "bilap/roots.hpp"

using namespace bilap;

TEST_CASE("polynomial evaluation and derivative") {
    Polynomial p({256.0, -128.0, -4.0, 1.0}); // x^3 - 4x^2 - 128x + 256
    CHECK(p(12.0) == doctest::Approx(-128.0));
    CHECK(p(13.0) == doctest::Approx(113.0));
    Polynomial d = p.derivative();
    CHECK(d(2.0) == doctest::Approx(3 * 4.0 - 8 * 2.0 - 128.0));
}

TEST_CASE("sturm count") {
    // (x-2)(x-3)(x-5) = x^3 -10x^2 +31x -30
    Polynomial p({-30.0, 31.0, -10.0, 1.0});
    CHECK(count_real_roots(p, 0.0, 10.0) == 3);
    CHECK(count_real_roots(p, 2.5, 10.0) == 2);
    CHECK(count_real_roots(p, 5.5, 10.0) == 0);
    CHECK(count_real_roots(p, 0.0, 2.0) == 1); // the (lo, hi] convention
}

TEST_CASE("symmetric quadratic") {
    Polynomial p({-1.0, 0.0, 1.0}); // x^2 - 1
    CHECK(largest_real_root(p, 0.0, 10.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cubic with sign change between 12 and 13") {
    Polynomial p({256.0, -128.0, -4.0, 1.0});
    const double root = largest_real_root(p, 1.0, 100.0);
    CHECK(root > 12.0);
    CHECK(root < 13.0);
    CHECK(root == doctest::Approx(12.565344462621466).epsilon(1e-12));
}

TEST_CASE("constructed factorization") {
    Polynomial p({-30.0, 31.0, -10.0, 1.0});
    CHECK(largest_real_root(p, 1.0, 100.0) == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("irrational root against std::sqrt") {
    Polynomial p({-2.0, 0.0, 1.0});
    CHECK(std::abs(largest_real_root(p, 0.0, 10.0) - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("no real root in bracket") {
    Polynomial p({1.0, 0.0, 1.0}); // x^2 + 1
    CHECK_THROWS_AS(largest_real_root(p, 0.0, 10.0), NoRealRootError);
    CHECK_THROWS_WITH(largest_real_root(p, 0.0, 10.0), "no real root in bracket");
    // roots exist but outside the bracket
    Polynomial q({-1.0, 0.0, 1.0});
    CHECK_THROWS_AS(largest_real_root(q, 2.0, 10.0), NoRealRootError);
}

TEST_CASE("double root, no sign change") {
    // (x-3)^2 (x+1) = x^3 - 5x^2 + 3x + 9: largest root 3 has multiplicity 2
    Polynomial p({9.0, 3.0, -5.0, 1.0});
    const double root = largest_real_root(p, 0.0, 10.0);
    CHECK(root == doctest::Approx(3.0).epsilon(1e-7));
}

TEST_CASE("largest root found even with a higher sign-free pair nearby") {
    // (x-1)(x-6)(x-7) has a sign change only below 6 on a coarse scan if the
    // cell spans [6,7]; the count bisection must still land on 7
    Polynomial p({-42.0, 55.0, -14.0, 1.0});
    CHECK(largest_real_root(p, 0.0, 20.0) == doctest::Approx(7.0).epsilon(1e-12));
}
