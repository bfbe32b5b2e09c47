#include <doctest.h>

#include <cmath>
#include <tuple>
#include <vector>

#include "bilap/sphere.hpp"

using namespace bilap;

TEST_CASE("combined coefficients at (6, 0, 5)") {
    const auto rep = combined_coefficients(ProblemParams(6, 0.0, 5.0));
    CHECK(rep.coeff_bilaplacian == doctest::Approx(4.0));
    CHECK(rep.coeff_gradient == doctest::Approx(24.0));
    CHECK(rep.coeff_mass == doctest::Approx(36.0));
    CHECK(rep.conclusion == SphereConclusion::all_positive);
}

TEST_CASE("mass coefficient goes negative deep in the stable range") {
    const auto rep = combined_coefficients(ProblemParams(13, 0.0, 1000.0));
    CHECK(rep.coeff_mass < 0.0);
    CHECK(rep.conclusion == SphereConclusion::mass_nonpositive);
}

TEST_CASE("all positive below an infinite threshold") {
    const auto rep = combined_coefficients(ProblemParams(10, 0.0, 4.0));
    CHECK(rep.coeff_bilaplacian > 0.0);
    CHECK(rep.coeff_gradient > 0.0);
    CHECK(rep.coeff_mass > 0.0);
    CHECK(rep.conclusion == SphereConclusion::all_positive);
}

TEST_CASE("coefficients factor through g and f") {
    for (int n : {6, 10, 13, 20}) {
        for (double a : {0.0, 1.5}) {
            for (double p : {2.0, 4.0, 11.0}) {
                const ProblemParams pp(n, a, p);
                const auto rep = combined_coefficients(pp);
                const auto v = gf_values(pp);
                const double grad_expect = v.g - n * (n - 4.0) / 2.0;
                const double mass_expect =
                    v.f - n * n * (n - 4.0) * (n - 4.0) / 16.0;
                CHECK(std::abs(rep.coeff_gradient - grad_expect) <=
                      1e-12 * std::max(1.0, std::abs(grad_expect)));
                CHECK(std::abs(rep.coeff_mass - mass_expect) <=
                      1e-12 * std::max(1.0, std::abs(mass_expect)));
            }
        }
    }
}

TEST_CASE("mass coefficient is positive on the open window, nonpositive at the root") {
    for (int n : {13, 16}) {
        const double pj = jl_exponent(n, 0.0);
        const double pc = sobolev_critical(n, 0.0);
        for (int k = 1; k < 12; ++k) {
            const double p = pc + (pj - pc) * k / 12.0;
            CHECK(combined_coefficients(ProblemParams(n, 0.0, p)).coeff_mass > 0.0);
        }
        const double at_root =
            combined_coefficients(ProblemParams(n, 0.0, pj)).coeff_mass;
        CHECK(std::abs(at_root) < 1e-6); // vanishes at the threshold
        CHECK(combined_coefficients(ProblemParams(n, 0.0, pj + 1e-6)).coeff_mass <
              0.0);
    }
}

TEST_CASE("constant mode residual is algebraically zero") {
    for (auto [n, a, p] : {std::tuple{6, 0.0, 5.0}, std::tuple{13, 0.0, 3.0},
                           std::tuple{9, 2.0, 4.0}}) {
        const ProblemParams pp(n, a, p);
        const double resid = constant_mode_residual(pp);
        const double ell2 = derive_scalars(pp).ell2;
        const double scale = std::pow(ell2, p / (p - 1.0));
        CHECK(std::abs(resid) <= 1e-12 * scale);
    }
}

TEST_CASE("perturbed constant mode is detected") {
    const ProblemParams pp(6, 0.0, 5.0);
    const auto ds = derive_scalars(pp);
    const double w = std::pow(ds.ell2, 1.0 / (pp.p - 1.0)) * 1.1;
    const double resid = ds.ell2 * w - std::pow(w, pp.p);
    CHECK(std::abs(resid) > 1e-2);
}

TEST_CASE("constant mode propagates the missing-amplitude failure") {
    CHECK_THROWS_WITH(constant_mode_residual(ProblemParams(6, 0.0, 2.5)),
                      "no singular solution: ell2 <= 0");
}

TEST_CASE("scan: no sign change up to the cap below the dimension threshold") {
    const std::vector<double> a = {0.0};
    const auto rows = scan_grid(10, 10, a, 0.25, 100.0);
    REQUIRE(!rows.empty());
    for (const auto& row : rows) CHECK(row.coeff_mass > 0.0);
}

TEST_CASE("scan: single sign change matching the threshold exponent") {
    const std::vector<double> a = {0.0};
    const double step = 0.05;
    const auto rows = scan_grid(13, 13, a, step, 100.0);
    const double pj = jl_exponent(13, 0.0);
    int flips = 0;
    double flip_at = 0.0;
    for (size_t i = 1; i < rows.size(); ++i) {
        if ((rows[i].coeff_mass > 0.0) != (rows[i - 1].coeff_mass > 0.0)) {
            ++flips;
            flip_at = rows[i].p;
        }
    }
    CHECK(flips == 1);
    CHECK(std::abs(flip_at - pj) <= step * (1.0 + 1e-9));
}

TEST_CASE("scan: empty exponent range gives an empty table") {
    const std::vector<double> a = {0.0};
    const auto rows = scan_grid(10, 10, a, 0.5, 1.0); // cap below p_crit
    CHECK(rows.empty());
}

TEST_CASE("scan rows are sorted by (n, a, p)") {
    const std::vector<double> a = {1.0, 0.0};
    const auto rows = scan_grid(13, 14, a, 5.0, 40.0);
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& x = rows[i - 1];
        const auto& y = rows[i];
        const bool sorted =
            (x.n < y.n) || (x.n == y.n && x.a < y.a) ||
            (x.n == y.n && x.a == y.a && x.p < y.p);
        CHECK(sorted);
    }
}
