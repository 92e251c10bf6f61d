#include "doctest.h"
#include "gen.hpp"
#include "proglab/expsum.hpp"
#include "proglab/verify.hpp"

using namespace proglab;

TEST_SUITE("expsum") {

// Gauss sums and Weyl sums below were evaluated at 40 digits with mpmath.
TEST_CASE("Gauss sum values") {
    auto near = [](cplx a, cplx b) { return std::abs(a - b) < 1e-12; };
    CHECK(near(gauss_sum(0, 0, 5).value, 5.0));
    CHECK(near(gauss_sum(1, 0, 3).value, cplx(0, 1.7320508075688772)));
    CHECK(near(gauss_sum(1, 0, 4).value, cplx(2, 2)));
    CHECK(near(gauss_sum(2, 1, 4).value, 0.0));
    CHECK(near(gauss_sum(5, 1, 7).value, cplx(2.0685316697713623, -1.649598960703146)));
    CHECK(near(gauss_sum(1, 0, 16).value, cplx(4, 4)));
    CHECK(near(gauss_sum(3, 2, 10).value, 0.0));
    CHECK(near(gauss_sum(2, 3, 8).value, 0.0));
    CHECK(std::abs(gauss_sum(1, 0, 9).value) == doctest::Approx(3));
}

TEST_CASE("Gauss sum rules up to 50") { CHECK(gauss_property_check(50).passed()); }

TEST_CASE("Weyl sums") {
    CHECK(std::abs(weyl_sum(3, 2, 0.0, 17) - cplx(35)) < 1e-12);
    CHECK(std::abs(weyl_sum(3, 2, 0.4, 0) - cplx(1)) < 1e-15);
    CHECK(std::abs(weyl_sum(1, 1, 0.5, 1) - cplx(3)) < 1e-12);
    CHECK(std::abs(weyl_sum(2, 1, 0.3, 50) - cplx(0.99999999999989385, -7.5008609932135042e-13)) < 1e-12);
    CHECK(std::abs(weyl_sum(6, 1, 0.123456789, 200) - cplx(1.1702024145809019, -0.42824379629935046)) < 1e-11);
}

// Counts of solution tuples, from a Python histogram convolution.
TEST_CASE("exact moments") {
    CHECK(moment_exact(1, 1, 1, 4) == 15);
    CHECK(moment_exact(1, 1, 1, 2) == 3);
    CHECK(moment_exact(5, 3, 0, 4) == 1);
    CHECK(moment_exact(2, 1, 10, 4) == 1001);
    CHECK(moment_exact(6, 5, 12, 4) == 1225);
    CHECK(moment_exact(30, 7, 20, 4) == 3321);
    CHECK(moment_exact(3, 2, 15, 6) == 554827);
    CHECK(moment_exact(2, 1, 40, 6) == 28188363);
    CHECK_THROWS_AS(moment_exact(2, 1, 10, 3), Error);
}

TEST_CASE("quadrature reproduces the exact moments") {
    CHECK(moment_quadrature(1, 1, 1, 4, min_moment_grid(1, 1, 1)) == doctest::Approx(15).epsilon(1e-9));
    CHECK(moment_quadrature(2, 1, 0, 4, min_moment_grid(2, 1, 0)) == doctest::Approx(1).epsilon(1e-9));
    CHECK_THROWS_AS(moment_quadrature(2, 1, 10, 4, 10), Error);
    Rng rng(2);
    for (int t = 0; t < 8; ++t) {
        const int64_t W = rng.uniform_int(1, 6), r = rng.uniform_int(1, W), T = rng.uniform_int(1, 12);
        const int order = 2 * static_cast<int>(rng.uniform_int(1, 3));
        const auto G = min_moment_grid(W, r, T);
        const double ex = static_cast<double>(moment_exact(W, r, T, order));
        CHECK(testgen::rel(moment_quadrature(W, r, T, order, G), ex) < 1e-9);
        CHECK(testgen::rel(moment_quadrature_direct(W, r, T, order, G), ex) < 1e-9);
    }
}

TEST_CASE("arc decomposition") {
    auto a = arc_decompose(0, 100);
    CHECK(a.major);
    CHECK(a.q1 == 0);
    CHECK(a.q2 == 1);
    auto b = arc_decompose(0.5 + 1e-9, 100, 0.3);
    CHECK(b.major);
    CHECK(b.q1 == 1);
    CHECK(b.q2 == 2);
    CHECK(b.theta_star == doctest::Approx(1e-9).epsilon(1e-6));
    CHECK_FALSE(arc_decompose(1.0 / 3, 100, 0.2).major);
    CHECK_THROWS_AS(arc_decompose(0.1, 100, 0.0), Error);
}

TEST_CASE("major arc model") {
    auto m = major_arc_model(2, 1, 0, 1, 0, 30);
    CHECK(m.main.real() == doctest::Approx(60));
    CHECK(m.actual.real() == doctest::Approx(61));
    CHECK(m.residual == doctest::Approx(1));
    auto r = major_arc_model(2, 1, 1, 3, 0, 200);
    CHECK(r.residual <= 10 * std::sqrt(200.0));
    CHECK_THROWS_AS(major_arc_model(2, 1, 1, 2, 0.3, 100), Error);
}

// scipy.special.fresnel: the integral is C(2 gamma) + i S(2 gamma).
TEST_CASE("Fresnel integral") {
    auto near = [](cplx a, cplx b) { return std::abs(a - b) < 1e-8; };
    CHECK(fresnel(0) == cplx(0));
    CHECK(near(fresnel(0.5), cplx(0.779893400376823, 0.4382591473903547)));
    CHECK(near(fresnel(2.0), cplx(0.4984260330381776, 0.42051575424692844)));
    CHECK(near(fresnel(10.0), cplx(0.4999873349723444, 0.4840845359259539)));
    CHECK(near(fresnel(37.5), cplx(0.5042441317750116, 0.4999997598312799)));
}

TEST_CASE("nu comparison") {
    auto ctx = ArithCtx::make(1024, 2);
    const int64_t grid = 8 * 512;
    CHECK(nu_compare_sup(ctx, 1, grid, nu_weight(1024)).value < 1e-9);
    auto nc = nu_compare_sup(ctx, 2, grid);
    CHECK(nc.at_zero_direct == doctest::Approx(nc.at_zero_grid).epsilon(1e-9));
    CHECK(nc.value >= std::fabs(nc.at_zero_direct) - 1e-9);
    CHECK_THROWS_AS(nu_compare_sup(ctx, 1, 100), Error);
}

TEST_CASE("module suite passes") {
    auto r = verify_expsum(1);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name);
}

}
