#include "doctest.h"
#include "gen.hpp"
#include "proglab/signal.hpp"
#include "proglab/verify.hpp"

using namespace proglab;

TEST_SUITE("signal") {

TEST_CASE("Fejer kernel values") {
    auto K = fejer(4.0);
    CHECK(K(0).real() == doctest::Approx(0.25));
    CHECK(K(2).real() == doctest::Approx(0.125));
    CHECK(K(4).real() == 0);
    double s = 0;
    for (auto z : K.values()) s += z.real();
    CHECK(s == doctest::Approx(1.0));
    CHECK_THROWS_AS(fejer(0.5), Error);
    const int64_t h[2] = {1, -2};
    CHECK(fejer(4.0, 2)(h) == doctest::Approx(0.1875 * 0.125));
}

TEST_CASE("model weight") {
    auto nu = nu_weight(100);
    CHECK(nu(4).real() == doctest::Approx(5.0));
    CHECK(nu(0).real() == 0);
    CHECK(nu(100).real() == doctest::Approx(1.0));
    auto star = nu_star(ArithCtx::make(16, 2));
    CHECK(star(3).real() == doctest::Approx(std::sqrt(32.0)));
    CHECK(star(5).real() == 0);
    for (int64_t p : {1, 3, 6, 10, 15}) CHECK(star(p).real() > 0);
}

TEST_CASE("transform examples") {
    CHECK(std::abs(dft_eval(ZFunc::delta(0), 0.37) - cplx(1)) < 1e-15);
    CHECK(std::abs(dft_eval(ZFunc::indicator(1, 50), 0) - cplx(50)) < 1e-12);
    CHECK(std::abs(dft_eval(ZFunc::delta(1), 0.2) - e_of(-0.2)) < 1e-15);
    auto f = ZFunc::indicator(1, 64).modulated(0.25);
    auto s = fourier_sup(f, 256);
    CHECK(s.value == doctest::Approx(64));
    CHECK(std::fabs(s.theta_star - 0.25) < 1e-9);
    auto d = fourier_sup(ZFunc::delta(0), 16);
    CHECK(d.value == doctest::Approx(1));
    auto canc = ZFunc::indicator(1, 20) - ZFunc::indicator(1, 20).shifted(1);
    CHECK(fourier_sup(canc, 200).value < 20);
}

TEST_CASE("convolution") {
    auto c = convolve(ZFunc::delta(2), ZFunc::delta(5));
    CHECK(c(7).real() == 1);
    CHECK(c.support_size() == 1);
    auto t = convolve(ZFunc::indicator(1, 2), ZFunc::indicator(1, 2));
    CHECK(t(2).real() == doctest::Approx(1));
    CHECK(t(3).real() == doctest::Approx(2));
    CHECK(t(4).real() == doctest::Approx(1));
}

TEST_CASE("convolution theorem on random inputs") {
    Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        auto f = testgen::disc_values(rng, rng.uniform_int(-20, 20), rng.uniform_int(1, 60));
        auto g = testgen::disc_values(rng, rng.uniform_int(-20, 20), rng.uniform_int(1, 60));
        const double th = rng.uniform();
        const cplx lhs = dft_eval(convolve(f, g), th), rhs = dft_eval(f, th) * dft_eval(g, th);
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("fourier_sup: serial and parallel agree, refinement never loses the grid max") {
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        auto f = testgen::disc_values(rng, 0, rng.uniform_int(1, 200));
        auto a = fourier_sup(f, 4 * f.length()), b = fourier_sup_serial(f, 4 * f.length());
        CHECK(a.value == b.value);
        CHECK(a.theta_star == b.theta_star);
        CHECK(a.value >= a.grid_max);
    }
}

TEST_CASE("serialisation round trip") {
    auto f = ZFunc(3, {cplx(1, 2), cplx(0), cplx(-0.5, 0.25)});
    auto g = ZFunc::from_json(f.to_json());
    CHECK(g(3) == f(3));
    CHECK(g(5) == f(5));
    CHECK(g.support_size() == 2);
    const int64_t mem[] = {1, 4, 9};
    auto S = IntervalSet::from_members(10, mem);
    CHECK(IntervalSet::from_json(S.to_json()) == S);
    CHECK(S.to_json().dump() == R"({"N":10,"members":[1,4,9]})");
}

TEST_CASE("module suite passes") {
    auto r = verify_signal(1);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name);
}

}
