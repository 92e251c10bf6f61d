#include "doctest.h"
#include "gen.hpp"
#include "proglab/gowers.hpp"
#include "proglab/verify.hpp"

using namespace proglab;

namespace {
ZFunc chirp() {
    return ZFunc::from_fn(1, 12, [](int64_t x) { return e_of(0.1 * static_cast<double>(x * x)); });
}
}  // namespace

TEST_SUITE("gowers") {

// Expected values from a literal Python expansion of the definition.
TEST_CASE("box norm oracle values") {
    auto ind = ZFunc::indicator(1, 10);
    CHECK(uk_norm_pow(ind, interval_set(3), 1) == doctest::Approx(9.11111111111111).epsilon(1e-12));
    CHECK(uk_norm_pow(ind, interval_set(3), 2) == doctest::Approx(8.222222222222223).epsilon(1e-12));
    CHECK(uk_norm_pow(chirp(), interval_set(4), 2) == doctest::Approx(3.40625).epsilon(1e-12));
    CHECK(uk_norm_pow(chirp(), interval_set(4), 3) == doctest::Approx(8.25).epsilon(1e-12));
    CHECK(box_norm_pow(chirp(), BoxSpec{{{1, 5}, {2, 3, 7}}}) == doctest::Approx(6.933242993124937).epsilon(1e-12));
}

TEST_CASE("reference expansion matches recursion") {
    Rng rng(8);
    for (int t = 0; t < 60; ++t) {
        auto f = testgen::disc_values(rng, 0, rng.uniform_int(1, 30));
        BoxSpec spec;
        const int d = static_cast<int>(rng.uniform_int(1, 3));
        for (int i = 0; i < d; ++i) spec.sets.push_back(interval_set(rng.uniform_int(1, 4)));
        CHECK(testgen::rel(box_norm_pow(f, spec), box_norm_pow_reference(f, spec)) < 1e-10);
    }
}

TEST_CASE("multiplicative derivatives") {
    auto f = ZFunc(0, {cplx(1, 1), cplx(2), cplx(0, -1)});
    auto d = delta_h(f, 1);
    CHECK(d(0) == f(0) * std::conj(f(1)));
    CHECK(d(1) == f(1) * std::conj(f(2)));
    auto dp = delta_pair(f, 0, 2);
    CHECK(dp(0) == std::conj(f(0)) * f(2));
}

TEST_CASE("dual function example") {
    auto ctx = ArithCtx::make(16, 2);
    auto D = dual1(ZFunc::delta(3), ZFunc::delta(6), ctx);
    CHECK(D(0).real() == doctest::Approx(0.2));
    CHECK(dual1(ZFunc(), ZFunc::delta(6), ctx).is_zero());
}

TEST_CASE("interchange preconditions") {
    std::vector<ZFunc> fy = {ZFunc::indicator(1, 10)};
    CHECK_THROWS_AS(interchange_cs_check(fy, 10, 10, 2, 1, 20), Error);
    CHECK_THROWS_AS(interchange_cs_check(fy, 1, 2, 2, 2, 20), Error);
    CHECK(interchange_cs_check(fy, 2, 3, 2, 1, 20).passed());
}

TEST_CASE("sine multiple bound") { CHECK(sine_multiple_max_violation(20, 2001) <= 1e-12); }

TEST_CASE("module suite passes") {
    auto r = verify_gowers(1);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name);
}

}
