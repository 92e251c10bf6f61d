#include "doctest.h"
#include "gen.hpp"
#include "proglab/counting.hpp"
#include "proglab/verify.hpp"

using namespace proglab;

namespace {
IntervalSet skip_threes(int64_t N) {
    IntervalSet S(N);
    for (int64_t x = 1; x <= N; ++x)
        if (x % 3 != 0) S.insert(x);
    return S;
}
}  // namespace

TEST_SUITE("counting") {

// Frozen from a direct Python triple loop.
TEST_CASE("counting operator oracle values") {
    auto c64 = ArithCtx::make(64, 2);
    auto ind = ZFunc::indicator(1, 64);
    CHECK(lambda_w(ind, ind, ind, c64).real() == doctest::Approx(344));
    CHECK(lambda_model(ind, ind, ind, c64).real() == doctest::Approx(3117.1348117776165).epsilon(1e-12));
    auto s = skip_threes(64).indicator();
    CHECK(lambda_w(s, s, s, c64).real() == doctest::Approx(155));
    CHECK(lambda_model(s, s, s, c64).real() == doctest::Approx(582.1066974434291).epsilon(1e-12));
    auto c100 = ArithCtx::make(100, 3);
    auto ind100 = ZFunc::indicator(1, 100);
    CHECK(lambda_w(ind100, ind100, ind100, c100).real() == doctest::Approx(380));
    CHECK(lambda_model(ind100, ind100, ind100, c100).real() == doctest::Approx(7971.65793278523).epsilon(1e-12));
}

TEST_CASE("config counts") {
    CHECK(enumerate_configs(skip_threes(64)) == 146);
    CHECK(enumerate_configs(IntervalSet(64)) == 0);
    IntervalSet full(64);
    for (int64_t x = 1; x <= 64; ++x) full.insert(x);
    CHECK(enumerate_configs(full) == 374);
}

TEST_CASE("maximum free subsets") {
    // (size, witness) from exhaustive filtering of all subsets.
    const std::vector<std::pair<int64_t, std::vector<int64_t>>> want = {
        {1, {1}},          {2, {1, 2}},          {2, {1, 2}},          {3, {1, 2, 4}},
        {4, {1, 2, 4, 5}}, {4, {1, 2, 4, 5}},    {4, {1, 2, 4, 5}},    {5, {1, 2, 4, 6, 8}},
        {6, {1, 2, 4, 6, 8, 9}},           {6, {1, 2, 4, 5, 9, 10}},
        {7, {1, 2, 4, 6, 8, 9, 11}},       {7, {1, 2, 4, 5, 9, 10, 12}},
        {8, {1, 2, 4, 5, 9, 10, 12, 13}},  {8, {1, 2, 4, 5, 9, 10, 12, 13}},
        {9, {1, 2, 4, 6, 8, 9, 11, 13, 15}}, {10, {1, 2, 4, 6, 8, 9, 11, 13, 15, 16}}};
    for (int64_t N = 1; N <= 16; ++N) {
        auto ex = max_free_subset(N, SearchMethod::exhaustive);
        auto bb = max_free_subset(N, SearchMethod::branch_and_bound);
        CHECK(ex.size == want[N - 1].first);
        CHECK(ex.witness.members() == want[N - 1].second);
        CHECK(bb.size == ex.size);
        CHECK(bb.witness == ex.witness);
    }
}

TEST_CASE("stashing on random triples") {
    Rng rng(17);
    auto ctx = ArithCtx::make(96, 2);
    for (int t = 0; t < 20; ++t) {
        auto f1 = testgen::disc_values(rng, 1, 96), f2 = testgen::disc_values(rng, 1, 96),
             f3 = testgen::disc_values(rng, 1, 96);
        CHECK(stashing_check(f1, f2, f3, ctx, 1 + t % 3).passed());
    }
    CHECK_THROWS_AS(stashing_check(ZFunc::delta(0, 2.0), ZFunc::delta(0), ZFunc::delta(0), ctx, 1), Error);
    CHECK_THROWS_AS(stashing_check(ZFunc::delta(0), ZFunc::delta(10000), ZFunc::delta(0), ctx, 1), Error);
}

TEST_CASE("W-trick reduction") {
    IntervalSet S(2000);
    for (int64_t x = 1; x <= 2000; ++x)
        if (x % 24 == 5 || x % 7 == 0) S.insert(x);
    auto wt = wtrick_subset(S, 2);
    CHECK(wt.modulus == 8);
    CHECK(wt.j == 5);
    CHECK(wt.lifting_ok);
    CHECK(wt.density >= static_cast<double>(S.size()) / 2000.0);
}

TEST_CASE("transfer experiment is reproducible") {
    auto a = transfer_experiment(512, 0.3, 3, {2, 3}, 9);
    auto b = transfer_experiment(512, 0.3, 3, {2, 3}, 9);
    REQUIRE(a.size() == 2);
    CHECK(a[0].values == b[0].values);
    CHECK(a[1].median == b[1].median);
}

TEST_CASE("module suite passes") {
    auto r = verify_counting(1);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name);
}

}
