#include "doctest.h"
#include "gen.hpp"
#include "proglab/arith.hpp"
#include "proglab/verify.hpp"

using namespace proglab;

TEST_SUITE("arith") {

TEST_CASE("primorial and W-trick polynomial") {
    CHECK(primorial(1) == 1);
    CHECK(primorial(5) == 30);
    CHECK(primorial(10) == 210);
    CHECK(poly_P(ArithCtx::make(1000, 5), 2) == 122);
    CHECK(poly_P(ArithCtx::make(1000, 5), 0) == 0);
    CHECK(poly_P(ArithCtx::make(1000, 2), -1) == 1);
    CHECK(poly_Pr(2, 1, 1) == 9);
    CHECK(poly_Pr(1, 1, 2) == 10);
    CHECK(poly_Pr(30, 7, 0) == 0);
    CHECK_THROWS_AS(ArithCtx::make(100, 1), Error);
}

TEST_CASE("M is the integer square root of N / W") {
    CHECK(ArithCtx::make(16, 2).M == 2);
    CHECK(ArithCtx::make(64, 2).M == 5);
    CHECK(ArithCtx::make(100, 3).M == 4);
    CHECK(ArithCtx::make(5, 3).M == 0);
}

TEST_CASE("Hensel examples") {
    CHECK(hensel_bijection_check({2, 1, 2, 2}));
    CHECK_FALSE(hensel_bijection_check({2, 2, 2, 2}));
    CHECK(hensel_bijection_check({3, 1, 3, 1}));
    CHECK_THROWS_AS(hensel_bijection_check({2, 1, 4, 1}), Error);
}

TEST_CASE("Hensel: p | a, p does not divide b gives a bijection") {
    Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        const int64_t p = std::vector<int64_t>{2, 3, 5, 7, 11, 13}[rng.uniform_int(0, 5)];
        const int k = static_cast<int>(rng.uniform_int(1, 4));
        int64_t b = 0;
        while (b % p == 0) b = rng.uniform_int(-500, 500);
        CHECK(hensel_bijection_check({p * rng.uniform_int(-500, 500), b, p, k}));
    }
}

TEST_CASE("binomial identities") {
    CHECK(binom_z(4, 2) == 6);
    CHECK(binom_z(9, 2) == 36);
    CHECK(binom_z(-3, 2) == 6);
    CHECK(binom_q(mpq_class(1, 2), 2) == mpq_class(-1, 8));
    CHECK(binom_identity_check(1, 0, 2, 3));
    CHECK(binom_identity_check(0, 1, -30, 30));
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        mpz_class x(static_cast<long>(rng.next() >> 4)), P(static_cast<long>(rng.next() >> 4));
        CHECK(shift_identity_check(rng.bernoulli(0.5) ? x : mpz_class(-x), P));
    }
}

TEST_CASE("rebase examples") {
    auto [s1, q1] = rebase_affine(BinomPoly::from_exact({0, 0, 1}), 1, 1);
    CHECK(s1 == 1);
    CHECK(*q1.exact == std::vector<mpq_class>{0, 1, 1});  // Pascal: binom(n+1,2) = binom(n,2) + binom(n,1)
    auto [s2, q2] = rebase_affine(BinomPoly::from_exact({0, mpq_class(1, 3)}), 2, 0);
    CHECK(s2 == 1);
    CHECK((*q2.exact)[1] == mpq_class(2, 3));
    auto p = BinomPoly::from_exact({0, 0, 1});
    auto [s3, q3] = rebase_affine(p, 2, 0);
    CHECK(s3 == 1);
    for (long n = 0; n <= 20; ++n) CHECK(q3.eval_exact(n) == p.eval_exact(2 * n));
    CHECK_THROWS_AS(rebase_affine(p, 0, 0), Error);
}

TEST_CASE("smoothness norm") {
    CHECK(cinf_norm(BinomPoly::from_reals({0, 0.01, 0.3}), 10) == doctest::Approx(30));
    CHECK(cinf_norm(BinomPoly::from_reals({0, 0.9}), 10) == doctest::Approx(1.0));
    CHECK(cinf_norm(BinomPoly::from_exact({3, -2, 5}), 1000) == 0);
}

TEST_CASE("rational approximation") {
    auto a = rational_approx(0.5, 10);
    CHECK(a.q == 2);
    CHECK(a.err == 0);
    auto b = rational_approx(1.0 / 3 + 1e-10, 100);
    CHECK(b.q == 3);
    CHECK(b.err == doctest::Approx(3e-10).epsilon(1e-6));
    auto c = rational_approx(0.6180339887, 10);
    CHECK(c.q == 8);
    CHECK(c.err == doctest::Approx(0.0557280904).epsilon(1e-8));
}

TEST_CASE("rational approximation: continued fractions agree with the scan") {
    Rng rng(5);
    for (int t = 0; t < 500; ++t) {
        const double th = rng.uniform();
        const int64_t Q = rng.uniform_int(1, 3000);
        auto a = rational_approx(th, Q);
        auto b = rational_approx_scan(th, Q);
        CHECK(a.q == b.q);
        CHECK(a.err == doctest::Approx(b.err));
        CHECK(a.q <= Q);
    }
}

TEST_CASE("module suite passes") {
    auto r = verify_arith(1);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name);
}

}
