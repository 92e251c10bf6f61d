#include <numeric>

#include "proglab/arith.hpp"
#include "proglab/verify.hpp"
#include "verify_util.hpp"

namespace proglab {

namespace {

mpz_class random_big(Rng& rng, int limbs) {
    mpz_class z = 0;
    for (int i = 0; i < limbs; ++i) {
        z <<= 64;
        z += mpz_class(std::to_string(rng.next()));
    }
    return rng.bernoulli(0.5) ? z : mpz_class(-z);
}

std::vector<std::pair<int64_t, int>> prime_powers(int64_t limit) {
    std::vector<bool> composite(static_cast<size_t>(limit + 1), false);
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        for (int64_t m = p * p; m <= limit; m += p) composite[m] = true;
        int64_t q = p;
        for (int k = 1; q <= limit; ++k, q *= p) out.push_back({p, k});
    }
    return out;
}

}  // namespace

Report identity_suite(int64_t range, int shift_trials, uint64_t seed) {
    Report rep;
    rep.name = "identities";
    rep.inputs = {{"range", range}, {"shift_trials", shift_trials}, {"seed", seed}};
    int64_t bad = 0, cases = 0;
    for (int64_t A = -range; A <= range; ++A)
        for (int64_t B = -range; B <= range; ++B) {
            if (!binom_identity_check(A, B, -range, range)) ++bad;
            cases += 2 * range + 1;
        }
    rep.check("binomial_expansions", bad == 0, bad, 0, std::to_string(cases) + " (A, B, n) triples");

    Rng rng(seed);
    int64_t shift_bad = 0;
    for (int t = 0; t < shift_trials; ++t) {
        const int limbs = 1 + static_cast<int>(rng.uniform_int(0, 3));
        if (!shift_identity_check(random_big(rng, limbs), random_big(rng, limbs))) ++shift_bad;
    }
    rep.check("square_and_linear_shift_identities", shift_bad == 0, shift_bad, 0);
    return rep;
}

Report hensel_sweep(int64_t limit, int random_tuples, uint64_t seed) {
    Report rep;
    rep.name = "hensel";
    rep.inputs = {{"limit", limit}, {"random_tuples", random_tuples}, {"seed", seed}};
    const auto pk = prime_powers(limit);
    std::vector<char> fixed_ok(pk.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < pk.size(); ++i) {
        const auto [p, k] = pk[i];
        // a = p (divisible), b = 1 (a unit).
        fixed_ok[i] = hensel_bijection_check({p, 1, p, k});
    }
    const auto fixed_fail = std::count(fixed_ok.begin(), fixed_ok.end(), 0);
    rep.check("fixed_pair_every_prime_power", fixed_fail == 0, fixed_fail, 0,
              std::to_string(pk.size()) + " prime powers");

    Rng root(seed);
    std::vector<HenselParams> tuples(static_cast<size_t>(random_tuples));
    for (int t = 0; t < random_tuples; ++t) {
        Rng rng = root.split(static_cast<uint64_t>(t));
        const auto [p, k] = pk[static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(pk.size()) - 1))];
        const int64_t a = p * rng.uniform_int(-1000000, 1000000);
        int64_t b = 0;
        do b = rng.uniform_int(-1000000, 1000000);
        while (b % p == 0);
        tuples[t] = {a, b, p, k};
    }
    std::vector<char> ok(tuples.size(), 0);
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < tuples.size(); ++i) ok[i] = hensel_hypothesis(tuples[i]) && hensel_bijection_check(tuples[i]);
    const auto rand_fail = std::count(ok.begin(), ok.end(), 0);
    rep.check("random_tuples", rand_fail == 0, rand_fail, 0);
    rep.check("hypothesis_needed_example", !hensel_bijection_check({2, 2, 2, 2}), false, false,
              "a = b = 2, p^k = 4 maps everything to 0 mod 4");
    return rep;
}

Report verify_arith(uint64_t seed) {
    Report rep;
    rep.name = "arith";
    rep.inputs = {{"seed", seed}};
    Rng rng(seed);

    int64_t pr_bad = 0;
    std::vector<int64_t> Ws;
    for (int64_t W = 1; W <= 40; ++W) Ws.push_back(W);
    Ws.push_back(210);
    Ws.push_back(2310);
    for (int64_t W : Ws)
        for (int64_t r = 1; r <= W; ++r)
            for (int64_t y = -100; y <= 100; ++y) {
                try {
                    if (poly_Pr(W, r, y) != mpz_class(static_cast<long>(poly_Pr_i64(W, r, y)))) ++pr_bad;
                } catch (const Error&) {
                    ++pr_bad;
                }
            }
    rep.check("shifted_polynomial_closed_form", pr_bad == 0, pr_bad, 0);

    int64_t gcd_bad = 0;
    for (int w = 2; w <= 13; ++w) {
        const int64_t W = primorial(w);
        for (int64_t r = 1; r <= W; ++r)
            if (std::gcd(W * W, 2 * W * r + 1) != 1) ++gcd_bad;
    }
    rep.check("square_W_coprime_to_linear_coefficient", gcd_bad == 0, gcd_bad, 0);

    rep.absorb(identity_suite(20, 1000, rng.next()));
    rep.absorb(hensel_sweep(10000, 200, rng.next()));

    // rebase_affine round trip on random exact polynomials.
    int64_t rebase_bad = 0;
    for (int t = 0; t < 200; ++t) {
        const int d = static_cast<int>(rng.uniform_int(0, 4));
        std::vector<mpq_class> alpha;
        for (int j = 0; j <= d; ++j) {
            mpq_class a(static_cast<long>(rng.uniform_int(-50, 50)), static_cast<unsigned long>(rng.uniform_int(1, 30)));
            a.canonicalize();
            alpha.push_back(a);
        }
        int64_t S = 0;
        while (S == 0) S = rng.uniform_int(-6, 6);
        const int64_t I = rng.uniform_int(-10, 10);
        auto p = BinomPoly::from_exact(alpha);
        auto [Sp, q] = rebase_affine(p, S, I);
        for (int64_t n = -50; n <= 50; ++n)
            if (q.eval_exact(n) != mpq_class(Sp) * p.eval_exact(mpz_class(static_cast<long>(S * n + I)))) {
                ++rebase_bad;
                break;
            }
    }
    rep.check("rebase_round_trip", rebase_bad == 0, rebase_bad, 0, "200 random (p, S, I), n in [-50, 50]");

    // Rationals p0/q0: some q <= q0 with zero error.
    int64_t ra_bad = 0;
    for (int t = 0; t < 500; ++t) {
        const int64_t q0 = rng.uniform_int(1, 5000);
        int64_t p0 = rng.uniform_int(0, q0 - 1);
        const int64_t g = std::gcd(p0, q0);
        mpq_class theta(static_cast<long>(p0 / g), static_cast<unsigned long>(q0 / g));
        auto r = rational_approx(theta, q0 + rng.uniform_int(0, 100));
        mpq_class prod = theta * mpq_class(static_cast<long>(r.q));
        if (r.q > q0 || r.err != 0 || prod.get_den() != 1) ++ra_bad;
    }
    rep.check("rational_approx_exact_on_rationals", ra_bad == 0, ra_bad, 0);

    int64_t cf_bad = 0;
    for (int t = 0; t < 300; ++t) {
        const double theta = rng.uniform();
        const int64_t Q = rng.uniform_int(1, 10000);
        auto a = rational_approx(theta, Q);
        auto b = rational_approx_scan(theta, Q);
        if (a.q != b.q) ++cf_bad;
    }
    rep.check("continued_fractions_match_scan", cf_bad == 0, cf_bad, 0);
    return rep;
}

}  // namespace proglab
