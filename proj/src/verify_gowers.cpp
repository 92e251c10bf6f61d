#include <algorithm>

#include "proglab/gowers.hpp"
#include "proglab/verify.hpp"
#include "verify_util.hpp"

namespace proglab {

using detail::rel_err;

namespace {

ShiftSet random_shift_set(Rng& rng, int64_t max_size, int64_t radius) {
    const int64_t n = rng.uniform_int(1, max_size);
    ShiftSet q;
    while (static_cast<int64_t>(q.size()) < n) {
        int64_t h = rng.uniform_int(-radius, radius);
        if (std::find(q.begin(), q.end(), h) == q.end()) q.push_back(h);
    }
    return q;
}

}  // namespace

Report box_inequality_suite(int trials, uint64_t seed) {
    Report rep;
    rep.name = "box_inequalities";
    rep.inputs = {{"trials", trials}, {"seed", seed}};
    const Rng root(seed);

    // Rescale-down: with L2 | L1, replacing the last set [L1] by [L2] cannot decrease the power.
    std::vector<double> excess(static_cast<size_t>(trials));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.split(static_cast<uint64_t>(t));
        const int64_t len = rng.uniform_int(1, 256);
        const int64_t N = 256;
        ZFunc f = detail::random_bounded(rng, rng.uniform_int(-N / 2, N / 2 - len), len);
        const int k = static_cast<int>(rng.uniform_int(1, 3));
        const int64_t L2 = rng.uniform_int(1, 8);
        const int64_t L1 = L2 * rng.uniform_int(1, 4);
        BoxSpec big, small;
        for (int i = 0; i + 1 < k; ++i) {
            auto q = random_shift_set(rng, 3, N);
            big.sets.push_back(q);
            small.sets.push_back(q);
        }
        big.sets.push_back(interval_set(L1));
        small.sets.push_back(interval_set(L2));
        const double a = box_norm_pow(f, big), b = box_norm_pow(f, small);
        excess[t] = (a - b) / std::max(1.0, b);
    }
    const double worst = *std::max_element(excess.begin(), excess.end());
    rep.check("rescale_down", worst <= 1e-12, worst, 1e-12, "relative excess of the [L1] power over the [L2] power");

    Rng rng = root.split(~uint64_t{0});
    double fejer_worst = 0;
    for (int t = 0; t < 50; ++t) {
        ZFunc f = detail::random_bounded(rng, rng.uniform_int(-100, 100), rng.uniform_int(1, 200));
        auto id = fejer_square_identity(f, rng.uniform_int(1, 40));
        fejer_worst = std::max(fejer_worst, rel_err(id.direct, id.fourier));
    }
    rep.check("fejer_square_identity", fejer_worst <= 1e-9, fejer_worst, 1e-9);

    const double viol = sine_multiple_max_violation(50, 10000);
    rep.check("sine_multiple_bound", viol <= 1e-12, viol, 1e-12, "max of |sin kx| - k|sin x|, k <= 50");

    double mod_worst = 0;
    for (int t = 0; t < 100; ++t) {
        ZFunc f = detail::random_bounded(rng, rng.uniform_int(-50, 50), rng.uniform_int(1, 120));
        const ShiftSet Q = interval_set(rng.uniform_int(1, 16));
        const double beta = rng.uniform();
        mod_worst = std::max(mod_worst, rel_err(uk_norm_pow(f, Q, 2), uk_norm_pow(f.modulated(beta), Q, 2)));
    }
    rep.check("u2_modulation_invariance", mod_worst <= 1e-10, mod_worst, 1e-10);
    return rep;
}

Report verify_gowers(uint64_t seed) {
    Report rep;
    rep.name = "gowers";
    rep.inputs = {{"seed", seed}};
    Rng rng(seed);

    // Reference expansion agrees with the recursive evaluation and is nonnegative.
    double ref_gap = 0, most_negative = 0;
    for (int t = 0; t < 300; ++t) {
        ZFunc f = detail::random_bounded(rng, rng.uniform_int(-20, 20), rng.uniform_int(1, 64));
        BoxSpec spec;
        const int d = static_cast<int>(rng.uniform_int(1, 3));
        for (int i = 0; i < d; ++i) spec.sets.push_back(random_shift_set(rng, d == 3 ? 4 : 8, 12));
        const double fast = box_norm_pow(f, spec);
        double ref = box_norm_pow_reference(f, spec);
        ref_gap = std::max(ref_gap, rel_err(fast, ref));
        most_negative = std::min(most_negative, fast);
    }
    rep.check("reference_expansion_agrees", ref_gap <= 1e-10, ref_gap, 1e-10);
    rep.check("box_power_nonnegative", most_negative >= 0, most_negative, 0);

    rep.absorb(box_inequality_suite(200, rng.next()));

    // ||f||^{2^k} = E_{h,h'} ||Delta'_{h,h'} f||^{2^{k-1}} for k = 2, 3.
    double rec_worst = 0;
    for (int t = 0; t < 40; ++t) {
        ZFunc f = detail::random_bounded(rng, 0, rng.uniform_int(1, 40));
        const ShiftSet Q = random_shift_set(rng, 4, 10);
        const int k = static_cast<int>(rng.uniform_int(2, 3));
        std::vector<double> parts;
        for (int64_t h : Q)
            for (int64_t hp : Q) parts.push_back(uk_norm_pow(delta_pair(f, h, hp), Q, k - 1));
        const double rhs = pairwise_sum(parts) / static_cast<double>(Q.size() * Q.size());
        rec_worst = std::max(rec_worst, rel_err(uk_norm_pow(f, Q, k), rhs));
    }
    rep.check("recursive_structure", rec_worst <= 1e-10, rec_worst, 1e-10);

    // k = 2 over W.[L] splits into residue classes mod W.
    double split_worst = 0;
    for (int t = 0; t < 20; ++t) {
        const int64_t W = rng.uniform_int(2, 6), L = rng.uniform_int(1, 8);
        ZFunc f = detail::random_bounded(rng, rng.uniform_int(-30, 30), rng.uniform_int(1, 90));
        const double whole = uk_norm_pow(f, scale_set(interval_set(L), W), 2);
        double parts = 0;
        for (int64_t j = 0; j < W; ++j) {
            const int64_t xlo = f.offset() / W - 2, xhi = f.end() / W + 2;
            ZFunc g = ZFunc::from_fn(xlo - 1, xhi + 1, [&](int64_t x) { return f(W * x + j); });
            parts += uk_norm_pow(g, interval_set(L), 2);
        }
        split_worst = std::max(split_worst, rel_err(whole, parts));
    }
    rep.check("residue_class_split", split_worst <= 1e-10, split_worst, 1e-10);

    // Modulated interval: the U^2 power equals the unmodulated one, and the
    // Cauchy-Schwarz lower bound behind the converse holds.
    bool converse_ok = true;
    double c_ratio = 1e300;
    for (int64_t N : {16, 50, 128}) {
        const double base = uk_norm_pow(ZFunc::indicator(1, N), interval_set(N), 2);
        ZFunc f = ZFunc::indicator(1, N).modulated(rng.uniform());
        auto cv = u2_converse_bound(f, N);
        converse_ok = converse_ok && cv.u2 >= cv.lower * (1 - 1e-10) && cv.u2 >= base * (1 - 1e-10);
        c_ratio = std::min(c_ratio, cv.u2 / static_cast<double>(N));
    }
    rep.check("u2_converse_modulated_interval", converse_ok, c_ratio, nullptr, "min u2 / N");

    // Dual-difference interchange for l = 1.
    bool cs_ok = true;
    for (int t = 0; t < 10; ++t) {
        std::vector<ZFunc> fy;
        for (int s = 0; s < 3; ++s) fy.push_back(detail::random_signs(rng, 0, 40));
        auto r = interchange_cs_check(fy, 2, 5, 2, 1, 40);
        cs_ok = cs_ok && r.passed();
    }
    {
        ZFunc f = detail::random_signs(rng, 0, 40);
        cs_ok = cs_ok && interchange_cs_check({f, f, f}, 1, 10, 2, 1, 40).passed();
        cs_ok = cs_ok && interchange_cs_check({ZFunc(), ZFunc()}, 1, 10, 2, 1, 40).passed();
    }
    rep.check("interchange_cauchy_schwarz", cs_ok, cs_ok, true);

    auto ctx = ArithCtx::make(16, 2);
    const cplx d0 = dual1(ZFunc::delta(3), ZFunc::delta(6), ctx)(0);
    rep.check("dual_example", std::abs(d0 - 0.2) <= 1e-15, d0.real(), 0.2);
    return rep;
}

}  // namespace proglab
