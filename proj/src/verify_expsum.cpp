#include <algorithm>

#include "proglab/expsum.hpp"
#include "proglab/verify.hpp"
#include "verify_util.hpp"

namespace proglab {

using detail::rel_err;

Report gauss_suite(int64_t c_max) {
    Report rep;
    rep.name = "gauss";
    rep.inputs = {{"c_max", c_max}};
    rep.absorb(gauss_property_check(c_max));
    struct Spot {
        int64_t a, b, c;
        cplx expect;
    };
    const Spot spots[] = {{0, 0, 5, 5.0}, {1, 0, 3, cplx(0, std::sqrt(3.0))}, {1, 0, 4, cplx(2, 2)}, {2, 1, 4, 0.0}};
    for (const auto& s : spots) {
        const cplx g = gauss_sum(s.a, s.b, s.c).value;
        const double err = std::abs(g - s.expect);
        rep.check("spot_G(" + std::to_string(s.a) + "," + std::to_string(s.b) + "," + std::to_string(s.c) + ")",
                  err <= 1e-9, json{{"re", g.real()}, {"im", g.imag()}}, 1e-9);
    }
    const double g9 = std::abs(gauss_sum(1, 0, 9).value);
    rep.check("spot_abs_G(1,0,9)", std::fabs(g9 - 3) <= 1e-9, g9, 3);
    return rep;
}

Report moment_suite(int instances, uint64_t seed) {
    Report rep;
    rep.name = "moments";
    rep.inputs = {{"instances", instances}, {"seed", seed}};
    const int64_t m4 = moment_exact(1, 1, 1, 4);
    rep.check("exact_W1_r1_T1_order4", m4 == 15, m4, 15);
    const int64_t m2 = moment_exact(1, 1, 1, 2);
    rep.check("exact_W1_r1_T1_order2", m2 == 3, m2, 3);

    Rng rng(seed);
    double worst = 0;
    json rows = json::array();
    for (int i = 0; i < instances; ++i) {
        const int64_t W = rng.uniform_int(1, 30), r = rng.uniform_int(1, W), T = rng.uniform_int(0, 30);
        const int order = rng.bernoulli(0.5) ? 2 : 4;
        const auto exact = static_cast<double>(moment_exact(W, r, T, order));
        const double quad = moment_quadrature(W, r, T, order, min_moment_grid(W, r, T));
        const double err = std::fabs(quad - exact) / exact;
        worst = std::max(worst, err);
        rows.push_back({W, r, T, order, exact, quad});
    }
    rep.check("quadrature_matches_exact", worst <= 1e-6, worst, 1e-6, "max relative error");
    rep.data = {{"columns", {"W", "r", "T", "order", "exact", "quadrature"}}, {"rows", rows}};
    return rep;
}

Report fresnel_suite() {
    Report rep;
    rep.name = "fresnel";
    // Step 1e-3 on (0, 100]; near 0 the ratio tends to 2 from below.
    const int64_t steps = 100000;
    std::vector<double> ratio(static_cast<size_t>(steps));
#pragma omp parallel for schedule(static)
    for (int64_t i = 1; i <= steps; ++i) {
        const double g = 1e-3 * static_cast<double>(i);
        ratio[i - 1] = std::abs(fresnel(g)) / std::min(g, 1.0);
    }
    const auto it = std::max_element(ratio.begin(), ratio.end());
    const double sup = *it;
    rep.check("sup_ratio", sup <= 2.5, sup, 2.5, "calibrated threshold; gamma grid step 1e-3 on (0, 100]");
    rep.check("zero", std::abs(fresnel(0)) == 0, std::abs(fresnel(0)), 0);
    const double jump = std::abs(fresnel(2.0) - fresnel(std::nextafter(2.0, 3.0)));
    rep.check("continuity_at_switch", jump <= 1e-10, jump, 1e-10);
    // The tail beyond gamma is at most 1/(2 pi gamma) in modulus on each side.
    const cplx limit(0.5, 0.5);
    const double tail = std::abs(fresnel(100) - limit);
    rep.check("limit_at_100", tail <= 1 / (kPi * 100), tail, 1 / (kPi * 100));
    rep.data = {{"argmax_gamma", 1e-3 * static_cast<double>(it - ratio.begin() + 1)}};
    return rep;
}

Report nu_compare_suite(int64_t N) {
    Report rep;
    rep.name = "nu_compare";
    rep.inputs = {{"N", N}, {"calibration", calib::kNuCompare}};
    double worst = 0;
    bool zero_ok = true;
    json rows = json::array();
    for (int w : {2, 3, 5}) {
        const auto ctx = ArithCtx::make(N, w);
        const int64_t grid = 8 * ((N + ctx.W - 1) / ctx.W);
        double wmax = 0;
        for (int64_t k = 1; k <= ctx.W; ++k) {
            auto nc = nu_compare_sup(ctx, k, grid);
            wmax = std::max(wmax, nc.ratio);
            zero_ok = zero_ok && std::fabs(nc.at_zero_direct - nc.at_zero_grid) <=
                                     1e-9 * std::max(1.0, std::fabs(nc.at_zero_direct));
        }
        rows.push_back({{"w", w}, {"W", ctx.W}, {"max_ratio", wmax}});
        worst = std::max(worst, wmax);
    }
    rep.check("ratio_within_2x_calibration", worst <= 2 * calib::kNuCompare, worst, 2 * calib::kNuCompare,
              "anti-regression bound from the N = 2^12 calibration");
    rep.check("theta_zero_direct_matches_grid", zero_ok, zero_ok, true);
    rep.data = {{"rows", rows}};
    return rep;
}

Report verify_expsum(uint64_t seed) {
    Report rep;
    rep.name = "expsum";
    rep.inputs = {{"seed", seed}};
    Rng rng(seed);

    rep.absorb(gauss_suite(60));

    // Weyl sums against a literal long double evaluation.
    double weyl_gap = 0;
    for (int t = 0; t < 30; ++t) {
        const int64_t W = rng.uniform_int(1, 6), r = rng.uniform_int(1, W), T = rng.uniform_int(0, 300);
        const double theta = rng.uniform();
        std::complex<long double> s = 0;
        for (int64_t x = -T; x <= T; ++x) {
            const long double ph = static_cast<long double>(theta) * static_cast<long double>(poly_Pr_i64(W, r, x));
            const long double f = ph - std::floor(ph);
            s += std::polar(1.0L, 2 * 3.141592653589793238462643383279502884L * f);
        }
        const cplx ref(static_cast<double>(s.real()), static_cast<double>(s.imag()));
        weyl_gap = std::max(weyl_gap, std::abs(weyl_sum(W, r, theta, T) - ref) / static_cast<double>(2 * T + 1));
    }
    rep.check("weyl_sum_matches_long_double", weyl_gap <= 1e-12, weyl_gap, 1e-12, "per-term error");
    const cplx half = weyl_sum(1, 1, 0.5, 1);
    rep.check("weyl_example_theta_half", std::abs(half - 3.0) <= 1e-12, half.real(), 3);

    double rat_gap = 0;
    for (int t = 0; t < 30; ++t) {
        const int64_t q2 = rng.uniform_int(1, 50), q1 = rng.uniform_int(0, q2 - 1), T = rng.uniform_int(0, 400);
        const int64_t W = rng.uniform_int(1, 6), r = rng.uniform_int(1, W);
        const double ts = (rng.uniform() - 0.5) * 1e-6;
        const cplx a = weyl_sum_rational(W, r, q1, q2, ts, T);
        const cplx b = weyl_sum(W, r, static_cast<double>(q1) / static_cast<double>(q2) + ts, T);
        rat_gap = std::max(rat_gap, std::abs(a - b) / static_cast<double>(2 * T + 1));
    }
    // theta = q1/q2 + ts is itself rounded, and P_r reaches ~6e6, so allow that.
    rep.check("weyl_rational_form_agrees", rat_gap <= 1e-7, rat_gap, 1e-7);

    int64_t order2_bad = 0;
    for (int64_t W = 2; W <= 12; ++W)
        for (int64_t T : {0, 1, 7, 50})
            if (moment_exact(W, 1, T, 2) != 2 * T + 1) ++order2_bad;
    rep.check("order2_moment_is_2T_plus_1", order2_bad == 0, order2_bad, 0, "P_r is injective for W >= 2");

    rep.absorb(moment_suite(10, rng.next()));

    {
        const int64_t m6 = moment_exact(2, 1, 40, 6);
        const double q6 = moment_quadrature(2, 1, 40, 6, min_moment_grid(2, 1, 40));
        rep.check("order6_quadrature_matches_exact", rel_err(q6, static_cast<double>(m6)) <= 1e-6, q6, m6);
    }

    // L6 growth: moment_6 W^2 / T^4 stays within 2x the calibrated constant.
    double l6 = 0;
    for (int w : {2, 3, 5})
        for (int64_t T : {50, 100, 200}) {
            const int64_t W = primorial(w);
            for (int64_t r : {int64_t{1}, W}) {
                const double m = static_cast<double>(moment_exact(W, r, T, 6));
                l6 = std::max(l6, m * static_cast<double>(W * W) / std::pow(static_cast<double>(T), 4));
            }
        }
    rep.check("l6_scaling", l6 <= 2 * calib::kL6, l6, 2 * calib::kL6, "max moment_6 W^2 / T^4");

    // Minor-arc contrapositive: a large Weyl sum forces W^2 theta near a rational with small denominator.
    double weyl_err = 0;
    int64_t detections = 0, weyl_q = 0;
    for (int64_t T : {1000, 2000, 4000})
        for (int64_t W : {2, 6}) {
            Rng local = rng.split(static_cast<uint64_t>(T * 16 + W));
            const double W2 = static_cast<double>(W * W);
            for (int i = 0; i < 600; ++i) {
                double th;
                if (i % 2) {
                    th = local.uniform();
                } else {
                    const int64_t q = local.uniform_int(1, 30), a = local.uniform_int(0, q - 1);
                    th = static_cast<double>(a) / static_cast<double>(q) / W2 +
                         (local.uniform() - 0.5) * 4.0 / (W2 * static_cast<double>(T * T)) +
                         static_cast<double>(local.uniform_int(0, W * W - 1)) / W2;
                }
                th -= std::floor(th);
                if (std::abs(weyl_sum(W, 1, th, T)) < 0.1 * static_cast<double>(2 * T + 1)) continue;
                ++detections;
                const double a = frac_mul(th, W * W);
                auto ra = rational_approx(a, calib::kWeylQ);
                weyl_err = std::max(weyl_err, ra.err * static_cast<double>(T * T));
                weyl_q = std::max(weyl_q, ra.q);
            }
        }
    rep.check("weyl_large_sum_implies_major_arc", detections > 0 && weyl_err <= calib::kWeylE, weyl_err,
              calib::kWeylE, std::to_string(detections) + " detections, q <= " + std::to_string(calib::kWeylQ));

    struct ArcCase {
        double theta;
        int64_t N;
        double eps;
        bool major;
        int64_t q1, q2;
    };
    bool arcs_ok = true;
    for (const ArcCase& c : {ArcCase{0, 100, 0.1, true, 0, 1}, ArcCase{0.5 + 1e-9, 100, 0.3, true, 1, 2},
                             ArcCase{1.0 / 3, 100, 0.2, false, 0, 1}}) {
        auto a = arc_decompose(c.theta, c.N, c.eps);
        arcs_ok = arcs_ok && a.major == c.major && (!c.major || (a.q1 == c.q1 && a.q2 == c.q2));
    }
    rep.check("arc_examples", arcs_ok, arcs_ok, true);

    {
        auto m = major_arc_model(3, 2, 0, 1, 0, 25);
        rep.check("major_arc_constant_phase", std::fabs(m.residual - 1) <= 1e-9, m.residual, 1);
    }
    double ma_worst = 0;
    for (int64_t T : {100, 200, 400}) {
        auto m = major_arc_model(2, 1, 1, 3, 0, T);
        ma_worst = std::max(ma_worst, m.residual / std::sqrt(static_cast<double>(T)));
    }
    rep.check("major_arc_residual", ma_worst <= calib::kMajorArc, ma_worst, calib::kMajorArc, "max residual / sqrt(T)");

    rep.absorb(fresnel_suite());

    {
        const auto ctx = ArithCtx::make(2048, 3);
        auto same = nu_compare_sup(ctx, 1, 8 * ((ctx.N + ctx.W - 1) / ctx.W), nu_weight(ctx.N));
        rep.check("nu_compare_override_zero", same.value <= 1e-9, same.value, 1e-9);
    }
    rep.absorb(nu_compare_suite(4096));
    return rep;
}

}  // namespace proglab
