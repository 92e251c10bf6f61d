#include "proglab/signal.hpp"
#include "proglab/verify.hpp"
#include "verify_util.hpp"

namespace proglab {

using detail::rel_err;

Report verify_signal(uint64_t seed) {
    Report rep;
    rep.name = "signal";
    rep.inputs = {{"seed", seed}};
    Rng rng(seed);

    // Parseval on a 4x oversampled grid: exact for trigonometric polynomials.
    double parseval_worst = 0;
    for (int64_t len : {1, 7, 64, 500, 2048}) {
        ZFunc f = detail::random_bounded(rng, rng.uniform_int(-1000, 1000), len);
        double l2 = 0;
        for (auto z : f.values()) l2 += std::norm(z);
        auto grid = dft_grid(f, 4 * len);
        std::vector<double> sq;
        for (auto z : grid) sq.push_back(std::norm(z));
        parseval_worst = std::max(parseval_worst, rel_err(l2, pairwise_sum(sq) / static_cast<double>(4 * len)));
    }
    rep.check("parseval", parseval_worst <= 1e-9, parseval_worst, 1e-9);

    double fejer_worst = 0;
    for (int64_t H = 1; H <= 1000; ++H) {
        const ZFunc K = fejer(static_cast<double>(H));
        double s = 0;
        for (auto z : K.values()) s += z.real();
        fejer_worst = std::max(fejer_worst, std::fabs(s - 1));
    }
    for (int64_t H : {1, 3, 10, 40}) {
        auto K = fejer(static_cast<double>(H), 2);
        double s = 0;
        for (int64_t a = -H; a <= H; ++a)
            for (int64_t b = -H; b <= H; ++b) {
                const int64_t h[2] = {a, b};
                s += K(h);
            }
        fejer_worst = std::max(fejer_worst, std::fabs(s - 1));
    }
    rep.check("fejer_mass_one", fejer_worst <= 1e-12, fejer_worst, 1e-12);

    double nu_min = 1e300;
    for (int64_t N : {1, 2, 17, 1000, 65536}) {
        auto nu = nu_weight(N);
        for (auto z : nu.values()) nu_min = std::min(nu_min, z.real());
    }
    rep.check("nu_at_least_one", nu_min >= 1.0, nu_min, 1.0);

    double star_worst = 0;
    for (int w : {2, 3, 5}) {
        auto ctx = ArithCtx::make(20000, w);
        auto star = nu_star(ctx);
        const double h = std::sqrt(static_cast<double>(ctx.N) * static_cast<double>(ctx.W));
        for (int t = 0; t < 20; ++t) {
            const double theta = rng.uniform();
            KahanSum brute;
            for (int64_t k = -ctx.M - 2; k <= ctx.M + 2; ++k) {
                const int64_t p = ctx.P(k);
                if (p >= 1 && p <= ctx.N) brute.add(h * e_of(-frac_mul(theta, p)));
            }
            star_worst = std::max(star_worst, rel_err(dft_eval(star, theta), brute.value()));
        }
    }
    rep.check("nu_star_transform_matches_brute_force", star_worst <= 1e-12, star_worst, 1e-12);

    auto sm = model_weight_smoothing_error(100000, 0.2);
    rep.check("smoothing_error", sm.error <= sm.bound, sm.error, sm.bound,
              "box radius " + std::to_string(sm.box_radius));

    double sup_gap = 0;
    bool sup_ge_grid = true;
    for (int t = 0; t < 10; ++t) {
        const int64_t len = rng.uniform_int(1, 300);
        ZFunc f = detail::random_bounded(rng, rng.uniform_int(-50, 50), len);
        auto a = fourier_sup(f, 4 * len);
        auto b = fourier_sup_serial(f, 4 * len);
        sup_gap = std::max(sup_gap, rel_err(a.value, b.value));
        sup_ge_grid = sup_ge_grid && a.value >= a.grid_max;
    }
    rep.check("fourier_sup_parallel_matches_serial", sup_gap <= 1e-12, sup_gap, 1e-12);
    rep.check("fourier_sup_at_least_grid_max", sup_ge_grid, sup_ge_grid, true);
    return rep;
}

}  // namespace proglab
