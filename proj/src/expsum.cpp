#include "proglab/expsum.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace proglab {

namespace {

int64_t mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    __int128 r = static_cast<__int128>(a) * b % m;
    return static_cast<int64_t>(r < 0 ? r + m : r);
}

// 20-point Gauss-Legendre rule on [-1, 1], by Newton iteration on P_20.
struct GaussLegendre {
    static constexpr int n = 20;
    std::array<double, n> x{}, w{};
    GaussLegendre() {
        for (int i = 0; i < n; ++i) {
            double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1);
                double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2 / ((1 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre& gl() {
    static const GaussLegendre rule;
    return rule;
}

template <class F>
cplx integrate(F&& f, double a, double b, int panels) {
    const auto& r = gl();
    KahanSum s;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int i = 0; i < GaussLegendre::n; ++i) s.add(r.w[i] * 0.5 * h * f(mid + 0.5 * h * r.x[i]));
    }
    return s.value();
}

// frac(x^2) with the rounding error of the square folded back in.
double frac_square(double x) {
    const double p = x * x;
    const double err = std::fma(x, x, -p);
    double f = (p - std::floor(p)) + err;
    return f - std::floor(f);
}

std::vector<int64_t> pr_values(int64_t W, int64_t r, int64_t T) {
    const __int128 big = static_cast<__int128>(W) * W * T * T + static_cast<__int128>(2 * W * r + 1) * T;
    if (big > (static_cast<__int128>(1) << 60)) throw Error("P_r values overflow 64-bit arithmetic");
    std::vector<int64_t> v;
    v.reserve(static_cast<size_t>(2 * T + 1));
    for (int64_t x = -T; x <= T; ++x) v.push_back(poly_Pr_i64(W, r, x));
    return v;
}

void check_weyl_args(int64_t W, int64_t T) {
    if (W < 1) throw Error("weyl sum: W must be >= 1");
    if (T < 0) throw Error("weyl sum: T must be >= 0");
}

}  // namespace

GaussSumVal gauss_sum(int64_t a, int64_t b, int64_t c) {
    if (c < 1) throw Error("gauss_sum: c must be >= 1");
    check_budget("gauss_sum", static_cast<uint64_t>(c));
    const int64_t ar = mod(a, c), br = mod(b, c);
    std::vector<int64_t> count(static_cast<size_t>(c), 0);
    for (int64_t n = 0; n < c; ++n) ++count[(mulmod(mulmod(n, n, c), ar, c) + mulmod(br, n, c)) % c];
    KahanSum s;
    for (int64_t k = 0; k < c; ++k)
        if (count[k]) s.add(static_cast<double>(count[k]) * e_of(static_cast<double>(k) / c));
    return {a, b, c, s.value()};
}

Report gauss_property_check(int64_t c_max) {
    if (c_max < 1 || c_max > 500) throw Error("gauss_property_check: c_max must be in [1, 500]");
    const auto cm = static_cast<uint64_t>(c_max);
    check_budget("gauss_property_check", cm * cm * cm * cm / 4 + cm * cm * cm);
    constexpr double tol = 1e-9;

    // table[c][a * c + b] = G(a, b, c).
    std::vector<std::vector<cplx>> table(static_cast<size_t>(c_max + 1));
#pragma omp parallel for schedule(dynamic)
    for (int64_t c = 1; c <= c_max; ++c) {
        std::vector<cplx> root(static_cast<size_t>(c));
        for (int64_t k = 0; k < c; ++k) root[k] = e_of(static_cast<double>(k) / c);
        std::vector<cplx> t(static_cast<size_t>(c * c));
        std::vector<int64_t> sq(static_cast<size_t>(c));
        for (int64_t a = 0; a < c; ++a) {
            for (int64_t n = 0; n < c; ++n) sq[n] = (a * ((n * n) % c)) % c;
            for (int64_t b = 0; b < c; ++b) {
                KahanSum s;
                int64_t bn = 0;
                for (int64_t n = 0; n < c; ++n) {
                    int64_t k = sq[n] + bn;
                    if (k >= c) k -= c;
                    s.add(root[k]);
                    bn += b;
                    if (bn >= c) bn -= c;
                }
                t[a * c + b] = s.value();
            }
        }
        table[c] = std::move(t);
    }
    auto G = [&](int64_t a, int64_t b, int64_t c) { return table[c][mod(a, c) * c + mod(b, c)]; };

    Report rep;
    rep.name = "gauss_properties";
    rep.inputs = {{"c_max", c_max}};

    double mult_err = 0;
    int64_t mult_cases = 0;
    for (int64_t c = 2; c <= c_max; ++c)
        for (int64_t d = c + 1; c * d <= c_max; ++d) {
            if (std::gcd(c, d) != 1) continue;
            const int64_t m = c * d;
            for (int64_t a = 0; a < m; ++a)
                for (int64_t b = 0; b < m; ++b) {
                    mult_err = std::max(mult_err, std::abs(G(a, b, m) - G(a * c, b, d) * G(a * d, b, c)));
                    ++mult_cases;
                }
        }
    rep.check("multiplicativity", mult_err <= tol, mult_err, tol, std::to_string(mult_cases) + " cases");

    double vanish_err = 0, scaled_err = 0;
    int64_t vanish_cases = 0, scaled_cases = 0, unscaled_fail = 0;
    double odd_err = 0, two_excess = -1e300;
    int64_t odd_cases = 0, two_cases = 0;
    for (int64_t c = 1; c <= c_max; ++c) {
        const bool two_power = (c & (c - 1)) == 0;
        for (int64_t a = 0; a < c; ++a) {
            const int64_t g = std::gcd(a, c);
            for (int64_t b = 0; b < c; ++b) {
                const cplx v = G(a, b, c);
                if (g > 1) {
                    if (b % g != 0) {
                        vanish_err = std::max(vanish_err, std::abs(v));
                        ++vanish_cases;
                    } else {
                        const cplx red = G(a / g, b / g, c / g);
                        scaled_err = std::max(scaled_err, std::abs(v - static_cast<double>(g) * red));
                        if (std::abs(v - red) > tol) ++unscaled_fail;
                        ++scaled_cases;
                    }
                } else if (c % 2 == 1) {
                    odd_err = std::max(odd_err, std::abs(std::abs(v) - std::sqrt(static_cast<double>(c))));
                    ++odd_cases;
                }
                if (two_power && a % 2 == 1 && b % 2 == 0) {
                    two_excess = std::max(two_excess, std::abs(v) - 2 * std::sqrt(static_cast<double>(c)));
                    ++two_cases;
                }
            }
        }
    }
    rep.check("common_factor_not_dividing_b_vanishes", vanish_err <= tol, vanish_err, tol,
              std::to_string(vanish_cases) + " cases");
    rep.check("common_factor_dividing_b_reduces", scaled_err <= tol, scaled_err, tol,
              "G(a,b,c) = g G(a/g,b/g,c/g); " + std::to_string(scaled_cases) + " cases");
    rep.check("odd_modulus_abs_is_sqrt", odd_err <= tol, odd_err, tol, std::to_string(odd_cases) + " cases");
    if (two_cases == 0) two_excess = 0;
    rep.check("two_power_modulus_bound", two_excess <= tol, two_excess, tol,
              "|G| - 2 sqrt(c); " + std::to_string(two_cases) + " cases");
    rep.data["reduction_without_factor_g_failures"] = unscaled_fail;
    rep.data["reduction_cases"] = scaled_cases;
    return rep;
}

cplx weyl_sum(int64_t W, int64_t r, double theta, int64_t T) {
    check_weyl_args(W, T);
    check_budget("weyl_sum", static_cast<uint64_t>(2 * T + 1));
    const auto vals = pr_values(W, r, T);
    KahanSum s;
    for (int64_t v : vals) s.add(e_of(frac_mul(theta, v)));
    return s.value();
}

cplx weyl_sum_rational(int64_t W, int64_t r, int64_t q1, int64_t q2, double theta_star, int64_t T) {
    check_weyl_args(W, T);
    if (q2 < 1) throw Error("weyl_sum_rational: q2 must be >= 1");
    check_budget("weyl_sum", static_cast<uint64_t>(2 * T + 1));
    const auto vals = pr_values(W, r, T);
    KahanSum s;
    for (int64_t v : vals) {
        double ph = static_cast<double>(mulmod(mod(q1, q2), mod(v, q2), q2)) / q2 + frac_mul(theta_star, v);
        s.add(e_of(ph - std::floor(ph)));
    }
    return s.value();
}

int64_t moment_exact(int64_t W, int64_t r, int64_t T, int order) {
    check_weyl_args(W, T);
    if (order != 2 && order != 4 && order != 6) throw Error("moment_exact: order must be 2, 4 or 6");
    const int k = order / 2;
    const auto vals = pr_values(W, r, T);
    const auto n = static_cast<uint64_t>(vals.size());
    uint64_t tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= n;
    check_budget("moment_exact", tuples * 4);

    const auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
    const int64_t lo = *lo_it, span = *hi_it - *lo_it;
    const auto range = static_cast<uint64_t>(k) * static_cast<uint64_t>(span) + 1;

    // k-fold sums, shifted to start at 0.
    std::vector<int64_t> base(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) base[i] = vals[i] - lo;

    int64_t total = 0;
    if (range <= (uint64_t{1} << 28) && range <= 8 * tuples + (1 << 20)) {
        std::vector<uint32_t> cnt(range, 0);
        if (k == 1) {
            for (auto a : base) ++cnt[a];
        } else if (k == 2) {
            for (auto a : base)
                for (auto b : base) ++cnt[a + b];
        } else {
            for (auto a : base)
                for (auto b : base)
                    for (auto c : base) ++cnt[a + b + c];
        }
        for (uint32_t c : cnt) total += static_cast<int64_t>(c) * c;
    } else {
        std::vector<int64_t> sums;
        sums.reserve(tuples);
        if (k == 1) {
            sums = base;
        } else if (k == 2) {
            for (auto a : base)
                for (auto b : base) sums.push_back(a + b);
        } else {
            for (auto a : base)
                for (auto b : base)
                    for (auto c : base) sums.push_back(a + b + c);
        }
        std::sort(sums.begin(), sums.end());
        for (size_t i = 0; i < sums.size();) {
            size_t j = i;
            while (j < sums.size() && sums[j] == sums[i]) ++j;
            const auto run = static_cast<int64_t>(j - i);
            total += run * run;
            i = j;
        }
    }
    return total;
}

int64_t min_moment_grid(int64_t W, int64_t r, int64_t T) {
    const auto vals = pr_values(W, r, T);
    int64_t m = 0;
    for (auto v : vals) m = std::max(m, std::abs(v));
    return std::max<int64_t>(8 * m, 1);
}

namespace {

void check_moment_args(int64_t W, int64_t r, int64_t T, int order, int64_t grid, std::vector<int64_t>& vals) {
    check_weyl_args(W, T);
    if (order < 2 || order % 2) throw Error("moment_quadrature: order must be a positive even integer");
    vals = pr_values(W, r, T);
    if (grid < min_moment_grid(W, r, T)) throw Error("moment_quadrature: grid must be >= 8 max|P_r|");
    const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    if (static_cast<__int128>(order / 2) * (*hi - *lo) >= grid)
        throw Error("moment_quadrature: grid too small for this order");
}

double power_abs(cplx z, int order) {
    const double a2 = std::norm(z);
    double p = 1;
    for (int i = 0; i < order / 2; ++i) p *= a2;
    return p;
}

}  // namespace

double moment_quadrature(int64_t W, int64_t r, int64_t T, int order, int64_t grid) {
    std::vector<int64_t> vals;
    check_moment_args(W, r, T, order, grid, vals);
    const auto G = static_cast<uint64_t>(grid);
    check_budget("moment_quadrature", G * (static_cast<uint64_t>(std::log2(static_cast<double>(G))) + 1) * 5);

    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * G));
    if (!buf) throw Error("moment_quadrature: allocation failed");
    std::fill_n(&buf[0][0], 2 * G, 0.0);
    for (auto v : vals) buf[mod(v, grid)][0] += 1.0;
    fftw_plan plan;
#pragma omp critical(proglab_fftw_plan)
    plan = fftw_plan_dft_1d(static_cast<int>(grid), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    std::vector<double> terms(G);
#pragma omp parallel for schedule(static)
    for (int64_t j = 0; j < grid; ++j) terms[j] = power_abs(cplx(buf[j][0], buf[j][1]), order);
#pragma omp critical(proglab_fftw_plan)
    fftw_destroy_plan(plan);
    fftw_free(buf);
    return pairwise_sum(terms) / static_cast<double>(grid);
}

double moment_quadrature_direct(int64_t W, int64_t r, int64_t T, int order, int64_t grid) {
    std::vector<int64_t> vals;
    check_moment_args(W, r, T, order, grid, vals);
    check_budget("moment_quadrature", static_cast<uint64_t>(grid) * vals.size());
    std::vector<cplx> root(static_cast<size_t>(grid));
    for (int64_t k = 0; k < grid; ++k) root[k] = e_of(static_cast<double>(k) / grid);
    std::vector<int64_t> red(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) red[i] = mod(vals[i], grid);
    std::vector<double> terms(static_cast<size_t>(grid));
    for (int64_t j = 0; j < grid; ++j) {
        KahanSum s;
        for (auto v : red) s.add(root[mulmod(j, v, grid)]);
        terms[j] = power_abs(s.value(), order);
    }
    return pairwise_sum(terms) / static_cast<double>(grid);
}

json ArcLabel::to_json() const {
    json j;
    j["kind"] = major ? "major" : "minor";
    if (major) {
        j["q1"] = q1;
        j["q2"] = q2;
        j["theta_star"] = theta_star;
    }
    j["epsilon"] = epsilon;
    return j;
}

namespace {

int64_t arc_q_max(int64_t N, double epsilon) {
    return static_cast<int64_t>(std::floor(std::pow(static_cast<double>(N), epsilon) + 1e-9));
}

double arc_radius(int64_t N, double epsilon) { return std::pow(static_cast<double>(N), -2.0 + epsilon); }

// Signed offset of theta from its nearest fraction with denominator q, and that numerator mod q.
std::pair<int64_t, double> nearest(double theta, int64_t q) {
    double f = frac_mul(theta, q);  // q theta mod 1
    double t = theta - std::floor(theta);
    int64_t num = static_cast<int64_t>(std::floor(t * static_cast<double>(q) + 0.5));
    if (f > 0.5) f -= 1.0;
    return {mod(num, q), f / static_cast<double>(q)};
}

}  // namespace

ArcLabel arc_decompose(double theta, int64_t N, double epsilon) {
    // Arcs stay disjoint for epsilon < 2/3; 1/2 leaves room for the N = 2 corner.
    if (!(epsilon > 0 && epsilon < 0.5)) throw Error("arc_decompose: epsilon must be in (0, 1/2)");
    if (N < 1) throw Error("arc_decompose: N must be >= 1");
    ArcLabel out;
    out.epsilon = epsilon;
    const int64_t Q = arc_q_max(N, epsilon);
    const double rad = arc_radius(N, epsilon);
    for (int64_t q2 = 1; q2 <= Q; ++q2) {
        auto [q1, ts] = nearest(theta, q2);
        if (std::abs(ts) > rad) continue;
        if (std::gcd(q1, q2) != 1 && !(q1 == 0 && q2 == 1)) continue;
        out.major = true;
        out.q1 = q1;
        out.q2 = q2;
        out.theta_star = ts;
        break;
    }
    // The continued-fraction best approximation must agree with the scan.
    if (Q >= 1) {
        auto ra = rational_approx(theta - std::floor(theta), Q);
        auto [q1, ts] = nearest(theta, ra.q);
        const int64_t g = std::gcd(q1, ra.q);
        const bool cf_major = std::abs(ts) <= rad;
        if (cf_major != out.major || (cf_major && (q1 / g != out.q1 || ra.q / g != out.q2)))
            throw Error("arc_decompose: scan and continued fractions disagree");
    }
    return out;
}

MajorArcModel major_arc_model(int64_t W, int64_t r, int64_t q1, int64_t q2, double theta_star, int64_t T,
                              double epsilon) {
    if (T < 1) throw Error("major_arc_model: T must be >= 1");
    if (q2 < 1 || q1 < 0 || q1 >= q2 || (std::gcd(q1, q2) != 1 && !(q1 == 0 && q2 == 1)))
        throw Error("major_arc_model: q1/q2 must be a reduced fraction in [0,1)");
    if (q2 > arc_q_max(T, epsilon)) throw Error("major_arc_model: q2 exceeds T^epsilon");
    if (std::abs(theta_star) > arc_radius(T, epsilon)) throw Error("major_arc_model: |theta*| exceeds T^(-2+epsilon)");

    MajorArcModel m;
    const int64_t a = mulmod(mulmod(W, W, q2), q1, q2);
    const int64_t b = mulmod(mod(2 * W * r + 1, q2), q1, q2);
    const cplx g = gauss_sum(a, b, q2).value / static_cast<double>(q2);
    cplx integral;
    if (theta_star == 0) {
        integral = 2.0 * static_cast<double>(T);
    } else {
        const double s = static_cast<double>(W) * std::sqrt(std::abs(theta_star));
        integral = fresnel(static_cast<double>(T) * s) / s;
        if (theta_star < 0) integral = std::conj(integral);
    }
    m.main = g * integral;
    m.actual = weyl_sum_rational(W, r, q1, q2, theta_star, T);
    m.residual = std::abs(m.actual - m.main);
    return m;
}

cplx fresnel(double gamma) {
    if (!(gamma >= 0)) throw Error("fresnel: gamma must be >= 0");
    if (gamma == 0) return {};
    if (gamma <= 2) {
        const int panels = std::max(4, static_cast<int>(std::ceil(gamma * 16)));
        return 2.0 * integrate([](double x) { return e_of(frac_square(x)); }, 0.0, gamma, panels);
    }
    // Tail int_gamma^inf e(x^2) dx: with u = x^2 and the contour u = gamma^2 + i s / (2 pi),
    // it equals (i / 4 pi) e(gamma^2) int_0^inf e^{-s} (gamma^2 + i s / 2 pi)^{-1/2} ds.
    const double g2 = gamma * gamma;
    const cplx inner = integrate(
        [g2](double s) { return std::exp(-s) / std::sqrt(cplx(g2, s / kTwoPi)); }, 0.0, 60.0, 60);
    const cplx tail = cplx(0, 1.0 / (4 * kPi)) * e_of(frac_square(gamma)) * inner;
    return 2.0 * (cplx(0.25, 0.25) - tail);
}

NuCompare nu_compare_sup(const ArithCtx& ctx, int64_t k, int64_t grid, const std::optional<ZFunc>& nu_star_override) {
    if (k < 1 || k > ctx.W) throw Error("nu_compare_sup: k must be in [1, W]");
    if (grid < 8 * ((ctx.N + ctx.W - 1) / ctx.W)) throw Error("nu_compare_sup: grid must be >= 8 N / W");
    const ZFunc star = nu_star_override ? *nu_star_override : nu_star(ctx);
    const double N = static_cast<double>(ctx.N);
    const int64_t D = ctx.N >= k ? (ctx.N - k) / ctx.W : -1;
    std::vector<cplx> g(static_cast<size_t>(D + 1));
    for (int64_t d = 0; d <= D; ++d) {
        const int64_t n = ctx.W * d + k;
        g[d] = star(n) - std::sqrt(N / static_cast<double>(n));
    }
    ZFunc f(0, std::move(g));
    NuCompare out;
    // g is real, so |sum e(d theta) g(d)| = |sum e(-d theta) g(d)|.
    auto fs = fourier_sup(f, grid);
    out.value = fs.value;
    out.theta_star = fs.theta_star;
    KahanSum direct;
    for (auto v : f.values()) direct.add(v);
    out.at_zero_direct = std::abs(direct.value());
    out.at_zero_grid = std::abs(dft_eval(f, 0.0));
    out.scale = N / (static_cast<double>(ctx.W) * std::sqrt(static_cast<double>(ctx.w)));
    out.ratio = out.value / out.scale;
    return out;
}

}  // namespace proglab
