#include "proglab/gowers.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace proglab {

bool BoxSpec::uniform() const {
    return std::all_of(sets.begin(), sets.end(), [&](const ShiftSet& q) { return q == sets.front(); });
}

void BoxSpec::validate() const {
    if (sets.empty()) throw Error("BoxSpec: need at least one shift set");
    for (const auto& q : sets)
        if (q.empty()) throw Error("BoxSpec: shift sets must be nonempty");
}

ShiftSet interval_set(int64_t L) {
    if (L < 1) throw Error("interval_set: L must be >= 1");
    ShiftSet q(static_cast<size_t>(L));
    std::iota(q.begin(), q.end(), int64_t{1});
    return q;
}

ShiftSet scale_set(const ShiftSet& Q, int64_t t) {
    ShiftSet r = Q;
    for (auto& q : r) q *= t;
    return r;
}

ZFunc delta_h(const ZFunc& f, int64_t h) { return f * f.shifted(-h).conj(); }

ZFunc delta_pair(const ZFunc& f, int64_t h, int64_t hp) {
    const int64_t lo = f.offset() - std::min(h, hp);
    const int64_t hi = f.end() - 1 - std::max(h, hp);
    if (hi < lo) return {};
    std::vector<cplx> v(static_cast<size_t>(hi - lo + 1));
    const auto& a = f.values();
    for (int64_t x = lo; x <= hi; ++x) v[x - lo] = std::conj(a[x + h - f.offset()]) * a[x + hp - f.offset()];
    return ZFunc(lo, std::move(v));
}

namespace {

int64_t spread(const ShiftSet& q) {
    auto [mn, mx] = std::minmax_element(q.begin(), q.end());
    return *mx - *mn;
}

// Final axis: sum_x |sum_{h in Q} g(x+h)|^2 / |Q|^2.
double last_axis(const ZFunc& g, const ShiftSet& Q) {
    if (g.length() == 0) return 0.0;
    auto [mn, mx] = std::minmax_element(Q.begin(), Q.end());
    const int64_t lo = g.offset() - *mx, hi = g.end() - 1 - *mn;
    const int64_t n = hi - lo + 1;
    std::vector<cplx> acc(static_cast<size_t>(n));
    for (int64_t h : Q) {
        const int64_t shift = g.offset() - h - lo;  // index of g(offset) in acc coordinates
        const auto& v = g.values();
        for (int64_t i = 0; i < g.length(); ++i) acc[shift + i] += v[i];
    }
    std::vector<double> sq(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) sq[i] = std::norm(acc[i]);
    const double q = static_cast<double>(Q.size());
    return pairwise_sum(sq) / (q * q);
}

double box_rec(const ZFunc& g, const std::vector<ShiftSet>& sets, size_t idx) {
    if (g.length() == 0) return 0.0;
    if (idx + 1 == sets.size()) return last_axis(g, sets[idx]);
    const auto& Q = sets[idx];
    std::vector<double> parts;
    parts.reserve(Q.size() * Q.size());
    for (int64_t h : Q)
        for (int64_t hp : Q) parts.push_back(box_rec(delta_pair(g, h, hp), sets, idx + 1));
    const double q = static_cast<double>(Q.size());
    return pairwise_sum(parts) / (q * q);
}

}  // namespace

uint64_t box_work(const ZFunc& f, const BoxSpec& spec) {
    double w = 1;
    int64_t span = f.length();
    for (const auto& q : spec.sets) span += spread(q);
    for (size_t i = 0; i + 1 < spec.sets.size(); ++i) w *= static_cast<double>(spec.sets[i].size() * spec.sets[i].size());
    w *= static_cast<double>(span + 1) * static_cast<double>(spec.sets.back().size() + 1);
    return w > 1.8e19 ? ~uint64_t{0} : static_cast<uint64_t>(w);
}

double box_norm_pow(const ZFunc& f0, const BoxSpec& spec) {
    spec.validate();
    ZFunc f = f0.tight();
    if (f.length() == 0) return 0.0;
    check_budget("box_norm_pow", box_work(f, spec));
    if (spec.sets.size() == 1) return last_axis(f, spec.sets[0]);
    const auto& Q = spec.sets[0];
    const auto nq = static_cast<int64_t>(Q.size());
    std::vector<double> parts(static_cast<size_t>(nq * nq));
#pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < nq * nq; ++i) parts[i] = box_rec(delta_pair(f, Q[i / nq], Q[i % nq]), spec.sets, 1);
    return pairwise_sum(parts) / static_cast<double>(nq * nq);
}

double box_norm_pow_reference(const ZFunc& f0, const BoxSpec& spec, bool* clamped) {
    spec.validate();
    ZFunc f = f0.tight();
    if (clamped) *clamped = false;
    if (f.length() == 0) return 0.0;
    const int d = spec.dims();
    int64_t smin = 0, smax = 0;
    double combos = 1;
    for (const auto& q : spec.sets) {
        smin += *std::min_element(q.begin(), q.end());
        smax += *std::max_element(q.begin(), q.end());
        combos *= static_cast<double>(q.size() * q.size());
    }
    const int64_t lo = f.offset() - smax, hi = f.end() - 1 - smin;
    check_budget("box_norm_pow_reference",
                 static_cast<uint64_t>(combos * static_cast<double>(hi - lo + 1) * (1 << d)));
    std::vector<size_t> hi_idx(d), hp_idx(d);
    KahanSum total;
    for (int64_t x = lo; x <= hi; ++x) {
        KahanSum inner;
        std::fill(hi_idx.begin(), hi_idx.end(), 0);
        std::fill(hp_idx.begin(), hp_idx.end(), 0);
        while (true) {
            cplx prod = 1.0;
            for (int w = 0; w < (1 << d) && prod != cplx{}; ++w) {
                int64_t pos = x;
                int ones = 0;
                for (int i = 0; i < d; ++i) {
                    bool bit = (w >> i) & 1;
                    ones += bit;
                    pos += bit ? spec.sets[i][hp_idx[i]] : spec.sets[i][hi_idx[i]];
                }
                cplx v = f(pos);
                prod *= ((d - ones) % 2) ? std::conj(v) : v;
            }
            inner.add(prod);
            int i = 0;
            for (; i < d; ++i) {
                if (++hp_idx[i] < spec.sets[i].size()) break;
                hp_idx[i] = 0;
                if (++hi_idx[i] < spec.sets[i].size()) break;
                hi_idx[i] = 0;
            }
            if (i == d) break;
        }
        total.add(inner.value());
    }
    double v = total.value().real() / combos;
    if (v < 0) {
        if (clamped) *clamped = true;
        v = 0;
    }
    return v;
}

double uk_norm_pow(const ZFunc& f, const ShiftSet& Q, int k) {
    if (k < 0) throw Error("uk_norm_pow: k must be >= 0");
    if (k == 0) {
        KahanSum s;
        for (auto z : f.values()) s.add(z);
        return s.value().real();
    }
    return box_norm_pow(f, BoxSpec{std::vector<ShiftSet>(static_cast<size_t>(k), Q)});
}

double box_norm(const ZFunc& f, const BoxSpec& spec) {
    double p = box_norm_pow(f, spec);
    return std::pow(std::max(p, 0.0), 1.0 / static_cast<double>(1 << spec.dims()));
}

namespace {

// x -> E_{|y| <= M} fa(x + ca P(y)) fb(x + cb P(y)).
ZFunc dual_generic(const ZFunc& fa0, int64_t ca, const ZFunc& fb0, int64_t cb, const ArithCtx& ctx) {
    ZFunc fa = fa0.tight(), fb = fb0.tight();
    if (fa.length() == 0 || fb.length() == 0) return {};
    std::vector<int64_t> ps;
    for (int64_t y = -ctx.M; y <= ctx.M; ++y) ps.push_back(ctx.P(y));
    int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (int64_t p : ps) {
        int64_t l = std::max(fa.offset() - ca * p, fb.offset() - cb * p);
        int64_t h = std::min(fa.end() - 1 - ca * p, fb.end() - 1 - cb * p);
        if (h < l) continue;
        lo = std::min(lo, l);
        hi = std::max(hi, h);
    }
    if (hi < lo) return {};
    check_budget("dual", static_cast<uint64_t>(hi - lo + 1) * ps.size());
    std::vector<cplx> v(static_cast<size_t>(hi - lo + 1));
    const double inv = 1.0 / static_cast<double>(ps.size());
#pragma omp parallel for schedule(static)
    for (int64_t x = lo; x <= hi; ++x) {
        KahanSum s;
        for (int64_t p : ps) {
            cplx a = fa(x + ca * p);
            if (a == cplx{}) continue;
            s.add(a * fb(x + cb * p));
        }
        v[x - lo] = s.value() * inv;
    }
    return ZFunc(lo, std::move(v));
}

}  // namespace

ZFunc dual1(const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx) { return dual_generic(f2, 1, f3, 2, ctx); }
ZFunc dual2(const ZFunc& f1, const ZFunc& f3, const ArithCtx& ctx) { return dual_generic(f1, -1, f3, 1, ctx); }
ZFunc dual3(const ZFunc& f1, const ZFunc& f2, const ArithCtx& ctx) { return dual_generic(f1, -2, f2, -1, ctx); }

Report interchange_cs_check(const std::vector<ZFunc>& f_by_y, int64_t T1, int64_t T2, int k, int ell, int64_t N,
                            double C) {
    if (ell != 1) throw Error("interchange_cs_check: only ell = 1 is implemented");
    if (k < 1) throw Error("interchange_cs_check: k must be >= 1");
    if (f_by_y.empty()) throw Error("interchange_cs_check: S must be nonempty");
    if (T1 < 1 || T2 < 1) throw Error("interchange_cs_check: T1, T2 must be positive");
    const double CN = C * static_cast<double>(N);
    if (static_cast<double>(T1) * static_cast<double>(T2) > CN) throw Error("interchange_cs_check: T1*T2 exceeds C*N");
    for (const auto& fy : f_by_y) {
        auto [lo, hi] = fy.support();
        if (hi >= lo && (static_cast<double>(lo) < -CN || static_cast<double>(hi) > CN))
            throw Error("interchange_cs_check: support outside [-CN, CN]");
        if (fy.sup_abs() > 1.0 + 1e-12) throw Error("interchange_cs_check: f must be 1-bounded");
    }
    const ShiftSet Q = scale_set(interval_set(T2), T1);
    const double ny = static_cast<double>(f_by_y.size());
    ZFunc F, m;
    for (const auto& fy : f_by_y) {
        F = F + fy.scaled(1.0 / ny);
        ZFunc sq = fy;
        for (auto& z : sq.values()) z = std::norm(z) / ny;
        m = m + sq;
    }
    const double lhs = uk_norm_pow(F, Q, k);
    const double A = uk_norm_pow(m, Q, k - 1);
    std::vector<double> parts;
    for (int64_t a : Q)
        for (int64_t b : Q) {
            ZFunc G;
            for (const auto& fy : f_by_y) G = G + delta_pair(fy, a, b).scaled(1.0 / ny);
            parts.push_back(uk_norm_pow(G, Q, k - 1));
        }
    const double B = pairwise_sum(parts) / static_cast<double>(Q.size() * Q.size());
    auto [mlo, mhi] = m.support();
    const double width = mhi >= mlo ? static_cast<double>(mhi - mlo + 1) : 0.0;

    Report r;
    r.name = "interchange_cs";
    r.inputs = {{"T1", T1}, {"T2", T2}, {"k", k}, {"ell", ell}, {"N", N}, {"C", C}, {"S_size", f_by_y.size()}};
    const double slack = 1e-9 * std::max(1.0, A * B) + 1e-12;
    r.check("lhs_sq_le_A_times_B", lhs * lhs <= A * B + slack, json{{"lhs_sq", lhs * lhs}, {"A_times_B", A * B}});
    r.check("A_le_support_width", A <= width + 1e-9 * std::max(1.0, width), A, width);
    r.data = {{"lhs", lhs}, {"A", A}, {"B", B}, {"support_width", width}};
    return r;
}

FejerIdentity fejer_square_identity(const ZFunc& f0, int64_t L) {
    ZFunc f = f0.tight();
    FejerIdentity out;
    out.direct = uk_norm_pow(f, interval_set(L), 1);
    if (f.length() == 0) return out;
    int64_t G = 2 * (f.length() + L) + 1;
    auto hat = dft_grid(f, G);
    std::vector<double> terms(static_cast<size_t>(G));
    for (int64_t j = 0; j < G; ++j) {
        double t = static_cast<double>(j) / static_cast<double>(G);
        double k = 1.0;
        if (j != 0) {
            double r = std::sin(L * kPi * t) / (static_cast<double>(L) * std::sin(kPi * t));
            k = r * r;
        }
        terms[j] = std::norm(hat[j]) * k;
    }
    out.fourier = pairwise_sum(terms) / static_cast<double>(G);
    return out;
}

double sine_multiple_max_violation(int k_max, int grid_points) {
    double worst = -1e300;
    for (int i = 0; i < grid_points; ++i) {
        double x = kPi * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        double s = std::fabs(std::sin(x));
        for (int k = 1; k <= k_max; ++k) worst = std::max(worst, std::fabs(std::sin(k * x)) - k * s);
    }
    return worst;
}

U2Converse u2_converse_bound(const ZFunc& f0, int64_t L) {
    ZFunc f = f0.tight();
    U2Converse out;
    if (f.length() == 0) return out;
    const ShiftSet Q = interval_set(L);
    out.u2 = uk_norm_pow(f, Q, 2);
    auto sup = fourier_sup(f, 4 * f.length());
    out.beta = -sup.theta_star;
    ZFunc g = f.modulated(out.beta);
    const double s1 = uk_norm_pow(g, Q, 1);
    const double X = static_cast<double>(f.length() + 2 * L - 1);
    out.lower = s1 * s1 / X;
    return out;
}

}  // namespace proglab
