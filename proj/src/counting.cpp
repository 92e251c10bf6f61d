#include "proglab/counting.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "proglab/gowers.hpp"

namespace proglab {

json CountingReport::to_json() const {
    auto c = [](cplx z) { return json::array({z.real(), z.imag()}); };
    return json{{"lambda_w", c(lambda_w)},
                {"lambda_model", c(lambda_model)},
                {"lambda_diff", c(lambda_diff)},
                {"normalizers", {{"NM", NM}, {"N2", N2}, {"sqrtNW", sqrtNW}}}};
}

namespace {

std::vector<int64_t> p_values(const ArithCtx& ctx) {
    std::vector<int64_t> ps;
    for (int64_t k = -ctx.M; k <= ctx.M; ++k) ps.push_back(ctx.P(k));
    return ps;
}

bool all_real(const ZFunc& f) {
    return std::all_of(f.values().begin(), f.values().end(), [](cplx z) { return z.imag() == 0.0; });
}

std::vector<double> real_parts(const ZFunc& f) {
    std::vector<double> r(f.values().size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = f.values()[i].real();
    return r;
}

}  // namespace

cplx lambda_w(const ZFunc& f1_, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx) {
    ZFunc f1 = f1_.tight();
    if (f1.length() == 0) return {};
    const auto ps = p_values(ctx);
    check_budget("lambda_w", static_cast<uint64_t>(f1.length()) * ps.size());
    std::vector<cplx> part(static_cast<size_t>(f1.length()));
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < f1.length(); ++i) {
        const cplx a = f1.values()[i];
        if (a == cplx{}) continue;
        const int64_t x = f1.offset() + i;
        KahanSum s;
        for (int64_t p : ps) {
            cplx b = f2(x + p);
            if (b == cplx{}) continue;
            s.add(b * f3(x + 2 * p));
        }
        part[i] = a * s.value();
    }
    return pairwise_sum(part);
}

cplx lambda_w_serial(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx) {
    KahanSum s;
    for (int64_t i = 0; i < f1.length(); ++i) {
        const int64_t x = f1.offset() + i;
        for (int64_t k = -ctx.M; k <= ctx.M; ++k) {
            const int64_t p = ctx.P(k);
            s.add(f1(x) * f2(x + p) * f3(x + 2 * p));
        }
    }
    return s.value();
}

cplx lambda_model(const ZFunc& f1_, const ZFunc& f2_, const ZFunc& f3_, const ArithCtx& ctx) {
    ZFunc f1 = f1_.tight(), f2 = f2_.tight(), f3 = f3_.tight();
    if (f1.length() == 0 || f2.length() == 0 || f3.length() == 0) return {};
    const int64_t N = ctx.N;
    check_budget("lambda_model", static_cast<uint64_t>(f1.length()) * static_cast<uint64_t>(std::min(N, f2.length())));
    std::vector<double> nu(static_cast<size_t>(N + 1), 0.0);
    for (int64_t d = 1; d <= N; ++d) nu[d] = std::sqrt(static_cast<double>(N) / static_cast<double>(d));
    const int64_t lo2 = f2.offset(), hi2 = f2.end() - 1, lo3 = f3.offset(), hi3 = f3.end() - 1;
    auto d_range = [&](int64_t x) {
        // d must satisfy x + d in supp f2 and x + 2d in supp f3.
        int64_t t = lo3 - x;
        int64_t c = t >= 0 ? (t + 1) / 2 : -((-t) / 2);
        int64_t a = std::max<int64_t>({1, lo2 - x, c});
        int64_t u = hi3 - x;
        int64_t f = u >= 0 ? u / 2 : -((-u + 1) / 2);
        int64_t b = std::min<int64_t>({N, hi2 - x, f});
        return std::pair<int64_t, int64_t>{a, b};
    };
    std::vector<cplx> part(static_cast<size_t>(f1.length()));
    if (all_real(f1) && all_real(f2) && all_real(f3)) {
        const auto a2 = real_parts(f2), a3 = real_parts(f3);
#pragma omp parallel for schedule(dynamic, 64)
        for (int64_t i = 0; i < f1.length(); ++i) {
            const double a = f1.values()[i].real();
            if (a == 0.0) continue;
            const int64_t x = f1.offset() + i;
            auto [d0, d1] = d_range(x);
            double s = 0;
            const double* p2 = a2.data() + (x - lo2);
            const double* p3 = a3.data() + (x - lo3);
            for (int64_t d = d0; d <= d1; ++d) s += nu[d] * p2[d] * p3[2 * d];
            part[i] = a * s;
        }
    } else {
#pragma omp parallel for schedule(dynamic, 64)
        for (int64_t i = 0; i < f1.length(); ++i) {
            const cplx a = f1.values()[i];
            if (a == cplx{}) continue;
            const int64_t x = f1.offset() + i;
            auto [d0, d1] = d_range(x);
            KahanSum s;
            for (int64_t d = d0; d <= d1; ++d) s.add(nu[d] * f2(x + d) * f3(x + 2 * d));
            part[i] = a * s.value();
        }
    }
    return pairwise_sum(part);
}

cplx lambda_model_serial(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx) {
    KahanSum s;
    for (int64_t i = 0; i < f1.length(); ++i) {
        const int64_t x = f1.offset() + i;
        for (int64_t d = 1; d <= ctx.N; ++d)
            s.add(f1(x) * f2(x + d) * f3(x + 2 * d) * std::sqrt(static_cast<double>(ctx.N) / d));
    }
    return s.value();
}

CountingReport lambda_diff(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx) {
    CountingReport r;
    r.lambda_w = lambda_w(f1, f2, f3, ctx);
    r.lambda_model = lambda_model(f1, f2, f3, ctx);
    r.sqrtNW = std::sqrt(static_cast<double>(ctx.N) * static_cast<double>(ctx.W));
    r.lambda_diff = r.sqrtNW * r.lambda_w - r.lambda_model;
    r.NM = static_cast<double>(ctx.N) * static_cast<double>(ctx.M);
    r.N2 = static_cast<double>(ctx.N) * static_cast<double>(ctx.N);
    return r;
}

Report stashing_check(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx, int which) {
    if (which < 1 || which > 3) throw Error("stashing_check: which must be 1, 2 or 3");
    const double cN = 8.0 * static_cast<double>(ctx.N);
    for (const ZFunc* f : {&f1, &f2, &f3}) {
        if (f->sup_abs() > 1.0 + 1e-12) throw Error("stashing_check: inputs must be 1-bounded");
        auto [lo, hi] = f->support();
        if (hi >= lo && (static_cast<double>(lo) < -cN || static_cast<double>(hi) > cN))
            throw Error("stashing_check: support outside [-8N, 8N]");
    }
    const cplx lam = lambda_w(f1, f2, f3, ctx);
    ZFunc D;
    cplx inner;
    int64_t supp = 0;
    if (which == 1) {
        D = dual1(f2, f3, ctx);
        inner = lambda_w(D.conj(), f2, f3, ctx);
        supp = f1.support_size();
    } else if (which == 2) {
        D = dual2(f1, f3, ctx);
        inner = lambda_w(f1, D.conj(), f3, ctx);
        supp = f2.support_size();
    } else {
        D = dual3(f1, f2, ctx);
        inner = lambda_w(f1, f2, D.conj(), ctx);
        supp = f3.support_size();
    }
    const double m = static_cast<double>(2 * ctx.M + 1);
    double dual_l2 = 0;
    for (auto z : D.values()) dual_l2 += std::norm(z);
    const double lhs = std::norm(lam);
    const double rhs = static_cast<double>(supp) * m * std::abs(inner);

    Report r;
    r.name = "stashing_" + std::to_string(which);
    r.inputs = {{"N", ctx.N}, {"w", ctx.w}, {"W", ctx.W}, {"M", ctx.M}, {"which", which}};
    r.check("cs_chain", lhs <= rhs * (1 + 1e-9) + 1e-9, json{{"lhs", lhs}, {"rhs", rhs}});
    // sum_x |(2M+1) D(x)|^2 = (2M+1) Lambda^W(.., conj D, ..): the inner term is real and nonnegative.
    const double scale = std::max(1.0, m * dual_l2);
    r.check("dual_energy_identity",
            std::fabs(inner.real() - m * dual_l2) <= 1e-9 * scale && std::fabs(inner.imag()) <= 1e-9 * scale,
            json{{"inner_re", inner.real()}, {"inner_im", inner.imag()}, {"m_dual_l2", m * dual_l2}});
    r.data = {{"abs_lambda_sq", lhs}, {"rhs", rhs}, {"ratio", rhs > 0 ? lhs / rhs : 0.0}};
    return r;
}

cplx sarkozy_pair_sum(const ZFunc& f1_, const ZFunc& f2, int64_t W, int64_t k, int64_t Y) {
    if (W < 1 || k < 1 || k > W) throw Error("sarkozy_pair_sum: need 1 <= k <= W");
    if (Y < 0) throw Error("sarkozy_pair_sum: Y must be >= 0");
    ZFunc f1 = f1_.tight();
    if (f1.length() == 0) return {};
    check_budget("sarkozy_pair_sum", static_cast<uint64_t>(2 * Y + 1) * static_cast<uint64_t>(f1.length()));
    std::vector<cplx> part(static_cast<size_t>(2 * Y + 1));
#pragma omp parallel for schedule(static)
    for (int64_t y = -Y; y <= Y; ++y) {
        const int64_t p = poly_Pr_i64(W, k, y);
        KahanSum s;
        for (int64_t i = 0; i < f1.length(); ++i) {
            cplx a = f1.values()[i];
            if (a == cplx{}) continue;
            s.add(a * f2(f1.offset() + i + p));
        }
        part[y + Y] = s.value();
    }
    return pairwise_sum(part) / static_cast<double>(2 * Y + 1);
}

namespace {

// Bit i of the result is bit i + s of the input.
std::vector<uint64_t> shift_down(const std::vector<uint64_t>& w, int64_t s) {
    std::vector<uint64_t> out(w.size(), 0);
    const size_t q = static_cast<size_t>(s / 64);
    const int r = static_cast<int>(s % 64);
    for (size_t i = 0; i + q < w.size(); ++i) {
        uint64_t lo = w[i + q] >> r;
        uint64_t hi = (r && i + q + 1 < w.size()) ? (w[i + q + 1] << (64 - r)) : 0;
        out[i] = lo | hi;
    }
    return out;
}

int64_t count_aps(const std::vector<uint64_t>& w, int64_t d) {
    auto s1 = shift_down(w, d), s2 = shift_down(w, 2 * d);
    int64_t c = 0;
    for (size_t i = 0; i < w.size(); ++i) c += std::popcount(w[i] & s1[i] & s2[i]);
    return c;
}

}  // namespace

int64_t enumerate_configs(const IntervalSet& S) {
    const int64_t N = S.N();
    if (N < 3) return 0;
    int64_t total = count_aps(S.words(), 1);  // y = 0: x, x - 1, x - 2
    for (int64_t y = 2; y * y - 1 <= N; ++y) {
        const int64_t d = y * y - 1;
        if (2 * d > N - 1) break;
        total += 2 * count_aps(S.words(), d);
    }
    return total;
}

IntervalSet random_subset(int64_t N, double density, Rng& rng) {
    IntervalSet S(N);
    for (int64_t x = 1; x <= N; ++x)
        if (rng.bernoulli(density)) S.insert(x);
    return S;
}

WTrick wtrick_subset(const IntervalSet& S, int w) {
    if (w < 2) throw Error("wtrick_subset: w must be >= 2");
    if (S.size() == 0) throw Error("wtrick_subset: S is empty");
    WTrick out;
    const int64_t W = primorial(w), m = 4 * W;
    out.modulus = m;
    std::vector<int64_t> counts(static_cast<size_t>(m + 1), 0);
    const auto mem = S.members();
    for (int64_t s : mem) counts[(s - 1) % m + 1]++;
    int64_t j = 1;
    for (int64_t t = 2; t <= m; ++t)
        if (counts[t] > counts[j]) j = t;
    out.j = j;
    const int64_t Nstar = (S.N() - j) / m + 1;
    out.S_star = IntervalSet(Nstar);
    for (int64_t s : mem)
        if ((s - 1) % m + 1 == j) out.S_star.insert((s - j) / m + 1);
    out.density = static_cast<double>(out.S_star.size()) * static_cast<double>(m) / static_cast<double>(S.N());

    // Every nontrivial (x, k) in S* lifts to a config of S with y = 2Wk + 1.
    for (int64_t k = -(Nstar + 1); k <= Nstar + 1; ++k) {
        if (k == 0) continue;
        const int64_t p = W * k * k + k;
        if (p <= 0 || 2 * p > Nstar - 1) continue;
        for (int64_t x = 1; x + 2 * p <= Nstar; ++x) {
            if (!out.S_star.contains(x) || !out.S_star.contains(x + p) || !out.S_star.contains(x + 2 * p)) continue;
            const int64_t z = 2 * W * k + 1;
            const int64_t xl = m * (x - 1) + j;
            const bool ok = (m * p == z * z - 1) && z != 1 && z != -1 && S.contains(xl) &&
                            S.contains(xl + z * z - 1) && S.contains(xl + 2 * (z * z - 1));
            out.lifting_ok = out.lifting_ok && ok;
            ++out.lifted_configs;
        }
    }
    return out;
}

std::vector<TransferRow> transfer_experiment(int64_t N, double density, int seeds, const std::vector<int>& ws,
                                             uint64_t seed) {
    if (seeds < 1) throw Error("transfer_experiment: need at least one seed");
    std::vector<TransferRow> rows;
    for (int w : ws) {
        TransferRow r;
        r.w = w;
        r.W = primorial(w);
        r.values.assign(static_cast<size_t>(seeds), 0.0);
        rows.push_back(r);
    }
    const Rng root(seed);
    const double N2 = static_cast<double>(N) * static_cast<double>(N);
    for (int s = 0; s < seeds; ++s) {
        Rng rng = root.split(static_cast<uint64_t>(s));
        ZFunc f = random_subset(N, density, rng).indicator();
        const cplx model = lambda_model(f, f, f, ArithCtx::make(N, 2));
        for (auto& row : rows) {
            ArithCtx ctx = ArithCtx::make(N, row.w);
            cplx lw = lambda_w(f, f, f, ctx);
            cplx diff = std::sqrt(static_cast<double>(N) * static_cast<double>(ctx.W)) * lw - model;
            row.values[s] = std::abs(diff) / N2;
        }
    }
    for (auto& row : rows) {
        auto v = row.values;
        std::sort(v.begin(), v.end());
        size_t n = v.size();
        row.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    }
    return rows;
}

}  // namespace proglab
