#include "proglab/signal.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace proglab {

ZFunc ZFunc::delta(int64_t at, cplx value) { return ZFunc(at, {value}); }

ZFunc ZFunc::indicator(int64_t lo, int64_t hi) {
    if (hi < lo) return {};
    return ZFunc(lo, std::vector<cplx>(static_cast<size_t>(hi - lo + 1), 1.0));
}

ZFunc ZFunc::from_fn(int64_t lo, int64_t hi, const std::function<cplx(int64_t)>& fn) {
    if (hi < lo) return {};
    std::vector<cplx> v(static_cast<size_t>(hi - lo + 1));
    for (int64_t x = lo; x <= hi; ++x) v[static_cast<size_t>(x - lo)] = fn(x);
    return ZFunc(lo, std::move(v));
}

bool ZFunc::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](cplx z) { return z == cplx{}; });
}

std::pair<int64_t, int64_t> ZFunc::support() const {
    int64_t lo = 0, hi = -1;
    for (int64_t i = 0; i < length(); ++i)
        if (v_[i] != cplx{}) {
            lo = i;
            break;
        }
    for (int64_t i = length() - 1; i >= 0; --i)
        if (v_[i] != cplx{}) {
            hi = i;
            break;
        }
    if (hi < lo) return {0, -1};
    return {offset_ + lo, offset_ + hi};
}

int64_t ZFunc::support_size() const {
    return std::count_if(v_.begin(), v_.end(), [](cplx z) { return z != cplx{}; });
}

ZFunc ZFunc::tight() const {
    auto [lo, hi] = support();
    if (hi < lo) return {};
    return ZFunc(lo, std::vector<cplx>(v_.begin() + (lo - offset_), v_.begin() + (hi - offset_ + 1)));
}

double ZFunc::sup_abs() const {
    double m = 0;
    for (auto z : v_) m = std::max(m, std::abs(z));
    return m;
}

ZFunc ZFunc::shifted(int64_t t) const { return ZFunc(offset_ + t, v_); }

ZFunc ZFunc::conj() const {
    ZFunc r = *this;
    for (auto& z : r.v_) z = std::conj(z);
    return r;
}

ZFunc ZFunc::scaled(cplx c) const {
    ZFunc r = *this;
    for (auto& z : r.v_) z *= c;
    return r;
}

ZFunc ZFunc::modulated(double beta) const {
    ZFunc r = *this;
    for (int64_t i = 0; i < length(); ++i) r.v_[i] *= e_of(frac_mul(beta, offset_ + i));
    return r;
}

namespace {

template <class Op>
ZFunc combine(const ZFunc& f, const ZFunc& g, Op op) {
    if (f.length() == 0 && g.length() == 0) return {};
    int64_t lo, hi;
    if (f.length() == 0) {
        lo = g.offset();
        hi = g.end();
    } else if (g.length() == 0) {
        lo = f.offset();
        hi = f.end();
    } else {
        lo = std::min(f.offset(), g.offset());
        hi = std::max(f.end(), g.end());
    }
    std::vector<cplx> v(static_cast<size_t>(hi - lo));
    for (int64_t x = lo; x < hi; ++x) v[x - lo] = op(f(x), g(x));
    return ZFunc(lo, std::move(v));
}

}  // namespace

ZFunc ZFunc::operator*(const ZFunc& g) const {
    int64_t lo = std::max(offset_, g.offset_), hi = std::min(end(), g.end());
    if (hi <= lo) return {};
    std::vector<cplx> v(static_cast<size_t>(hi - lo));
    for (int64_t x = lo; x < hi; ++x) v[x - lo] = (*this)(x) * g(x);
    return ZFunc(lo, std::move(v));
}

ZFunc ZFunc::operator+(const ZFunc& g) const { return combine(*this, g, [](cplx a, cplx b) { return a + b; }); }
ZFunc ZFunc::operator-(const ZFunc& g) const { return combine(*this, g, [](cplx a, cplx b) { return a - b; }); }

json ZFunc::to_json() const {
    json arr = json::array();
    for (int64_t i = 0; i < length(); ++i)
        if (v_[i] != cplx{}) arr.push_back(json::array({offset_ + i, v_[i].real(), v_[i].imag()}));
    return arr;
}

ZFunc ZFunc::from_json(const json& j) {
    if (!j.is_array()) throw Error("ZFunc: expected an array of [x, re, im] triples");
    if (j.empty()) return {};
    int64_t lo = std::numeric_limits<int64_t>::max(), hi = std::numeric_limits<int64_t>::min();
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3) throw Error("ZFunc: each entry must be [x, re, im]");
        int64_t x = t[0].get<int64_t>();
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (hi - lo > (int64_t{1} << 28)) throw Error("ZFunc: support window too wide");
    std::vector<cplx> v(static_cast<size_t>(hi - lo + 1));
    for (const auto& t : j) v[t[0].get<int64_t>() - lo] += cplx(t[1].get<double>(), t[2].get<double>());
    return ZFunc(lo, std::move(v));
}

IntervalSet::IntervalSet(int64_t N) : N_(N), words_(static_cast<size_t>((std::max<int64_t>(N, 0) + 63) / 64), 0) {
    if (N < 0) throw Error("IntervalSet: N must be >= 0");
}

IntervalSet IntervalSet::from_members(int64_t N, std::span<const int64_t> members) {
    IntervalSet s(N);
    for (int64_t x : members) s.insert(x);
    return s;
}

void IntervalSet::insert(int64_t x) {
    if (x < 1 || x > N_) throw Error("IntervalSet: member " + std::to_string(x) + " outside [1, N]");
    uint64_t i = static_cast<uint64_t>(x - 1);
    words_[i >> 6] |= uint64_t{1} << (i & 63);
}

void IntervalSet::erase(int64_t x) {
    if (x < 1 || x > N_) return;
    uint64_t i = static_cast<uint64_t>(x - 1);
    words_[i >> 6] &= ~(uint64_t{1} << (i & 63));
}

int64_t IntervalSet::size() const {
    int64_t n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
}

std::vector<int64_t> IntervalSet::members() const {
    std::vector<int64_t> out;
    for (size_t k = 0; k < words_.size(); ++k) {
        uint64_t w = words_[k];
        while (w) {
            int b = std::countr_zero(w);
            out.push_back(static_cast<int64_t>(k * 64 + b + 1));
            w &= w - 1;
        }
    }
    return out;
}

ZFunc IntervalSet::indicator() const {
    if (N_ == 0) return {};
    std::vector<cplx> v(static_cast<size_t>(N_));
    for (int64_t x : members()) v[x - 1] = 1.0;
    return ZFunc(1, std::move(v)).tight();
}

json IntervalSet::to_json() const { return json{{"N", N_}, {"members", members()}}; }

IntervalSet IntervalSet::from_json(const json& j) {
    IntervalSet s(j.at("N").get<int64_t>());
    for (const auto& m : j.at("members")) s.insert(m.get<int64_t>());
    return s;
}

ZFunc fejer(double H) {
    if (!(H >= 1)) throw Error("fejer: H must be >= 1");
    auto L = static_cast<int64_t>(std::floor(H));
    return ZFunc::from_fn(-(L - 1), L - 1, [L](int64_t h) {
        return cplx((1.0 - static_cast<double>(std::llabs(h)) / L) / L, 0.0);
    });
}

FejerKernel fejer(double H, int d) {
    if (!(H >= 1)) throw Error("fejer: H must be >= 1");
    if (d < 1) throw Error("fejer: dimension must be >= 1");
    return FejerKernel{static_cast<int64_t>(std::floor(H)), d};
}

double FejerKernel::operator()(std::span<const int64_t> h) const {
    if (static_cast<int>(h.size()) != d) throw Error("FejerKernel: dimension mismatch");
    double v = 1;
    for (int64_t x : h) {
        double t = 1.0 - static_cast<double>(std::llabs(x)) / L;
        if (t <= 0) return 0;
        v *= t / L;
    }
    return v;
}

ZFunc nu_weight(int64_t N) {
    if (N < 1) throw Error("nu_weight: N must be >= 1");
    return ZFunc::from_fn(1, N, [N](int64_t d) { return cplx(std::sqrt(static_cast<double>(N) / d), 0.0); });
}

ZFunc nu_star(const ArithCtx& ctx) {
    std::vector<cplx> v(static_cast<size_t>(ctx.N));
    const double h = std::sqrt(static_cast<double>(ctx.N) * static_cast<double>(ctx.W));
    const int64_t K = ctx.M + 2;
    for (int64_t k = -K; k <= K; ++k) {
        int64_t p = ctx.P(k);
        if (p >= 1 && p <= ctx.N) v[p - 1] = h;
    }
    return ZFunc(1, std::move(v));
}

cplx dft_eval(const ZFunc& f, double theta) {
    KahanSum s;
    const auto& v = f.values();
    for (int64_t i = 0; i < f.length(); ++i) {
        if (v[i] == cplx{}) continue;
        s.add(v[i] * e_of(-frac_mul(theta, f.offset() + i)));
    }
    return s.value();
}

namespace {

std::vector<cplx> root_table(int64_t G) {
    std::vector<cplx> w(static_cast<size_t>(G));
    for (int64_t k = 0; k < G; ++k) {
        double t = static_cast<double>(k) / static_cast<double>(G);
        w[k] = {std::cos(kTwoPi * t), -std::sin(kTwoPi * t)};
    }
    return w;
}

cplx grid_point(const ZFunc& f, const std::vector<cplx>& w, int64_t G, int64_t j) {
    KahanSum s;
    const auto& v = f.values();
    int64_t base = f.offset() % G;
    if (base < 0) base += G;
    int64_t idx = static_cast<int64_t>((static_cast<__int128>(base) * j) % G);
    const int64_t step = j;
    for (int64_t i = 0; i < f.length(); ++i) {
        if (v[i] != cplx{}) s.add(v[i] * w[idx]);
        idx += step;
        if (idx >= G) idx -= G;
    }
    return s.value();
}

FourierSup refine(const ZFunc& f, int64_t G, const std::vector<cplx>& grid) {
    FourierSup out;
    int64_t best = 0;
    double bv = -1;
    for (int64_t j = 0; j < G; ++j) {
        double a = std::abs(grid[j]);
        if (a > bv) {
            bv = a;
            best = j;
        }
    }
    out.grid_max = bv;
    out.value = bv;
    out.theta_star = static_cast<double>(best) / G;
    const double c = static_cast<double>(best) / G, r = 1.0 / G;
    double a = c - r, b = c + r;
    const double g = 0.6180339887498949;
    auto F = [&](double t) { return std::abs(dft_eval(f, t)); };
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = F(x1), f2 = F(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = F(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = F(x1);
        }
    }
    double t = 0.5 * (a + b);
    double v = F(t);
    if (v > out.value) {
        out.value = v;
        out.theta_star = t - std::floor(t);
    }
    return out;
}

}  // namespace

std::vector<cplx> dft_grid(const ZFunc& f, int64_t G) {
    if (G < 1) throw Error("dft_grid: grid size must be >= 1");
    check_budget("dft_grid", static_cast<uint64_t>(G) * static_cast<uint64_t>(f.length() + 1));
    auto w = root_table(G);
    std::vector<cplx> out(static_cast<size_t>(G));
#pragma omp parallel for schedule(static)
    for (int64_t j = 0; j < G; ++j) out[j] = grid_point(f, w, G, j);
    return out;
}

FourierSup fourier_sup(const ZFunc& f0, int64_t grid_size) {
    ZFunc f = f0.tight();
    if (grid_size < 4 * std::max<int64_t>(f.length(), 1))
        throw Error("fourier_sup: grid size must be at least 4x the support length");
    if (f.length() == 0) return {};
    return refine(f, grid_size, dft_grid(f, grid_size));
}

FourierSup fourier_sup_serial(const ZFunc& f0, int64_t grid_size) {
    ZFunc f = f0.tight();
    if (grid_size < 4 * std::max<int64_t>(f.length(), 1))
        throw Error("fourier_sup: grid size must be at least 4x the support length");
    if (f.length() == 0) return {};
    std::vector<cplx> grid(static_cast<size_t>(grid_size));
    for (int64_t j = 0; j < grid_size; ++j) grid[j] = dft_eval(f, static_cast<double>(j) / grid_size);
    return refine(f, grid_size, grid);
}

ZFunc convolve(const ZFunc& f, const ZFunc& g) {
    if (f.length() == 0 || g.length() == 0) return {};
    check_budget("convolve", static_cast<uint64_t>(f.length()) * static_cast<uint64_t>(g.length()));
    const int64_t n = f.length() + g.length() - 1;
    std::vector<cplx> out(static_cast<size_t>(n));
    const auto& a = f.values();
    const auto& b = g.values();
#pragma omp parallel for schedule(static)
    for (int64_t k = 0; k < n; ++k) {
        int64_t i0 = std::max<int64_t>(0, k - (g.length() - 1)), i1 = std::min<int64_t>(k, f.length() - 1);
        cplx s{};
        for (int64_t i = i0; i <= i1; ++i) s += a[i] * b[k - i];
        out[k] = s;
    }
    return ZFunc(f.offset() + g.offset(), std::move(out));
}

SmoothingError model_weight_smoothing_error(int64_t N, double delta) {
    if (N < 1 || !(delta > 0 && delta < 1)) throw Error("smoothing error: need N >= 1 and delta in (0,1)");
    SmoothingError r;
    r.box_radius = static_cast<int64_t>(std::floor(std::pow(delta, 10) * static_cast<double>(N)));
    r.bound = delta * delta * static_cast<double>(N);
    const int64_t R = r.box_radius;
    ZFunc tau = ZFunc::indicator(-R, R).scaled(1.0 / static_cast<double>(2 * R + 1));
    auto lo = static_cast<int64_t>(std::ceil(std::pow(delta, 5) * static_cast<double>(N)));
    lo = std::max<int64_t>(lo, 1);
    ZFunc nu1 = ZFunc::from_fn(lo, N, [N](int64_t d) { return cplx(std::sqrt(static_cast<double>(N) / d), 0.0); });
    ZFunc sm = convolve(tau, nu1);
    ZFunc diff = sm - nu_weight(N);
    std::vector<double> terms;
    terms.reserve(diff.values().size());
    for (auto z : diff.values()) terms.push_back(std::abs(z));
    r.error = pairwise_sum(terms);
    return r;
}

}  // namespace proglab
