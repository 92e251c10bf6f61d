#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "proglab/arith.hpp"
#include "proglab/common.hpp"
#include "proglab/report.hpp"

namespace proglab {

// Finitely supported f: Z -> C, dense over [offset, offset + length).
class ZFunc {
public:
    ZFunc() = default;
    ZFunc(int64_t offset, std::vector<cplx> values) : offset_(offset), v_(std::move(values)) {}

    static ZFunc delta(int64_t at, cplx value = 1.0);
    static ZFunc indicator(int64_t lo, int64_t hi);  // 1 on [lo, hi]
    static ZFunc from_fn(int64_t lo, int64_t hi, const std::function<cplx(int64_t)>& fn);

    cplx operator()(int64_t x) const {
        int64_t i = x - offset_;
        return (i < 0 || i >= length()) ? cplx{} : v_[static_cast<size_t>(i)];
    }
    int64_t offset() const { return offset_; }
    int64_t length() const { return static_cast<int64_t>(v_.size()); }
    int64_t end() const { return offset_ + length(); }  // one past the window
    const std::vector<cplx>& values() const { return v_; }
    std::vector<cplx>& values() { return v_; }

    bool is_zero() const;
    // Tight support window [lo, hi]; lo > hi when f is identically zero.
    std::pair<int64_t, int64_t> support() const;
    int64_t support_size() const;  // number of nonzero points
    ZFunc tight() const;
    double sup_abs() const;

    ZFunc shifted(int64_t t) const;  // x -> f(x - t)
    ZFunc conj() const;
    ZFunc scaled(cplx c) const;
    ZFunc modulated(double beta) const;  // x -> e(beta x) f(x)
    ZFunc operator*(const ZFunc& g) const;  // pointwise
    ZFunc operator+(const ZFunc& g) const;
    ZFunc operator-(const ZFunc& g) const;

    json to_json() const;  // [[x, re, im], ...] over nonzero points
    static ZFunc from_json(const json& j);

private:
    int64_t offset_ = 0;
    std::vector<cplx> v_;
};

// Subset of [1, N].
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(int64_t N);
    static IntervalSet from_members(int64_t N, std::span<const int64_t> members);

    int64_t N() const { return N_; }
    bool contains(int64_t x) const {
        if (x < 1 || x > N_) return false;
        uint64_t i = static_cast<uint64_t>(x - 1);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void insert(int64_t x);
    void erase(int64_t x);
    int64_t size() const;
    std::vector<int64_t> members() const;
    ZFunc indicator() const;
    // Bit i of word k is member 64k + i + 1.
    const std::vector<uint64_t>& words() const { return words_; }

    json to_json() const;
    static IntervalSet from_json(const json& j);
    bool operator==(const IntervalSet&) const = default;

private:
    int64_t N_ = 0;
    std::vector<uint64_t> words_;
};

// Normalised Fejer kernel (1/L)(1 - |h|/L)_+ with L = floor(H).
ZFunc fejer(double H);

// Product of one-dimensional kernels on Z^d.
struct FejerKernel {
    int64_t L;
    int d;
    double operator()(std::span<const int64_t> h) const;
};
FejerKernel fejer(double H, int d);

ZFunc nu_weight(int64_t N);
ZFunc nu_star(const ArithCtx& ctx);

// sum_x f(x) e(-x theta).
cplx dft_eval(const ZFunc& f, double theta);
// f^ at theta = j / G for j = 0..G-1.
std::vector<cplx> dft_grid(const ZFunc& f, int64_t G);

struct FourierSup {
    double theta_star = 0;
    double value = 0;
    double grid_max = 0;
};
FourierSup fourier_sup(const ZFunc& f, int64_t grid_size);
FourierSup fourier_sup_serial(const ZFunc& f, int64_t grid_size);

ZFunc convolve(const ZFunc& f, const ZFunc& g);

// Sum_d |(tau * nu1)(d) - nu(d)| where nu1 is nu cut to [delta^5 N, N] and
// tau is the mass-one box on |d| <= floor(delta^10 N).
struct SmoothingError {
    double error = 0;
    double bound = 0;  // delta^2 N
    int64_t box_radius = 0;
};
SmoothingError model_weight_smoothing_error(int64_t N, double delta);

}  // namespace proglab
