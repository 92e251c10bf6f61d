#pragma once

#include <cstdint>
#include <vector>

#include "proglab/arith.hpp"
#include "proglab/report.hpp"
#include "proglab/signal.hpp"

namespace proglab {

using ShiftSet = std::vector<int64_t>;

struct BoxSpec {
    std::vector<ShiftSet> sets;

    int dims() const { return static_cast<int>(sets.size()); }
    bool uniform() const;
    void validate() const;
};

ShiftSet interval_set(int64_t L);  // [L] = {1, ..., L}
ShiftSet scale_set(const ShiftSet& Q, int64_t t);

ZFunc delta_h(const ZFunc& f, int64_t h);                         // f(x) conj f(x+h)
ZFunc delta_pair(const ZFunc& f, int64_t h, int64_t h_prime);     // conj f(x+h) f(x+h')

// Work estimate used for budgeting box_norm_pow.
uint64_t box_work(const ZFunc& f, const BoxSpec& spec);

// The 2^d-th power of the box norm (unnormalised in x).
double box_norm_pow(const ZFunc& f, const BoxSpec& spec);
// Literal expansion over all 2^d vertices, for small inputs. Tiny negative
// results are clamped to 0 and `clamped` is set.
double box_norm_pow_reference(const ZFunc& f, const BoxSpec& spec, bool* clamped = nullptr);
double uk_norm_pow(const ZFunc& f, const ShiftSet& Q, int k);
// k = 0 convention: sum_x f(x) (real part).
double box_norm(const ZFunc& f, const BoxSpec& spec);  // root-taking wrapper

ZFunc dual1(const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx);
ZFunc dual2(const ZFunc& f1, const ZFunc& f3, const ArithCtx& ctx);
ZFunc dual3(const ZFunc& f1, const ZFunc& f2, const ArithCtx& ctx);

// Single Cauchy-Schwarz step of the dual-difference interchange for l = 1.
// f_by_y[i] is x -> f(x, y_i). Supports must lie in [-C N, C N] and T1 T2 <= C N.
Report interchange_cs_check(const std::vector<ZFunc>& f_by_y, int64_t T1, int64_t T2, int k, int ell,
                            int64_t N, double C = 1.0);

// sum_x E_{h,h' in [L]} conj f(x+h) f(x+h') against the Fourier side
// int |f^|^2 (sin(L pi t) / (L sin(pi t)))^2 dt, by exact grid quadrature.
struct FejerIdentity {
    double direct = 0;
    double fourier = 0;
};
FejerIdentity fejer_square_identity(const ZFunc& f, int64_t L);

// |sin(kx)| <= k |sin x| on an evenly spaced grid over [0, pi]; returns the
// largest violation (<= 0 means it holds).
double sine_multiple_max_violation(int k_max, int grid_points);

// Cauchy-Schwarz lower bound behind the converse to the U^2 inverse theorem:
// U^2 power over [L] >= (sum_x |E_h g(x+h)|^2)^2 / X with g = e(beta x) f.
struct U2Converse {
    double u2 = 0;
    double lower = 0;
    double beta = 0;
};
U2Converse u2_converse_bound(const ZFunc& f, int64_t L);

}  // namespace proglab
