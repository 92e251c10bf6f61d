#pragma once

#include <cstdint>
#include <optional>

#include "proglab/arith.hpp"
#include "proglab/report.hpp"
#include "proglab/signal.hpp"

namespace proglab {

struct GaussSumVal {
    int64_t a = 0, b = 0, c = 1;
    cplx value;
};

// sum_{n < c} e((a n^2 + b n) / c). Phases are reduced mod c in integers,
// so the only rounding is in the root of unity and the summation.
GaussSumVal gauss_sum(int64_t a, int64_t b, int64_t c);

// Exhaustive check of the quadratic Gauss sum rules for all moduli <= c_max.
// The reduction rule is checked as G(a,b,c) = g G(a/g, b/g, c/g), g = gcd(a,c);
// the count of cases where the unscaled form G(a/g, b/g, c/g) differs is
// reported under data.
Report gauss_property_check(int64_t c_max);

// sum_{|x| <= T} e(theta P_r(x)) with P_r(x) = W^2 x^2 + (2Wr + 1) x.
// Each phase is frac(theta * P_r(x)) computed exactly from the binary
// expansion of theta, so the error is O(T eps) from summation alone.
cplx weyl_sum(int64_t W, int64_t r, double theta, int64_t T);
// Same sum at theta = q1/q2 + theta_star, with the rational part in integers.
cplx weyl_sum_rational(int64_t W, int64_t r, int64_t q1, int64_t q2, double theta_star, int64_t T);

// Integral of |weyl_sum|^order over [0,1), as the number of solution tuples.
// order 2, 4 or 6.
int64_t moment_exact(int64_t W, int64_t r, int64_t T, int order);

// Equally spaced quadrature of |weyl_sum|^order on `grid` points; requires
// grid >= 8 max|P_r|. The grid sums are one FFT of the value histogram.
double moment_quadrature(int64_t W, int64_t r, int64_t T, int order, int64_t grid);
// Direct evaluation at every grid point (reference; O(grid T)).
double moment_quadrature_direct(int64_t W, int64_t r, int64_t T, int order, int64_t grid);
int64_t min_moment_grid(int64_t W, int64_t r, int64_t T);

struct ArcLabel {
    bool major = false;
    int64_t q1 = 0, q2 = 1;
    double theta_star = 0;
    double epsilon = 0;

    json to_json() const;
};
ArcLabel arc_decompose(double theta, int64_t N, double epsilon = 0.1);

struct MajorArcModel {
    cplx main;
    cplx actual;
    double residual = 0;
};
// The witness must be a major-arc witness for N = T at level epsilon.
MajorArcModel major_arc_model(int64_t W, int64_t r, int64_t q1, int64_t q2, double theta_star, int64_t T,
                              double epsilon = 0.24);

// int_{-gamma}^{gamma} e(x^2) dx.
cplx fresnel(double gamma);

struct NuCompare {
    double value = 0;
    double theta_star = 0;
    double at_zero_direct = 0;
    double at_zero_grid = 0;
    double scale = 0;  // N / (W sqrt w)
    double ratio = 0;
};
// sup_theta |sum_d e(d theta) (nu*(Wd + k) - nu(Wd + k))|. `nu_star_override`
// replaces nu* (same window convention: a function on [1, N]).
NuCompare nu_compare_sup(const ArithCtx& ctx, int64_t k, int64_t grid,
                         const std::optional<ZFunc>& nu_star_override = std::nullopt);

}  // namespace proglab
