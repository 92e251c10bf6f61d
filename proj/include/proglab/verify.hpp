#pragma once

#include <cstdint>

#include "proglab/report.hpp"

namespace proglab {

// Property suites, one per module. Each is deterministic in `seed`.
Report verify_arith(uint64_t seed);
Report verify_signal(uint64_t seed);
Report verify_gowers(uint64_t seed);
Report verify_counting(uint64_t seed);
Report verify_expsum(uint64_t seed);
Report verify_nil(uint64_t seed);
Report verify_all(uint64_t seed);

// Parametrised pieces shared by the module suites and the acceptance runner.
Report identity_suite(int64_t range, int shift_trials, uint64_t seed);
// Every prime power <= limit with one fixed (a, b), plus random tuples.
Report hensel_sweep(int64_t limit, int random_tuples, uint64_t seed);
Report gauss_suite(int64_t c_max);
Report moment_suite(int instances, uint64_t seed);
Report fresnel_suite();
Report nu_compare_suite(int64_t N);
Report box_inequality_suite(int trials, uint64_t seed);
Report stashing_suite(int trials, int64_t N, uint64_t seed);
Report search_suite(int64_t n_max);
Report transfer_suite(int64_t N, double density, int seeds, uint64_t seed);
Report constraint_suite(int constraint_trials, int closure_trials, uint64_t seed);

// Frozen calibration constants (see README for how each was measured).
namespace calib {
// max over w in {2,3,5}, k in [W] of nu_compare_sup / (N / (W sqrt w)) at N = 2^12.
inline constexpr double kNuCompare = 7.4728;
// Weyl contrapositive, T in {1000, 2000, 4000}, W in {2, 6}, eight pilot seeds:
// every detection had q <= kWeylQ with ||q W^2 theta|| T^2 <= 33.18. Asserted
// with 2x headroom. At T = 500 noise alone crosses the detection threshold.
inline constexpr int64_t kWeylQ = 128;
inline constexpr double kWeylE = 66.36;
// max of moment_6 W^2 / T^4 over w in {2,3,5}, T in {50,100,200}, r in {1, W}.
// Dominated by W = 30, T = 50, where the diagonal T^3 term still dominates.
inline constexpr double kL6 = 1490.1009;
// Major-arc residual constant: residual <= kMajorArc sqrt(T).
inline constexpr double kMajorArc = 10.0;
// Pilot medians for the transference trend: w = 7 median <= kTransferRatio * w = 2 median.
inline constexpr double kTransferRatio = 0.5;
}  // namespace calib

}  // namespace proglab
