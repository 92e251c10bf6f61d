#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace proglab {

inline constexpr const char* kVersion = "0.3.1";

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an evaluation would exceed the work budget. `required` is the
// estimate for the call that was refused.
struct BudgetExceeded : Error {
    BudgetExceeded(const std::string& what, uint64_t required, uint64_t budget);
    uint64_t required;
    uint64_t budget;
};

// Work units are rough inner-loop iterations; kWorkPerMs converts a
// millisecond budget into units (calibrated on a single 3GHz core).
inline constexpr uint64_t kWorkPerMs = 200000;

uint64_t work_budget();
void set_work_budget(uint64_t units);
void set_work_budget_ms(uint64_t ms);
void check_budget(const char* op, uint64_t required);

// e(t) = exp(2 pi i t).
cplx e_of(double t);

// Fractional part of theta * n, computed without forming the rounded
// product. Exact up to the final conversion to double.
double frac_mul(double theta, int64_t n);

double torus_norm(double t);

// Compensated complex accumulator (Neumaier variant of Kahan).
struct KahanSum {
    double re = 0, im = 0, cre = 0, cim = 0;
    void add(cplx z);
    cplx value() const { return {re + cre, im + cim}; }
};

// Fixed-shape pairwise summation: result depends only on the input order.
double pairwise_sum(std::span<const double> xs);
cplx pairwise_sum(std::span<const cplx> xs);

// SplitMix64 stream. split(i) derives an independent child stream so that
// parallel trials get seeds that do not depend on scheduling.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) : state_(seed) {}
    uint64_t next();
    Rng split(uint64_t stream) const;
    double uniform();                          // [0,1)
    int64_t uniform_int(int64_t lo, int64_t hi);  // inclusive
    bool bernoulli(double p) { return uniform() < p; }
    double normal();

    using result_type = uint64_t;
    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return ~uint64_t{0}; }
    uint64_t operator()() { return next(); }

private:
    uint64_t state_;
};

int worker_count();
void set_worker_count(int n);

}  // namespace proglab
