#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "proglab/arith.hpp"
#include "proglab/report.hpp"
#include "proglab/signal.hpp"

namespace proglab {

struct CountingReport {
    cplx lambda_w;
    cplx lambda_model;
    cplx lambda_diff;
    double NM = 0;
    double N2 = 0;
    double sqrtNW = 0;

    json to_json() const;
};

// sum_x sum_{|k| <= M} f1(x) f2(x + P(k)) f3(x + 2P(k)).
cplx lambda_w(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx);
cplx lambda_w_serial(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx);
// sum_x sum_{1 <= d <= N} f1(x) f2(x + d) f3(x + 2d) nu(d).
cplx lambda_model(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx);
cplx lambda_model_serial(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx);
CountingReport lambda_diff(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx);

// Cauchy-Schwarz stash of argument `which` into its dual function.
Report stashing_check(const ZFunc& f1, const ZFunc& f2, const ZFunc& f3, const ArithCtx& ctx, int which);

// sum_x E_{|y| <= Y} f1(x + P_k(y)) f2(x + 2 P_k(y)).
cplx sarkozy_pair_sum(const ZFunc& f1, const ZFunc& f2, int64_t W, int64_t k, int64_t Y);

// Pairs (x, y), y != +-1, with x, x + y^2 - 1, x + 2(y^2 - 1) all in S.
int64_t enumerate_configs(const IntervalSet& S);

enum class SearchMethod { exhaustive, branch_and_bound };

struct FreeSubset {
    int64_t size = 0;
    IntervalSet witness;
    uint64_t nodes = 0;
};

// Witness is the lexicographically smallest maximum config-free subset.
FreeSubset max_free_subset(int64_t N, SearchMethod method);

struct WTrick {
    int64_t j = 0;
    int64_t modulus = 0;  // 4W
    IntervalSet S_star;   // (S_j - j)/(4W) + 1, inside [1, N*]
    double density = 0;   // |S*| * 4W / N
    int64_t lifted_configs = 0;
    bool lifting_ok = true;
};
WTrick wtrick_subset(const IntervalSet& S, int w);

// Median |Lambda~| / N^2 over seeds for each w; Lambda^Model does not
// depend on w and is evaluated once per seed.
struct TransferRow {
    int w = 0;
    int64_t W = 0;
    double median = 0;
    std::vector<double> values;
};
std::vector<TransferRow> transfer_experiment(int64_t N, double density, int seeds, const std::vector<int>& ws,
                                             uint64_t seed);

IntervalSet random_subset(int64_t N, double density, Rng& rng);

}  // namespace proglab
