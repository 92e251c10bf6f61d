#pragma once

// Small generators for property tests. Every case derives from a fixed seed
// so failures replay exactly.

#include <gmpxx.h>

#include "proglab/common.hpp"
#include "proglab/signal.hpp"

namespace testgen {

using proglab::cplx;
using proglab::Rng;
using proglab::ZFunc;

inline mpq_class rational(Rng& rng, long num = 40, long den = 10) {
    mpq_class q(rng.uniform_int(-num, num), static_cast<unsigned long>(rng.uniform_int(1, den)));
    q.canonicalize();
    return q;
}

inline ZFunc disc_values(Rng& rng, int64_t lo, int64_t len) {
    std::vector<cplx> v(static_cast<size_t>(len));
    for (auto& z : v) z = std::polar(std::sqrt(rng.uniform()), proglab::kTwoPi * rng.uniform());
    return ZFunc(lo, std::move(v));
}

inline double rel(double a, double b) { return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)}); }

}  // namespace testgen
