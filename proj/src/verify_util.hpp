#pragma once

#include <chrono>
#include <cmath>

#include "proglab/common.hpp"
#include "proglab/signal.hpp"

namespace proglab::detail {

// Uniform on the closed unit disc.
inline cplx random_unit_disc(Rng& rng) {
    const double r = std::sqrt(rng.uniform());
    return std::polar(r, kTwoPi * rng.uniform());
}

inline ZFunc random_bounded(Rng& rng, int64_t lo, int64_t len) {
    std::vector<cplx> v(static_cast<size_t>(len));
    for (auto& z : v) z = random_unit_disc(rng);
    return ZFunc(lo, std::move(v));
}

inline ZFunc random_signs(Rng& rng, int64_t lo, int64_t len) {
    std::vector<cplx> v(static_cast<size_t>(len));
    for (auto& z : v) z = rng.bernoulli(0.5) ? 1.0 : -1.0;
    return ZFunc(lo, std::move(v));
}

inline double rel_err(double a, double b) { return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)}); }
inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace proglab::detail
