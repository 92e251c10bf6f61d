#include "proglab/common.hpp"

#include <omp.h>

#include <atomic>
#include <cmath>
#include <cstdlib>

namespace proglab {

BudgetExceeded::BudgetExceeded(const std::string& what, uint64_t req, uint64_t bud)
    : Error(what + ": work budget exceeded (required " + std::to_string(req) +
            " units, budget " + std::to_string(bud) + " units; raise --budget-ms to at least " +
            std::to_string(req / kWorkPerMs + 1) + ")"),
      required(req),
      budget(bud) {}

namespace {

uint64_t initial_budget() {
    if (const char* env = std::getenv("PROGLAB_BUDGET_MS")) {
        char* end = nullptr;
        unsigned long long ms = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return static_cast<uint64_t>(ms) * kWorkPerMs;
    }
    return uint64_t{600000} * kWorkPerMs;
}

std::atomic<uint64_t>& budget_cell() {
    static std::atomic<uint64_t> cell{initial_budget()};
    return cell;
}

}  // namespace

uint64_t work_budget() { return budget_cell().load(); }
void set_work_budget(uint64_t units) { budget_cell().store(units); }
void set_work_budget_ms(uint64_t ms) { budget_cell().store(ms * kWorkPerMs); }

void check_budget(const char* op, uint64_t required) {
    uint64_t b = work_budget();
    if (required > b) throw BudgetExceeded(op, required, b);
}

cplx e_of(double t) {
    double f = t - std::floor(t);
    return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

double frac_mul(double theta, int64_t n) {
    if (theta == 0.0 || n == 0) return 0.0;
    int ex = 0;
    double fr = std::frexp(theta, &ex);  // theta = fr * 2^ex, |fr| in [0.5, 1)
    auto m = static_cast<int64_t>(std::ldexp(fr, 53));
    int e = ex - 53;
    __int128 prod = static_cast<__int128>(m) * n;
    if (e >= 0) return 0.0;
    int s = -e;
    double r;
    if (s >= 126) {
        r = std::ldexp(static_cast<double>(prod), e);
        r -= std::floor(r);
    } else {
        __int128 mask = (static_cast<__int128>(1) << s) - 1;
        __int128 low = prod & mask;
        r = std::ldexp(static_cast<double>(low), e);
    }
    if (r >= 1.0) r -= 1.0;
    return r;
}

double torus_norm(double t) {
    double f = t - std::floor(t);
    return std::min(f, 1.0 - f);
}

void KahanSum::add(cplx z) {
    auto step = [](double& s, double& c, double x) {
        double t = s + x;
        if (std::fabs(s) >= std::fabs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    };
    step(re, cre, z.real());
    step(im, cim, z.imag());
}

namespace {

template <class T>
T pairwise(const T* p, size_t n) {
    if (n <= 16) {
        T s{};
        for (size_t i = 0; i < n; ++i) s += p[i];
        return s;
    }
    size_t h = n / 2;
    return pairwise(p, h) + pairwise(p + h, n - h);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise(xs.data(), xs.size()); }
cplx pairwise_sum(std::span<const cplx> xs) { return pairwise(xs.data(), xs.size()); }

uint64_t Rng::next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng Rng::split(uint64_t stream) const {
    Rng child(state_ ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
    child.next();
    return Rng(child.next());
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
    if (hi < lo) throw Error("uniform_int: empty range");
    auto span = static_cast<uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<int64_t>(next());
    uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % span);
    uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return lo + static_cast<int64_t>(x % span);
}

double Rng::normal() {
    double u1 = uniform(), u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

int worker_count() { return omp_get_max_threads(); }
void set_worker_count(int n) {
    if (n >= 1) omp_set_num_threads(n);
}

}  // namespace proglab
