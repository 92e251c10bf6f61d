// Acceptance runner: one PASS/FAIL line per criterion. Thresholds and time
// limits are pinned here, not read from the library.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "proglab/counting.hpp"
#include "proglab/expsum.hpp"
#include "proglab/nil.hpp"
#include "proglab/verify.hpp"

using namespace proglab;

namespace {

constexpr uint64_t kSeed = 20240607;

struct Verdict {
    bool ok = false;
    std::string detail;
};

std::string fmt(double x) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", x);
    return b;
}

// Short summary of a report: failed check names, or the number that passed.
Verdict from_report(const Report& r) {
    Verdict v{r.passed(), ""};
    if (v.ok) {
        v.detail = std::to_string(r.checks.size()) + " checks";
        return v;
    }
    for (const auto& c : r.checks)
        if (!c.passed) v.detail += (v.detail.empty() ? "failed: " : ", ") + c.name + "=" + c.measured.dump();
    return v;
}

const Check* find(const Report& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

// Largest config-free subset by filtering every subset of [N] against the
// forbidden triples, written independently of the search module.
std::vector<int> oracle_max_free(int n_max) {
    std::vector<int> out;
    for (int N = 1; N <= n_max; ++N) {
        std::vector<uint32_t> triples;
        std::vector<int> ds = {1};  // y = 0 gives difference -1, the same triples as +1
        for (int y = 2; 2 * (y * y - 1) <= N - 1; ++y) ds.push_back(y * y - 1);
        for (int d : ds)
            for (int x = 1; x + 2 * d <= N; ++x)
                triples.push_back((1u << (x - 1)) | (1u << (x + d - 1)) | (1u << (x + 2 * d - 1)));
        int best = 0;
        for (uint32_t m = 0; m < (1u << N); ++m) {
            const int c = __builtin_popcount(m);
            if (c <= best) continue;
            bool free = true;
            for (uint32_t t : triples)
                if ((m & t) == t) {
                    free = false;
                    break;
                }
            if (free) best = c;
        }
        out.push_back(best);
    }
    return out;
}

struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Verdict()> run;
};

std::vector<Criterion> criteria() {
    return {
        {1, "exact identity suite", 5,
         [] { return from_report(identity_suite(20, 1000, kSeed)); }},
        {2, "Gauss sums to c_max = 200", 60,
         [] { return from_report(gauss_suite(200)); }},
        {3, "moment oracle, 50 random instances", 120,
         [] {
             auto r = moment_suite(50, kSeed);
             Verdict v = from_report(r);
             if (auto* c = find(r, "quadrature_matches_exact")) v.detail += "; max rel err " + c->measured.dump();
             return v;
         }},
        {4, "box-norm inequalities, 1000 trials", 60,
         [] { return from_report(box_inequality_suite(1000, kSeed)); }},
        {5, "stashing chain, 1000 triples at N = 128", 60,
         [] {
             auto r = stashing_suite(1000, 128, kSeed);
             Verdict v = from_report(r);
             v.detail += "; max |L|^2/rhs " + fmt(r.data["max_lhs_over_rhs"].get<double>());
             return v;
         }},
        {6, "orbit constraint, G^tau closure, flag spans", 30,
         [] { return from_report(constraint_suite(1000, 10000, kSeed)); }},
        {7, "extremal search N = 1..20 against subset filter", 120,
         [] {
             auto r = search_suite(20);
             const auto oracle = oracle_max_free(20);
             const auto& sizes = r.data["sizes"];
             int mismatch = 0;
             for (int i = 0; i < 20; ++i) mismatch += sizes[i].get<int>() != oracle[i];
             Verdict v = from_report(r);
             v.ok = v.ok && mismatch == 0 && oracle[2] == 2 && oracle[6] == 4;
             v.detail += "; oracle mismatches " + std::to_string(mismatch) + ", N=3 -> " + std::to_string(oracle[2]) +
                         ", N=7 -> " + std::to_string(oracle[6]) + ", N=20 -> " + std::to_string(oracle[19]);
             return v;
         }},
        {8, "Hensel bijectivity, p^k <= 1e5, 1000 random pairs", 30,
         [] { return from_report(hensel_sweep(100000, 1000, kSeed)); }},
        {9, "transference trend at N = 2^14 (calibrated)", 600,
         [] {
             auto r = transfer_suite(16384, 0.3, 20, kSeed);
             Verdict v = from_report(r);
             v.detail = "medians";
             for (const auto& row : r.data["rows"])
                 v.detail += " w" + std::to_string(row["w"].get<int>()) + "=" + fmt(row["median"].get<double>());
             if (auto* c = find(r, "w7_over_w2_median"))
                 v.detail += "; w7/w2 " + fmt(c->measured.get<double>()) + " (need <= 0.5)";
             if (auto* c = find(r, "medians_non_increasing_in_w"))
                 v.detail += c->passed ? "; non-increasing" : "; not non-increasing";
             return v;
         }},
        {10, "nu*/nu comparison at N = 2^14", 300,
         [] {
             auto r = nu_compare_suite(16384);
             Verdict v = from_report(r);
             if (auto* c = find(r, "ratio_within_2x_calibration"))
                 v.detail += "; max ratio " + fmt(c->measured.get<double>()) + " <= " + fmt(c->threshold.get<double>());
             return v;
         }},
        {11, "Fresnel sup ratio <= 2.5", 30,
         [] {
             auto r = fresnel_suite();
             Verdict v = from_report(r);
             if (auto* c = find(r, "sup_ratio")) v.detail += "; sup " + fmt(c->measured.get<double>());
             return v;
         }},
    };
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }
    int failed = 0, ran = 0;
    for (const auto& c : criteria()) {
        if (only && c.id != only) continue;
        ++ran;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = s <= c.limit_s;
        const bool ok = v.ok && in_time;
        failed += !ok;
        std::printf("C%-2d %s  %s | %s | %.1fs (limit %.0fs%s)\n", c.id, ok ? "PASS" : "FAIL", c.title,
                    v.detail.c_str(), s, c.limit_s, in_time ? "" : ", exceeded");
    }
    if (ran == 0) {
        std::fprintf(stderr, "no such criterion\n");
        return 2;
    }
    return failed ? 1 : 0;
}
