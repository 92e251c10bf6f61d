#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>

#include "proglab/counting.hpp"

namespace proglab {

namespace {

// Common differences of forbidden triples inside [1, N]: 1 (from y = 0) and y^2 - 1.
std::vector<int64_t> differences(int64_t N) {
    std::vector<int64_t> ds;
    if (N >= 3) ds.push_back(1);
    for (int64_t y = 2; 2 * (y * y - 1) <= N - 1; ++y) ds.push_back(y * y - 1);
    return ds;
}

// a precedes b in lexicographic order of sorted member lists.
bool lex_less(uint64_t a, uint64_t b) {
    uint64_t d = a ^ b;
    if (!d) return false;
    return (a >> std::countr_zero(d)) & 1;
}

FreeSubset exhaustive(int64_t N) {
    if (N > 24) throw Error("max_free_subset: exhaustive search requires N <= 24");
    const auto ds = differences(N);
    const uint64_t total = uint64_t{1} << N;
    check_budget("max_free_subset", total * (ds.size() + 1));
    const int nt = omp_get_max_threads();
    std::vector<int> best_size(nt, -1);
    std::vector<uint64_t> best_mask(nt, 0);
#pragma omp parallel
    {
        const int t = omp_get_thread_num();
#pragma omp for schedule(static)
        for (int64_t mi = 0; mi < static_cast<int64_t>(total); ++mi) {
            const auto m = static_cast<uint64_t>(mi);
            const int pc = std::popcount(m);
            if (pc < best_size[t]) continue;
            bool ok = true;
            for (int64_t d : ds)
                if (m & (m >> d) & (m >> (2 * d))) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            if (pc > best_size[t] || lex_less(m, best_mask[t])) {
                best_size[t] = pc;
                best_mask[t] = m;
            }
        }
    }
    int bs = -1;
    uint64_t bm = 0;
    for (int t = 0; t < nt; ++t)
        if (best_size[t] > bs || (best_size[t] == bs && lex_less(best_mask[t], bm))) {
            bs = best_size[t];
            bm = best_mask[t];
        }
    FreeSubset out;
    out.size = bs;
    out.witness = IntervalSet(N);
    for (int64_t i = 0; i < N; ++i)
        if ((bm >> i) & 1) out.witness.insert(i + 1);
    out.nodes = total;
    return out;
}

class BranchAndBound {
public:
    explicit BranchAndBound(int64_t N) : N_(N), partners_(static_cast<size_t>(N + 1)) {
        for (int64_t d : differences(N))
            for (int64_t x = 1; x + 2 * d <= N; ++x) {
                const int64_t t[3] = {x, x + d, x + 2 * d};
                for (int i = 0; i < 3; ++i) partners_[t[i]].push_back({t[(i + 1) % 3], t[(i + 2) % 3]});
            }
        order_.resize(static_cast<size_t>(N));
        for (int64_t v = 1; v <= N; ++v) order_[v - 1] = v;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int64_t a, int64_t b) { return partners_[a].size() > partners_[b].size(); });
    }

    enum : char { undecided = 0, in = 1, out = 2 };

    // Largest size reachable from `state` (decided entries fixed); -1 if none.
    // Stops early once `target` is reached.
    int64_t solve(std::vector<char> state, int64_t target, std::atomic<uint64_t>& nodes) const {
        int64_t best = -1;
        int64_t count = 0;
        for (int64_t v = 1; v <= N_; ++v) {
            if (state[v] == in) {
                if (!can_include(state, v)) return -1;
                ++count;
            }
        }
        rec(state, 0, count, target, best, nodes);
        return best;
    }

    const std::vector<int64_t>& order() const { return order_; }
    bool can_include(const std::vector<char>& s, int64_t v) const {
        for (auto [a, b] : partners_[v])
            if (s[a] == in && s[b] == in) return false;
        return true;
    }

private:
    int64_t bound(const std::vector<char>& s, int64_t count) const {
        int64_t run = 0, extra = 0;
        for (int64_t v = 1; v <= N_ + 1; ++v) {
            if (v <= N_ && s[v] == undecided) {
                ++run;
            } else {
                extra += run - run / 3;
                run = 0;
            }
        }
        return count + extra;
    }

    void rec(std::vector<char>& s, size_t pos, int64_t count, int64_t target, int64_t& best,
             std::atomic<uint64_t>& nodes) const {
        if (best >= target) return;
        uint64_t n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if ((n & 0xffff) == 0) check_budget("max_free_subset", n * static_cast<uint64_t>(N_));
        while (pos < order_.size() && s[order_[pos]] != undecided) ++pos;
        if (pos == order_.size()) {
            best = std::max(best, count);
            return;
        }
        if (bound(s, count) <= best) return;
        const int64_t v = order_[pos];
        if (can_include(s, v)) {
            s[v] = in;
            rec(s, pos + 1, count + 1, target, best, nodes);
            s[v] = undecided;
        }
        s[v] = out;
        rec(s, pos + 1, count, target, best, nodes);
        s[v] = undecided;
    }

    int64_t N_;
    std::vector<std::vector<std::pair<int64_t, int64_t>>> partners_;
    std::vector<int64_t> order_;
};

FreeSubset branch_and_bound(int64_t N) {
    if (N > 200) throw Error("max_free_subset: branch_and_bound requires N <= 200");
    BranchAndBound bb(N);
    std::atomic<uint64_t> nodes{0};
    const int64_t unbounded = N + 1;

    // Size: split on the first few vertices of the search order.
    const int split = static_cast<int>(std::min<int64_t>(N, 4));
    const int tasks = 1 << split;
    std::vector<int64_t> sizes(static_cast<size_t>(tasks), -1);
    std::atomic<bool> failed{false};
    std::string err;
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < tasks; ++t) {
        if (failed) continue;
        std::vector<char> s(static_cast<size_t>(N + 1), BranchAndBound::undecided);
        for (int i = 0; i < split; ++i) s[bb.order()[i]] = ((t >> i) & 1) ? BranchAndBound::in : BranchAndBound::out;
        try {
            sizes[t] = bb.solve(s, unbounded, nodes);
        } catch (const Error& e) {
#pragma omp critical
            err = e.what();
            failed = true;
        }
    }
    if (failed) throw Error(err);
    const int64_t size = *std::max_element(sizes.begin(), sizes.end());

    // Canonical witness: decide 1, 2, ..., N in turn, preferring inclusion.
    std::vector<char> s(static_cast<size_t>(N + 1), BranchAndBound::undecided);
    for (int64_t v = 1; v <= N; ++v) {
        s[v] = BranchAndBound::in;
        if (!bb.can_include(s, v) || bb.solve(s, size, nodes) < size) s[v] = BranchAndBound::out;
    }
    FreeSubset out;
    out.size = size;
    out.witness = IntervalSet(N);
    for (int64_t v = 1; v <= N; ++v)
        if (s[v] == BranchAndBound::in) out.witness.insert(v);
    out.nodes = nodes.load();
    if (out.witness.size() != size) throw Error("max_free_subset: witness reconstruction failed");
    return out;
}

}  // namespace

FreeSubset max_free_subset(int64_t N, SearchMethod method) {
    if (N < 0) throw Error("max_free_subset: N must be >= 0");
    if (N == 0) return FreeSubset{0, IntervalSet(0), 0};
    return method == SearchMethod::exhaustive ? exhaustive(N) : branch_and_bound(N);
}

}  // namespace proglab
