#pragma once

#include "psearch/engine.hpp"
#include "psearch/observer.hpp"
#include "psearch/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace psearch {

struct BoxsortConfig {
    /// Subproblems below this size sort by brute force; defaults to
    /// max(ceil(log2 N), 4) with N the original item count.
    std::optional<std::uint32_t> base_threshold;

    RunObserver* observer = nullptr;

    /// Fault-injection hook for the invariant suite: every activation weight
    /// gets the weight-rule halving applied twice (an extra factor 1/2).
    bool fault_extra_halving = false;
};

std::uint32_t boxsort_base_threshold(std::size_t original_n);

/// floor(sqrt(n)), at least 1: the number of marked items.
std::uint32_t boxsort_mark_count(std::size_t sub_size);

/// Solves the problem by simulating boxsort as a comparison-dependence
/// network, scheduling resolution by weighted median. Deterministic for a
/// fixed seed. With high probability O(log n) oracle calls.
RunResult run_boxsort(const ProblemDefinition& problem, std::uint64_t seed,
                      const BoxsortConfig& config = {});

namespace detail {

/// All-pairs sort of a[lo, hi) by win counts, the same decode the driver
/// uses. Throws ContractViolation when the comparator is not a strict total
/// order (duplicate win counts).
template <class T, class Compare>
void allpairs_sort_range(std::vector<T>& a, std::size_t lo, std::size_t hi, Compare& cmp) {
    const std::size_t k = hi - lo;
    if (k <= 1) return;
    std::vector<std::uint32_t> wins(k, 0);
    for (std::size_t pa = 0; pa + 1 < k; ++pa) {
        for (std::size_t pb = pa + 1; pb < k; ++pb) {
            if (cmp(a[lo + pa], a[lo + pb])) ++wins[pb];
            else ++wins[pa];
        }
    }
    std::vector<T> out(k);
    std::vector<bool> placed(k, false);
    for (std::size_t p = 0; p < k; ++p) {
        if (wins[p] >= k || placed[wins[p]]) {
            throw ContractViolation("all-pairs sort: duplicate win counts, comparator is not a "
                                    "strict total order");
        }
        placed[wins[p]] = true;
        out[wins[p]] = std::move(a[lo + p]);
    }
    for (std::size_t p = 0; p < k; ++p) a[lo + p] = std::move(out[p]);
}

template <class T, class Compare>
void boxsort_plain_rec(std::vector<T>& a, std::size_t lo, std::size_t hi,
                       std::uint32_t threshold, Compare& cmp, Rng& rng) {
    const std::size_t n = hi - lo;
    if (n <= 1) return;
    if (n < threshold) {
        allpairs_sort_range(a, lo, hi, cmp);
        return;
    }
    const std::uint32_t m = boxsort_mark_count(n);

    // Mark m random positions (partial in-place shuffle of the offsets).
    std::vector<std::size_t> offsets(n);
    for (std::size_t i = 0; i < n; ++i) offsets[i] = i;
    for (std::uint32_t k = 0; k < m; ++k) {
        std::swap(offsets[k], offsets[k + rng.below(n - k)]);
    }
    std::vector<T> marked;
    marked.reserve(m);
    for (std::uint32_t k = 0; k < m; ++k) marked.push_back(a[lo + offsets[k]]);
    allpairs_sort_range(marked, 0, m, cmp);

    // Route every unmarked item through the implicit balanced tree of pivots.
    std::vector<bool> is_marked(n, false);
    for (std::uint32_t k = 0; k < m; ++k) is_marked[offsets[k]] = true;
    std::vector<std::vector<T>> boxes(m + 1);
    for (std::size_t off = 0; off < n; ++off) {
        if (is_marked[off]) continue;
        std::size_t tlo = 0, thi = m;
        while (tlo < thi) {
            const std::size_t mid = (tlo + thi) / 2;
            if (cmp(a[lo + off], marked[mid])) thi = mid;
            else tlo = mid + 1;
        }
        boxes[tlo].push_back(std::move(a[lo + off]));
    }

    // Rebuild the segment (box 0, pivot 0, box 1, ..., pivot m-1, box m),
    // then recurse into the boxes.
    std::vector<std::pair<std::size_t, std::size_t>> child_ranges;
    std::size_t w = lo;
    for (std::uint32_t k = 0; k <= m; ++k) {
        const std::size_t begin = w;
        for (auto& x : boxes[k]) a[w++] = std::move(x);
        child_ranges.emplace_back(begin, w);
        if (k < m) a[w++] = std::move(marked[k]);
    }
    for (const auto& [b, e] : child_ranges) {
        boxsort_plain_rec(a, b, e, threshold, cmp, rng);
    }
}

}  // namespace detail

/// The lambda-free sorting skeleton: identical control flow with every
/// comparison resolved immediately by the comparator (a strict total order).
template <class T, class Compare>
std::vector<T> boxsort_plain(std::span<const T> items, Compare cmp, std::uint64_t seed) {
    std::vector<T> a(items.begin(), items.end());
    if (a.size() > 1) {
        Rng rng(mix_seed(seed, 1));  // same stream the driver uses for marking
        detail::boxsort_plain_rec(a, 0, a.size(), boxsort_base_threshold(a.size()), cmp, rng);
    }
    return a;
}

}  // namespace psearch
