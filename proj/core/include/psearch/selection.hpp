#pragma once

#include "psearch/rational.hpp"
#include "psearch/rng.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace psearch {

struct WeightedKey {
    Rational key;
    double weight;  // > 0 and finite
};

namespace detail {

/// Randomized three-way-partition selection over indices [0, count).
/// Returns the index of some entry holding the lower weighted median key:
/// the smallest key k such that the weight of entries with key <= k reaches
/// half the total weight. Expected linear time; the result value depends
/// only on the (key, weight) multiset, never on input order.
template <class KeyFn, class WeightFn>
std::size_t weighted_median_index(std::size_t count, KeyFn&& key, WeightFn&& weight, Rng& rng) {
    double total = 0.0;
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) {
        idx[i] = i;
        total += weight(i);
    }
    const double need = total / 2.0;
    double acc = 0.0;  // invariant: acc < need

    std::vector<std::size_t> less, equal, greater;
    while (true) {
        if (idx.size() == 1) return idx[0];
        const auto& pivot = key(idx[rng.below(idx.size())]);
        less.clear();
        equal.clear();
        greater.clear();
        double w_less = 0.0, w_equal = 0.0;
        for (std::size_t i : idx) {
            const auto& k = key(i);
            if (k < pivot) {
                less.push_back(i);
                w_less += weight(i);
            } else if (pivot < k) {
                greater.push_back(i);
            } else {
                equal.push_back(i);
                w_equal += weight(i);
            }
        }
        // acc must accumulate the exact doubles the guards compared, and a
        // branch may only be entered with a nonempty partition: a subset
        // weighing exactly half the total (equal weights make this common)
        // rounds either way depending on summation order, and the boundary
        // then belongs to the pivot key.
        const double up_to_less = acc + w_less;
        const double up_to_equal = up_to_less + w_equal;
        if (up_to_less >= need) {
            if (less.empty()) return equal.front();
            idx.swap(less);
        } else if (up_to_equal >= need) {
            return equal.front();
        } else {
            if (greater.empty()) return equal.front();
            acc = up_to_equal;
            idx.swap(greater);
        }
    }
}

/// Selects the rank-th smallest key (1-based) among [0, count).
template <class KeyFn>
std::size_t select_rank_index(std::size_t count, KeyFn&& key, std::size_t rank, Rng& rng) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;

    std::vector<std::size_t> less, equal, greater;
    while (true) {
        if (idx.size() == 1) return idx[0];
        const auto& pivot = key(idx[rng.below(idx.size())]);
        less.clear();
        equal.clear();
        greater.clear();
        for (std::size_t i : idx) {
            const auto& k = key(i);
            if (k < pivot) less.push_back(i);
            else if (pivot < k) greater.push_back(i);
            else equal.push_back(i);
        }
        if (rank <= less.size()) {
            idx.swap(less);
        } else if (rank <= less.size() + equal.size()) {
            return equal.front();
        } else {
            rank -= less.size() + equal.size();
            idx.swap(greater);
        }
    }
}

}  // namespace detail

/// Lower weighted median of a nonempty entry list (weights positive, finite).
/// Expected linear time via randomized partition selection; deterministic
/// result for a fixed multiset. Throws std::invalid_argument on empty input
/// or an invalid weight.
Rational weighted_median(std::span<const WeightedKey> entries, Rng& rng);

/// Lower (ceil(k/2)-th smallest) median of a nonempty key list.
Rational plain_median(std::span<const Rational> keys, Rng& rng);

}  // namespace psearch
