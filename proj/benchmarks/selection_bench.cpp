#include <benchmark/benchmark.h>

#include "psearch/rng.hpp"
#include "psearch/selection.hpp"

#include <algorithm>
#include <vector>

using namespace psearch;

namespace {

std::vector<WeightedKey> make_entries(std::size_t n) {
    Rng rng(13);
    std::vector<WeightedKey> entries;
    entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        entries.push_back({Rational(static_cast<long long>(rng.below(4 * n)), 3),
                           (static_cast<double>(rng.below(1000)) + 1.0) / 1000.0});
    }
    return entries;
}

}  // namespace

static void WeightedMedian(benchmark::State& state) {
    const auto entries = make_entries(static_cast<std::size_t>(state.range(0)));
    Rng rng(1);
    for (auto _ : state) {
        auto r = weighted_median(entries, rng);
        benchmark::DoNotOptimize(r);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(WeightedMedian)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

static void WeightedMedianViaSort(benchmark::State& state) {
    const auto entries = make_entries(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto copy = entries;
        std::sort(copy.begin(), copy.end(),
                  [](const WeightedKey& a, const WeightedKey& b) { return a.key < b.key; });
        double total = 0.0;
        for (const auto& e : copy) total += e.weight;
        double acc = 0.0;
        Rational r;
        for (const auto& e : copy) {
            acc += e.weight;
            if (acc >= total / 2.0) {
                r = e.key;
                break;
            }
        }
        benchmark::DoNotOptimize(r);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(WeightedMedianViaSort)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

static void PlainMedian(benchmark::State& state) {
    Rng rng(5);
    std::vector<Rational> keys;
    const auto n = static_cast<std::size_t>(state.range(0));
    keys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        keys.emplace_back(static_cast<long long>(rng.below(8 * n)), 7);
    }
    Rng select(2);
    for (auto _ : state) {
        auto r = plain_median(keys, select);
        benchmark::DoNotOptimize(r);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(PlainMedian)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

BENCHMARK_MAIN();
