#include <benchmark/benchmark.h>

#include "psearch/boxsort.hpp"
#include "psearch/problems.hpp"
#include "psearch/quicksort.hpp"
#include "psearch/rng.hpp"

#include <algorithm>
#include <span>
#include <vector>

using namespace psearch;

static void BoxsortDriverMedianLines(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const auto p = generate_median_of_lines(n, 17);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto run = run_boxsort(p, seed++);
        benchmark::DoNotOptimize(run.lambda_star);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BoxsortDriverMedianLines)->Arg(101)->Arg(1001)->Arg(5001)->Complexity();

static void QuicksortDriverMedianLines(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const auto p = generate_median_of_lines(n, 17);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto run = run_quicksort(p, seed++);
        benchmark::DoNotOptimize(run.lambda_star);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(QuicksortDriverMedianLines)->Arg(101)->Arg(1001)->Arg(5001)->Complexity();

static void BoxsortPlainInts(benchmark::State& state) {
    Rng rng(3);
    std::vector<int> v(static_cast<std::size_t>(state.range(0)));
    for (auto& x : v) x = static_cast<int>(rng.below(1u << 30));
    const auto less = [](int a, int b) { return a < b; };
    for (auto _ : state) {
        auto out = boxsort_plain(std::span<const int>(v), less, 9);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BoxsortPlainInts)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->Complexity();

static void StdSortInts(benchmark::State& state) {
    Rng rng(3);
    std::vector<int> v(static_cast<std::size_t>(state.range(0)));
    for (auto& x : v) x = static_cast<int>(rng.below(1u << 30));
    for (auto _ : state) {
        auto copy = v;
        std::sort(copy.begin(), copy.end());
        benchmark::DoNotOptimize(copy.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(StdSortInts)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->Complexity();
