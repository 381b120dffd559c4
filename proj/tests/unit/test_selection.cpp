#include "psearch/selection.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace psearch;

namespace {

// Independent oracle: sort by key, scan prefix weights until half the total.
Rational weighted_median_oracle(std::vector<WeightedKey> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const WeightedKey& a, const WeightedKey& b) { return a.key < b.key; });
    double total = 0.0;
    for (const auto& e : entries) total += e.weight;
    double acc = 0.0;
    for (const auto& e : entries) {
        acc += e.weight;
        if (acc >= total / 2.0) return e.key;
    }
    return entries.back().key;
}

Rational plain_median_oracle(std::vector<Rational> keys) {
    std::sort(keys.begin(), keys.end());
    return keys[(keys.size() + 1) / 2 - 1];
}

std::vector<WeightedKey> random_entries(Rng& rng, std::size_t count, bool extreme_weights) {
    std::vector<WeightedKey> entries;
    entries.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // small key universe so duplicates are common
        const auto key = static_cast<long long>(rng.below(count / 2 + 3)) - 50;
        double w;
        if (extreme_weights) {
            // log-uniform across ~1e-300 .. 1
            const double exponent = -300.0 * static_cast<double>(rng.below(1000000)) / 999999.0;
            w = std::pow(10.0, exponent);
        } else {
            w = (static_cast<double>(rng.below(1000000)) + 1.0) / 1000000.0;
        }
        entries.push_back({Rational(key, 1 + static_cast<long long>(rng.below(3))), w});
    }
    return entries;
}

}  // namespace

TEST_CASE("weighted median basics") {
    Rng rng(1);
    SUBCASE("symmetric unweighted") {
        std::vector<WeightedKey> e{{Rational(1), 1}, {Rational(2), 1}, {Rational(3), 1}};
        CHECK(weighted_median(e, rng) == Rational(2));
    }
    SUBCASE("weight concentrated on the top key") {
        std::vector<WeightedKey> e{{Rational(1), 0.1}, {Rational(2), 0.1}, {Rational(3), 0.8}};
        CHECK(weighted_median(e, rng) == Rational(3));
    }
    SUBCASE("single entry") {
        std::vector<WeightedKey> e{{Rational(7), 5.0}};
        CHECK(weighted_median(e, rng) == Rational(7));
    }
    SUBCASE("lower median at exactly half the weight") {
        std::vector<WeightedKey> e{{Rational(1), 0.5}, {Rational(2), 0.25}, {Rational(3), 0.25}};
        CHECK(weighted_median(e, rng) == Rational(1));
    }
    SUBCASE("empty input is a usage error") {
        std::vector<WeightedKey> e;
        CHECK_THROWS_AS(weighted_median(e, rng), std::invalid_argument);
        std::vector<Rational> k;
        CHECK_THROWS_AS(plain_median(k, rng), std::invalid_argument);
    }
    SUBCASE("invalid weights rejected") {
        std::vector<WeightedKey> e{{Rational(1), 0.0}};
        CHECK_THROWS_AS(weighted_median(e, rng), std::invalid_argument);
        e = {{Rational(1), -1.0}};
        CHECK_THROWS_AS(weighted_median(e, rng), std::invalid_argument);
    }
}

TEST_CASE("plain median basics") {
    Rng rng(2);
    std::vector<Rational> k{Rational(3), Rational(1), Rational(2)};
    CHECK(plain_median(k, rng) == Rational(2));
    k = {Rational(4), Rational(1)};
    CHECK(plain_median(k, rng) == Rational(1));  // lower median of an even count
    k = {Rational(9)};
    CHECK(plain_median(k, rng) == Rational(9));
}

TEST_CASE("weighted median equals the sort-and-scan oracle") {
    Rng rng(3);
    for (int round = 0; round < 300; ++round) {
        const std::size_t count = 1 + rng.below(round % 3 == 0 ? 2000 : 60);
        auto entries = random_entries(rng, count, round % 4 == 0);
        CHECK(weighted_median(entries, rng) == weighted_median_oracle(entries));
    }
}

TEST_CASE("weighted median on one large input") {
    Rng rng(4);
    auto entries = random_entries(rng, 100000, false);
    CHECK(weighted_median(entries, rng) == weighted_median_oracle(entries));
}

TEST_CASE("plain median equals the sorting oracle") {
    Rng rng(5);
    for (int round = 0; round < 200; ++round) {
        const std::size_t count = 1 + rng.below(500);
        std::vector<Rational> keys;
        keys.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            keys.emplace_back(static_cast<long long>(rng.below(count + 5)), 1);
        }
        CHECK(plain_median(keys, rng) == plain_median_oracle(keys));
    }
    std::vector<Rational> big;
    big.reserve(10000);
    for (std::size_t i = 0; i < 10000; ++i) {
        big.emplace_back(static_cast<long long>(rng.below(40000)) - 20000, 3);
    }
    CHECK(plain_median(big, rng) == plain_median_oracle(big));
}

TEST_CASE("split property and membership") {
    Rng rng(6);
    for (int round = 0; round < 100; ++round) {
        auto entries = random_entries(rng, 1 + rng.below(200), false);
        const Rational med = weighted_median(entries, rng);

        double total = 0.0, le = 0.0, ge = 0.0;
        bool member = false;
        for (const auto& e : entries) {
            total += e.weight;
            if (e.key <= med) le += e.weight;
            if (e.key >= med) ge += e.weight;
            member = member || e.key == med;
        }
        CHECK(member);
        CHECK(le >= total / 2.0 * (1.0 - 1e-12));
        CHECK(ge >= total / 2.0 * (1.0 - 1e-12));
    }
}

TEST_CASE("plain median equals weighted median with unit weights") {
    Rng rng(7);
    for (int round = 0; round < 100; ++round) {
        const std::size_t count = 1 + rng.below(120);
        std::vector<Rational> keys;
        std::vector<WeightedKey> entries;
        for (std::size_t i = 0; i < count; ++i) {
            Rational k(static_cast<long long>(rng.below(50)), 1);
            keys.push_back(k);
            entries.push_back({k, 1.0});
        }
        CHECK(plain_median(keys, rng) == weighted_median(entries, rng));
    }
}

TEST_CASE("result independent of input order") {
    Rng rng(8);
    auto entries = random_entries(rng, 300, true);
    const Rational expected = weighted_median(entries, rng);
    for (int shuffle = 0; shuffle < 20; ++shuffle) {
        for (std::size_t i = entries.size(); i > 1; --i) {
            std::swap(entries[i - 1], entries[rng.below(i)]);
        }
        CHECK(weighted_median(entries, rng) == expected);
    }
}
