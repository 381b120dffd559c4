#include "psearch/engine.hpp"

#include "psearch/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace psearch;

namespace {

// A consistent oracle for a fixed lambda*, recording every probe so tests
// can replay the monotone-consistency pattern.
struct FixedOracle {
    Rational star;
    mutable std::vector<std::pair<Rational, OracleAnswer>> log;

    OracleAnswer operator()(const Rational& x) const {
        OracleAnswer a = x < star    ? OracleAnswer::Below
                         : x > star ? OracleAnswer::Above
                                    : OracleAnswer::At;
        log.emplace_back(x, a);
        return a;
    }
};

bool monotone_pattern(std::vector<std::pair<Rational, OracleAnswer>> log) {
    std::sort(log.begin(), log.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int stage = 0;  // 0 = Below, 1 = At, 2 = Above
    int at_count = 0;
    for (const auto& [x, a] : log) {
        const int s = a == OracleAnswer::Below ? 0 : a == OracleAnswer::At ? 1 : 2;
        if (s < stage) return false;
        stage = s;
        if (s == 1 && ++at_count > 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("resolve_root tightens and counts") {
    FixedOracle oracle{Rational(7), {}};
    SearchInterval interval;
    RunStats stats;
    const OracleFn fn = [&](const Rational& x) { return oracle(x); };

    SUBCASE("below answer tightens lo") {
        CHECK(resolve_root(Rational(5), interval, fn, stats) == RootSide::StarAbove);
        CHECK(*interval.lower() == Rational(5));
        CHECK(!interval.upper());
        CHECK(stats.oracle_calls == 1);
        CHECK(stats.median_requests == 1);
        CHECK(stats.free_resolutions == 0);

        // rho <= lo resolves free
        CHECK(resolve_root(Rational(3), interval, fn, stats) == RootSide::StarAbove);
        CHECK(stats.free_resolutions == 1);
        CHECK(stats.oracle_calls == 1);
        CHECK(stats.median_requests == 2);
    }

    SUBCASE("at answer records the hit") {
        resolve_root(Rational(5), interval, fn, stats);
        resolve_root(Rational(9), interval, fn, stats);
        CHECK(resolve_root(Rational(7), interval, fn, stats) == RootSide::StarAt);
        REQUIRE(interval.found());
        CHECK(*interval.found() == Rational(7));
        CHECK(stats.oracle_calls == 3);

        // with found set every further request is free, by direct comparison
        CHECK(resolve_root(Rational(8), interval, fn, stats) == RootSide::StarBelow);
        CHECK(resolve_root(Rational(7), interval, fn, stats) == RootSide::StarAt);
        CHECK(stats.oracle_calls == 3);
        CHECK(stats.free_resolutions == 2);
        CHECK(stats_identity_holds(stats));
    }

    SUBCASE("idempotent per root") {
        resolve_root(Rational(5), interval, fn, stats);
        const auto calls = stats.oracle_calls;
        CHECK(resolve_root(Rational(5), interval, fn, stats) == RootSide::StarAbove);
        CHECK(stats.oracle_calls == calls);
    }
}

TEST_CASE("interval never widens under random probes") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        FixedOracle oracle{Rational(static_cast<long long>(rng.below(2001)) - 1000, 7), {}};
        SearchInterval interval;
        RunStats stats;
        const OracleFn fn = [&](const Rational& x) { return oracle(x); };
        for (int probe = 0; probe < 40; ++probe) {
            const Rational rho(static_cast<long long>(rng.below(4001)) - 2000, 5);
            const auto lo_before = interval.lower();
            const auto hi_before = interval.upper();
            resolve_root(rho, interval, fn, stats);
            if (lo_before) CHECK(*interval.lower() >= *lo_before);
            if (hi_before) CHECK(*interval.upper() <= *hi_before);
            if (interval.lower() && interval.upper()) {
                CHECK(*interval.lower() < *interval.upper());
            }
        }
        CHECK(monotone_pattern(oracle.log));
        CHECK(stats_identity_holds(stats));

        // every oracle call probed a then-unknown point strictly inside
        CHECK(stats.oracle_calls <= 40);
    }
}

TEST_CASE("tighten rejects inconsistent answers") {
    SearchInterval interval;
    interval.tighten(Rational(5), OracleAnswer::Below);
    interval.tighten(Rational(9), OracleAnswer::Above);

    CHECK_THROWS_AS(interval.tighten(Rational(9), OracleAnswer::Below), OracleInconsistency);
    CHECK_THROWS_AS(interval.tighten(Rational(10), OracleAnswer::Below), OracleInconsistency);
    CHECK_THROWS_AS(interval.tighten(Rational(5), OracleAnswer::Above), OracleInconsistency);
    CHECK_THROWS_AS(interval.tighten(Rational(3), OracleAnswer::At), OracleInconsistency);

    // the message names the probe and the interval
    try {
        interval.tighten(Rational(11), OracleAnswer::Below);
        FAIL("expected OracleInconsistency");
    } catch (const OracleInconsistency& e) {
        const std::string what = e.what();
        CHECK(what.find("11") != std::string::npos);
        CHECK(what.find("(5, 9)") != std::string::npos);
    }

    interval.tighten(Rational(7), OracleAnswer::At);
    CHECK_THROWS_AS(interval.tighten(Rational(6), OracleAnswer::At), OracleInconsistency);
    CHECK_THROWS_AS(interval.tighten(Rational(8), OracleAnswer::Below), OracleInconsistency);
}

TEST_CASE("apply_form selects by side") {
    const auto constant = ComparisonForm::constant(Ordering::FirstLow);
    CHECK(apply_form(constant, RootSide::StarBelow) == Ordering::FirstLow);
    CHECK(apply_form(constant, RootSide::StarAt) == Ordering::FirstLow);
    CHECK(apply_form(constant, RootSide::StarAbove) == Ordering::FirstLow);

    const auto pivotal = ComparisonForm::pivotal(Rational(1), Ordering::FirstHigh,
                                                 Ordering::FirstLow, Ordering::FirstLow);
    CHECK(apply_form(pivotal, RootSide::StarAbove) == Ordering::FirstLow);
    CHECK(apply_form(pivotal, RootSide::StarBelow) == Ordering::FirstHigh);
    CHECK(apply_form(pivotal, RootSide::StarAt) == Ordering::FirstLow);
    CHECK(pivotal.root() == Rational(1));

    CHECK_THROWS_AS(ComparisonForm::pivotal(Rational(1), Ordering::FirstLow, Ordering::FirstLow,
                                            Ordering::FirstLow),
                    std::invalid_argument);
}

namespace {

// Minimal problem for finalize(): one item, recover returns a constant.
struct OneItemProblem final : ProblemDefinition {
    Rational answer;
    explicit OneItemProblem(Rational a) : answer(std::move(a)) {}
    std::size_t item_count() const override { return 1; }
    ComparisonForm compare(ItemIndex, ItemIndex) const override {
        return ComparisonForm::constant(Ordering::FirstLow);
    }
    OracleAnswer oracle(const Rational& x) const override {
        return x < answer ? OracleAnswer::Below : x > answer ? OracleAnswer::Above
                                                             : OracleAnswer::At;
    }
    Rational recover(std::span<const ItemIndex>, const SearchInterval& interval) const override {
        if (interval.found()) return *interval.found();
        return answer;
    }
};

}  // namespace

TEST_CASE("finalize checks containment") {
    const std::vector<ItemIndex> perm{0};

    SUBCASE("untouched interval accepts the sole candidate") {
        OneItemProblem p{Rational(2)};
        SearchInterval interval;
        CHECK(finalize(p, perm, interval) == Rational(2));
    }

    SUBCASE("found short-circuits recovery") {
        OneItemProblem p{Rational(-1)};
        SearchInterval interval;
        interval.tighten(Rational(7, 2), OracleAnswer::At);
        CHECK(finalize(p, perm, interval) == Rational(7, 2));
    }

    SUBCASE("value outside the interval is a contract violation") {
        OneItemProblem p{Rational(100)};
        SearchInterval interval;
        interval.tighten(Rational(0), OracleAnswer::Below);
        interval.tighten(Rational(1), OracleAnswer::Above);
        CHECK_THROWS_AS(finalize(p, perm, interval), ContractViolation);
    }
}
