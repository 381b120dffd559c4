#include "psearch/quicksort.hpp"

#include "psearch/rng.hpp"
#include "psearch/selection.hpp"

#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace psearch {

namespace {

struct Range {
    std::size_t begin, end;  // [begin, end) into the order array, size >= 2
    std::size_t pivot_pos;   // absolute position of the chosen pivot
};

struct Pending {
    std::size_t pos;  // absolute position of the compared item
    ComparisonForm form;
};

}  // namespace

RunResult run_quicksort(const ProblemDefinition& problem, std::uint64_t seed,
                        const QuicksortConfig& config) {
    const std::size_t n = problem.item_count();
    if (n == 0) {
        throw std::invalid_argument("run_quicksort: problem must have at least one item");
    }
    RunObserver* observer = config.observer;
    SearchInterval interval;
    RunStats stats;
    const OracleFn oracle = [&problem](const Rational& x) { return problem.oracle(x); };
    Rng pivot_rng(mix_seed(seed, 1));
    Rng select_rng(mix_seed(seed, 2));

    std::vector<ItemIndex> order(n);
    std::iota(order.begin(), order.end(), ItemIndex{0});

    std::vector<Range> level;
    if (n >= 2) level.push_back({0, n, 0});
    std::vector<Ordering> outcome(n, Ordering::FirstLow);  // vs the own range's pivot
    std::vector<Pending> pending;

    while (!level.empty()) {
        // Activate the level: pick pivots (left-to-right for determinism)
        // and build the element-vs-pivot comparisons. Constant forms resolve
        // on the spot; pivotal ones go to the pending pool, unswept.
        pending.clear();
        for (Range& r : level) {
            r.pivot_pos = r.begin + pivot_rng.below(r.end - r.begin);
            const ItemIndex pivot_item = order[r.pivot_pos];
            for (std::size_t pos = r.begin; pos < r.end; ++pos) {
                if (pos == r.pivot_pos) continue;
                ComparisonForm form = problem.compare(order[pos], pivot_item);
                if (form.is_constant()) {
                    outcome[pos] = form.order_for(RootSide::StarAbove);
                    ++stats.comparisons_resolved;
                } else {
                    pending.push_back({pos, std::move(form)});
                }
            }
        }

        const std::size_t level_pending = pending.size();
        const std::uint64_t level_calls_before = stats.oracle_calls;

        while (!pending.empty()) {
            ++stats.turns;
            const std::size_t rank = (pending.size() + 1) / 2;
            const std::size_t sel = detail::select_rank_index(
                pending.size(),
                [&](std::size_t i) -> const Rational& { return pending[i].form.root(); }, rank,
                select_rng);
            const Rational rho = pending[sel].form.root();

            SearchInterval before;
            if (observer) before = interval;
            const RootSide side = resolve_root(rho, interval, oracle, stats);
            if (observer) observer->on_interval(stats.median_requests, before, interval);

            outcome[pending[sel].pos] = apply_form(pending[sel].form, side);
            ++stats.comparisons_resolved;
            if (sel + 1 != pending.size()) pending[sel] = std::move(pending.back());
            pending.pop_back();

            // Sweep the decided side of the pick: every pending root on the
            // same side of rho resolves without a median request. Roots on
            // the other side wait for their own (possibly free) pick.
            std::size_t keep = 0;
            for (std::size_t i = 0; i < pending.size(); ++i) {
                const Rational& r = pending[i].form.root();
                std::optional<RootSide> implied;
                if (side == RootSide::StarAt) implied = interval.classify(r);
                else if (side == RootSide::StarAbove && r <= rho) implied = RootSide::StarAbove;
                else if (side == RootSide::StarBelow && r >= rho) implied = RootSide::StarBelow;
                if (implied) {
                    outcome[pending[i].pos] = apply_form(pending[i].form, *implied);
                    ++stats.comparisons_resolved;
                } else {
                    if (keep != i) pending[keep] = std::move(pending[i]);
                    ++keep;
                }
            }
            pending.resize(keep);
        }
        if (observer) observer->on_level(level_pending, stats.oracle_calls - level_calls_before);

        // Partition every range around its pivot (stable within the range)
        // and emit the next level left-to-right.
        std::vector<Range> next;
        std::vector<ItemIndex> lows, highs;
        for (const Range& r : level) {
            lows.clear();
            highs.clear();
            const ItemIndex pivot_item = order[r.pivot_pos];
            for (std::size_t pos = r.begin; pos < r.end; ++pos) {
                if (pos == r.pivot_pos) continue;
                (outcome[pos] == Ordering::FirstLow ? lows : highs).push_back(order[pos]);
            }
            std::size_t w = r.begin;
            for (ItemIndex it : lows) order[w++] = it;
            const std::size_t pivot_final = w;
            order[w++] = pivot_item;
            for (ItemIndex it : highs) order[w++] = it;
            if (pivot_final - r.begin >= 2) next.push_back({r.begin, pivot_final, 0});
            if (r.end - (pivot_final + 1) >= 2) next.push_back({pivot_final + 1, r.end, 0});
        }
        level = std::move(next);
    }

    RunResult result;
    result.order = std::move(order);
    result.lambda_star = finalize(problem, result.order, interval);
    result.stats = std::move(stats);
    return result;
}

}  // namespace psearch
