#include "psearch/boxsort.hpp"

#include "psearch/selection.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <utility>

namespace psearch {

namespace {

std::uint32_t floor_log2(std::size_t n) {
    std::uint32_t r = 0;
    while (n > 1) {
        n >>= 1;
        ++r;
    }
    return r;
}

std::uint32_t ceil_log2(std::size_t n) {
    std::uint32_t r = 0;
    while ((std::size_t{1} << r) < n) ++r;
    return r;
}

// x^4.5 with exactly-rounded IEEE steps only (no std::pow), so weights are
// bit-identical across platforms.
double pow_4_5(double x) {
    return x * x * x * x * std::sqrt(x);
}

enum class Phase { MarkSort, Routing, BaseCase, Done };

struct Sub {
    std::vector<ItemIndex> items;
    double base_weight = 1.0;
    std::uint32_t entry_depth = 0;
    Phase phase = Phase::Done;

    // All-pairs phase (mark-sort or base case).
    std::vector<ItemIndex> participants;
    std::vector<std::uint32_t> wins;
    std::uint64_t pending = 0;

    // Routing phase and final assembly.
    std::vector<ItemIndex> sorted_marked;
    std::vector<std::vector<ItemIndex>> box_items;
    std::vector<std::unique_ptr<Sub>> boxes;

    std::vector<ItemIndex> base_order;  // final order when no recursion happened
};

struct Comp {
    enum class Kind : std::uint8_t { Pair, Routing };

    Kind kind;
    Sub* sub;
    std::uint32_t a = 0, b = 0;  // Pair: participant positions; Routing: pivot range [a, b)
    ItemIndex item = 0;          // Routing: the routed item
    ComparisonForm form;
    double weight;
    std::uint32_t depth;
};

class Driver {
  public:
    Driver(const ProblemDefinition& problem, std::uint64_t seed, const BoxsortConfig& config)
        : problem_(problem),
          config_(config),
          observer_(config.observer),
          mark_rng_(mix_seed(seed, 1)),
          select_rng_(mix_seed(seed, 2)),
          oracle_([&problem](const Rational& x) { return problem.oracle(x); }) {}

    RunResult run() {
        const std::size_t n = problem_.item_count();
        if (n == 0) {
            throw std::invalid_argument("run_boxsort: problem must have at least one item");
        }
        threshold_ = config_.base_threshold.value_or(boxsort_base_threshold(n));

        root_ = std::make_unique<Sub>();
        root_->items.resize(n);
        for (std::size_t i = 0; i < n; ++i) root_->items[i] = static_cast<ItemIndex>(i);
        root_->base_weight = 1.0;
        root_->entry_depth = 0;

        // The seed batch has no triggering comparison; no weight-rule event.
        frames_.push_back(Frame{0.0, 0.0, 0, false});
        start_subproblem(root_.get());
        frames_.pop_back();
        stats_.active_weight_trace.emplace_back(0, active_weight_);

        while (!active_.empty()) turn();

        RunResult result;
        result.order.reserve(n);
        collect(root_.get(), result.order);
        if (result.order.size() != n) {
            throw EngineError("boxsort: internal error, incomplete final order");
        }
        result.lambda_star = finalize(problem_, result.order, interval_);
        result.stats = std::move(stats_);
        return result;
    }

  private:
    struct Frame {
        double trigger;
        double total;
        std::size_t count;
        bool has_trigger;
    };

    double scaled(double weight) const {
        return config_.fault_extra_halving ? weight * 0.5 : weight;
    }

    void start_subproblem(Sub* s) {
        const std::size_t n = s->items.size();
        if (n <= 1) {
            s->phase = Phase::Done;
            s->base_order = s->items;
            return;
        }
        if (n < threshold_) {
            s->phase = Phase::BaseCase;
            s->participants = s->items;
            s->wins.assign(n, 0);
            s->pending = n * (n - 1) / 2;
            activate_all_pairs(s);
            return;
        }
        s->phase = Phase::MarkSort;
        const std::uint32_t m = boxsort_mark_count(n);

        // Mark m distinct items by a partial in-place shuffle.
        std::vector<ItemIndex> pool = s->items;
        for (std::uint32_t k = 0; k < m; ++k) {
            std::swap(pool[k], pool[k + mark_rng_.below(n - k)]);
        }
        s->participants.assign(pool.begin(), pool.begin() + m);
        s->wins.assign(m, 0);
        s->pending = static_cast<std::uint64_t>(m) * (m - 1) / 2;
        if (s->pending == 0) {
            on_pairs_complete(s);  // m == 1: nothing to sort, straight to routing
            return;
        }
        activate_all_pairs(s);
    }

    void activate_all_pairs(Sub* s) {
        const std::size_t k = s->participants.size();
        for (std::uint32_t pa = 0; pa + 1 < k; ++pa) {
            for (std::uint32_t pb = pa + 1; pb < k; ++pb) {
                Comp c;
                c.kind = Comp::Kind::Pair;
                c.sub = s;
                c.a = pa;
                c.b = pb;
                c.form = problem_.compare(s->participants[pa], s->participants[pb]);
                c.weight = scaled(s->base_weight);
                c.depth = s->entry_depth;
                activate(std::move(c));
            }
        }
    }

    void activate(Comp c) {
        Frame& frame = frames_.back();
        frame.total += c.weight;
        frame.count += 1;
        if (observer_) observer_->on_activation(stats_.turns, c.weight, c.depth);
        if (c.form.is_constant()) {
            // Constant forms never enter the active set: resolved on the spot
            // (the ordering does not depend on lambda*), weight propagation
            // still follows the weight rule.
            const Ordering o = c.form.order_for(RootSide::StarAbove);
            resolve_comp(std::move(c), o);
            return;
        }
        active_weight_ += c.weight;
        active_.push_back(std::move(c));
    }

    void resolve_comp(Comp c, Ordering o) {
        ++stats_.comparisons_resolved;
        frames_.push_back(Frame{c.weight, 0.0, 0, true});
        apply(c, o);
        const Frame f = frames_.back();
        frames_.pop_back();
        if (observer_ && f.has_trigger && f.count > 0) {
            observer_->on_batch(stats_.turns, f.trigger, f.total, f.count);
        }
    }

    void apply(const Comp& c, Ordering o) {
        Sub* s = c.sub;
        switch (c.kind) {
            case Comp::Kind::Pair: {
                if (o == Ordering::FirstLow) ++s->wins[c.b];
                else ++s->wins[c.a];
                if (--s->pending == 0) on_pairs_complete(s);
                break;
            }
            case Comp::Kind::Routing: {
                const std::uint32_t mid = (c.a + c.b) / 2;
                const std::uint32_t nlo = o == Ordering::FirstLow ? c.a : mid + 1;
                const std::uint32_t nhi = o == Ordering::FirstLow ? mid : c.b;
                if (nlo == nhi) {
                    s->box_items[nlo].push_back(c.item);
                    if (--s->pending == 0) on_routing_complete(s);
                } else {
                    activate_routing_step(s, c.item, nlo, nhi, scaled(c.weight * 0.5),
                                          c.depth + 1);
                }
                break;
            }
        }
    }

    void activate_routing_step(Sub* s, ItemIndex item, std::uint32_t lo, std::uint32_t hi,
                               double weight, std::uint32_t depth) {
        const std::uint32_t mid = (lo + hi) / 2;
        Comp c;
        c.kind = Comp::Kind::Routing;
        c.sub = s;
        c.a = lo;
        c.b = hi;
        c.item = item;
        c.form = problem_.compare(item, s->sorted_marked[mid]);
        c.weight = weight;
        c.depth = depth;
        activate(std::move(c));
    }

    // Decodes an all-pairs phase: with a strict total order the win counts
    // are a permutation of 0..k-1 and give the sorted positions directly.
    std::vector<ItemIndex> decode_wins(const Sub* s) const {
        const std::size_t k = s->participants.size();
        std::vector<ItemIndex> out(k);
        std::vector<bool> placed(k, false);
        for (std::size_t p = 0; p < k; ++p) {
            const std::uint32_t w = s->wins[p];
            if (w >= k || placed[w]) {
                std::ostringstream os;
                os << "boxsort: duplicate win count " << w
                   << " while decoding an all-pairs phase; comparator is not a strict total order";
                throw ContractViolation(os.str());
            }
            placed[w] = true;
            out[w] = s->participants[p];
        }
        return out;
    }

    void on_pairs_complete(Sub* s) {
        if (s->phase == Phase::BaseCase) {
            s->base_order = decode_wins(s);
            s->phase = Phase::Done;
            return;
        }
        // Mark-sort finished: build the pivot tree and start routing.
        s->sorted_marked = decode_wins(s);
        s->phase = Phase::Routing;
        const std::size_t n = s->items.size();
        const std::uint32_t m = static_cast<std::uint32_t>(s->sorted_marked.size());
        s->box_items.assign(m + 1, {});
        s->pending = n - m;

        std::vector<ItemIndex> marked_sorted_ids = s->sorted_marked;
        std::sort(marked_sorted_ids.begin(), marked_sorted_ids.end());
        const double nn = static_cast<double>(n);
        const double weight = scaled(s->base_weight / (2.0 * nn * nn));
        const std::uint32_t depth = s->entry_depth + floor_log2(n) + 2;
        for (ItemIndex item : s->items) {
            if (std::binary_search(marked_sorted_ids.begin(), marked_sorted_ids.end(), item)) {
                continue;
            }
            activate_routing_step(s, item, 0, m, weight, depth);
        }
    }

    void on_routing_complete(Sub* s) {
        s->phase = Phase::Done;
        const std::size_t n = s->items.size();
        const std::uint32_t m = static_cast<std::uint32_t>(s->sorted_marked.size());
        const double child_weight = s->base_weight / (4.0 * pow_4_5(static_cast<double>(n)));
        const std::uint32_t child_depth =
            s->entry_depth + 2 * (floor_log2(n) + 1) + ceil_log2(m + 1) + 2;
        s->boxes.resize(m + 1);
        for (std::uint32_t k = 0; k <= m; ++k) {
            if (s->box_items[k].empty()) continue;
            auto child = std::make_unique<Sub>();
            child->items = std::move(s->box_items[k]);
            child->base_weight = child_weight;
            child->entry_depth = child_depth;
            s->boxes[k] = std::move(child);
            start_subproblem(s->boxes[k].get());
        }
        s->box_items.clear();
    }

    Comp take_active(std::size_t index) {
        Comp c = std::move(active_[index]);
        if (index + 1 != active_.size()) {
            active_[index] = std::move(active_.back());
        }
        active_.pop_back();
        active_weight_ = active_.empty() ? 0.0 : active_weight_ - c.weight;
        return c;
    }

    void turn() {
        ++stats_.turns;

        const std::size_t sel = detail::weighted_median_index(
            active_.size(), [&](std::size_t i) -> const Rational& { return active_[i].form.root(); },
            [&](std::size_t i) { return active_[i].weight; }, select_rng_);
        const Rational rho = active_[sel].form.root();

        double in_interval = 0.0;
        SearchInterval before;
        if (observer_) {
            before = interval_;
            for (const Comp& c : active_) {
                if (interval_.contains(c.form.root())) in_interval += c.weight;
            }
        }

        const std::uint64_t calls_before = stats_.oracle_calls;
        const RootSide side = resolve_root(rho, interval_, oracle_, stats_);

        if (observer_) {
            observer_->on_interval(stats_.turns, before, interval_);
            if (stats_.oracle_calls > calls_before) {
                double decided = in_interval;  // At: everything inside is now decided
                if (side != RootSide::StarAt) {
                    decided = 0.0;
                    for (const Comp& c : active_) {
                        const Rational& r = c.form.root();
                        if (side == RootSide::StarAbove ? r <= rho : r >= rho) {
                            decided += c.weight;
                        }
                    }
                }
                observer_->on_oracle_turn(stats_.turns, decided, in_interval);
            }
        }

        // Resolve the selected comparison.
        {
            Comp c = take_active(sel);
            const Ordering o = apply_form(c.form, side);
            resolve_comp(std::move(c), o);
        }

        // Resolving lambda vs rho decides every active comparison whose root
        // lies on the same side of rho (the weighted half), uncounted. Roots
        // on the other side, and anything activated during this sweep, stay
        // active and surface as free median requests in later turns.
        std::vector<std::pair<std::size_t, RootSide>> doomed;
        for (std::size_t i = 0; i < active_.size(); ++i) {
            const Rational& r = active_[i].form.root();
            if (side == RootSide::StarAt) {
                if (auto implied = interval_.classify(r)) doomed.emplace_back(i, *implied);
            } else if (side == RootSide::StarAbove && r <= rho) {
                doomed.emplace_back(i, RootSide::StarAbove);
            } else if (side == RootSide::StarBelow && r >= rho) {
                doomed.emplace_back(i, RootSide::StarBelow);
            }
        }
        for (auto it = doomed.rbegin(); it != doomed.rend(); ++it) {
            Comp c = take_active(it->first);
            const Ordering o = apply_form(c.form, it->second);
            resolve_comp(std::move(c), o);
        }

        stats_.active_weight_trace.emplace_back(stats_.turns, active_weight_);
    }

    void collect(const Sub* s, std::vector<ItemIndex>& out) const {
        if (s->sorted_marked.empty()) {
            out.insert(out.end(), s->base_order.begin(), s->base_order.end());
            return;
        }
        const std::size_t m = s->sorted_marked.size();
        for (std::size_t k = 0; k <= m; ++k) {
            if (k < s->boxes.size() && s->boxes[k]) collect(s->boxes[k].get(), out);
            if (k < m) out.push_back(s->sorted_marked[k]);
        }
    }

    const ProblemDefinition& problem_;
    BoxsortConfig config_;
    RunObserver* observer_;
    Rng mark_rng_;
    Rng select_rng_;
    OracleFn oracle_;

    std::uint32_t threshold_ = 4;
    SearchInterval interval_;
    RunStats stats_;
    std::unique_ptr<Sub> root_;
    std::vector<Comp> active_;
    double active_weight_ = 0.0;
    std::vector<Frame> frames_;
};

}  // namespace

std::uint32_t boxsort_base_threshold(std::size_t original_n) {
    return std::max<std::uint32_t>(ceil_log2(original_n), 4);
}

std::uint32_t boxsort_mark_count(std::size_t sub_size) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(sub_size)));
    while ((r + 1) * (r + 1) <= sub_size) ++r;
    while (r > 1 && r * r > sub_size) --r;
    return static_cast<std::uint32_t>(std::max<std::uint64_t>(r, 1));
}

RunResult run_boxsort(const ProblemDefinition& problem, std::uint64_t seed,
                      const BoxsortConfig& config) {
    return Driver(problem, seed, config).run();
}

}  // namespace psearch
