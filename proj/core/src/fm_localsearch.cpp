#include "nodesep/fm_localsearch.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace nodesep {

namespace {

// Addressable binary max-heap keyed by (gain, random tiebreak). The tiebreak
// makes equal-gain picks uniformly random while keeping runs reproducible.
class GainQueue {
public:
    explicit GainQueue(NodeID n) : position_(n, kAbsent) {}

    bool empty() const { return heap_.empty(); }
    bool contains(NodeID v) const { return position_[v] != kAbsent; }

    void push(NodeID v, NodeWeight gain, std::uint64_t tiebreak) {
        assert(!contains(v));
        position_[v] = static_cast<std::uint32_t>(heap_.size());
        heap_.push_back({v, gain, tiebreak});
        sift_up(position_[v]);
    }

    void update(NodeID v, NodeWeight gain) {
        const std::uint32_t i = position_[v];
        assert(i != kAbsent);
        heap_[i].gain = gain;
        sift_up(i);
        sift_down(i);
    }

    void remove(NodeID v) {
        const std::uint32_t i = position_[v];
        if (i == kAbsent) return;
        swap_entries(i, static_cast<std::uint32_t>(heap_.size() - 1));
        position_[v] = kAbsent;
        heap_.pop_back();
        if (i < heap_.size()) {
            sift_up(i);
            sift_down(i);
        }
    }

    struct Entry {
        NodeID node;
        NodeWeight gain;
        std::uint64_t tiebreak;
    };

    const Entry& top() const { return heap_.front(); }

    void pop() { remove(heap_.front().node); }

private:
    static constexpr std::uint32_t kAbsent = static_cast<std::uint32_t>(-1);

    static bool less(const Entry& a, const Entry& b) {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.tiebreak < b.tiebreak;
    }

    void swap_entries(std::uint32_t a, std::uint32_t b) {
        if (a == b) return;
        std::swap(heap_[a], heap_[b]);
        position_[heap_[a].node] = a;
        position_[heap_[b].node] = b;
    }

    void sift_up(std::uint32_t i) {
        while (i > 0) {
            const std::uint32_t parent = (i - 1) / 2;
            if (!less(heap_[parent], heap_[i])) break;
            swap_entries(parent, i);
            i = parent;
        }
    }

    void sift_down(std::uint32_t i) {
        for (;;) {
            std::uint32_t largest = i;
            for (std::uint32_t child : {2 * i + 1, 2 * i + 2}) {
                if (child < heap_.size() && less(heap_[largest], heap_[child])) {
                    largest = child;
                }
            }
            if (largest == i) break;
            swap_entries(i, largest);
            i = largest;
        }
    }

    std::vector<Entry> heap_;
    std::vector<std::uint32_t> position_;
};

struct PrefixState {
    NodeWeight sep_weight;
    NodeWeight max_block;
};

// One FM-style search over separator moves with exact roll-back. A move
// takes a separator node into a block and pulls its opposite-block neighbors
// into the separator; every node leaves the separator at most once per
// search (and at most once per localized round via `round_touched`).
class SeparatorSearch {
public:
    enum class Goal { MinimizeSeparator, BalanceKeepSeparator, BalanceAllowGrowth };

    SeparatorSearch(const Graph& g, Partition3& p, const BalanceSpec& spec, Rng& rng,
                    std::vector<std::uint8_t>* round_touched)
        : g_(g), p_(p), spec_(spec), rng_(rng), round_touched_(round_touched),
          queues_{GainQueue(g.n()), GainQueue(g.n())}, moved_(g.n(), 0) {
        gain_[0].assign(g.n(), 0);
        gain_[1].assign(g.n(), 0);
    }

    // Returns true if the accepted prefix strictly reduced the separator
    // weight (for balance goals: strictly improved the heavier block).
    bool run(std::span<const NodeID> seeds, Goal goal, std::size_t stall_limit) {
        const PrefixState initial{p_.separator_weight(), p_.max_block_weight()};
        states_ = {initial};
        moves_.clear();
        pulled_pool_.clear();

        // Feasibility during the search never exceeds L_max, except that an
        // already infeasible input may not get worse.
        feasible_limit_ = std::max(spec_.max_block_weight, initial.max_block);

        for (NodeID v : seeds) {
            if (p_.label(v) == Label::Separator && eligible(v)) insert_node(v);
        }

        std::size_t best_index = 0;
        PrefixState best = initial;
        std::size_t since_best = 0;
        Label target = rng_.coin() ? Label::Block2 : Label::Block1;

        for (;;) {
            if (goal != Goal::MinimizeSeparator) {
                if (p_.max_block_weight() <= spec_.max_block_weight) break;  // balanced
                const Label heavier = p_.block_weight(Label::Block1) >=
                                              p_.block_weight(Label::Block2)
                                          ? Label::Block1
                                          : Label::Block2;
                target = other_block(heavier);
            }
            NodeID node = select_feasible(target);
            if (node == kInvalidNode && goal == Goal::MinimizeSeparator) {
                target = other_block(target);
                node = select_feasible(target);
            }
            if (node == kInvalidNode) break;
            apply_move(node, target);
            states_.push_back({p_.separator_weight(), p_.max_block_weight()});

            if (better(states_.back(), best, goal, initial)) {
                best = states_.back();
                best_index = moves_.size();
                since_best = 0;
            } else if (++since_best >= stall_limit && goal == Goal::MinimizeSeparator) {
                break;
            }
            target = other_block(target);
        }

        roll_back_to(best_index);
        assert(p_.separator_weight() == best.sep_weight);
        assert(p_.max_block_weight() == best.max_block);
        if (goal == Goal::MinimizeSeparator) {
            return best.sep_weight < initial.sep_weight;
        }
        return best.max_block < initial.max_block;
    }

private:
    bool eligible(NodeID v) const {
        return !moved_[v] && (!round_touched_ || !(*round_touched_)[v]);
    }

    Gains compute_gains(NodeID v) const { return gains(g_, p_, v); }

    void insert_node(NodeID v) {
        const Gains gain = compute_gains(v);
        gain_[0][v] = gain.to_block1;
        gain_[1][v] = gain.to_block2;
        queues_[0].push(v, gain.to_block1, rng_.next_u64());
        queues_[1].push(v, gain.to_block2, rng_.next_u64());
    }

    // Best-gain node of the queue whose move keeps the target block within
    // L_max; infeasible entries stay queued and are reconsidered later.
    NodeID select_feasible(Label target) {
        GainQueue& queue = queues_[static_cast<int>(target)];
        stash_.clear();
        NodeID chosen = kInvalidNode;
        while (!queue.empty()) {
            const auto entry = queue.top();
            if (p_.block_weight(target) + g_.node_weight(entry.node) <=
                spec_.max_block_weight) {
                chosen = entry.node;
                break;
            }
            stash_.push_back(entry);
            queue.pop();
        }
        for (const auto& entry : stash_) {
            queue.push(entry.node, entry.gain, entry.tiebreak);
        }
        return chosen;
    }

    void apply_move(NodeID v, Label target) {
        const Label opposite = other_block(target);
        queues_[0].remove(v);
        queues_[1].remove(v);
        moved_[v] = 1;
        if (round_touched_) (*round_touched_)[v] = 1;

        Move move;
        move.node = v;
        move.to = target;
        move.first_pulled = static_cast<std::uint32_t>(pulled_pool_.size());
        p_.set_label(v, target);
        for (NodeID w : g_.neighbors(v)) {
            if (p_.label(w) == opposite) {
                pulled_pool_.push_back(w);
                p_.set_label(w, Label::Separator);
            }
        }
        move.num_pulled = static_cast<std::uint32_t>(pulled_pool_.size()) - move.first_pulled;
        moves_.push_back(move);

        // v joined `target`: moving a queued neighbor into `opposite` would
        // now also pull v.
        for (NodeID x : g_.neighbors(v)) {
            if (queues_[static_cast<int>(opposite)].contains(x)) {
                gain_[static_cast<int>(opposite)][x] -= g_.node_weight(v);
                queues_[static_cast<int>(opposite)].update(x, gain_[static_cast<int>(opposite)][x]);
            }
        }
        // Each pulled w left `opposite`: moving a queued neighbor into
        // `target` no longer pulls w.
        for (std::uint32_t i = move.first_pulled; i < move.first_pulled + move.num_pulled; ++i) {
            const NodeID w = pulled_pool_[i];
            for (NodeID x : g_.neighbors(w)) {
                if (queues_[static_cast<int>(target)].contains(x)) {
                    gain_[static_cast<int>(target)][x] += g_.node_weight(w);
                    queues_[static_cast<int>(target)].update(x, gain_[static_cast<int>(target)][x]);
                }
            }
        }
        // Newly added separator nodes become eligible.
        for (std::uint32_t i = move.first_pulled; i < move.first_pulled + move.num_pulled; ++i) {
            const NodeID w = pulled_pool_[i];
            if (eligible(w)) insert_node(w);
        }

        if (gain_checking_enabled()) check_gains_around(v, move);
    }

    // Test hook: with NODESEP_CHECK_GAINS set, the incrementally maintained
    // gains of every node affected by a move are compared against a scratch
    // recomputation.
    static bool gain_checking_enabled() {
        static const bool enabled = std::getenv("NODESEP_CHECK_GAINS") != nullptr;
        return enabled;
    }

    void check_gains_around(NodeID v, const Move& move) const {
        auto check = [&](NodeID x) {
            if (!queues_[0].contains(x)) return;
            const Gains fresh = gains(g_, p_, x);
            if (fresh.to_block1 != gain_[0][x] || fresh.to_block2 != gain_[1][x]) {
                throw std::logic_error("incremental gains diverged from recomputation");
            }
        };
        for (NodeID x : g_.neighbors(v)) check(x);
        for (std::uint32_t i = move.first_pulled; i < move.first_pulled + move.num_pulled; ++i) {
            check(pulled_pool_[i]);
            for (NodeID x : g_.neighbors(pulled_pool_[i])) check(x);
        }
    }

    // Candidate prefixes and their order, per goal. `MinimizeSeparator`
    // wants the smallest separator (ties by balance) among prefixes inside
    // the feasible limit; the balance goals want the best balance, where
    // KeepSeparator only admits prefixes that do not grow the separator.
    bool better(const PrefixState& state, const PrefixState& best, Goal goal,
                const PrefixState& initial) const {
        switch (goal) {
            case Goal::MinimizeSeparator:
                if (state.max_block > feasible_limit_) return false;
                if (state.sep_weight != best.sep_weight) {
                    return state.sep_weight < best.sep_weight;
                }
                return state.max_block < best.max_block;
            case Goal::BalanceKeepSeparator:
                if (state.sep_weight > initial.sep_weight) return false;
                if (state.max_block != best.max_block) return state.max_block < best.max_block;
                return state.sep_weight < best.sep_weight;
            case Goal::BalanceAllowGrowth:
                if (state.max_block != best.max_block) return state.max_block < best.max_block;
                return state.sep_weight < best.sep_weight;
        }
        return false;
    }

    void roll_back_to(std::size_t best_index) {
        while (moves_.size() > best_index) {
            const Move move = moves_.back();
            moves_.pop_back();
            const Label opposite = other_block(move.to);
            for (std::uint32_t i = move.first_pulled + move.num_pulled;
                 i-- > move.first_pulled;) {
                p_.set_label(pulled_pool_[i], opposite);
            }
            pulled_pool_.resize(move.first_pulled);
            p_.set_label(move.node, Label::Separator);
        }
    }

    struct Move {
        NodeID node;
        Label to;
        std::uint32_t first_pulled;
        std::uint32_t num_pulled;
    };

    const Graph& g_;
    Partition3& p_;
    const BalanceSpec& spec_;
    Rng& rng_;
    std::vector<std::uint8_t>* round_touched_;
    GainQueue queues_[2];
    std::vector<NodeWeight> gain_[2];
    std::vector<std::uint8_t> moved_;
    std::vector<Move> moves_;
    std::vector<NodeID> pulled_pool_;
    std::vector<PrefixState> states_;
    std::vector<GainQueue::Entry> stash_;
    NodeWeight feasible_limit_ = 0;
};

std::vector<NodeID> separator_nodes_shuffled(const Partition3& p, Rng& rng) {
    std::vector<NodeID> nodes;
    for (NodeID v = 0; v < p.n(); ++v) {
        if (p.label(v) == Label::Separator) nodes.push_back(v);
    }
    rng.shuffle(nodes);
    return nodes;
}

}  // namespace

Gains gains(const Graph& g, const Partition3& p, NodeID v) {
    assert(p.label(v) == Label::Separator);
    Gains result{g.node_weight(v), g.node_weight(v)};
    for (NodeID w : g.neighbors(v)) {
        if (p.label(w) == Label::Block2) result.to_block1 -= g.node_weight(w);
        if (p.label(w) == Label::Block1) result.to_block2 -= g.node_weight(w);
    }
    return result;
}

Partition3 fm_pass(const Graph& g, const Partition3& p, const BalanceSpec& spec, Rng& rng) {
    Partition3 result = p;
    const auto seeds = separator_nodes_shuffled(result, rng);
    if (seeds.empty()) return result;
    const std::size_t stall_limit = std::max<std::size_t>(50, seeds.size());
    SeparatorSearch search(g, result, spec, rng, nullptr);
    search.run(seeds, SeparatorSearch::Goal::MinimizeSeparator, stall_limit);
    return result;
}

Partition3 balance_pass(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                        BalanceStrategy strategy, Rng& rng) {
    Partition3 result = p;
    if (result.is_balanced(spec)) return result;
    const auto seeds = separator_nodes_shuffled(result, rng);
    if (seeds.empty()) return result;
    SeparatorSearch search(g, result, spec, rng, nullptr);
    search.run(seeds,
               strategy == BalanceStrategy::KeepSeparator
                   ? SeparatorSearch::Goal::BalanceKeepSeparator
                   : SeparatorSearch::Goal::BalanceAllowGrowth,
               std::numeric_limits<std::size_t>::max());
    return result;
}

Partition3 localized_rounds(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                            int subset_size, Rng& rng) {
    Partition3 result = p;
    if (subset_size <= 0) return result;
    std::vector<std::uint8_t> touched(g.n(), 0);
    std::vector<NodeID> todo;
    std::vector<NodeID> seeds;

    for (;;) {  // rounds, until one brings no improvement
        std::fill(touched.begin(), touched.end(), 0);
        todo.clear();
        for (NodeID v = 0; v < g.n(); ++v) {
            if (result.label(v) == Label::Separator) todo.push_back(v);
        }
        bool round_improved = false;
        while (!todo.empty()) {
            seeds.clear();
            while (static_cast<int>(seeds.size()) < subset_size && !todo.empty()) {
                const std::size_t pick = rng.index(todo.size());
                const NodeID v = todo[pick];
                todo[pick] = todo.back();
                todo.pop_back();
                if (result.label(v) == Label::Separator && !touched[v]) seeds.push_back(v);
            }
            if (seeds.empty()) continue;
            SeparatorSearch search(g, result, spec, rng, &touched);
            if (search.run(seeds, SeparatorSearch::Goal::MinimizeSeparator, 50)) {
                round_improved = true;
            }
        }
        if (!round_improved) break;
    }
    return result;
}

Partition3 local_search(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                        int subset_size, Rng& rng) {
    Partition3 result = p;
    std::uint64_t stream = 0;
    for (;;) {
        const NodeWeight weight_before = result.separator_weight();
        const NodeWeight balance_before = result.max_block_weight();

        Rng pass_rng = rng.fork(stream++);
        result = fm_pass(g, result, spec, pass_rng);
        if (!result.is_balanced(spec)) {
            Rng keep_rng = rng.fork(stream++);
            result = balance_pass(g, result, spec, BalanceStrategy::KeepSeparator, keep_rng);
        }
        if (!result.is_balanced(spec)) {
            Rng grow_rng = rng.fork(stream++);
            result = balance_pass(g, result, spec, BalanceStrategy::AllowGrowth, grow_rng);
        }
        Rng localized_rng = rng.fork(stream++);
        result = localized_rounds(g, result, spec, subset_size, localized_rng);

        const bool improved = result.separator_weight() < weight_before ||
                              (result.separator_weight() == weight_before &&
                               result.max_block_weight() < balance_before);
        if (!improved) break;
    }
    return result;
}

}  // namespace nodesep
