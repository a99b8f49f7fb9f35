#pragma once

#include "nodesep/graph.hpp"
#include "nodesep/partition.hpp"
#include "nodesep/rng.hpp"

namespace nodesep {

struct Gains {
    NodeWeight to_block1 = 0;
    NodeWeight to_block2 = 0;
};

// Gain of moving separator node v into a block: c(v) minus the weight of the
// opposite-block neighbors the move pulls into the separator.
Gains gains(const Graph& g, const Partition3& p, NodeID v);

// One classical FM pass: both priority queues are seeded with all separator
// nodes in random order, target blocks alternate, every node moves at most
// once, moves that would push the target block over L_max are skipped. Rolls
// back to the best feasible prefix (ties by balance), so the result never
// has a larger separator than the input.
Partition3 fm_pass(const Graph& g, const Partition3& p, const BalanceSpec& spec, Rng& rng);

enum class BalanceStrategy {
    KeepSeparator,  // only prefixes that do not grow the separator qualify
    AllowGrowth     // roll back to the best balance, ties toward smaller separator
};

// Rebalancing pass: drains the heavier block by moving separator nodes into
// the lighter one until the balance constraint holds or no move is left.
Partition3 balance_pass(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                        BalanceStrategy strategy, Rng& rng);

// Highly localized search organized in rounds: the current separator goes
// into a todo list, searches start from random subsets of it, and no node
// leaves the separator twice within a round. Rounds repeat until one brings
// no improvement. Output weight <= input weight; balance is preserved.
Partition3 localized_rounds(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                            int subset_size, Rng& rng);

// Full local search: classic pass, rebalancing (separator-preserving first,
// growth only if imbalance persists), then localized rounds, looped until an
// iteration yields no improvement.
Partition3 local_search(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                        int subset_size, Rng& rng);

}  // namespace nodesep
