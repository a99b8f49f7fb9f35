#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nodesep/graph.hpp"
#include "nodesep/partition.hpp"
#include "nodesep/rng.hpp"

namespace nodesep {

struct Partition2 {
    std::vector<std::uint8_t> side;  // 0 = Block1, 1 = Block2
    std::array<NodeWeight, 2> weight{0, 0};
    EdgeWeight cut_weight = 0;
};

// Balanced bisection by greedy BFS region growing from a random seed (grown
// until the first block passes half the total weight) followed by edge-cut
// FM refinement passes until none improves the cut. Disconnected graphs are
// seeded in the largest component; leftover components go to the lighter
// side.
Partition2 bisect_edge_cut(const Graph& g, const BalanceSpec& spec, Rng& rng);

// Lift the endpoints of all cut edges into the separator, then shrink it to
// a minimum-weight vertex cover of the cut edges via the flow machinery
// (region = the boundary nodes, borders = the bisection sides). Non-cover
// boundary nodes return to their block, so balance carries over from the
// bisection. A cut-free bisection yields an empty separator.
Partition3 boundary_to_separator(const Graph& g, const Partition2& p2, int topo_orders, Rng& rng);

// Best of `reps` independent bisect+cover runs, by separator weight and then
// balance.
Partition3 compute_initial(const Graph& g, const BalanceSpec& spec, int reps, int topo_orders,
                           Rng& rng);

}  // namespace nodesep
