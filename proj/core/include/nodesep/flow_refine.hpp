#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nodesep/graph.hpp"
#include "nodesep/partition.hpp"
#include "nodesep/rng.hpp"

namespace nodesep {

// Region of the graph around the current separator on which a flow problem
// is built. The left border holds the region nodes with a neighbor in
// Block1 outside the region, the right border those with a neighbor in
// Block2 outside; they get attached to the source and sink respectively.
struct FlowRegion {
    std::vector<NodeID> nodes;             // contains all separator nodes
    std::vector<std::uint8_t> in_region;   // indexed by node id
    std::vector<NodeID> left_border;
    std::vector<NodeID> right_border;

    bool empty() const { return nodes.empty(); }
};

// A = S extended by two breadth first searches, one into each block, with
// node-weight budget (1+alpha)*L_max - c(other block) - c(S) per side.
// Frontier order is randomized within each BFS level; a node whose weight
// exceeds the remaining budget is skipped and the search continues.
// Returns an empty region when the separator is empty.
FlowRegion grow_region(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                       double alpha, Rng& rng);

// Region with prescribed node set and borders (used by the initial-separator
// vertex cover, where the borders come from the bisection sides).
FlowRegion make_region(const Graph& g, std::vector<NodeID> nodes,
                       std::vector<NodeID> left_border, std::vector<NodeID> right_border);

// Node-capacitated region problem turned into a plain max-flow instance by
// node splitting: region node u becomes u_in -> u_out with capacity c(u);
// all other arcs (region edges both ways, source and sink attachments) carry
// the infinite sentinel c(V)+1. Arcs i and i^1 are mutual reverses; `cap` is
// the remaining (residual) capacity.
struct FlowNetwork {
    struct Arc {
        std::uint32_t to;
        std::int64_t cap;
    };

    static constexpr std::uint32_t kSource = 0;
    static constexpr std::uint32_t kSink = 1;

    std::vector<Arc> arcs;
    std::vector<std::uint32_t> first_arc;   // CSR over network nodes
    std::vector<std::uint32_t> arc_ids;     // arc indexes per network node
    std::vector<NodeID> region_nodes;       // region index -> original node
    std::int64_t infinite_capacity = 0;

    std::uint32_t num_nodes() const { return static_cast<std::uint32_t>(first_arc.size() - 1); }
    std::uint32_t in_node(std::uint32_t region_index) const { return 2 + 2 * region_index; }
    std::uint32_t out_node(std::uint32_t region_index) const { return 3 + 2 * region_index; }
};

FlowNetwork build_flow_network(const Graph& g, const FlowRegion& region);

// Exact integral maximum s-t flow (Dinic). Residual capacities are left in
// the network. The value is always below the infinite sentinel because the
// split arcs of the separator form a finite cut.
std::int64_t max_flow(FlowNetwork& net);

// Minimum-cut separator from the residual reachability of a maximum flow:
// the new separator consists of the region nodes whose split arc crosses the
// cut; the remaining region nodes join the block of their side. Nodes
// outside the region keep their labels. c(new separator) equals the flow
// value and never exceeds c(S).
Partition3 extract_separator(const Graph& g, const Partition3& p, const FlowRegion& region,
                             const FlowNetwork& net);

struct MinCutCandidate {
    std::vector<std::uint8_t> closed_set;  // indexed by network node
    NodeWeight separator_weight = 0;
    NodeWeight heavier_block_weight = 0;
};
using CandidateSink = std::function<void(const MinCutCandidate&)>;

// Better-balanced minimum cuts: contract the strongly connected components
// of the residual graph, then scan random topological orders in reverse,
// growing closed node sets that each induce a minimum cut of identical
// value. Returns the candidate with the best block balance (ties toward the
// smaller separator); the plain extract_separator candidate is always in the
// comparison, so the result never has worse balance. The sink, when given,
// receives every candidate (used by verification).
Partition3 most_balanced_cut(const Graph& g, const Partition3& p, const FlowRegion& region,
                             const FlowNetwork& net, int orders, Rng& rng,
                             const CandidateSink& sink = nullptr);

// Flow-based refinement with the adaptive alpha schedule: grow, solve and
// accept the best-balanced minimum cut if it is balanced; otherwise halve
// alpha and retry, forcing alpha = 0 after ten failures. Stops when the flow
// value matches the current separator weight (no improvement possible in the
// region) and repeats while the separator strictly shrinks. Never increases
// the separator weight; output is balanced for balanced input.
Partition3 adaptive_flow_refine(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                                double alpha0, int orders, Rng& rng);

}  // namespace nodesep
