#pragma once

#include <span>
#include <vector>

#include "nodesep/types.hpp"

namespace nodesep {

struct EdgeInput {
    NodeID u;
    NodeID v;
    EdgeWeight weight = 1;
};

// Immutable undirected graph with positive node and edge weights, stored as a
// symmetric adjacency array (every edge appears in both endpoint lists).
// Safe to share between threads once built.
class Graph {
public:
    Graph() = default;

    // Validating construction for untrusted input: rejects self loops, ids
    // out of range and nonpositive weights. Parallel edges (including a pair
    // given in both orientations) are merged by summing their weights. Node
    // weights default to 1 when the vector is empty.
    static Graph build(NodeID n, std::span<const EdgeInput> edges,
                       std::vector<NodeWeight> node_weights = {});

    // Trusting construction from prebuilt CSR arrays that are already
    // symmetric, deduplicated and free of self loops. Only shape checks.
    Graph(std::vector<EdgeID> first_out, std::vector<NodeID> targets,
          std::vector<EdgeWeight> edge_weights, std::vector<NodeWeight> node_weights);

    NodeID n() const { return static_cast<NodeID>(node_weight_.size()); }
    EdgeID m() const { return static_cast<EdgeID>(target_.size() / 2); }

    NodeWeight node_weight(NodeID v) const { return node_weight_[v]; }
    NodeWeight total_node_weight() const { return total_node_weight_; }

    // Unweighted adjacency-list degree, the d(v) used by edge ratings.
    NodeID degree(NodeID v) const {
        return static_cast<NodeID>(first_out_[v + 1] - first_out_[v]);
    }

    EdgeID first_edge(NodeID v) const { return first_out_[v]; }
    EdgeID first_invalid_edge(NodeID v) const { return first_out_[v + 1]; }
    NodeID target(EdgeID e) const { return target_[e]; }
    EdgeWeight edge_weight(EdgeID e) const { return edge_weight_[e]; }

    std::span<const NodeID> neighbors(NodeID v) const {
        return {target_.data() + first_out_[v], target_.data() + first_out_[v + 1]};
    }

private:
    std::vector<EdgeID> first_out_;
    std::vector<NodeID> target_;
    std::vector<EdgeWeight> edge_weight_;
    std::vector<NodeWeight> node_weight_;
    NodeWeight total_node_weight_ = 0;
};

}  // namespace nodesep
