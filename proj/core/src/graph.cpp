#include "nodesep/graph.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace nodesep {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

Graph Graph::build(NodeID n, std::span<const EdgeInput> edges,
                   std::vector<NodeWeight> node_weights) {
    if (node_weights.empty()) {
        node_weights.assign(n, 1);
    }
    if (node_weights.size() != n) {
        fail("node weight count does not match node count");
    }
    for (NodeWeight w : node_weights) {
        if (w <= 0) fail("node weights must be positive");
    }

    struct Directed {
        NodeID from;
        NodeID to;
        EdgeWeight weight;
    };
    std::vector<Directed> directed;
    directed.reserve(edges.size() * 2);
    for (const EdgeInput& e : edges) {
        if (e.u >= n || e.v >= n) fail("edge endpoint out of range");
        if (e.u == e.v) fail("self loops are not allowed");
        if (e.weight <= 0) fail("edge weights must be positive");
        directed.push_back({e.u, e.v, e.weight});
        directed.push_back({e.v, e.u, e.weight});
    }
    std::sort(directed.begin(), directed.end(), [](const Directed& a, const Directed& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });

    std::vector<EdgeID> first_out(static_cast<std::size_t>(n) + 1, 0);
    std::vector<NodeID> targets;
    std::vector<EdgeWeight> weights;
    targets.reserve(directed.size());
    weights.reserve(directed.size());
    for (std::size_t i = 0; i < directed.size();) {
        std::size_t j = i;
        EdgeWeight sum = 0;
        while (j < directed.size() && directed[j].from == directed[i].from &&
               directed[j].to == directed[i].to) {
            sum += directed[j].weight;  // parallel edges merge by summing
            ++j;
        }
        targets.push_back(directed[i].to);
        weights.push_back(sum);
        ++first_out[directed[i].from + 1];
        i = j;
    }
    for (NodeID v = 0; v < n; ++v) {
        first_out[v + 1] += first_out[v];
    }

    return Graph(std::move(first_out), std::move(targets), std::move(weights),
                 std::move(node_weights));
}

Graph::Graph(std::vector<EdgeID> first_out, std::vector<NodeID> targets,
             std::vector<EdgeWeight> edge_weights, std::vector<NodeWeight> node_weights)
    : first_out_(std::move(first_out)),
      target_(std::move(targets)),
      edge_weight_(std::move(edge_weights)),
      node_weight_(std::move(node_weights)) {
    assert(first_out_.size() == node_weight_.size() + 1);
    assert(first_out_.front() == 0 && first_out_.back() == target_.size());
    assert(target_.size() == edge_weight_.size());
    assert(target_.size() % 2 == 0);
    for (NodeWeight w : node_weight_) {
        total_node_weight_ += w;
    }
}

}  // namespace nodesep
