#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "nodesep/graph.hpp"
#include "nodesep/types.hpp"

namespace nodesep {

// Balance constraint for the two blocks; the separator itself carries no
// constraint. Evaluated on node weight so it stays meaningful on contracted
// graphs. The bound is (1+eps) * ceil(total/2) truncated to an integer,
// never rounded up.
struct BalanceSpec {
    double epsilon = 0.20;
    NodeWeight total_weight = 0;
    NodeWeight max_block_weight = 0;

    BalanceSpec() = default;
    BalanceSpec(NodeWeight total, double eps) : epsilon(eps), total_weight(total) {
        const NodeWeight half = (total + 1) / 2;
        max_block_weight = static_cast<NodeWeight>((1.0 + eps) * static_cast<double>(half));
        if (max_block_weight < half) max_block_weight = half;
    }
};

// Assignment of every node to Block1, Block2 or the separator, with cached
// block weights. Single writer; concurrent solves each own their instance.
// The referenced graph must outlive the partition.
class Partition3 {
public:
    Partition3() = default;
    Partition3(const Graph& graph, Label fill);

    const Graph& graph() const { return *graph_; }
    NodeID n() const { return static_cast<NodeID>(label_.size()); }

    Label label(NodeID v) const { return label_[v]; }

    void set_label(NodeID v, Label l) {
        const Label old = label_[v];
        if (old == l) return;
        weight_[static_cast<int>(old)] -= graph_->node_weight(v);
        weight_[static_cast<int>(l)] += graph_->node_weight(v);
        label_[v] = l;
    }

    NodeWeight block_weight(Label l) const { return weight_[static_cast<int>(l)]; }
    NodeWeight separator_weight() const { return weight_[2]; }
    NodeWeight max_block_weight() const { return std::max(weight_[0], weight_[1]); }

    bool is_balanced(const BalanceSpec& spec) const {
        return max_block_weight() <= spec.max_block_weight;
    }

private:
    const Graph* graph_ = nullptr;
    std::vector<Label> label_;
    std::array<NodeWeight, 3> weight_{0, 0, 0};
};

struct ValidityReport {
    bool is_separator = false;
    bool is_balanced = false;
    NodeWeight separator_weight = 0;
};

// A partition is a node separator iff no edge connects Block1 with Block2.
// Blocks may be empty; the separator has no balance constraint of its own.
ValidityReport validate_separator(const Graph& g, const Partition3& p, const BalanceSpec& spec);

// Recomputed from the labels, independent of the cached weights.
NodeWeight separator_weight(const Graph& g, const Partition3& p);
std::array<NodeWeight, 3> block_weights(const Graph& g, const Partition3& p);

}  // namespace nodesep
