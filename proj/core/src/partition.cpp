#include "nodesep/partition.hpp"

namespace nodesep {

Partition3::Partition3(const Graph& graph, Label fill)
    : graph_(&graph), label_(graph.n(), fill) {
    weight_[static_cast<int>(fill)] = graph.total_node_weight();
}

ValidityReport validate_separator(const Graph& g, const Partition3& p, const BalanceSpec& spec) {
    ValidityReport report;
    report.is_separator = true;
    for (NodeID u = 0; u < g.n(); ++u) {
        const Label lu = p.label(u);
        if (lu == Label::Separator) continue;
        for (NodeID v : g.neighbors(u)) {
            const Label lv = p.label(v);
            if (lv != Label::Separator && lv != lu) {
                report.is_separator = false;
                break;
            }
        }
        if (!report.is_separator) break;
    }
    const auto weights = block_weights(g, p);
    report.separator_weight = weights[2];
    report.is_balanced = std::max(weights[0], weights[1]) <= spec.max_block_weight;
    return report;
}

NodeWeight separator_weight(const Graph& g, const Partition3& p) {
    return block_weights(g, p)[2];
}

std::array<NodeWeight, 3> block_weights(const Graph& g, const Partition3& p) {
    std::array<NodeWeight, 3> weights{0, 0, 0};
    for (NodeID v = 0; v < g.n(); ++v) {
        weights[static_cast<int>(p.label(v))] += g.node_weight(v);
    }
    return weights;
}

}  // namespace nodesep
