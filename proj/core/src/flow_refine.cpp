#include "nodesep/flow_refine.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <utility>

namespace nodesep {

namespace {

NodeWeight budget_for(const BalanceSpec& spec, double alpha, NodeWeight other_block,
                      NodeWeight separator) {
    const double limit = (1.0 + alpha) * static_cast<double>(spec.max_block_weight);
    const NodeWeight budget = static_cast<NodeWeight>(limit) - other_block - separator;
    return budget > 0 ? budget : 0;
}

// BFS into one block, admitting nodes while their weight fits the remaining
// budget. Too-heavy nodes are skipped for good; the search continues with the
// rest of the frontier.
void grow_side(const Graph& g, const Partition3& p, Label side, NodeWeight budget,
               FlowRegion& region, std::vector<std::uint8_t>& seen,
               const std::vector<NodeID>& separator_nodes, Rng& rng) {
    std::vector<NodeID> frontier = separator_nodes;
    rng.shuffle(frontier);
    std::vector<NodeID> next;
    while (!frontier.empty() && budget > 0) {
        next.clear();
        for (NodeID u : frontier) {
            for (NodeID v : g.neighbors(u)) {
                if (p.label(v) != side || seen[v]) continue;
                seen[v] = 1;
                if (g.node_weight(v) > budget) continue;
                budget -= g.node_weight(v);
                region.nodes.push_back(v);
                region.in_region[v] = 1;
                next.push_back(v);
                if (budget == 0) break;
            }
            if (budget == 0) break;
        }
        rng.shuffle(next);
        frontier.swap(next);
    }
}

void compute_borders(const Graph& g, const Partition3& p, FlowRegion& region) {
    for (NodeID u : region.nodes) {
        bool left = false;
        bool right = false;
        for (NodeID v : g.neighbors(u)) {
            if (region.in_region[v]) continue;
            if (p.label(v) == Label::Block1) left = true;
            if (p.label(v) == Label::Block2) right = true;
        }
        if (left) region.left_border.push_back(u);
        if (right) region.right_border.push_back(u);
    }
}

struct Dinic {
    explicit Dinic(FlowNetwork& net)
        : net(net), level(net.num_nodes()), iter(net.num_nodes()) {}

    bool bfs() {
        std::fill(level.begin(), level.end(), -1);
        queue.clear();
        queue.push_back(FlowNetwork::kSource);
        level[FlowNetwork::kSource] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t u = queue[head];
            for (std::uint32_t i = net.first_arc[u]; i < net.first_arc[u + 1]; ++i) {
                const auto& arc = net.arcs[net.arc_ids[i]];
                if (arc.cap > 0 && level[arc.to] < 0) {
                    level[arc.to] = level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        return level[FlowNetwork::kSink] >= 0;
    }

    // One blocking flow, iterative so that long thin networks cannot
    // overflow the stack.
    std::int64_t blocking_flow() {
        std::int64_t total = 0;
        path.clear();
        std::uint32_t u = FlowNetwork::kSource;
        for (;;) {
            if (u == FlowNetwork::kSink) {
                std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
                for (std::uint32_t id : path) {
                    bottleneck = std::min(bottleneck, net.arcs[id].cap);
                }
                for (std::uint32_t id : path) {
                    net.arcs[id].cap -= bottleneck;
                    net.arcs[id ^ 1].cap += bottleneck;
                }
                total += bottleneck;
                std::size_t keep = 0;
                while (net.arcs[path[keep]].cap > 0) ++keep;
                u = net.arcs[path[keep] ^ 1].to;  // tail of the first saturated arc
                path.resize(keep);
                continue;
            }
            bool advanced = false;
            for (std::uint32_t& i = iter[u]; i < net.first_arc[u + 1]; ++i) {
                const std::uint32_t arc_id = net.arc_ids[i];
                const auto& arc = net.arcs[arc_id];
                if (arc.cap > 0 && level[arc.to] == level[u] + 1) {
                    path.push_back(arc_id);
                    u = arc.to;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                if (u == FlowNetwork::kSource) break;
                level[u] = -1;
                u = net.arcs[path.back() ^ 1].to;
                path.pop_back();
            }
        }
        return total;
    }

    std::int64_t run() {
        std::int64_t total = 0;
        while (bfs()) {
            std::copy(net.first_arc.begin(), net.first_arc.end() - 1, iter.begin());
            total += blocking_flow();
        }
        return total;
    }

    FlowNetwork& net;
    std::vector<int> level;
    std::vector<std::uint32_t> iter;
    std::vector<std::uint32_t> queue;
    std::vector<std::uint32_t> path;
};

std::vector<std::uint8_t> residual_reachable(const FlowNetwork& net) {
    std::vector<std::uint8_t> reached(net.num_nodes(), 0);
    std::vector<std::uint32_t> queue = {FlowNetwork::kSource};
    reached[FlowNetwork::kSource] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t u = queue[head];
        for (std::uint32_t i = net.first_arc[u]; i < net.first_arc[u + 1]; ++i) {
            const auto& arc = net.arcs[net.arc_ids[i]];
            if (arc.cap > 0 && !reached[arc.to]) {
                reached[arc.to] = 1;
                queue.push_back(arc.to);
            }
        }
    }
    return reached;
}

// Labels of the region nodes induced by a source-side set C of network
// nodes: a node whose split arc crosses out of C joins the separator, a node
// whose out copy lies in C joins Block1, the rest join Block2.
Label label_from_side(bool in_c, bool out_c) {
    if (out_c) return Label::Block1;
    if (in_c) return Label::Separator;
    return Label::Block2;
}

Partition3 partition_from_side(const Graph& g, const Partition3& p, const FlowNetwork& net,
                               const std::vector<std::uint8_t>& side) {
    (void)g;
    Partition3 result = p;
    for (std::uint32_t i = 0; i < net.region_nodes.size(); ++i) {
        result.set_label(net.region_nodes[i],
                         label_from_side(side[net.in_node(i)] != 0, side[net.out_node(i)] != 0));
    }
    return result;
}

// Tarjan's strongly connected components of the residual graph, iterative.
struct ResidualScc {
    explicit ResidualScc(const FlowNetwork& net) : net(net) { run(); }

    const FlowNetwork& net;
    std::vector<std::uint32_t> component;  // per network node
    std::uint32_t num_components = 0;

    void run() {
        const std::uint32_t n = net.num_nodes();
        component.assign(n, 0);
        std::vector<std::uint32_t> index(n, kUnvisited);
        std::vector<std::uint32_t> low(n, 0);
        std::vector<std::uint8_t> on_stack(n, 0);
        std::vector<std::uint32_t> stack;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> call;  // node, arc position
        std::uint32_t next_index = 0;

        for (std::uint32_t root = 0; root < n; ++root) {
            if (index[root] != kUnvisited) continue;
            call.emplace_back(root, net.first_arc[root]);
            index[root] = low[root] = next_index++;
            stack.push_back(root);
            on_stack[root] = 1;
            while (!call.empty()) {
                auto& [u, pos] = call.back();
                if (pos < net.first_arc[u + 1]) {
                    const auto& arc = net.arcs[net.arc_ids[pos]];
                    ++pos;
                    if (arc.cap <= 0) continue;
                    const std::uint32_t v = arc.to;
                    if (index[v] == kUnvisited) {
                        index[v] = low[v] = next_index++;
                        stack.push_back(v);
                        on_stack[v] = 1;
                        call.emplace_back(v, net.first_arc[v]);
                    } else if (on_stack[v]) {
                        low[u] = std::min(low[u], index[v]);
                    }
                } else {
                    const std::uint32_t u_done = u;
                    call.pop_back();
                    if (!call.empty()) {
                        low[call.back().first] = std::min(low[call.back().first], low[u_done]);
                    }
                    if (low[u_done] == index[u_done]) {
                        for (;;) {
                            const std::uint32_t w = stack.back();
                            stack.pop_back();
                            on_stack[w] = 0;
                            component[w] = num_components;
                            if (w == u_done) break;
                        }
                        ++num_components;
                    }
                }
            }
        }
    }

    static constexpr std::uint32_t kUnvisited = static_cast<std::uint32_t>(-1);
};

}  // namespace

FlowRegion grow_region(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                       double alpha, Rng& rng) {
    FlowRegion region;
    if (p.separator_weight() == 0) return region;

    region.in_region.assign(g.n(), 0);
    std::vector<NodeID> separator_nodes;
    for (NodeID v = 0; v < g.n(); ++v) {
        if (p.label(v) == Label::Separator) {
            separator_nodes.push_back(v);
            region.nodes.push_back(v);
            region.in_region[v] = 1;
        }
    }

    std::vector<std::uint8_t> seen(g.n(), 0);
    const NodeWeight budget1 = budget_for(spec, alpha, p.block_weight(Label::Block2),
                                          p.separator_weight());
    grow_side(g, p, Label::Block1, budget1, region, seen, separator_nodes, rng);
    std::fill(seen.begin(), seen.end(), 0);
    const NodeWeight budget2 = budget_for(spec, alpha, p.block_weight(Label::Block1),
                                          p.separator_weight());
    grow_side(g, p, Label::Block2, budget2, region, seen, separator_nodes, rng);

    compute_borders(g, p, region);
    return region;
}

FlowRegion make_region(const Graph& g, std::vector<NodeID> nodes,
                       std::vector<NodeID> left_border, std::vector<NodeID> right_border) {
    FlowRegion region;
    region.nodes = std::move(nodes);
    region.in_region.assign(g.n(), 0);
    for (NodeID v : region.nodes) region.in_region[v] = 1;
    region.left_border = std::move(left_border);
    region.right_border = std::move(right_border);
    return region;
}

FlowNetwork build_flow_network(const Graph& g, const FlowRegion& region) {
    FlowNetwork net;
    net.region_nodes = region.nodes;
    net.infinite_capacity = g.total_node_weight() + 1;
    const std::int64_t inf = net.infinite_capacity;

    std::vector<std::uint32_t> region_index(g.n(), static_cast<std::uint32_t>(-1));
    for (std::uint32_t i = 0; i < region.nodes.size(); ++i) {
        region_index[region.nodes[i]] = i;
    }

    const std::uint32_t num_nodes = 2 + 2 * static_cast<std::uint32_t>(region.nodes.size());
    std::vector<std::vector<std::uint32_t>> out(num_nodes);
    auto add_arc = [&](std::uint32_t from, std::uint32_t to, std::int64_t cap) {
        const auto id = static_cast<std::uint32_t>(net.arcs.size());
        net.arcs.push_back({to, cap});
        net.arcs.push_back({from, 0});
        out[from].push_back(id);
        out[to].push_back(id + 1);
    };

    for (std::uint32_t i = 0; i < region.nodes.size(); ++i) {
        add_arc(net.in_node(i), net.out_node(i), g.node_weight(region.nodes[i]));
    }
    for (std::uint32_t i = 0; i < region.nodes.size(); ++i) {
        const NodeID u = region.nodes[i];
        for (NodeID v : g.neighbors(u)) {
            if (!region.in_region[v] || v <= u) continue;
            const std::uint32_t j = region_index[v];
            add_arc(net.out_node(i), net.in_node(j), inf);
            add_arc(net.out_node(j), net.in_node(i), inf);
        }
    }
    for (NodeID u : region.left_border) {
        add_arc(FlowNetwork::kSource, net.in_node(region_index[u]), inf);
    }
    for (NodeID u : region.right_border) {
        add_arc(net.out_node(region_index[u]), FlowNetwork::kSink, inf);
    }

    net.first_arc.assign(num_nodes + 1, 0);
    for (std::uint32_t v = 0; v < num_nodes; ++v) {
        net.first_arc[v + 1] = net.first_arc[v] + static_cast<std::uint32_t>(out[v].size());
    }
    net.arc_ids.resize(net.arcs.size());
    for (std::uint32_t v = 0; v < num_nodes; ++v) {
        std::copy(out[v].begin(), out[v].end(), net.arc_ids.begin() + net.first_arc[v]);
    }
    return net;
}

std::int64_t max_flow(FlowNetwork& net) { return Dinic(net).run(); }

Partition3 extract_separator(const Graph& g, const Partition3& p, const FlowRegion& region,
                             const FlowNetwork& net) {
    (void)region;
    return partition_from_side(g, p, net, residual_reachable(net));
}

Partition3 most_balanced_cut(const Graph& g, const Partition3& p, const FlowRegion& region,
                             const FlowNetwork& net, int orders, Rng& rng,
                             const CandidateSink& sink) {
    const auto reachable = residual_reachable(net);

    // Baseline candidate: the residual-reachable side itself.
    NodeWeight best_balance;
    NodeWeight best_sep;
    std::vector<std::uint8_t> best_side = reachable;
    {
        Partition3 baseline = partition_from_side(g, p, net, reachable);
        best_balance = baseline.max_block_weight();
        best_sep = baseline.separator_weight();
        if (sink) sink({reachable, best_sep, best_balance});
    }

    const ResidualScc scc(net);
    const std::uint32_t num_comps = scc.num_components;
    const std::uint32_t comp_s = scc.component[FlowNetwork::kSource];
    const std::uint32_t comp_t = scc.component[FlowNetwork::kSink];

    // Condensation DAG; arcs with positive residual capacity only.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> dag_edges;
    for (std::uint32_t u = 0; u < net.num_nodes(); ++u) {
        for (std::uint32_t i = net.first_arc[u]; i < net.first_arc[u + 1]; ++i) {
            const auto& arc = net.arcs[net.arc_ids[i]];
            if (arc.cap <= 0) continue;
            const std::uint32_t cu = scc.component[u];
            const std::uint32_t cv = scc.component[arc.to];
            if (cu != cv) dag_edges.emplace_back(cu, cv);
        }
    }
    std::sort(dag_edges.begin(), dag_edges.end());
    dag_edges.erase(std::unique(dag_edges.begin(), dag_edges.end()), dag_edges.end());

    std::vector<std::uint32_t> out_first(num_comps + 1, 0);
    std::vector<std::uint32_t> out_to(dag_edges.size());
    std::vector<std::uint32_t> in_degree(num_comps, 0);
    for (const auto& [from, to] : dag_edges) ++out_first[from + 1];
    for (std::uint32_t c = 0; c < num_comps; ++c) out_first[c + 1] += out_first[c];
    {
        std::vector<std::uint32_t> cursor(out_first.begin(), out_first.end() - 1);
        for (const auto& [from, to] : dag_edges) {
            out_to[cursor[from]++] = to;
            ++in_degree[to];
        }
    }

    std::vector<std::vector<std::uint32_t>> members(num_comps);
    for (std::uint32_t v = 0; v < net.num_nodes(); ++v) {
        members[scc.component[v]].push_back(v);
    }

    // Base weights: everything outside the region keeps its label, region
    // nodes start on the sink side (empty C) and move as C grows.
    const NodeWeight base1 = p.block_weight(Label::Block1) -
                             [&] {
                                 NodeWeight w = 0;
                                 for (NodeID v : region.nodes) {
                                     if (p.label(v) == Label::Block1) w += g.node_weight(v);
                                 }
                                 return w;
                             }();
    const NodeWeight base2 = p.block_weight(Label::Block2) -
                             [&] {
                                 NodeWeight w = 0;
                                 for (NodeID v : region.nodes) {
                                     if (p.label(v) == Label::Block2) w += g.node_weight(v);
                                 }
                                 return w;
                             }();
    NodeWeight region_total = 0;
    for (NodeID v : region.nodes) region_total += g.node_weight(v);

    std::vector<std::uint32_t> topo_order(num_comps);
    std::vector<std::uint32_t> ready;
    std::vector<std::uint32_t> degree(num_comps);
    std::vector<std::uint8_t> in_c(net.num_nodes());
    std::vector<std::uint32_t> remaining_out(num_comps);

    for (int run = 0; run < orders; ++run) {
        Rng order_rng = rng.fork(static_cast<std::uint64_t>(run));

        // Random topological order via Kahn with random tie breaking.
        std::copy(in_degree.begin(), in_degree.end(), degree.begin());
        ready.clear();
        for (std::uint32_t c = 0; c < num_comps; ++c) {
            if (degree[c] == 0) ready.push_back(c);
        }
        for (std::uint32_t filled = 0; filled < num_comps; ++filled) {
            const std::size_t pick = order_rng.index(ready.size());
            const std::uint32_t c = ready[pick];
            ready[pick] = ready.back();
            ready.pop_back();
            topo_order[filled] = c;
            for (std::uint32_t i = out_first[c]; i < out_first[c + 1]; ++i) {
                if (--degree[out_to[i]] == 0) ready.push_back(out_to[i]);
            }
        }

        // Reverse scan: a component may be added once all its successors are
        // in C, so C stays closed under residual arcs. The sink component is
        // never added; every state reached after the source component joined
        // induces a minimum cut.
        std::fill(in_c.begin(), in_c.end(), 0);
        for (std::uint32_t c = 0; c < num_comps; ++c) {
            remaining_out[c] = out_first[c + 1] - out_first[c];
        }
        // Count, per component, how many of its out-neighbors are already in
        // C; since we scan in reverse topological order, successors have been
        // visited (though possibly not added) before their predecessors.
        std::vector<std::uint8_t> comp_in_c(num_comps, 0);
        NodeWeight cur1 = base1;
        NodeWeight cur2 = base2 + region_total;
        NodeWeight cur_sep = 0;
        bool have_s = false;

        for (std::uint32_t pos = num_comps; pos-- > 0;) {
            const std::uint32_t c = topo_order[pos];
            if (c == comp_t) continue;
            bool closed = true;
            for (std::uint32_t i = out_first[c]; i < out_first[c + 1]; ++i) {
                if (!comp_in_c[out_to[i]]) {
                    closed = false;
                    break;
                }
            }
            if (!closed) continue;
            comp_in_c[c] = 1;
            for (std::uint32_t v : members[c]) {
                in_c[v] = 1;
                if (v == FlowNetwork::kSource || v == FlowNetwork::kSink) continue;
                // Label transition of the original node owning this copy.
                const std::uint32_t region_index = (v - 2) / 2;
                const bool is_in_copy = ((v - 2) % 2) == 0;
                const NodeID node = net.region_nodes[region_index];
                const NodeWeight w = g.node_weight(node);
                const bool other_in_c =
                    in_c[is_in_copy ? net.out_node(region_index) : net.in_node(region_index)] != 0;
                if (is_in_copy) {
                    if (!other_in_c) {  // Block2 -> Separator
                        cur2 -= w;
                        cur_sep += w;
                    }
                } else {
                    if (other_in_c) {  // Separator -> Block1
                        cur_sep -= w;
                        cur1 += w;
                    } else {  // Block2 -> Block1
                        cur2 -= w;
                        cur1 += w;
                    }
                }
            }
            if (c == comp_s) have_s = true;
            if (!have_s) continue;

            const NodeWeight balance = std::max(cur1, cur2);
            if (sink) sink({in_c, cur_sep, balance});
            if (balance < best_balance ||
                (balance == best_balance && cur_sep < best_sep)) {
                best_balance = balance;
                best_sep = cur_sep;
                best_side = in_c;
            }
        }
    }

    return partition_from_side(g, p, net, best_side);
}

Partition3 adaptive_flow_refine(const Graph& g, const Partition3& p, const BalanceSpec& spec,
                                double alpha0, int orders, Rng& rng) {
    Partition3 current = p;
    std::uint64_t attempt = 0;
    for (;;) {
        if (current.separator_weight() == 0) return current;
        double alpha = alpha0;
        int failures = 0;
        bool accepted = false;
        bool improved = false;
        for (;;) {
            Rng attempt_rng = rng.fork(attempt++);
            const FlowRegion region = grow_region(g, current, spec, alpha, attempt_rng);
            if (region.empty()) return current;
            FlowNetwork net = build_flow_network(g, region);
            const std::int64_t value = max_flow(net);
            assert(value <= current.separator_weight());

            if (value == current.separator_weight()) {
                // No smaller separator exists in this region; keep the
                // cardinality but adopt a better-balanced minimum cut.
                Partition3 candidate =
                    most_balanced_cut(g, current, region, net, orders, attempt_rng);
                if (candidate.is_balanced(spec) &&
                    candidate.max_block_weight() < current.max_block_weight()) {
                    current = std::move(candidate);
                }
                return current;
            }

            Partition3 candidate = most_balanced_cut(g, current, region, net, orders, attempt_rng);
            if (candidate.is_balanced(spec)) {
                improved = candidate.separator_weight() < current.separator_weight();
                current = std::move(candidate);
                accepted = true;
                break;
            }
            if (alpha == 0.0) break;  // the guaranteed attempt failed: keep the input
            ++failures;
            alpha = failures >= 10 ? 0.0 : alpha / 2.0;
        }
        if (!accepted || !improved) return current;
    }
}

}  // namespace nodesep
