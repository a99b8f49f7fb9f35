#include "nodesep/initial_separator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "nodesep/flow_refine.hpp"

namespace nodesep {

namespace {

// Addressable max-heap over (gain, tiebreak), same scheme as the separator
// queues but for edge-cut gains.
class CutQueue {
public:
    explicit CutQueue(NodeID n) : position_(n, kAbsent) {}

    bool empty() const { return heap_.empty(); }
    bool contains(NodeID v) const { return position_[v] != kAbsent; }

    void push(NodeID v, EdgeWeight gain, std::uint64_t tiebreak) {
        position_[v] = static_cast<std::uint32_t>(heap_.size());
        heap_.push_back({v, gain, tiebreak});
        sift_up(position_[v]);
    }

    void update(NodeID v, EdgeWeight gain) {
        const std::uint32_t i = position_[v];
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
        EdgeWeight gain;
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

std::vector<std::vector<NodeID>> connected_components(const Graph& g) {
    std::vector<std::vector<NodeID>> components;
    std::vector<std::uint8_t> visited(g.n(), 0);
    for (NodeID start = 0; start < g.n(); ++start) {
        if (visited[start]) continue;
        components.emplace_back();
        auto& comp = components.back();
        comp.push_back(start);
        visited[start] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (NodeID v : g.neighbors(comp[head])) {
                if (!visited[v]) {
                    visited[v] = 1;
                    comp.push_back(v);
                }
            }
        }
    }
    return components;
}

EdgeWeight cut_gain(const Graph& g, const std::vector<std::uint8_t>& side, NodeID v) {
    EdgeWeight gain = 0;
    for (EdgeID e = g.first_edge(v); e < g.first_invalid_edge(v); ++e) {
        gain += side[g.target(e)] != side[v] ? g.edge_weight(e) : -g.edge_weight(e);
    }
    return gain;
}

EdgeWeight cut_of(const Graph& g, const std::vector<std::uint8_t>& side) {
    EdgeWeight cut = 0;
    for (NodeID u = 0; u < g.n(); ++u) {
        for (EdgeID e = g.first_edge(u); e < g.first_invalid_edge(u); ++e) {
            const NodeID v = g.target(e);
            if (v > u && side[u] != side[v]) cut += g.edge_weight(e);
        }
    }
    return cut;
}

// One alternating FM pass over the bisection; boundary nodes seeded, every
// node moves at most once, roll-back to the best feasible prefix by
// (cut, balance). Returns true when the cut strictly improved.
bool edge_cut_fm_pass(const Graph& g, const BalanceSpec& spec, std::vector<std::uint8_t>& side,
                      std::array<NodeWeight, 2>& weight, EdgeWeight& cut, Rng& rng) {
    CutQueue queues[2] = {CutQueue(g.n()), CutQueue(g.n())};  // indexed by current side
    std::vector<std::uint8_t> moved(g.n(), 0);
    std::vector<EdgeWeight> gain(g.n(), 0);

    std::vector<NodeID> boundary;
    for (NodeID u = 0; u < g.n(); ++u) {
        for (NodeID v : g.neighbors(u)) {
            if (side[v] != side[u]) {
                boundary.push_back(u);
                break;
            }
        }
    }
    rng.shuffle(boundary);
    for (NodeID v : boundary) {
        gain[v] = cut_gain(g, side, v);
        queues[side[v]].push(v, gain[v], rng.next_u64());
    }

    struct Move {
        NodeID node;
    };
    std::vector<Move> moves;
    const EdgeWeight initial_cut = cut;
    const NodeWeight initial_max = std::max(weight[0], weight[1]);
    const NodeWeight feasible_limit = std::max(spec.max_block_weight, initial_max);

    EdgeWeight best_cut = cut;
    NodeWeight best_max = initial_max;
    std::size_t best_index = 0;
    std::size_t since_best = 0;
    const std::size_t stall_limit = std::max<std::size_t>(50, boundary.size());

    std::vector<CutQueue::Entry> stash;
    int receive = rng.coin() ? 1 : 0;
    for (;;) {
        // Pop the best feasible donor for the receiving side, trying the
        // other direction when none exists.
        NodeID node = kInvalidNode;
        int donor = 1 - receive;
        for (int attempts = 0; attempts < 2 && node == kInvalidNode; ++attempts) {
            auto& queue = queues[donor];
            stash.clear();
            while (!queue.empty()) {
                const auto entry = queue.top();
                const NodeWeight new_receive = weight[1 - donor] + g.node_weight(entry.node);
                const bool ok = new_receive <= spec.max_block_weight ||
                                (weight[donor] > spec.max_block_weight &&
                                 std::max(new_receive, weight[donor] - g.node_weight(entry.node)) <
                                     std::max(weight[0], weight[1]));
                if (ok) {
                    node = entry.node;
                    break;
                }
                stash.push_back(entry);
                queue.pop();
            }
            for (const auto& entry : stash) queue.push(entry.node, entry.gain, entry.tiebreak);
            if (node == kInvalidNode) donor = 1 - donor;
        }
        if (node == kInvalidNode) break;

        const int from = donor;
        queues[from].remove(node);
        moved[node] = 1;
        side[node] = static_cast<std::uint8_t>(1 - from);
        weight[from] -= g.node_weight(node);
        weight[1 - from] += g.node_weight(node);
        cut -= gain[node];
        moves.push_back({node});

        for (NodeID w : g.neighbors(node)) {
            if (moved[w]) continue;
            if (queues[side[w]].contains(w)) {
                gain[w] = cut_gain(g, side, w);
                queues[side[w]].update(w, gain[w]);
            } else {
                gain[w] = cut_gain(g, side, w);
                queues[side[w]].push(w, gain[w], rng.next_u64());
            }
        }

        const NodeWeight max_side = std::max(weight[0], weight[1]);
        if (max_side <= feasible_limit &&
            (cut < best_cut || (cut == best_cut && max_side < best_max))) {
            best_cut = cut;
            best_max = max_side;
            best_index = moves.size();
            since_best = 0;
        } else if (++since_best >= stall_limit) {
            break;
        }
        receive = 1 - receive;
    }

    while (moves.size() > best_index) {
        const NodeID node = moves.back().node;
        moves.pop_back();
        const int from = side[node];
        side[node] = static_cast<std::uint8_t>(1 - from);
        weight[from] -= g.node_weight(node);
        weight[1 - from] += g.node_weight(node);
    }
    cut = best_cut;
    return best_cut < initial_cut;
}

}  // namespace

Partition2 bisect_edge_cut(const Graph& g, const BalanceSpec& spec, Rng& rng) {
    Partition2 partition;
    partition.side.assign(g.n(), 1);
    const NodeWeight half = (g.total_node_weight() + 1) / 2;

    auto components = connected_components(g);
    std::size_t largest = 0;
    NodeWeight largest_weight = -1;
    std::vector<NodeWeight> component_weight(components.size(), 0);
    for (std::size_t i = 0; i < components.size(); ++i) {
        for (NodeID v : components[i]) component_weight[i] += g.node_weight(v);
        if (component_weight[i] > largest_weight) {
            largest_weight = component_weight[i];
            largest = i;
        }
    }

    // Grow Block1 by BFS from a random seed of the largest component until
    // its weight first passes half the total; nodes that would break L_max
    // are skipped.
    NodeWeight w0 = 0;
    {
        const auto& comp = components[largest];
        const NodeID seed = comp[rng.index(comp.size())];
        std::vector<std::uint8_t> seen(g.n(), 0);
        std::vector<NodeID> frontier = {seed};
        std::vector<NodeID> next;
        seen[seed] = 1;
        partition.side[seed] = 0;
        w0 = g.node_weight(seed);
        while (!frontier.empty() && w0 <= half) {
            next.clear();
            for (NodeID u : frontier) {
                for (NodeID v : g.neighbors(u)) {
                    if (seen[v]) continue;
                    seen[v] = 1;
                    if (w0 + g.node_weight(v) > spec.max_block_weight) continue;
                    partition.side[v] = 0;
                    w0 += g.node_weight(v);
                    next.push_back(v);
                    if (w0 > half) break;
                }
                if (w0 > half) break;
            }
            rng.shuffle(next);
            frontier.swap(next);
        }
    }

    // Leftover components go as a whole to the lighter side.
    partition.weight = {w0, g.total_node_weight() - w0};
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i != largest) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (component_weight[a] != component_weight[b]) {
            return component_weight[a] > component_weight[b];
        }
        return a < b;
    });
    for (std::size_t i : order) {
        if (partition.weight[0] < partition.weight[1]) {  // everything starts on side 1
            for (NodeID v : components[i]) partition.side[v] = 0;
            partition.weight[0] += component_weight[i];
            partition.weight[1] -= component_weight[i];
        }
    }

    partition.cut_weight = cut_of(g, partition.side);
    while (edge_cut_fm_pass(g, spec, partition.side, partition.weight, partition.cut_weight,
                            rng)) {
    }
    return partition;
}

Partition3 boundary_to_separator(const Graph& g, const Partition2& p2, int topo_orders,
                                 Rng& rng) {
    Partition3 partition(g, Label::Block1);
    for (NodeID v = 0; v < g.n(); ++v) {
        partition.set_label(v, p2.side[v] == 0 ? Label::Block1 : Label::Block2);
    }

    std::vector<std::uint8_t> is_boundary(g.n(), 0);
    std::vector<NodeID> region_nodes;
    std::vector<NodeID> left;
    std::vector<NodeID> right;
    for (NodeID u = 0; u < g.n(); ++u) {
        for (NodeID v : g.neighbors(u)) {
            if (p2.side[v] != p2.side[u]) {
                if (!is_boundary[u]) {
                    is_boundary[u] = 1;
                    region_nodes.push_back(u);
                    (p2.side[u] == 0 ? left : right).push_back(u);
                }
                break;
            }
        }
    }
    if (region_nodes.empty()) return partition;  // cut-free bisection

    for (NodeID v : region_nodes) partition.set_label(v, Label::Separator);

    FlowRegion region = make_region(g, std::move(region_nodes), std::move(left),
                                    std::move(right));
    FlowNetwork net = build_flow_network(g, region);
    max_flow(net);
    return most_balanced_cut(g, partition, region, net, topo_orders, rng);
}

Partition3 compute_initial(const Graph& g, const BalanceSpec& spec, int reps, int topo_orders,
                           Rng& rng) {
    Partition3 best;
    bool have_best = false;
    for (int rep = 0; rep < std::max(reps, 1); ++rep) {
        Rng rep_rng = rng.fork(static_cast<std::uint64_t>(rep));
        const Partition2 bisection = bisect_edge_cut(g, spec, rep_rng);
        Partition3 candidate = boundary_to_separator(g, bisection, topo_orders, rep_rng);
        if (!have_best ||
            candidate.separator_weight() < best.separator_weight() ||
            (candidate.separator_weight() == best.separator_weight() &&
             candidate.max_block_weight() < best.max_block_weight())) {
            best = std::move(candidate);
            have_best = true;
        }
    }
    return best;
}

}  // namespace nodesep
