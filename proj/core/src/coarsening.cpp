#include "nodesep/coarsening.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace nodesep {

namespace {

// Larger than any finite rating that can occur; log(1) would divide by zero.
constexpr double kRatingSentinel = 1e100;

struct ChainForest {
    // Paths and even cycles built by the GPA scan: every node has at most two
    // incident chain edges.
    struct ChainEdge {
        NodeID u, v;
        double rating;
    };

    explicit ChainForest(NodeID n)
        : parent(n), chain_edges_of(n, {kInvalidUnit, kInvalidUnit}), degree(n, 0),
          path_edges(n, 0), is_cycle(n, 0) {
        std::iota(parent.begin(), parent.end(), NodeID{0});
    }

    static constexpr std::uint32_t kInvalidUnit = static_cast<std::uint32_t>(-1);

    NodeID find(NodeID v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    bool try_add(NodeID u, NodeID v, double rating) {
        if (degree[u] == 2 || degree[v] == 2) return false;
        const NodeID ru = find(u);
        const NodeID rv = find(v);
        if (ru == rv) {
            // Both are endpoints of the same path; closing it makes a cycle
            // with path_edges+1 edges, which GPA only allows when even.
            if (path_edges[ru] % 2 == 0) return false;
            is_cycle[ru] = 1;
        } else {
            parent[ru] = rv;
            path_edges[rv] += path_edges[ru] + 1;
        }
        const auto id = static_cast<std::uint32_t>(edges.size());
        edges.push_back({u, v, rating});
        chain_edges_of[u][degree[u]++] = id;
        chain_edges_of[v][degree[v]++] = id;
        return true;
    }

    std::vector<ChainEdge> edges;
    std::vector<NodeID> parent;
    std::vector<std::array<std::uint32_t, 2>> chain_edges_of;
    std::vector<std::uint8_t> degree;
    std::vector<NodeID> path_edges;  // per union-find root
    std::vector<std::uint8_t> is_cycle;
};

}  // namespace

double rate_edge(const Graph& g, NodeID u, NodeID v, EdgeWeight weight, RatingKind kind) {
    const double du = static_cast<double>(g.degree(u));
    const double dv = static_cast<double>(g.degree(v));
    const double w = static_cast<double>(weight);
    switch (kind) {
        case RatingKind::ExpStar:
            return w / (du * dv);
        case RatingKind::Exp2Star:
            return w * w / (du * dv);
        case RatingKind::Max:
            return 1.0 / std::max(du, dv);
        case RatingKind::Log:
            if (du * dv <= 1.0) return kRatingSentinel;
            return 1.0 / std::log(du * dv);
        case RatingKind::Weight:
            return w;
    }
    return 0.0;
}

std::pair<double, std::vector<char>> best_chain_matching(const std::vector<double>& ratings,
                                                         bool closed) {
    const std::size_t k = ratings.size();
    std::vector<char> picked(k, 0);
    if (k == 0) return {0.0, picked};

    // Max-rating matching of consecutive, non-adjacent edges of an open chain
    // [from, to); results written into `picked`.
    auto solve_path = [&ratings](std::size_t from, std::size_t to, std::vector<char>& out) {
        if (from >= to) return 0.0;
        const std::size_t len = to - from;
        std::vector<double> best(len + 1, 0.0);
        std::vector<char> take(len + 1, 0);
        for (std::size_t i = 1; i <= len; ++i) {
            const double with = (i >= 2 ? best[i - 2] : 0.0) + ratings[from + i - 1];
            if (with >= best[i - 1]) {  // ties take the edge: denser matchings
                best[i] = with;
                take[i] = 1;
            } else {
                best[i] = best[i - 1];
            }
        }
        for (std::size_t i = len; i > 0;) {
            if (take[i]) {
                out[from + i - 1] = 1;
                i = i >= 2 ? i - 2 : 0;
            } else {
                --i;
            }
        }
        return best[len];
    };

    if (!closed) {
        const double total = solve_path(0, k, picked);
        return {total, picked};
    }

    // Cycle: either drop the closing edge, or force it and drop both chain
    // edges adjacent to it.
    std::vector<char> without(k, 0);
    const double value_without = solve_path(0, k - 1, without);
    std::vector<char> with(k, 0);
    double value_with = ratings[k - 1];
    if (k >= 3) value_with += solve_path(1, k - 2, with);
    with[k - 1] = 1;
    if (value_with > value_without) return {value_with, with};
    return {value_without, without};
}

Matching gpa_matching(const Graph& g, RatingKind kind, const EdgePredicate& forbidden,
                      Rng& rng) {
    struct RatedEdge {
        NodeID u, v;
        double rating;
        std::uint64_t tiebreak;
    };
    std::vector<RatedEdge> edges;
    edges.reserve(g.m());
    for (NodeID u = 0; u < g.n(); ++u) {
        for (EdgeID e = g.first_edge(u); e < g.first_invalid_edge(u); ++e) {
            const NodeID v = g.target(e);
            if (v <= u) continue;
            if (forbidden && forbidden(u, v)) continue;
            edges.push_back({u, v, rate_edge(g, u, v, g.edge_weight(e), kind), rng.next_u64()});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const RatedEdge& a, const RatedEdge& b) {
        if (a.rating != b.rating) return a.rating > b.rating;
        if (a.tiebreak != b.tiebreak) return a.tiebreak < b.tiebreak;
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });

    ChainForest forest(g.n());
    for (const RatedEdge& e : edges) {
        forest.try_add(e.u, e.v, e.rating);
    }

    Matching matching;
    matching.partner.assign(g.n(), kInvalidNode);

    auto match_edge = [&](const ChainForest::ChainEdge& e) {
        matching.partner[e.u] = e.v;
        matching.partner[e.v] = e.u;
        matching.rating_sum += e.rating;
        ++matching.num_pairs;
    };

    // Walk each chain once, collect its edge sequence and apply the DP pick.
    std::vector<std::uint8_t> edge_done(forest.edges.size(), 0);
    std::vector<std::uint32_t> sequence;
    std::vector<double> ratings;
    auto walk_and_solve = [&](NodeID start, std::uint32_t first_edge_id, bool closed) {
        sequence.clear();
        ratings.clear();
        NodeID at = start;
        std::uint32_t eid = first_edge_id;
        for (;;) {
            edge_done[eid] = 1;
            sequence.push_back(eid);
            ratings.push_back(forest.edges[eid].rating);
            const auto& ce = forest.edges[eid];
            at = ce.u == at ? ce.v : ce.u;
            const auto& links = forest.chain_edges_of[at];
            std::uint32_t next = ChainForest::kInvalidUnit;
            for (std::uint32_t cand : links) {
                if (cand != ChainForest::kInvalidUnit && cand != eid && !edge_done[cand]) {
                    next = cand;
                }
            }
            if (next == ChainForest::kInvalidUnit) break;
            eid = next;
        }
        const auto [value, picked] = best_chain_matching(ratings, closed);
        (void)value;
        for (std::size_t i = 0; i < sequence.size(); ++i) {
            if (picked[i]) match_edge(forest.edges[sequence[i]]);
        }
    };

    for (NodeID v = 0; v < g.n(); ++v) {  // open chains start at degree-1 nodes
        if (forest.degree[v] != 1) continue;
        const std::uint32_t eid = forest.chain_edges_of[v][0];
        if (!edge_done[eid]) walk_and_solve(v, eid, false);
    }
    for (NodeID v = 0; v < g.n(); ++v) {  // what remains are cycles
        if (forest.degree[v] != 2) continue;
        const std::uint32_t eid = forest.chain_edges_of[v][0];
        if (!edge_done[eid]) {
            // Designate the second link of the start node as the closing edge
            // by walking away through the first.
            walk_and_solve(v, eid, true);
        }
    }
    return matching;
}

CoarseLevel contract(const Graph& g, const Matching& m) {
    CoarseLevel level;
    level.fine_to_coarse.assign(g.n(), kInvalidNode);
    NodeID coarse_n = 0;
    for (NodeID v = 0; v < g.n(); ++v) {
        const NodeID partner = m.partner[v];
        if (partner != kInvalidNode && partner < v) {
            level.fine_to_coarse[v] = level.fine_to_coarse[partner];
            continue;
        }
        level.fine_to_coarse[v] = coarse_n++;
        level.coarse_to_fine.push_back({v, partner});
    }

    std::vector<NodeWeight> coarse_weights(coarse_n);
    std::vector<EdgeID> first_out(static_cast<std::size_t>(coarse_n) + 1, 0);
    std::vector<NodeID> targets;
    std::vector<EdgeWeight> weights;
    targets.reserve(2 * g.m());
    weights.reserve(2 * g.m());

    // Per coarse node, accumulate neighbor weights with a stamped scratch
    // array; parallel edges merge, matched self edges vanish.
    std::vector<EdgeWeight> acc(coarse_n, 0);
    std::vector<NodeID> stamp(coarse_n, kInvalidNode);
    std::vector<NodeID> local;
    for (NodeID c = 0; c < coarse_n; ++c) {
        local.clear();
        NodeWeight node_weight = 0;
        for (NodeID fine : level.coarse_to_fine[c]) {
            if (fine == kInvalidNode) continue;
            node_weight += g.node_weight(fine);
            for (EdgeID e = g.first_edge(fine); e < g.first_invalid_edge(fine); ++e) {
                const NodeID tc = level.fine_to_coarse[g.target(e)];
                if (tc == c) continue;
                if (stamp[tc] != c) {
                    stamp[tc] = c;
                    acc[tc] = 0;
                    local.push_back(tc);
                }
                acc[tc] += g.edge_weight(e);
            }
        }
        coarse_weights[c] = node_weight;
        std::sort(local.begin(), local.end());
        for (NodeID tc : local) {
            targets.push_back(tc);
            weights.push_back(acc[tc]);
        }
        first_out[c + 1] = targets.size();
    }

    level.coarse_graph = Graph(std::move(first_out), std::move(targets), std::move(weights),
                               std::move(coarse_weights));
    return level;
}

Hierarchy build_hierarchy(const Graph& g, RatingKind rating, NodeID coarsest_target,
                          const std::vector<Label>* pinned, Rng& rng) {
    Hierarchy hierarchy(g);
    std::vector<Label> pinned_labels;
    if (pinned) pinned_labels = *pinned;

    std::uint64_t stream = 0;
    while (hierarchy.coarsest().n() >= coarsest_target && hierarchy.coarsest().n() > 1) {
        const Graph& current = hierarchy.coarsest();
        EdgePredicate forbidden;
        if (pinned) {
            forbidden = [&pinned_labels](NodeID u, NodeID v) {
                return pinned_labels[u] != pinned_labels[v];
            };
        }
        Rng level_rng = rng.fork(stream++);
        const Matching matching = gpa_matching(current, rating, forbidden, level_rng);
        if (matching.num_pairs == 0) break;

        CoarseLevel level = contract(current, matching);
        const NodeID fine_n = current.n();
        const NodeID coarse_n = level.coarse_graph.n();
        if (pinned) {
            std::vector<Label> coarse_labels(coarse_n);
            for (NodeID c = 0; c < coarse_n; ++c) {
                coarse_labels[c] = pinned_labels[level.coarse_to_fine[c][0]];
            }
            pinned_labels = std::move(coarse_labels);
        }
        hierarchy.push_level(std::move(level));
        // Stall guard: forbidden edges or star-like structure can make
        // matchings tiny; stop once a contraction removes less than 5%.
        if ((static_cast<std::uint64_t>(fine_n) - coarse_n) * 20 < fine_n) break;
    }
    if (pinned) hierarchy.set_pinned_coarsest(std::move(pinned_labels));
    return hierarchy;
}

}  // namespace nodesep
