#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "nodesep/coarsening.hpp"
#include "test_support.hpp"

using namespace nodesep;
using namespace nodesep::testing;

TEST_CASE("rating formulas") {
    // Node 0 and 1 joined; degrees adjusted via extra neighbors.
    const Graph g = make_graph(6, {{0, 1, 2}, {0, 2, 1}, {1, 3, 1}, {1, 4, 1}, {1, 5, 1}});
    // d(0) = 2, d(1) = 4, weight(0,1) = 2
    CHECK(rate_edge(g, 0, 1, 2, RatingKind::ExpStar) == doctest::Approx(0.25));
    CHECK(rate_edge(g, 0, 1, 2, RatingKind::Exp2Star) == doctest::Approx(0.5));
    CHECK(rate_edge(g, 0, 1, 2, RatingKind::Max) == doctest::Approx(0.25));
    CHECK(rate_edge(g, 0, 1, 2, RatingKind::Weight) == doctest::Approx(2.0));

    const Graph pair = make_graph(2, {{0, 1, 1}});
    CHECK(rate_edge(pair, 0, 1, 1, RatingKind::Log) > 1e50);  // degenerate sentinel

    const Graph k4 = complete_graph(4);  // every node degree 3
    CHECK(rate_edge(k4, 0, 1, 3, RatingKind::ExpStar) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("gpa on a path picks the dp optimum") {
    // Ratings via the Weight kind: edge weights 3,1,3.
    const Graph g = path_graph(4, {3, 1, 3});
    Rng rng(5);
    const Matching m = gpa_matching(g, RatingKind::Weight, nullptr, rng);
    CHECK(m.num_pairs == 2);
    CHECK(m.rating_sum == doctest::Approx(6.0));
    CHECK(m.partner[0] == 1);
    CHECK(m.partner[2] == 3);
}

TEST_CASE("gpa on a 4-cycle picks the two heavy edges") {
    const Graph g = cycle_graph(4, {5, 1, 5, 1});
    Rng rng(6);
    const Matching m = gpa_matching(g, RatingKind::Weight, nullptr, rng);
    CHECK(m.num_pairs == 2);
    CHECK(m.rating_sum == doctest::Approx(10.0));
    CHECK(m.partner[0] == 1);
    CHECK(m.partner[2] == 3);
}

TEST_CASE("gpa refuses to close odd cycles") {
    const Graph g = cycle_graph(3);
    for (int seed = 0; seed < 8; ++seed) {
        Rng rng(seed);
        const Matching m = gpa_matching(g, RatingKind::Weight, nullptr, rng);
        CHECK(m.num_pairs == 1);  // any single edge is optimal
    }
}

TEST_CASE("matching partner relation is symmetric") {
    Rng rng(77);
    for (int round = 0; round < 25; ++round) {
        Rng gen = rng.fork(round);
        const Graph g = random_connected_graph(gen, 4 + static_cast<NodeID>(gen.index(60)),
                                               1.5, 1, 6);
        const Matching m = gpa_matching(g, RatingKind::ExpStar, nullptr, gen);
        for (NodeID v = 0; v < g.n(); ++v) {
            if (m.partner[v] != kInvalidNode) {
                CHECK(m.partner[m.partner[v]] == v);
                bool is_edge = false;
                for (NodeID w : g.neighbors(v)) {
                    if (w == m.partner[v]) is_edge = true;
                }
                CHECK(is_edge);
            }
        }
    }
}

TEST_CASE("chain dp equals brute force") {
    Rng rng(31337);
    for (int round = 0; round < 400; ++round) {
        Rng gen = rng.fork(round);
        const bool closed = gen.coin();
        std::size_t len = closed ? 4 + 2 * gen.index(5) : 1 + gen.index(12);
        std::vector<double> ratings(len);
        for (auto& r : ratings) {
            r = static_cast<double>(gen.next_below(8));  // small ints force ties
        }
        const auto [value, picked] = best_chain_matching(ratings, closed);
        CHECK(value == oracle_best_chain_matching(ratings, closed));
        // Picked set must be a feasible matching with the claimed value.
        double total = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            if (picked[i]) total += ratings[i];
            if (i + 1 < len) CHECK_FALSE(picked[i] && picked[i + 1]);
        }
        if (closed && len > 1) CHECK_FALSE(picked[0] && picked[len - 1]);
        CHECK(total == value);
    }
}

TEST_CASE("contract merges weights and drops the pair edge") {
    const Graph g = make_graph(3, {{0, 1, 1}, {0, 2, 2}, {1, 2, 3}}, {1, 2, 1});
    Matching m;
    m.partner.assign(3, kInvalidNode);
    m.partner[0] = 1;
    m.partner[1] = 0;
    m.num_pairs = 1;

    const CoarseLevel level = contract(g, m);
    REQUIRE(level.coarse_graph.n() == 2);
    CHECK(level.coarse_graph.m() == 1);
    const NodeID x = level.fine_to_coarse[0];
    CHECK(level.fine_to_coarse[1] == x);
    CHECK(level.coarse_graph.node_weight(x) == 3);  // c(x) = c(u) + c(v)
    // Parallel edges {x,w} merged: 2 + 3.
    CHECK(level.coarse_graph.edge_weight(level.coarse_graph.first_edge(x)) == 5);
}

TEST_CASE("empty matching contracts to an isomorphic graph") {
    const Graph g = grid_graph(3, 3);
    Matching m;
    m.partner.assign(g.n(), kInvalidNode);
    const CoarseLevel level = contract(g, m);
    CHECK(level.coarse_graph.n() == g.n());
    CHECK(level.coarse_graph.m() == g.m());
    for (NodeID v = 0; v < g.n(); ++v) CHECK(level.fine_to_coarse[v] == v);
}

TEST_CASE("contraction conserves node and cross-edge weight") {
    Rng rng(4242);
    for (int round = 0; round < 25; ++round) {
        Rng gen = rng.fork(round);
        const Graph g = random_connected_graph(gen, 4 + static_cast<NodeID>(gen.index(96)),
                                               1.5, 3, 4);
        const Matching m = gpa_matching(g, RatingKind::ExpStar, nullptr, gen);
        const CoarseLevel level = contract(g, m);
        CHECK(level.coarse_graph.total_node_weight() == g.total_node_weight());

        // Fine cross weights between coarse nodes must match coarse edges.
        std::map<std::pair<NodeID, NodeID>, EdgeWeight> fine_cross;
        for (NodeID u = 0; u < g.n(); ++u) {
            for (EdgeID e = g.first_edge(u); e < g.first_invalid_edge(u); ++e) {
                const NodeID v = g.target(e);
                const NodeID cu = level.fine_to_coarse[u];
                const NodeID cv = level.fine_to_coarse[v];
                if (cu < cv) fine_cross[{cu, cv}] += g.edge_weight(e);
            }
        }
        std::map<std::pair<NodeID, NodeID>, EdgeWeight> coarse_edges;
        const Graph& cg = level.coarse_graph;
        for (NodeID u = 0; u < cg.n(); ++u) {
            for (EdgeID e = cg.first_edge(u); e < cg.first_invalid_edge(u); ++e) {
                const NodeID v = cg.target(e);
                if (u < v) coarse_edges[{u, v}] += cg.edge_weight(e);
            }
        }
        CHECK(fine_cross == coarse_edges);
    }
}

TEST_CASE("hierarchy stays at one level below the target") {
    const Graph g = grid_graph(10, 10);
    Rng rng(9);
    const Hierarchy h = build_hierarchy(g, RatingKind::ExpStar, 10000, nullptr, rng);
    CHECK(h.num_levels() == 1);
}

TEST_CASE("hierarchy contracts down to the target") {
    const Graph g = grid_graph(20, 20);
    Rng rng(10);
    const Hierarchy h = build_hierarchy(g, RatingKind::ExpStar, 50, nullptr, rng);
    CHECK(h.num_levels() > 1);
    CHECK(h.coarsest().n() < 400);
    for (std::size_t level = 0; level < h.num_levels(); ++level) {
        CHECK(h.graph_at(level).total_node_weight() == g.total_node_weight());
    }
}

TEST_CASE("pinned separator forbids matching its edges") {
    const Graph g = path_graph(3);
    std::vector<Label> pinned = {Label::Block1, Label::Separator, Label::Block2};
    Rng rng(11);
    const Hierarchy h = build_hierarchy(g, RatingKind::ExpStar, 1, &pinned, rng);
    CHECK(h.num_levels() == 1);  // both edges forbidden, matching empty
    REQUIRE(h.pinned_on_coarsest() != nullptr);
    CHECK(*h.pinned_on_coarsest() == pinned);
}

TEST_CASE("pinned labels project uniquely through every level") {
    Rng rng(12);
    for (int round = 0; round < 15; ++round) {
        Rng gen = rng.fork(round);
        const Graph g = random_connected_graph(gen, 40 + static_cast<NodeID>(gen.index(160)),
                                               2.0);
        const Partition3 p = random_valid_partition(g, gen);
        std::vector<Label> pinned(g.n());
        for (NodeID v = 0; v < g.n(); ++v) pinned[v] = p.label(v);

        const Hierarchy h = build_hierarchy(g, RatingKind::ExpStar, 4, &pinned, gen);
        std::vector<Label> level_labels = pinned;
        for (std::size_t i = 0; i + 1 < h.num_levels(); ++i) {
            const CoarseLevel& level = h.level(i);
            std::vector<Label> coarse(level.coarse_graph.n());
            for (NodeID c = 0; c < level.coarse_graph.n(); ++c) {
                const auto [a, b] = level.coarse_to_fine[c];
                coarse[c] = level_labels[a];
                if (b != kInvalidNode) {
                    CHECK(level_labels[a] == level_labels[b]);  // no cross-label matches
                }
            }
            level_labels = std::move(coarse);
        }
        REQUIRE(h.pinned_on_coarsest() != nullptr);
        CHECK(*h.pinned_on_coarsest() == level_labels);
    }
}

TEST_CASE("forbidding everything terminates via the stall guard") {
    const Graph g = grid_graph(8, 8);
    std::vector<Label> pinned(g.n());
    for (NodeID v = 0; v < g.n(); ++v) {
        pinned[v] = v % 2 == 0 ? Label::Separator : Label::Block1;  // forbids most edges
    }
    Rng rng(13);
    const Hierarchy h = build_hierarchy(g, RatingKind::ExpStar, 1, &pinned, rng);
    CHECK(h.num_levels() >= 1);  // must terminate
}
