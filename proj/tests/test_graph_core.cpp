#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nodesep/graph.hpp"
#include "nodesep/partition.hpp"
#include "nodesep/rng.hpp"
#include "test_support.hpp"

using namespace nodesep;
using namespace nodesep::testing;

TEST_CASE("duplicate edges merge by summing weights") {
    const Graph g = make_graph(2, {{0, 1, 1}, {0, 1, 2}}, {1, 1});
    CHECK(g.m() == 1);
    CHECK(g.edge_weight(g.first_edge(0)) == 3);
    CHECK(g.edge_weight(g.first_edge(1)) == 3);
}

TEST_CASE("edgeless graph") {
    const Graph g = make_graph(3, {}, {1, 1, 1});
    CHECK(g.n() == 3);
    CHECK(g.m() == 0);
    for (NodeID v = 0; v < 3; ++v) CHECK(g.degree(v) == 0);
}

TEST_CASE("path degrees") {
    const Graph g = path_graph(3);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 2);
    CHECK(g.degree(2) == 1);
}

TEST_CASE("builder rejects bad input") {
    CHECK_THROWS(make_graph(2, {{0, 0, 1}}));             // self loop
    CHECK_THROWS(make_graph(2, {{0, 2, 1}}));             // out of range
    CHECK_THROWS(make_graph(2, {{0, 1, 0}}));             // nonpositive edge weight
    CHECK_THROWS(make_graph(2, {{0, 1, 1}}, {1, 0}));     // nonpositive node weight
    CHECK_THROWS(make_graph(2, {{0, 1, 1}}, {1, 1, 1}));  // weight count mismatch
}

TEST_CASE("reversed duplicate merges too") {
    const Graph g = make_graph(3, {{0, 1, 1}, {1, 0, 4}});
    CHECK(g.m() == 1);
    CHECK(g.edge_weight(g.first_edge(0)) == 5);
}

TEST_CASE("balance spec truncates toward feasibility") {
    const BalanceSpec spec(3, 0.2);  // half = 2, 1.2 * 2 = 2.4
    CHECK(spec.max_block_weight == 2);
    const BalanceSpec spec10(10, 0.2);  // half = 5, 1.2 * 5 = 6
    CHECK(spec10.max_block_weight == 6);
    const BalanceSpec zero(7, 0.0);
    CHECK(zero.max_block_weight == 4);  // never below ceil(total/2)
}

TEST_CASE("validate_separator on a path") {
    const Graph g = path_graph(3);
    const BalanceSpec spec(3, 0.2);

    Partition3 p(g, Label::Separator);
    p.set_label(0, Label::Block1);
    p.set_label(2, Label::Block2);
    auto report = validate_separator(g, p, spec);
    CHECK(report.is_separator);
    CHECK(report.is_balanced);
    CHECK(report.separator_weight == 1);

    Partition3 bad(g, Label::Block2);
    bad.set_label(0, Label::Block1);
    report = validate_separator(g, bad, spec);
    CHECK_FALSE(report.is_separator);
}

TEST_CASE("all-separator K4 is valid with empty blocks") {
    const Graph g = complete_graph(4);
    const Partition3 p(g, Label::Separator);
    const auto report = validate_separator(g, p, BalanceSpec(4, 0.2));
    CHECK(report.is_separator);
    CHECK(report.is_balanced);
    CHECK(report.separator_weight == 4);
}

TEST_CASE("separator weight uses node weights") {
    const Graph g = make_graph(2, {{0, 1, 1}}, {2, 5});
    Partition3 p(g, Label::Block1);
    p.set_label(1, Label::Separator);
    CHECK(separator_weight(g, p) == 5);
    CHECK(p.separator_weight() == 5);
}

TEST_CASE("unit-weight separator weight equals cardinality") {
    const Graph g = complete_graph(5);
    Partition3 p(g, Label::Block1);
    for (NodeID v : {0u, 1u, 2u}) p.set_label(v, Label::Separator);
    CHECK(separator_weight(g, p) == 3);
}

TEST_CASE("degree sums and symmetry on random graphs") {
    Rng rng(1234);
    for (int round = 0; round < 40; ++round) {
        Rng gen = rng.fork(round);
        const Graph g = random_graph(gen, 3 + static_cast<NodeID>(gen.index(48)), 0.15, 3);
        EdgeID degree_sum = 0;
        for (NodeID v = 0; v < g.n(); ++v) degree_sum += g.degree(v);
        CHECK(degree_sum == 2 * g.m());
        for (NodeID u = 0; u < g.n(); ++u) {
            for (EdgeID e = g.first_edge(u); e < g.first_invalid_edge(u); ++e) {
                const NodeID v = g.target(e);
                bool found = false;
                for (EdgeID f = g.first_edge(v); f < g.first_invalid_edge(v); ++f) {
                    if (g.target(f) == u && g.edge_weight(f) == g.edge_weight(e)) found = true;
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("validate_separator agrees with brute-force edge scan") {
    Rng rng(99);
    const BalanceSpec dummy(1, 0.2);
    for (int round = 0; round < 60; ++round) {
        Rng gen = rng.fork(round);
        const Graph g = random_graph(gen, 2 + static_cast<NodeID>(gen.index(48)), 0.2);
        Partition3 p(g, Label::Block1);
        for (NodeID v = 0; v < g.n(); ++v) {
            p.set_label(v, static_cast<Label>(gen.index(3)));
        }
        const BalanceSpec spec(g.total_node_weight(), 0.2);
        CHECK(validate_separator(g, p, spec).is_separator == oracle_is_separator(g, p));
    }
}

TEST_CASE("block weights sum to the total for any partition") {
    Rng rng(7);
    for (int round = 0; round < 30; ++round) {
        Rng gen = rng.fork(round);
        const Graph g = random_graph(gen, 2 + static_cast<NodeID>(gen.index(30)), 0.3, 4);
        Partition3 p(g, Label::Block2);
        for (NodeID v = 0; v < g.n(); ++v) p.set_label(v, static_cast<Label>(gen.index(3)));
        const auto weights = block_weights(g, p);
        CHECK(weights[0] + weights[1] + weights[2] == g.total_node_weight());
        CHECK(weights[0] == p.block_weight(Label::Block1));
        CHECK(weights[1] == p.block_weight(Label::Block2));
        CHECK(weights[2] == p.separator_weight());
    }
}

TEST_CASE("contracted pair weight shows up in separator weight") {
    // Mirrors contraction semantics: a merged node carries the summed weight.
    const Graph g = make_graph(2, {{0, 1, 1}}, {3, 4});
    Partition3 p(g, Label::Block1);
    p.set_label(0, Label::Separator);
    CHECK(separator_weight(g, p) == 3);
}
