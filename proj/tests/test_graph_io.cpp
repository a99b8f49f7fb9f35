#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "nodesep/graph_io.hpp"
#include "nodesep/rng.hpp"
#include "test_support.hpp"

using namespace nodesep;
using namespace nodesep::testing;

namespace {

Graph parse(const std::string& text) {
    std::istringstream in(text);
    return parse_metis(in);
}

}  // namespace

TEST_CASE("minimal unweighted file") {
    const Graph g = parse("3 2\n2\n1 3\n2\n");
    CHECK(g.n() == 3);
    CHECK(g.m() == 2);
    CHECK(g.degree(1) == 2);
    CHECK(g.node_weight(0) == 1);
}

TEST_CASE("node and edge weights") {
    const Graph g = parse("2 1 11\n4 2 7\n3 1 7\n");
    CHECK(g.node_weight(0) == 4);
    CHECK(g.node_weight(1) == 3);
    CHECK(g.m() == 1);
    CHECK(g.edge_weight(g.first_edge(0)) == 7);
}

TEST_CASE("missing back edge is rejected") {
    CHECK_THROWS_AS(parse("2 1\n2\n"), IoError);
}

TEST_CASE("comments, blank-ish whitespace and CRLF are tolerated") {
    const Graph g = parse("% a comment\r\n3 2 0\r\n% another\r\n2\r\n1 3\r\n2\r\n");
    CHECK(g.n() == 3);
    CHECK(g.m() == 2);
}

TEST_CASE("malformed inputs") {
    CHECK_THROWS_AS(parse(""), IoError);                       // empty
    CHECK_THROWS_AS(parse("x y\n"), IoError);                  // header not numeric
    CHECK_THROWS_AS(parse("2\n"), IoError);                    // header too short
    CHECK_THROWS_AS(parse("2 1 2\n2\n1\n"), IoError);          // bad fmt digit
    CHECK_THROWS_AS(parse("2 1 0 2\n2\n1\n"), IoError);        // ncon != 1
    CHECK_THROWS_AS(parse("2 1\n3\n1\n"), IoError);            // neighbor out of range
    CHECK_THROWS_AS(parse("2 1\n1 2\n1\n"), IoError);          // self loop
    CHECK_THROWS_AS(parse("2 2\n2\n1\n"), IoError);            // m mismatch
    CHECK_THROWS_AS(parse("2 1\n2 1\n1 2\n"), IoError);        // asymmetric weights
    CHECK_THROWS_AS(parse("2 1 11\n2 7\n3 1 7\n"), IoError);   // missing node weight value
    CHECK_THROWS_AS(parse("2 1 1\n2\n1 1\n"), IoError);        // missing edge weight
}

TEST_CASE("fmt 100 hundreds digit is ignored") {
    const Graph g = parse("2 1 100\n2\n1\n");
    CHECK(g.m() == 1);
    CHECK(g.node_weight(0) == 1);
}

TEST_CASE("ncon of exactly 1 is accepted") {
    const Graph g = parse("2 1 10 1\n4 2\n3 1\n");
    CHECK(g.node_weight(0) == 4);
    CHECK(g.node_weight(1) == 3);
}

TEST_CASE("write/parse round trip preserves the graph") {
    Rng rng(2024);
    for (int round = 0; round < 25; ++round) {
        Rng gen = rng.fork(round);
        const Graph g = random_connected_graph(gen, 2 + static_cast<NodeID>(gen.index(40)),
                                               1.5, 4, 5);
        std::ostringstream out;
        write_metis(g, out);
        const Graph back = parse(out.str());
        REQUIRE(back.n() == g.n());
        REQUIRE(back.m() == g.m());
        for (NodeID v = 0; v < g.n(); ++v) {
            CHECK(back.node_weight(v) == g.node_weight(v));
            REQUIRE(back.degree(v) == g.degree(v));
            for (EdgeID e = g.first_edge(v); e < g.first_invalid_edge(v); ++e) {
                bool found = false;
                for (EdgeID f = back.first_edge(v); f < back.first_invalid_edge(v); ++f) {
                    if (back.target(f) == g.target(e) &&
                        back.edge_weight(f) == g.edge_weight(e)) {
                        found = true;
                    }
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("separator file format") {
    const Graph g = path_graph(3);
    Partition3 p(g, Label::Separator);
    p.set_label(0, Label::Block1);
    p.set_label(2, Label::Block2);
    std::ostringstream out;
    write_separator(p, out);
    CHECK(out.str() == "0\n2\n1\n");

    const Partition3 all_sep(g, Label::Separator);
    std::ostringstream out2;
    write_separator(all_sep, out2);
    CHECK(out2.str() == "2\n2\n2\n");
}

TEST_CASE("separator file round trip") {
    const Graph g = path_graph(5);
    Partition3 p(g, Label::Block1);
    p.set_label(2, Label::Separator);
    p.set_label(3, Label::Block2);
    p.set_label(4, Label::Block2);
    std::ostringstream out;
    write_separator(p, out);
    std::istringstream in(out.str());
    const auto labels = read_separator(in);
    REQUIRE(labels.size() == g.n());
    for (NodeID v = 0; v < g.n(); ++v) CHECK(labels[v] == p.label(v));
}

TEST_CASE("separator file label range is checked") {
    std::istringstream in("0\n3\n");
    CHECK_THROWS_AS(read_separator(in), IoError);
}
