#include "nodesep/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace nodesep {

namespace {

[[noreturn]] void fail(const std::string& what) { throw IoError(what); }

// Next content line: comments skipped, CR stripped. Returns false on EOF.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = line.find_first_not_of(" \t");
        if (i != std::string::npos && line[i] == '%') continue;
        return true;
    }
    return false;
}

std::vector<long long> tokenize(const std::string& line, const std::string& context) {
    std::vector<long long> values;
    std::istringstream ss(line);
    std::string token;
    while (ss >> token) {
        std::size_t pos = 0;
        long long value = 0;
        try {
            value = std::stoll(token, &pos);
        } catch (const std::exception&) {
            fail(context + ": not a number: '" + token + "'");
        }
        if (pos != token.size()) fail(context + ": not a number: '" + token + "'");
        values.push_back(value);
    }
    return values;
}

}  // namespace

Graph parse_metis(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) fail("empty graph file");

    const auto header = tokenize(line, "header");
    if (header.size() < 2 || header.size() > 4) fail("malformed header");
    const long long n_decl = header[0];
    const long long m_decl = header[1];
    if (n_decl < 0 || m_decl < 0) fail("malformed header");
    long long fmt = header.size() >= 3 ? header[2] : 0;
    if (fmt < 0 || fmt > 111 || fmt % 10 > 1 || (fmt / 10) % 10 > 1 || fmt / 100 > 1) {
        fail("unsupported fmt code " + std::to_string(fmt));
    }
    const bool has_edge_weights = fmt % 10 == 1;
    const bool has_node_weights = (fmt / 10) % 10 == 1;
    if (header.size() == 4 && header[3] != 1) {
        fail("ncon != 1 is not supported");
    }

    const NodeID n = static_cast<NodeID>(n_decl);
    std::vector<NodeWeight> node_weights(n, 1);
    std::vector<std::vector<std::pair<NodeID, EdgeWeight>>> adj(n);

    for (NodeID v = 0; v < n; ++v) {
        std::string node_line;
        if (!next_line(in, node_line)) node_line.clear();  // missing lines = no neighbors
        const auto values = tokenize(node_line, "node " + std::to_string(v + 1));
        std::size_t i = 0;
        if (has_node_weights) {
            if (values.empty()) fail("node " + std::to_string(v + 1) + ": missing node weight");
            if (values[0] <= 0) fail("node " + std::to_string(v + 1) + ": nonpositive weight");
            node_weights[v] = values[0];
            i = 1;
        }
        while (i < values.size()) {
            const long long neighbor = values[i++];
            if (neighbor < 1 || neighbor > n_decl) {
                fail("node " + std::to_string(v + 1) + ": neighbor id out of range");
            }
            EdgeWeight weight = 1;
            if (has_edge_weights) {
                if (i >= values.size()) {
                    fail("node " + std::to_string(v + 1) + ": missing edge weight");
                }
                weight = values[i++];
                if (weight <= 0) {
                    fail("node " + std::to_string(v + 1) + ": nonpositive edge weight");
                }
            }
            const NodeID u = static_cast<NodeID>(neighbor - 1);
            if (u == v) fail("node " + std::to_string(v + 1) + ": self loop");
            adj[v].emplace_back(u, weight);
        }
    }

    // Merge duplicate entries per list, then check symmetry and the declared
    // edge count.
    EdgeID entries = 0;
    for (NodeID v = 0; v < n; ++v) {
        auto& list = adj[v];
        std::sort(list.begin(), list.end());
        std::size_t out = 0;
        for (std::size_t i = 0; i < list.size();) {
            std::size_t j = i;
            EdgeWeight sum = 0;
            while (j < list.size() && list[j].first == list[i].first) {
                sum += list[j].second;
                ++j;
            }
            list[out++] = {list[i].first, sum};
            i = j;
        }
        list.resize(out);
        entries += out;
    }
    for (NodeID v = 0; v < n; ++v) {
        for (const auto& [u, w] : adj[v]) {
            const auto& mirror = adj[u];
            const auto it = std::lower_bound(mirror.begin(), mirror.end(),
                                             std::make_pair(v, EdgeWeight{0}));
            if (it == mirror.end() || it->first != v || it->second != w) {
                fail("asymmetric edge list at nodes " + std::to_string(v + 1) + " and " +
                     std::to_string(u + 1));
            }
        }
    }
    if (entries % 2 != 0 || static_cast<long long>(entries / 2) != m_decl) {
        fail("edge count mismatch: header declares " + std::to_string(m_decl) + ", found " +
             std::to_string(entries / 2));
    }

    std::vector<EdgeID> first_out(static_cast<std::size_t>(n) + 1, 0);
    std::vector<NodeID> targets;
    std::vector<EdgeWeight> weights;
    targets.reserve(entries);
    weights.reserve(entries);
    for (NodeID v = 0; v < n; ++v) {
        for (const auto& [u, w] : adj[v]) {
            targets.push_back(u);
            weights.push_back(w);
        }
        first_out[v + 1] = targets.size();
    }
    return Graph(std::move(first_out), std::move(targets), std::move(weights),
                 std::move(node_weights));
}

Graph read_metis_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    return parse_metis(in);
}

void write_metis(const Graph& g, std::ostream& out) {
    bool has_node_weights = false;
    bool has_edge_weights = false;
    for (NodeID v = 0; v < g.n(); ++v) {
        if (g.node_weight(v) != 1) has_node_weights = true;
        for (EdgeID e = g.first_edge(v); e < g.first_invalid_edge(v); ++e) {
            if (g.edge_weight(e) != 1) has_edge_weights = true;
        }
    }
    out << g.n() << ' ' << g.m();
    if (has_node_weights || has_edge_weights) {
        out << ' ' << (has_node_weights ? 1 : 0) << (has_edge_weights ? 1 : 0);
    }
    out << '\n';
    for (NodeID v = 0; v < g.n(); ++v) {
        bool first = true;
        if (has_node_weights) {
            out << g.node_weight(v);
            first = false;
        }
        for (EdgeID e = g.first_edge(v); e < g.first_invalid_edge(v); ++e) {
            if (!first) out << ' ';
            first = false;
            out << g.target(e) + 1;
            if (has_edge_weights) out << ' ' << g.edge_weight(e);
        }
        out << '\n';
    }
}

void write_metis_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("cannot open " + path + " for writing");
    write_metis(g, out);
    if (!out) fail("write failed: " + path);
}

void write_separator(const Partition3& p, std::ostream& out) {
    for (NodeID v = 0; v < p.n(); ++v) {
        out << static_cast<int>(p.label(v)) << '\n';
    }
}

void write_separator_file(const Partition3& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("cannot open " + path + " for writing");
    write_separator(p, out);
    if (!out) fail("write failed: " + path);
}

std::vector<Label> read_separator(std::istream& in) {
    std::vector<Label> labels;
    std::string line;
    while (next_line(in, line)) {
        for (long long value : tokenize(line, "separator file")) {
            if (value < 0 || value > 2) fail("separator file: label out of range");
            labels.push_back(static_cast<Label>(value));
        }
    }
    return labels;
}

}  // namespace nodesep
