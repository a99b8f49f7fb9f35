#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "nodesep/graph.hpp"
#include "nodesep/partition.hpp"
#include "nodesep/rng.hpp"

namespace nodesep {

// Edge ratings guiding which edges a matching should contract. Weight is the
// plain edge-weight baseline; the others divide structural degree terms out
// so that low-degree nodes survive coarsening.
enum class RatingKind { ExpStar, Exp2Star, Max, Log, Weight };

inline constexpr std::array<RatingKind, 5> kAllRatings = {
    RatingKind::ExpStar, RatingKind::Exp2Star, RatingKind::Max,
    RatingKind::Log, RatingKind::Weight};

// Rating of edge {u,v} with weight `weight` on the current level. Degrees are
// the unweighted adjacency-list degrees. For Log with d(u)*d(v) == 1 a large
// sentinel is returned so isolated pairs always match.
double rate_edge(const Graph& g, NodeID u, NodeID v, EdgeWeight weight, RatingKind kind);

struct Matching {
    std::vector<NodeID> partner;  // kInvalidNode when unmatched
    double rating_sum = 0.0;
    NodeID num_pairs = 0;
};

using EdgePredicate = std::function<bool(NodeID, NodeID)>;

// Global Path Algorithm: scan edges by decreasing rating (ties shuffled),
// grow a collection of paths and even cycles, then take the optimum matching
// of each chain by dynamic programming. Forbidden edges are never matched.
Matching gpa_matching(const Graph& g, RatingKind kind, const EdgePredicate& forbidden, Rng& rng);

// Optimum matching of one chain given its edge ratings in order; `closed`
// marks a cycle whose last rating closes it (cycles are evaluated once
// without the closing edge and once forcing it). Returns the total rating
// and a pick flag per edge. Exposed for tests.
std::pair<double, std::vector<char>> best_chain_matching(const std::vector<double>& ratings,
                                                         bool closed);

struct CoarseLevel {
    Graph coarse_graph;
    std::vector<NodeID> fine_to_coarse;
    std::vector<std::array<NodeID, 2>> coarse_to_fine;  // [1] == kInvalidNode for singletons
};

// Contract all matched pairs: node weights add up, parallel coarse edges are
// merged by summing weights, the matched edge itself disappears.
CoarseLevel contract(const Graph& g, const Matching& m);

// Stack of contracted graphs. Level 0 is the input graph; level i+1 is the
// contraction of level i.
class Hierarchy {
public:
    explicit Hierarchy(const Graph& finest) : finest_(&finest) {}

    std::size_t num_levels() const { return 1 + levels_.size(); }
    const Graph& graph_at(std::size_t level) const {
        return level == 0 ? *finest_ : levels_[level - 1].coarse_graph;
    }
    const Graph& coarsest() const { return graph_at(num_levels() - 1); }

    // Maps from graph_at(i) node ids to graph_at(i+1) node ids.
    const CoarseLevel& level(std::size_t i) const { return levels_[i]; }

    // Pinned solution projected onto the coarsest graph, when one was given.
    const std::vector<Label>* pinned_on_coarsest() const {
        return pinned_coarsest_ ? &*pinned_coarsest_ : nullptr;
    }

    void push_level(CoarseLevel level) { levels_.push_back(std::move(level)); }
    void set_pinned_coarsest(std::vector<Label> labels) { pinned_coarsest_ = std::move(labels); }

private:
    const Graph* finest_;
    std::vector<CoarseLevel> levels_;
    std::optional<std::vector<Label>> pinned_coarsest_;
};

// Match and contract until the coarsest graph falls below `coarsest_target`
// nodes or a contraction shrinks the node count by less than 5%. When
// `pinned` is given, edges whose endpoints carry different labels are never
// matched, so the solution projects uniquely through every level.
Hierarchy build_hierarchy(const Graph& g, RatingKind rating, NodeID coarsest_target,
                          const std::vector<Label>* pinned, Rng& rng);

}  // namespace nodesep
