#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nodesep/coarsening.hpp"
#include "nodesep/graph.hpp"
#include "nodesep/partition.hpp"
#include "nodesep/rng.hpp"

namespace nodesep {

enum class SearchMode {
    FlowOnly,   // only flow refinement during uncoarsening
    LsPlusFlow  // local search first on each level, then flow refinement
};

struct SepConfig {
    double epsilon = 0.20;
    double alpha = 1.0;
    SearchMode mode = SearchMode::LsPlusFlow;
    int vcycles = 3;
    int initial_reps = 25;
    NodeID coarsest_target = 10000;
    RatingKind rating = RatingKind::ExpStar;
    int subset_size = 5;
    int topo_orders = 20;
    std::uint64_t seed = 0;
};

// flow0 | flow0.5 | flow1 | lsflow0 | lsflow0.5 | lsflow1
SepConfig preset_config(const std::string& name);
std::string preset_name(const SepConfig& cfg);
const std::vector<std::string>& known_presets();

// One multilevel pass: coarsen (respecting a pinned solution when given),
// solve on the coarsest graph (adopting the projected pinned solution if it
// is no worse than the computed one), then uncoarsen level by level with
// refinement after every projection.
Partition3 run_multilevel(const Graph& g, const SepConfig& cfg, const Partition3* pinned,
                          Rng& rng);

// Iterated multilevel scheme: after the first pass, later cycles re-coarsen
// with the current solution pinned and a random other edge rating, keeping
// the previous solution unless the new one is strictly better. The weight
// sequence is non-increasing; `cycle_weights`, when given, receives it.
Partition3 vcycle_solve(const Graph& g, const SepConfig& cfg, Rng& rng,
                        std::vector<NodeWeight>* cycle_weights = nullptr);

struct RunResult {
    NodeWeight separator_weight = 0;
    NodeWeight block1_weight = 0;
    NodeWeight block2_weight = 0;
    double balance = 0.0;  // max block weight / ceil(total/2)
    double seconds = 0.0;
    std::uint64_t seed = 0;
    bool valid = false;
    bool balanced = false;
};

RunResult solve_with_report(const Graph& g, const SepConfig& cfg, Partition3* out = nullptr);

}  // namespace nodesep
