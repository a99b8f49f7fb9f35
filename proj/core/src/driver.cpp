#include "nodesep/driver.hpp"

#include <chrono>
#include <stdexcept>

#include "nodesep/flow_refine.hpp"
#include "nodesep/fm_localsearch.hpp"
#include "nodesep/initial_separator.hpp"

namespace nodesep {

namespace {

RatingKind random_other_rating(RatingKind current, Rng& rng) {
    std::vector<RatingKind> others;
    for (RatingKind kind : kAllRatings) {
        if (kind != current) others.push_back(kind);
    }
    return others[rng.index(others.size())];
}

bool strictly_better(const Partition3& a, const Partition3& b) {
    if (a.separator_weight() != b.separator_weight()) {
        return a.separator_weight() < b.separator_weight();
    }
    return a.max_block_weight() < b.max_block_weight();
}

Partition3 refine_level(const Graph& g, Partition3 p, const BalanceSpec& spec,
                        const SepConfig& cfg, Rng& rng) {
    if (cfg.mode == SearchMode::LsPlusFlow) {
        Rng ls_rng = rng.fork(0);
        p = local_search(g, p, spec, cfg.subset_size, ls_rng);
    }
    Rng flow_rng = rng.fork(1);
    return adaptive_flow_refine(g, p, spec, cfg.alpha, cfg.topo_orders, flow_rng);
}

}  // namespace

SepConfig preset_config(const std::string& name) {
    SepConfig cfg;
    if (name == "flow0" || name == "lsflow0") {
        cfg.alpha = 0.0;
    } else if (name == "flow0.5" || name == "lsflow0.5") {
        cfg.alpha = 0.5;
    } else if (name == "flow1" || name == "lsflow1") {
        cfg.alpha = 1.0;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    cfg.mode = name.starts_with("ls") ? SearchMode::LsPlusFlow : SearchMode::FlowOnly;
    return cfg;
}

std::string preset_name(const SepConfig& cfg) {
    std::string name = cfg.mode == SearchMode::LsPlusFlow ? "lsflow" : "flow";
    if (cfg.alpha == 0.0) return name + "0";
    if (cfg.alpha == 0.5) return name + "0.5";
    if (cfg.alpha == 1.0) return name + "1";
    return name + std::to_string(cfg.alpha);
}

const std::vector<std::string>& known_presets() {
    static const std::vector<std::string> presets = {"flow0",   "flow0.5",   "flow1",
                                                     "lsflow0", "lsflow0.5", "lsflow1"};
    return presets;
}

Partition3 run_multilevel(const Graph& g, const SepConfig& cfg, const Partition3* pinned,
                          Rng& rng) {
    const BalanceSpec spec(g.total_node_weight(), cfg.epsilon);

    std::vector<Label> pinned_labels;
    if (pinned) {
        pinned_labels.resize(g.n());
        for (NodeID v = 0; v < g.n(); ++v) pinned_labels[v] = pinned->label(v);
    }
    Rng coarsen_rng = rng.fork(1);
    const Hierarchy hierarchy = build_hierarchy(g, cfg.rating, cfg.coarsest_target,
                                                pinned ? &pinned_labels : nullptr, coarsen_rng);

    const std::size_t num_levels = hierarchy.num_levels();
    const Graph& coarsest = hierarchy.coarsest();

    Rng initial_rng = rng.fork(2);
    Partition3 current =
        compute_initial(coarsest, spec, cfg.initial_reps, cfg.topo_orders, initial_rng);
    if (const std::vector<Label>* projected = hierarchy.pinned_on_coarsest()) {
        Partition3 adopted(coarsest, Label::Block1);
        for (NodeID v = 0; v < coarsest.n(); ++v) adopted.set_label(v, (*projected)[v]);
        if (!strictly_better(current, adopted)) current = std::move(adopted);
    }

    for (std::size_t level = num_levels; level-- > 0;) {
        const Graph& level_graph = hierarchy.graph_at(level);
        if (level + 1 < num_levels) {
            // Project through the contraction: both fine endpoints of a
            // matched pair inherit the coarse label.
            const CoarseLevel& maps = hierarchy.level(level);
            Partition3 fine(level_graph, Label::Block1);
            for (NodeID v = 0; v < level_graph.n(); ++v) {
                fine.set_label(v, current.label(maps.fine_to_coarse[v]));
            }
            current = std::move(fine);
        }
        Rng level_rng = rng.fork(100 + level);
        current = refine_level(level_graph, std::move(current), spec, cfg, level_rng);
    }
    return current;
}

Partition3 vcycle_solve(const Graph& g, const SepConfig& cfg, Rng& rng,
                        std::vector<NodeWeight>* cycle_weights) {
    Rng first_rng = rng.fork(0);
    Partition3 best = run_multilevel(g, cfg, nullptr, first_rng);
    if (cycle_weights) cycle_weights->push_back(best.separator_weight());

    for (int cycle = 1; cycle < cfg.vcycles; ++cycle) {
        Rng cycle_rng = rng.fork(static_cast<std::uint64_t>(cycle));
        SepConfig cycle_cfg = cfg;
        cycle_cfg.rating = random_other_rating(cfg.rating, cycle_rng);
        Partition3 candidate = run_multilevel(g, cycle_cfg, &best, cycle_rng);
        if (strictly_better(candidate, best)) best = std::move(candidate);
        if (cycle_weights) cycle_weights->push_back(best.separator_weight());
    }
    return best;
}

RunResult solve_with_report(const Graph& g, const SepConfig& cfg, Partition3* out) {
    RunResult result;
    result.seed = cfg.seed;
    const auto start = std::chrono::steady_clock::now();
    Rng rng(cfg.seed);
    Partition3 partition = vcycle_solve(g, cfg, rng);
    const auto stop = std::chrono::steady_clock::now();
    result.seconds = std::chrono::duration<double>(stop - start).count();

    const BalanceSpec spec(g.total_node_weight(), cfg.epsilon);
    const ValidityReport report = validate_separator(g, partition, spec);
    result.valid = report.is_separator;
    result.balanced = report.is_balanced;
    result.separator_weight = report.separator_weight;
    result.block1_weight = partition.block_weight(Label::Block1);
    result.block2_weight = partition.block_weight(Label::Block2);
    const NodeWeight half = (g.total_node_weight() + 1) / 2;
    result.balance = half > 0 ? static_cast<double>(partition.max_block_weight()) /
                                    static_cast<double>(half)
                              : 0.0;
    if (out) *out = std::move(partition);
    return result;
}

}  // namespace nodesep
