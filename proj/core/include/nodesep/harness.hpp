#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nodesep/driver.hpp"

namespace nodesep {

struct HarnessOptions {
    std::vector<std::string> instances;
    std::vector<std::string> presets = {"lsflow1"};
    int num_seeds = 10;
    std::uint64_t first_seed = 0;
    double epsilon = 0.20;
    std::optional<int> vcycles;           // overrides the preset default when set
    std::string runs_csv;                 // per-run rows, empty = do not write
    std::string summary_csv;              // Avg/Best/Bal rows, empty = do not write
    std::string reference_csv;            // optional "graph,preset,best" reference values
    std::vector<std::string> exclude;     // graphs left out of the aggregate comparison
    int jobs = 1;
};

struct RunRow {
    std::string graph;
    NodeID n = 0;
    EdgeID m = 0;
    std::string preset;
    std::uint64_t seed = 0;
    NodeWeight sep_weight = 0;
    NodeWeight c1 = 0;
    NodeWeight c2 = 0;
    double balance = 0.0;
    double seconds = 0.0;
    bool balanced = false;
};

struct SummaryRow {
    std::string graph;
    std::string preset;
    int runs = 0;
    double avg = 0.0;
    NodeWeight best = 0;
    double avg_balance = 0.0;
    std::optional<NodeWeight> reference_best;
    std::optional<double> delta_percent;  // (best - reference) / reference * 100
    bool excluded = false;
};

struct HarnessReport {
    std::vector<RunRow> runs;
    std::vector<SummaryRow> summaries;
    std::vector<std::string> missing_instances;
    bool all_balanced = true;
    double total_seconds = 0.0;
};

// Runs every (instance, preset, seed) job; jobs are independent and may run
// on `jobs` threads without affecting results. Missing instances are
// recorded and skipped.
HarnessReport run_harness(const HarnessOptions& options, std::ostream& log);

void write_runs_csv(const std::vector<RunRow>& runs, std::ostream& out);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

}  // namespace nodesep
