#include "nodesep/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "nodesep/graph_io.hpp"

namespace nodesep {

namespace {

std::string basename_no_ext(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

std::map<std::pair<std::string, std::string>, NodeWeight> load_reference(
    const std::string& path, std::ostream& log) {
    std::map<std::pair<std::string, std::string>, NodeWeight> reference;
    std::ifstream in(path);
    if (!in) {
        log << "harness: cannot open reference csv " << path << "\n";
        return reference;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::string graph, preset;
        long long best;
        if (ss >> graph >> preset >> best) {
            reference[{graph, preset}] = best;
        }
    }
    return reference;
}

}  // namespace

HarnessReport run_harness(const HarnessOptions& options, std::ostream& log) {
    HarnessReport report;
    const auto harness_start = std::chrono::steady_clock::now();

    struct Instance {
        std::string name;
        Graph graph;
    };
    std::vector<Instance> instances;
    for (const std::string& path : options.instances) {
        try {
            instances.push_back({basename_no_ext(path), read_metis_file(path)});
        } catch (const std::exception& error) {
            log << "harness: skipping " << path << ": " << error.what() << "\n";
            report.missing_instances.push_back(path);
        }
    }

    struct Job {
        std::size_t instance;
        std::string preset;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (const std::string& preset : options.presets) {
            for (int s = 0; s < options.num_seeds; ++s) {
                jobs.push_back({i, preset, options.first_seed + static_cast<std::uint64_t>(s)});
            }
        }
    }

    report.runs.resize(jobs.size());
    std::atomic<std::size_t> next_job{0};
    std::atomic<bool> all_balanced{true};

    auto worker = [&] {
        for (;;) {
            const std::size_t job_index = next_job.fetch_add(1);
            if (job_index >= jobs.size()) break;
            const Job& job = jobs[job_index];
            const Instance& instance = instances[job.instance];

            SepConfig cfg = preset_config(job.preset);
            cfg.epsilon = options.epsilon;
            if (options.vcycles) cfg.vcycles = *options.vcycles;
            cfg.seed = job.seed;

            const RunResult run = solve_with_report(instance.graph, cfg);
            RunRow& row = report.runs[job_index];
            row.graph = instance.name;
            row.n = instance.graph.n();
            row.m = instance.graph.m();
            row.preset = job.preset;
            row.seed = job.seed;
            row.sep_weight = run.separator_weight;
            row.c1 = run.block1_weight;
            row.c2 = run.block2_weight;
            row.balance = run.balance;
            row.seconds = run.seconds;
            row.balanced = run.valid && run.balanced;
            if (!row.balanced) all_balanced.store(false);
        }
    };

    const int num_threads = std::max(1, options.jobs);
    if (num_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < num_threads; ++t) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
    }
    report.all_balanced = all_balanced.load();

    const auto reference = options.reference_csv.empty()
                               ? std::map<std::pair<std::string, std::string>, NodeWeight>{}
                               : load_reference(options.reference_csv, log);

    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (const std::string& preset : options.presets) {
            SummaryRow summary;
            summary.graph = instances[i].name;
            summary.preset = preset;
            double sum = 0.0;
            double balance_sum = 0.0;
            NodeWeight best = 0;
            for (const RunRow& row : report.runs) {
                if (row.graph != summary.graph || row.preset != preset) continue;
                if (summary.runs == 0 || row.sep_weight < best) best = row.sep_weight;
                sum += static_cast<double>(row.sep_weight);
                balance_sum += row.balance;
                ++summary.runs;
            }
            if (summary.runs == 0) continue;
            summary.avg = sum / summary.runs;
            summary.best = best;
            summary.avg_balance = balance_sum / summary.runs;
            summary.excluded = std::find(options.exclude.begin(), options.exclude.end(),
                                         summary.graph) != options.exclude.end();
            const auto ref = reference.find({summary.graph, preset});
            if (ref != reference.end() && ref->second > 0) {
                summary.reference_best = ref->second;
                summary.delta_percent = 100.0 *
                                        (static_cast<double>(best) -
                                         static_cast<double>(ref->second)) /
                                        static_cast<double>(ref->second);
            }
            report.summaries.push_back(std::move(summary));
        }
    }

    if (!options.runs_csv.empty()) {
        std::ofstream out(options.runs_csv);
        if (!out) {
            log << "harness: cannot write " << options.runs_csv << "\n";
        } else {
            write_runs_csv(report.runs, out);
        }
    }
    if (!options.summary_csv.empty()) {
        std::ofstream out(options.summary_csv);
        if (!out) {
            log << "harness: cannot write " << options.summary_csv << "\n";
        } else {
            write_summary_csv(report.summaries, out);
        }
    }

    report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - harness_start).count();
    return report;
}

void write_runs_csv(const std::vector<RunRow>& runs, std::ostream& out) {
    out << "# decimal separator is '.'\n";
    out << "graph,n,m,preset,seed,sep_weight,c1,c2,balance,seconds\n";
    for (const RunRow& row : runs) {
        out << row.graph << ',' << row.n << ',' << row.m << ',' << row.preset << ','
            << row.seed << ',' << row.sep_weight << ',' << row.c1 << ',' << row.c2 << ','
            << std::fixed << std::setprecision(2) << row.balance << ','
            << std::setprecision(3) << row.seconds << '\n';
        out.unsetf(std::ios_base::floatfield);
    }
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out) {
    out << "# decimal separator is '.'\n";
    out << "graph,preset,runs,avg,best,bal,ref_best,delta_pct,excluded\n";
    for (const SummaryRow& row : rows) {
        out << row.graph << ',' << row.preset << ',' << row.runs << ',' << std::fixed
            << std::setprecision(1) << row.avg << ',' << row.best << ','
            << std::setprecision(2) << row.avg_balance << ',';
        if (row.reference_best) {
            out << *row.reference_best << ',' << std::setprecision(2) << *row.delta_percent;
        } else {
            out << ',';
        }
        out << ',' << (row.excluded ? 1 : 0) << '\n';
        out.unsetf(std::ios_base::floatfield);
    }
}

}  // namespace nodesep
