#include "rrap/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace rrap {

const char* variant_name(Variant variant) {
    switch (variant) {
        case Variant::hybrid: return "hybrid";
        case Variant::imhs: return "imhs";
        case Variant::mde: return "mde";
    }
    return "?";
}

CampaignResult run_campaign(const SerialParallelProblem& problem,
                            const CampaignConfig& config) {
    if (config.runs < 1) throw std::invalid_argument("campaign needs at least one run");
    if (config.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    validate_problem(problem);
    validate_config(config.optimizer);

    std::vector<RunTrace> traces(config.runs);
    auto execute = [&](int k) {
        HybridConfig run_config = config.optimizer;
        run_config.seed = config.base_seed + static_cast<std::uint64_t>(k);
        traces[k] = config.algorithm == Variant::hybrid
                        ? hybrid_optimize(problem, run_config, config.target)
                        : solo_optimize(problem, run_config, config.algorithm,
                                        config.target);
    };

    if (config.jobs == 1 || config.runs == 1) {
        for (int k = 0; k < config.runs; ++k) execute(k);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int k = next.fetch_add(1); k < config.runs; k = next.fetch_add(1)) {
                execute(k);
            }
        };
        const int thread_count = std::min(config.jobs, config.runs);
        std::vector<std::thread> threads;
        threads.reserve(thread_count);
        for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }

    CampaignResult result;
    result.problem_name = problem.name;
    result.algorithm = variant_name(config.algorithm);
    result.runs = config.runs;

    std::vector<long long> hits;
    const RunTrace* best_trace = nullptr;
    for (int k = 0; k < config.runs; ++k) {
        const RunTrace& trace = traces[k];
        RunSummary summary;
        summary.seed = config.base_seed + static_cast<std::uint64_t>(k);
        summary.fe_used = trace.fe_used;
        summary.fe_to_target = trace.fe_to_target;
        summary.best_reliability = trace.best_evaluation.system_reliability;
        summary.feasible = trace.best_evaluation.feasible;
        result.per_run.push_back(summary);
        if (trace.fe_to_target) hits.push_back(*trace.fe_to_target);
        if (!best_trace || beats(trace.best_evaluation, best_trace->best_evaluation)) {
            best_trace = &trace;
        }
    }
    result.success_count = static_cast<int>(hits.size());
    result.best_reliability_overall = best_trace->best_evaluation.system_reliability;
    if (!hits.empty()) {
        std::sort(hits.begin(), hits.end());
        const std::size_t mid = hits.size() / 2;
        result.fe_to_target_median =
            hits.size() % 2 == 1
                ? static_cast<double>(hits[mid])
                : 0.5 * (static_cast<double>(hits[mid - 1]) + static_cast<double>(hits[mid]));
        result.fe_to_target_mean =
            static_cast<double>(std::accumulate(hits.begin(), hits.end(), 0LL)) /
            static_cast<double>(hits.size());
    }
    result.traces = std::move(traces);
    return result;
}

void write_campaign_csv(const CampaignResult& result, std::ostream& out) {
    out << "seed,fe_used,fe_to_target,best_reliability,feasible\n";
    char buf[64];
    for (const RunSummary& run : result.per_run) {
        out << run.seed << ',' << run.fe_used << ',';
        if (run.fe_to_target) out << *run.fe_to_target;
        std::snprintf(buf, sizeof buf, "%.9f", run.best_reliability);
        out << ',' << buf << ',' << (run.feasible ? 1 : 0) << '\n';
    }
    out << "summary,,";
    if (result.fe_to_target_median) {
        std::snprintf(buf, sizeof buf, "%g", *result.fe_to_target_median);
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.9f", result.best_reliability_overall);
    out << ',' << buf << ',' << result.success_count << '\n';
}

}  // namespace rrap
