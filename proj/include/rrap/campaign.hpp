#ifndef RRAP_CAMPAIGN_HPP
#define RRAP_CAMPAIGN_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rrap/model.hpp"
#include "rrap/optimizer.hpp"

// Multi-seed benchmark campaigns: R independent optimizer runs (run k uses
// seed base_seed + k), optionally executed concurrently, aggregated into
// success counts and FE-to-target statistics.

namespace rrap {

struct CampaignConfig {
    Variant algorithm = Variant::hybrid;
    int runs = 25;
    std::uint64_t base_seed = 1;
    int jobs = 1;  // concurrent runs; results do not depend on this
    std::optional<double> target;
    HybridConfig optimizer;
};

struct RunSummary {
    std::uint64_t seed = 0;
    long long fe_used = 0;
    std::optional<long long> fe_to_target;
    double best_reliability = 0.0;
    bool feasible = false;
};

struct CampaignResult {
    std::string problem_name;
    std::string algorithm;
    int runs = 0;
    int success_count = 0;  // runs that matched the target
    std::optional<double> fe_to_target_median;  // over successful runs
    std::optional<double> fe_to_target_mean;    // over successful runs
    double best_reliability_overall = 0.0;
    std::vector<RunSummary> per_run;  // ordered by run index
    std::vector<RunTrace> traces;     // ordered by run index
};

const char* variant_name(Variant variant);

CampaignResult run_campaign(const SerialParallelProblem& problem,
                            const CampaignConfig& config);

/// Fixed header `seed,fe_used,fe_to_target,best_reliability,feasible`, one
/// row per run, then a summary row (seed column = "summary") carrying the
/// median fe_to_target, the overall best reliability, and the success count.
void write_campaign_csv(const CampaignResult& result, std::ostream& out);

// Published results for this benchmark family — literature values, not
// reproduced by this codebase; kept for side-by-side reporting only.
struct ReferenceEntry {
    const char* algorithm;
    double reliability;
    long long fe;  // <0 when unreported
};

inline constexpr ReferenceEntry kLiteratureResults[] = {
    {"IMHS+MDE", 0.945613, 25890},
    {"IMHS", 0.945613, 28377},
    {"MGDA", 0.945613, 217157},
    {"ACO", 0.945613, 244000},
    {"INESA", 0.944749, -1},
    {"SA", 0.943259, -1},
    {"Luus", 0.944749, -1},
};

}  // namespace rrap

#endif  // RRAP_CAMPAIGN_HPP
