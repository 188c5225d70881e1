// rrap command-line front end: evaluate allocations, certify optima with
// the exact DP oracle, run single optimizer searches, drive multi-seed
// benchmark campaigns, and size SLA redundancy.
//
// Exit codes: 0 success, 2 usage/parse/validation error, 3 infeasible
// evaluation (evaluate subcommand only).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rrap/campaign.hpp"
#include "rrap/model.hpp"
#include "rrap/optimizer.hpp"
#include "rrap/oracle.hpp"
#include "rrap/problem_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

std::string format_reliability(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::string join_counts(const rrap::Allocation& alloc) {
    std::string out;
    for (std::size_t i = 0; i < alloc.counts.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(alloc.counts[i]);
    }
    return out;
}

std::vector<int> parse_counts(const std::string& text) {
    std::vector<int> counts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        const int value = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad count: " + item);
        counts.push_back(value);
    }
    if (counts.empty()) throw std::invalid_argument("empty allocation");
    return counts;
}

rrap::Variant parse_variant(const std::string& name) {
    if (name == "hybrid") return rrap::Variant::hybrid;
    if (name == "imhs") return rrap::Variant::imhs;
    if (name == "mde") return rrap::Variant::mde;
    throw std::invalid_argument("unknown algorithm: " + name +
                                " (expected hybrid, imhs, or mde)");
}

// --param k=v overrides for the optimizer configuration.
void apply_params(rrap::HybridConfig& config, const std::vector<std::string>& params) {
    for (const std::string& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("expected key=value, got: " + kv);
        }
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        if (key == "cr") config.cr = std::stod(value);
        else if (key == "f") config.f = std::stod(value);
        else if (key == "bw") config.bw = std::stod(value);
        else if (key == "par") config.par = std::stod(value);
        else if (key == "hmcr") config.hmcr = std::stod(value);
        else if (key == "pop") config.population_size = std::stoi(value);
        else if (key == "phase") config.phase_length = std::stoi(value);
        else if (key == "stall") config.stall_phases = std::stoi(value);
        else throw std::invalid_argument("unknown parameter: " + key);
    }
}

nlohmann::ordered_json evaluation_to_json(const rrap::Evaluation& eval) {
    return {{"reliability", eval.system_reliability},
            {"cost_used", eval.cost_used},
            {"weight_used", eval.weight_used},
            {"feasible", eval.feasible},
            {"violation", eval.violation}};
}

nlohmann::ordered_json trace_to_json(const rrap::RunTrace& trace) {
    nlohmann::ordered_json j;
    j["fe_used"] = trace.fe_used;
    if (trace.fe_to_target) j["fe_to_target"] = *trace.fe_to_target;
    else j["fe_to_target"] = nullptr;
    j["best"] = {{"allocation", trace.best_allocation.counts},
                 {"evaluation", evaluation_to_json(trace.best_evaluation)}};
    auto curve = nlohmann::ordered_json::array();
    for (const rrap::CurvePoint& point : trace.best_curve) {
        curve.push_back({{"fe", point.fe},
                         {"reliability", point.reliability},
                         {"feasible", point.feasible}});
    }
    j["best_curve"] = std::move(curve);
    return j;
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

struct SolveArgs {
    std::string problem_file;
    std::string algo = "hybrid";
    std::uint64_t seed = 1;
    long long max_fe = 250'000;
    std::optional<double> target;
    std::vector<std::string> params;
    std::string out_path;
};

rrap::RunTrace run_single(const SolveArgs& args, const rrap::SerialParallelProblem& problem,
                          rrap::Variant variant) {
    rrap::HybridConfig config;
    config.seed = args.seed;
    config.max_fe = args.max_fe;
    apply_params(config, args.params);
    return variant == rrap::Variant::hybrid
               ? rrap::hybrid_optimize(problem, config, args.target)
               : rrap::solo_optimize(problem, config, variant, args.target);
}

int cmd_evaluate(const std::string& problem_file, const std::string& allocation) {
    const rrap::SerialParallelProblem problem = rrap::load_problem(problem_file);
    const rrap::Allocation alloc{parse_counts(allocation)};
    const rrap::Evaluation eval = rrap::evaluate_constraints(problem, alloc);
    std::cout << "R_s=" << format_reliability(eval.system_reliability)
              << " g1=" << eval.cost_used << " g2=" << eval.weight_used << ' '
              << (eval.feasible ? "feasible" : "infeasible");
    if (!eval.feasible) {
        std::cout << " violation=" << format_reliability(eval.violation);
    }
    std::cout << '\n';
    return eval.feasible ? kExitOk : kExitInfeasible;
}

int cmd_oracle(const std::string& problem_file, std::uint64_t state_cap,
               const std::string& out_path) {
    const rrap::SerialParallelProblem problem = rrap::load_problem(problem_file);
    const rrap::OracleResult result = rrap::solve_exact_dp(problem, state_cap);
    std::cout << "problem=" << problem.name << '\n'
              << "optimal_allocation=" << join_counts(result.best_allocation) << '\n'
              << "optimal_reliability=" << format_reliability(result.best_reliability)
              << '\n'
              << "states_explored=" << result.states_explored << '\n';
    if (!out_path.empty()) {
        nlohmann::ordered_json j;
        j["problem"] = problem.name;
        j["allocation"] = result.best_allocation.counts;
        j["reliability"] = result.best_reliability;
        j["states_explored"] = result.states_explored;
        write_json_file(out_path, j);
    }
    return kExitOk;
}

int cmd_solve(const SolveArgs& args) {
    const rrap::SerialParallelProblem problem = rrap::load_problem(args.problem_file);
    const rrap::Variant variant = parse_variant(args.algo);
    const rrap::RunTrace trace = run_single(args, problem, variant);

    std::cout << "problem=" << problem.name << " algorithm=" << args.algo
              << " seed=" << args.seed << '\n'
              << "best_allocation=" << join_counts(trace.best_allocation) << '\n'
              << "best_reliability="
              << format_reliability(trace.best_evaluation.system_reliability)
              << " feasible=" << (trace.best_evaluation.feasible ? 1 : 0)
              << " cost_used=" << trace.best_evaluation.cost_used
              << " weight_used=" << trace.best_evaluation.weight_used << '\n'
              << "fe_used=" << trace.fe_used << " fe_to_target="
              << (trace.fe_to_target ? std::to_string(*trace.fe_to_target) : "-")
              << '\n';

    if (!args.out_path.empty()) {
        nlohmann::ordered_json j;
        j["problem"] = problem.name;
        j["algorithm"] = args.algo;
        j["seed"] = args.seed;
        j["max_fe"] = args.max_fe;
        if (args.target) j["target"] = *args.target;
        j["trace"] = trace_to_json(trace);
        write_json_file(args.out_path, j);
    }
    return kExitOk;
}

struct BenchArgs {
    std::string problem_file;
    std::string algo = "hybrid";
    int runs = 25;
    std::uint64_t seed = 1;
    long long max_fe = 250'000;
    std::optional<double> target;
    int jobs = 1;
    std::vector<std::string> params;
    std::string csv_path;
    std::string out_path;
};

int cmd_bench(const BenchArgs& args) {
    const rrap::SerialParallelProblem problem = rrap::load_problem(args.problem_file);
    rrap::CampaignConfig config;
    config.algorithm = parse_variant(args.algo);
    config.runs = args.runs;
    config.base_seed = args.seed;
    config.jobs = args.jobs;
    config.target = args.target;
    config.optimizer.max_fe = args.max_fe;
    apply_params(config.optimizer, args.params);

    const rrap::CampaignResult result = rrap::run_campaign(problem, config);

    for (const rrap::RunSummary& run : result.per_run) {
        std::cout << "run seed=" << run.seed << " fe_used=" << run.fe_used
                  << " fe_to_target="
                  << (run.fe_to_target ? std::to_string(*run.fe_to_target) : "-")
                  << " best=" << format_reliability(run.best_reliability)
                  << (run.feasible ? "" : " (infeasible)") << '\n';
    }
    std::cout << "summary problem=" << result.problem_name
              << " algorithm=" << result.algorithm << " runs=" << result.runs
              << " success=" << result.success_count << '\n';
    std::cout << "best_reliability_overall="
              << format_reliability(result.best_reliability_overall) << '\n';
    if (result.fe_to_target_median) {
        std::cout << "fe_to_target_median=" << *result.fe_to_target_median
                  << " fe_to_target_mean=" << *result.fe_to_target_mean << '\n';
    } else {
        std::cout << "fe_to_target_median=- fe_to_target_mean=-\n";
    }
    for (const rrap::ReferenceEntry& ref : rrap::kLiteratureResults) {
        if (std::string(ref.algorithm) == "IMHS+MDE") {
            std::cout << "literature_reference algorithm=" << ref.algorithm
                      << " fe=" << ref.fe << " (literature value, not reproduced)\n";
        }
    }

    if (!args.csv_path.empty()) {
        std::ofstream csv(args.csv_path, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + args.csv_path);
        rrap::write_campaign_csv(result, csv);
    }
    if (!args.out_path.empty()) {
        nlohmann::ordered_json j;
        j["problem"] = result.problem_name;
        j["algorithm"] = result.algorithm;
        j["runs"] = result.runs;
        j["base_seed"] = args.seed;
        j["success_count"] = result.success_count;
        if (result.fe_to_target_median) {
            j["fe_to_target_median"] = *result.fe_to_target_median;
            j["fe_to_target_mean"] = *result.fe_to_target_mean;
        } else {
            j["fe_to_target_median"] = nullptr;
            j["fe_to_target_mean"] = nullptr;
        }
        j["best_reliability_overall"] = result.best_reliability_overall;
        auto runs = nlohmann::ordered_json::array();
        for (const rrap::RunSummary& run : result.per_run) {
            nlohmann::ordered_json r;
            r["seed"] = run.seed;
            r["fe_used"] = run.fe_used;
            if (run.fe_to_target) r["fe_to_target"] = *run.fe_to_target;
            else r["fe_to_target"] = nullptr;
            r["best_reliability"] = run.best_reliability;
            r["feasible"] = run.feasible;
            runs.push_back(std::move(r));
        }
        j["per_run"] = std::move(runs);
        write_json_file(args.out_path, j);
    }
    return kExitOk;
}

struct SlaArgs {
    double r = 0.0;
    double target = 0.0;
    double unit_cost = 1000.0;
    int max_n = 5;
    int max_m = 5;
};

int cmd_sla(const SlaArgs& args) {
    std::cout << "baseline: n=" << args.max_n << " serial_reliability="
              << format_reliability(rrap::serial_reliability(args.r, args.max_n))
              << '\n';
    const rrap::SlaSpec spec{args.r, args.target, args.unit_cost};
    const std::optional<rrap::SlaSizing> sizing =
        rrap::sla_size(spec, args.max_n, args.max_m);
    if (!sizing) {
        std::cout << "NotAchievable: no (n, m) with n<=" << args.max_n << " m<="
                  << args.max_m << " reaches target "
                  << format_reliability(args.target) << '\n'
                  << "note: the serial term caps reliability at r^1="
                  << format_reliability(args.r)
                  << ", so targets above the unit reliability are out of reach\n";
        return kExitOk;
    }
    char cost_buf[32];
    std::snprintf(cost_buf, sizeof cost_buf, "%.0f", sizing->total_cost);
    std::cout << "chosen: n=" << sizing->series_count << " m=" << sizing->parallel_count
              << " reliability=" << format_reliability(sizing->achieved_reliability)
              << " total_cost=" << cost_buf << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial-parallel reliability-redundancy allocation toolkit"};
    app.require_subcommand(1);

    // evaluate
    std::string eval_problem;
    std::string eval_allocation;
    CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate one allocation");
    evaluate->add_option("problem", eval_problem, "problem JSON file")->required();
    evaluate->add_option("allocation", eval_allocation,
                         "comma-separated redundancy counts")->required();

    // oracle
    std::string oracle_problem;
    std::uint64_t state_cap = rrap::kDefaultStateCap;
    std::string oracle_out;
    CLI::App* oracle = app.add_subcommand("oracle", "exact DP global optimum");
    oracle->add_option("problem", oracle_problem, "problem JSON file")->required();
    oracle->add_option("--state-cap", state_cap, "maximum DP states");
    oracle->add_option("--out", oracle_out, "write result JSON here");

    // solve
    SolveArgs solve_args;
    double solve_target = -1.0;
    CLI::App* solve = app.add_subcommand("solve", "single optimizer run");
    solve->add_option("problem", solve_args.problem_file, "problem JSON file")->required();
    solve->add_option("--algo", solve_args.algo, "hybrid, imhs, or mde");
    solve->add_option("--seed", solve_args.seed, "RNG seed");
    solve->add_option("--max-fe", solve_args.max_fe, "evaluation budget");
    solve->add_option("--target", solve_target, "stop upon reaching this reliability");
    solve->add_option("--params", solve_args.params, "optimizer overrides, key=value");
    solve->add_option("--out", solve_args.out_path, "write run JSON here");

    // bench
    BenchArgs bench_args;
    double bench_target = -1.0;
    CLI::App* bench = app.add_subcommand("bench", "multi-seed benchmark campaign");
    bench->add_option("problem", bench_args.problem_file, "problem JSON file")->required();
    bench->add_option("--algo", bench_args.algo, "hybrid, imhs, or mde");
    bench->add_option("--runs", bench_args.runs, "independent runs");
    bench->add_option("--seed", bench_args.seed, "base seed; run k uses base+k");
    bench->add_option("--max-fe", bench_args.max_fe, "evaluation budget per run");
    bench->add_option("--target", bench_target, "success threshold reliability");
    bench->add_option("--jobs", bench_args.jobs, "concurrent runs");
    bench->add_option("--params", bench_args.params, "optimizer overrides, key=value");
    bench->add_option("--csv", bench_args.csv_path, "write per-run CSV here");
    bench->add_option("--out", bench_args.out_path, "write campaign JSON here");

    // sla
    SlaArgs sla_args;
    CLI::App* sla = app.add_subcommand("sla", "size redundancy against an SLA target");
    sla->add_option("--r", sla_args.r, "per-component reliability")->required();
    sla->add_option("--target", sla_args.target, "required reliability")->required();
    sla->add_option("--unit-cost", sla_args.unit_cost, "cost per component");
    sla->add_option("--max-n", sla_args.max_n, "series bound");
    sla->add_option("--max-m", sla_args.max_m, "parallel bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*evaluate) return cmd_evaluate(eval_problem, eval_allocation);
        if (*oracle) return cmd_oracle(oracle_problem, state_cap, oracle_out);
        if (*solve) {
            if (solve_target >= 0.0) solve_args.target = solve_target;
            return cmd_solve(solve_args);
        }
        if (*bench) {
            if (bench_target >= 0.0) bench_args.target = bench_target;
            return cmd_bench(bench_args);
        }
        if (*sla) return cmd_sla(sla_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
