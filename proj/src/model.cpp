#include "rrap/model.hpp"

#include <algorithm>
#include <cmath>

namespace rrap {

namespace {

// log(1 - e^x) for x < 0, switching forms at -ln2 to keep precision.
double log1mexp(double x) {
    static const double kLn2 = std::log(2.0);
    return x > -kLn2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

void check_lengths(const SerialParallelProblem& problem, const Allocation& alloc) {
    if (static_cast<int>(alloc.counts.size()) != problem.size()) {
        throw LengthMismatchError(
            "allocation has " + std::to_string(alloc.counts.size()) +
            " entries, problem has " + std::to_string(problem.size()) +
            " subsystems");
    }
}

}  // namespace

void validate_problem(const SerialParallelProblem& problem) {
    if (problem.subsystems.empty()) {
        throw InvalidProblemError("problem needs at least one subsystem");
    }
    long long cost_floor = 0;
    long long weight_floor = 0;
    for (std::size_t i = 0; i < problem.subsystems.size(); ++i) {
        const Subsystem& s = problem.subsystems[i];
        if (!(s.reliability > 0.0 && s.reliability < 1.0)) {
            throw InvalidProblemError("subsystem " + std::to_string(i + 1) +
                                      ": reliability must lie in (0,1)");
        }
        if (s.cost < 1 || s.weight < 1) {
            throw InvalidProblemError("subsystem " + std::to_string(i + 1) +
                                      ": cost and weight must be >= 1");
        }
        cost_floor += s.cost;
        weight_floor += s.weight;
    }
    if (problem.cost_budget < cost_floor) {
        throw InvalidProblemError("cost budget " + std::to_string(problem.cost_budget) +
                                  " cannot afford one component per subsystem (needs " +
                                  std::to_string(cost_floor) + ")");
    }
    if (problem.weight_budget < weight_floor) {
        throw InvalidProblemError("weight budget " + std::to_string(problem.weight_budget) +
                                  " cannot afford one component per subsystem (needs " +
                                  std::to_string(weight_floor) + ")");
    }
}

double subsystem_reliability(double reliability, int count) {
    // (1-r)^count = e^{count * log1p(-r)}
    return -std::expm1(static_cast<double>(count) * std::log1p(-reliability));
}

double log_subsystem_reliability(double reliability, int count) {
    return log1mexp(static_cast<double>(count) * std::log1p(-reliability));
}

double evaluate_reliability(const SerialParallelProblem& problem,
                            const Allocation& alloc) {
    check_lengths(problem, alloc);
    double log_sum = 0.0;
    for (int i = 0; i < problem.size(); ++i) {
        const int x = alloc.counts[i];
        if (x < 1) {
            throw InvalidAllocationError("x_" + std::to_string(i + 1) +
                                         " = " + std::to_string(x) + ", must be >= 1");
        }
        log_sum += log_subsystem_reliability(problem.subsystems[i].reliability, x);
    }
    return std::exp(log_sum);
}

Evaluation evaluate_constraints(const SerialParallelProblem& problem,
                                const Allocation& alloc) {
    check_lengths(problem, alloc);
    Evaluation eval;
    for (int i = 0; i < problem.size(); ++i) {
        const Subsystem& s = problem.subsystems[i];
        eval.cost_used += static_cast<long long>(s.cost) * alloc.counts[i];
        eval.weight_used += static_cast<long long>(s.weight) * alloc.counts[i];
    }
    eval.system_reliability = evaluate_reliability(problem, alloc);
    eval.feasible = eval.cost_used <= problem.cost_budget &&
                    eval.weight_used <= problem.weight_budget;
    const double cost_over =
        static_cast<double>(std::max<long long>(0, eval.cost_used - problem.cost_budget));
    const double weight_over =
        static_cast<double>(std::max<long long>(0, eval.weight_used - problem.weight_budget));
    eval.violation = cost_over / static_cast<double>(problem.cost_budget) +
                     weight_over / static_cast<double>(problem.weight_budget);
    return eval;
}

std::weak_ordering compare(const Evaluation& a, const Evaluation& b) {
    if (a.feasible != b.feasible) {
        return a.feasible ? std::weak_ordering::greater : std::weak_ordering::less;
    }
    if (a.feasible) {
        if (a.system_reliability < b.system_reliability) return std::weak_ordering::less;
        if (a.system_reliability > b.system_reliability) return std::weak_ordering::greater;
        return std::weak_ordering::equivalent;
    }
    if (a.violation > b.violation) return std::weak_ordering::less;
    if (a.violation < b.violation) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
}

double serial_reliability(double reliability, int count) {
    return std::pow(reliability, count);
}

double sla_reliability(double reliability, int series_count, int parallel_count) {
    return serial_reliability(reliability, series_count) *
           subsystem_reliability(reliability, parallel_count);
}

std::optional<SlaSizing> sla_size(const SlaSpec& spec, int max_n, int max_m) {
    if (!(spec.unit_reliability > 0.0 && spec.unit_reliability < 1.0)) {
        throw std::invalid_argument("unit reliability must lie in (0,1)");
    }
    if (!(spec.target > 0.0 && spec.target < 1.0)) {
        throw std::invalid_argument("target must lie in (0,1)");
    }
    if (max_n < 1 || max_m < 1) {
        throw std::invalid_argument("search bounds must be >= 1");
    }
    std::optional<SlaSizing> best;
    for (int n = 1; n <= max_n; ++n) {
        for (int m = 1; m <= max_m; ++m) {
            const double rel = sla_reliability(spec.unit_reliability, n, m);
            if (rel < spec.target) continue;
            const double cost = spec.unit_cost * (n + m);
            // ascending (n, m) scan: strict < keeps the smallest n, then m,
            // among equal-cost pairs
            if (!best || cost < best->total_cost) {
                best = SlaSizing{n, m, cost, rel};
            }
        }
    }
    return best;
}

}  // namespace rrap
