#ifndef RRAP_MODEL_HPP
#define RRAP_MODEL_HPP

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Core model for the serial-parallel reliability-redundancy allocation
// problem (RRAP): N subsystems in series, subsystem i holding x_i identical
// components in parallel. System reliability is
//
//   R_s = prod_i [1 - (1 - R_i)^x_i]
//
// subject to linear cost and weight budgets sum(C_i x_i) and sum(W_i x_i).
// All functions here are pure; they can be called concurrently.

namespace rrap {

class LengthMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidAllocationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidProblemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Subsystem {
    double reliability = 0.0;  // component reliability, in (0,1)
    int cost = 0;              // cost units per component, >= 1
    int weight = 0;            // weight units per component, >= 1
};

struct SerialParallelProblem {
    std::string name;
    std::vector<Subsystem> subsystems;
    long long cost_budget = 0;
    long long weight_budget = 0;

    int size() const { return static_cast<int>(subsystems.size()); }
};

/// Integer redundancy vector x_1..x_N, every x_i >= 1.
struct Allocation {
    std::vector<int> counts;

    bool operator==(const Allocation&) const = default;
};

/// Result of evaluating one allocation against a problem.
struct Evaluation {
    double system_reliability = 0.0;
    long long cost_used = 0;
    long long weight_used = 0;
    bool feasible = false;
    double violation = 0.0;  // normalized overshoot, 0 iff feasible
};

/// Throws InvalidProblemError unless the instance is well formed: N >= 1,
/// every reliability in (0,1), cost/weight >= 1, and both budgets large
/// enough to afford one component per subsystem (every x_i >= 1 is
/// structural, so anything tighter has no feasible allocation).
void validate_problem(const SerialParallelProblem& problem);

/// Reliability of one subsystem with `count` parallel components:
/// 1 - (1-r)^count, computed via expm1/log1p so large counts do not
/// collapse to 1 prematurely.
double subsystem_reliability(double reliability, int count);

/// log(1 - (1-r)^count), the summand used by log-space evaluation.
double log_subsystem_reliability(double reliability, int count);

/// System reliability of `alloc`, computed by summing per-subsystem log
/// terms and exponentiating (stable for problems far larger than N=15).
/// Throws LengthMismatchError / InvalidAllocationError on malformed input.
double evaluate_reliability(const SerialParallelProblem& problem,
                            const Allocation& alloc);

/// Full evaluation: exact integer resource sums, feasibility, normalized
/// violation, and system reliability.
Evaluation evaluate_constraints(const SerialParallelProblem& problem,
                                const Allocation& alloc);

/// Deb feasibility ordering. `greater` means `a` is the better solution:
/// feasible beats infeasible; among feasible, higher reliability wins;
/// among infeasible, lower violation wins. Exact ties are equivalent.
std::weak_ordering compare(const Evaluation& a, const Evaluation& b);

inline bool beats(const Evaluation& a, const Evaluation& b) {
    return compare(a, b) == std::weak_ordering::greater;
}

// ---------------------------------------------------------------------------
// SLA sizing: how many components in series (n) and parallel (m) are needed
// to meet an uptime target, using R = r^n * (1 - (1-r)^m).

struct SlaSpec {
    double unit_reliability = 0.0;  // per-component reliability, in (0,1)
    double target = 0.0;            // required system reliability, in (0,1)
    double unit_cost = 0.0;         // currency per component
};

struct SlaSizing {
    int series_count = 0;
    int parallel_count = 0;
    double total_cost = 0.0;  // unit_cost * (n + m)
    double achieved_reliability = 0.0;
};

/// r^n, the reliability of n components in series.
double serial_reliability(double reliability, int count);

/// r^n * (1 - (1-r)^m): n in series followed by an m-wide parallel block.
double sla_reliability(double reliability, int series_count, int parallel_count);

/// Cheapest (n, m) within the given bounds whose sla_reliability meets the
/// target; cost ties go to smaller n, then smaller m. Returns nullopt when
/// no pair within bounds reaches the target (since r^n <= r, targets above
/// the unit reliability are never achievable under this formula).
std::optional<SlaSizing> sla_size(const SlaSpec& spec, int max_n, int max_m);

}  // namespace rrap

#endif  // RRAP_MODEL_HPP
