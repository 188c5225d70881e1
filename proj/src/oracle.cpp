#include "rrap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rrap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Log terms for x = 1..u of one subsystem; index 0 is unused.
std::vector<double> log_terms(const Subsystem& s, int upper) {
    std::vector<double> terms(static_cast<std::size_t>(upper) + 1, kNegInf);
    for (int x = 1; x <= upper; ++x) {
        terms[x] = log_subsystem_reliability(s.reliability, x);
    }
    return terms;
}

}  // namespace

std::vector<int> upper_bounds(const SerialParallelProblem& problem) {
    validate_problem(problem);
    long long total_cost = 0;
    long long total_weight = 0;
    for (const Subsystem& s : problem.subsystems) {
        total_cost += s.cost;
        total_weight += s.weight;
    }
    std::vector<int> bounds;
    bounds.reserve(problem.subsystems.size());
    for (const Subsystem& s : problem.subsystems) {
        const long long cost_room = problem.cost_budget - (total_cost - s.cost);
        const long long weight_room = problem.weight_budget - (total_weight - s.weight);
        bounds.push_back(static_cast<int>(
            std::min(cost_room / s.cost, weight_room / s.weight)));
    }
    return bounds;
}

OracleResult solve_exact_dp(const SerialParallelProblem& problem,
                            std::uint64_t state_cap) {
    const std::vector<int> bounds = upper_bounds(problem);
    const int n = problem.size();
    const long long cb = problem.cost_budget;
    const long long wb = problem.weight_budget;
    const std::uint64_t states = static_cast<std::uint64_t>(n + 1) *
                                 static_cast<std::uint64_t>(cb + 1) *
                                 static_cast<std::uint64_t>(wb + 1);
    if (states > state_cap) {
        throw StateCapExceededError(
            "DP needs " + std::to_string(states) + " states, cap is " +
            std::to_string(state_cap));
    }

    // layers[i][c*(wb+1)+w] = best log-reliability of subsystems i..n-1
    // given remaining budgets (c, w); -inf where they no longer fit.
    const std::size_t cells = static_cast<std::size_t>(cb + 1) * (wb + 1);
    std::vector<std::vector<double>> layers(
        n + 1, std::vector<double>(cells, kNegInf));
    std::fill(layers[n].begin(), layers[n].end(), 0.0);

    std::uint64_t explored = 0;
    for (int i = n - 1; i >= 0; --i) {
        const Subsystem& s = problem.subsystems[i];
        const std::vector<double> terms = log_terms(s, bounds[i]);
        const std::vector<double>& next = layers[i + 1];
        std::vector<double>& cur = layers[i];
        for (long long c = 0; c <= cb; ++c) {
            for (long long w = 0; w <= wb; ++w) {
                double best = kNegInf;
                for (int x = 1; x <= bounds[i]; ++x) {
                    const long long rc = c - static_cast<long long>(s.cost) * x;
                    if (rc < 0) break;
                    const long long rw = w - static_cast<long long>(s.weight) * x;
                    if (rw < 0) break;
                    ++explored;
                    const double value = terms[x] + next[rc * (wb + 1) + rw];
                    if (value > best) best = value;
                }
                cur[c * (wb + 1) + w] = best;
            }
        }
    }

    const double best_log = layers[0][cb * (wb + 1) + wb];
    // Validation guarantees the all-ones allocation fits, so the root cell
    // is reachable.

    // Front-to-back reconstruction, taking the smallest x_i whose branch
    // still attains the cell value; this yields the lexicographically
    // smallest optimal allocation. The slack only absorbs float noise
    // (the branch values were computed by these exact expressions), far
    // below any true objective gap.
    OracleResult result;
    result.states_explored = explored;
    result.best_allocation.counts.reserve(n);
    long long c = cb;
    long long w = wb;
    for (int i = 0; i < n; ++i) {
        const Subsystem& s = problem.subsystems[i];
        const std::vector<double> terms = log_terms(s, bounds[i]);
        const double cell = layers[i][c * (wb + 1) + w];
        const double slack = 1e-12 * std::max(1.0, std::abs(cell));
        int chosen = 0;
        for (int x = 1; x <= bounds[i]; ++x) {
            const long long rc = c - static_cast<long long>(s.cost) * x;
            if (rc < 0) break;
            const long long rw = w - static_cast<long long>(s.weight) * x;
            if (rw < 0) break;
            if (terms[x] + layers[i + 1][rc * (wb + 1) + rw] >= cell - slack) {
                chosen = x;
                break;
            }
        }
        result.best_allocation.counts.push_back(chosen);
        c -= static_cast<long long>(s.cost) * chosen;
        w -= static_cast<long long>(s.weight) * chosen;
    }
    result.best_reliability = std::exp(best_log);
    return result;
}

OracleResult solve_exhaustive(const SerialParallelProblem& problem,
                              std::uint64_t cap) {
    const std::vector<int> bounds = upper_bounds(problem);
    const int n = problem.size();

    std::uint64_t box = 1;
    for (int u : bounds) {
        if (box > cap / static_cast<std::uint64_t>(u)) {
            throw SearchSpaceTooLargeError(
                "enumeration box exceeds cap of " + std::to_string(cap) +
                " allocations");
        }
        box *= static_cast<std::uint64_t>(u);
    }

    // Direct-product arithmetic throughout, independent of the log-space
    // evaluator and the DP.
    OracleResult result;
    double best = -1.0;
    std::vector<int> x(n, 1);
    while (true) {
        ++result.states_explored;
        long long cost = 0;
        long long weight = 0;
        for (int i = 0; i < n; ++i) {
            cost += static_cast<long long>(problem.subsystems[i].cost) * x[i];
            weight += static_cast<long long>(problem.subsystems[i].weight) * x[i];
        }
        if (cost <= problem.cost_budget && weight <= problem.weight_budget) {
            double rel = 1.0;
            for (int i = 0; i < n; ++i) {
                rel *= 1.0 - std::pow(1.0 - problem.subsystems[i].reliability, x[i]);
            }
            // ascending enumeration + strict > keeps the lexicographically
            // smallest allocation among exact ties
            if (rel > best) {
                best = rel;
                result.best_allocation.counts = x;
            }
        }
        int k = n - 1;
        while (k >= 0 && x[k] == bounds[k]) {
            x[k] = 1;
            --k;
        }
        if (k < 0) break;
        ++x[k];
    }
    result.best_reliability = best;
    return result;
}

}  // namespace rrap
