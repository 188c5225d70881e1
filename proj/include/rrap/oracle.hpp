#ifndef RRAP_ORACLE_HPP
#define RRAP_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rrap/model.hpp"

// Exact global optimizers for RRAP instances. The objective separates as
// sum_i log(1 - (1-R_i)^x_i), so a dynamic program over (subsystem,
// remaining cost, remaining weight) states finds the provably optimal
// allocation. solve_exhaustive enumerates the whole box with independent
// direct-product arithmetic and exists to cross-check the DP on small
// instances.

namespace rrap {

class StateCapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SearchSpaceTooLargeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    Allocation best_allocation;
    double best_reliability = 0.0;
    std::uint64_t states_explored = 0;
};

inline constexpr std::uint64_t kDefaultStateCap = 100'000'000;       // DP cells
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;  // allocations

/// Per-subsystem redundancy ceiling: the largest x_i affordable when every
/// other subsystem takes exactly one component, under both budgets.
/// Load-time validation guarantees each bound is >= 1.
std::vector<int> upper_bounds(const SerialParallelProblem& problem);

/// Provably optimal allocation via dynamic programming over
/// (N+1) * (cost_budget+1) * (weight_budget+1) states. Ties on the
/// objective resolve to the lexicographically smallest allocation, so the
/// result is deterministic. Throws StateCapExceededError when the state
/// count exceeds `state_cap`.
OracleResult solve_exact_dp(const SerialParallelProblem& problem,
                            std::uint64_t state_cap = kDefaultStateCap);

/// Full enumeration of the box [1,u_1] x ... x [1,u_N]; the independent
/// cross-check for solve_exact_dp. Ties go to the lexicographically
/// smallest allocation. Throws SearchSpaceTooLargeError when the box holds
/// more than `cap` allocations.
OracleResult solve_exhaustive(const SerialParallelProblem& problem,
                              std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace rrap

#endif  // RRAP_ORACLE_HPP
