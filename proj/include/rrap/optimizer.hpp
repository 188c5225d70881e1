#ifndef RRAP_OPTIMIZER_HPP
#define RRAP_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rrap/model.hpp"
#include "rrap/rng.hpp"

// Metaheuristics over the integer RRAP search space: a harmony-search
// variant (IMHS), differential evolution with harmony-search-style
// worst-member selection (MDE), and the hybrid that alternates the two,
// handing the same population back and forth. Candidates live on a
// continuous genotype carrier in [1, u_i] per dimension and decode to
// integers by round-half-up, so pitch bandwidth and differential weights
// act on unit-spaced integer variables.
//
// Function evaluations (FE) are accounted exactly: one evaluate_constraints
// call per evaluated candidate, nothing cached, nothing hidden.

namespace rrap {

struct HybridConfig {
    double cr = 0.3;    // DE crossover probability
    double f = 1.0;     // DE differential weight
    double bw = 0.5;    // HS pitch bandwidth, genotype units
    double par = 0.2;   // HS pitch-adjust probability
    double hmcr = 0.95; // HS memory-consideration probability
    int population_size = 100;
    int phase_length = 20;       // improvisations (IMHS) or generations (MDE) per phase
    long long max_fe = 250'000;  // evaluation budget
    int stall_phases = 500;      // stop after this many phases without improvement
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when a parameter is out of range
/// (probabilities outside [0,1], population below 4, budget below the
/// population size, ...).
void validate_config(const HybridConfig& config);

enum class Variant { hybrid, imhs, mde };

struct Candidate {
    std::vector<double> genotype;  // clamped to [1, u_i] per component
    Allocation alloc;              // decode(genotype), never stale
    Evaluation eval;               // evaluation of alloc, never stale
};

struct Population {
    std::vector<Candidate> members;
    std::size_t best_index = 0;  // argmax under compare

    const Candidate& best() const { return members[best_index]; }
};

/// One improvement event: the incumbent changed at evaluation `fe`.
struct CurvePoint {
    long long fe = 0;
    double reliability = 0.0;
    bool feasible = false;
    double violation = 0.0;
};

struct RunTrace {
    long long fe_used = 0;
    std::vector<CurvePoint> best_curve;  // strictly improving under compare
    Allocation best_allocation;
    Evaluation best_evaluation;
    std::optional<long long> fe_to_target;  // first FE matching the target
};

/// Called after every counted evaluation; lets tests audit FE accounting.
using EvalObserver = std::function<void(const Allocation&, const Evaluation&)>;

/// round-half-up then clamp to [1, upper].
int decode_component(double gene, int upper);

Allocation decode_genotype(const std::vector<double>& genotype,
                           const std::vector<int>& bounds);

// Shared run state threaded through the phase functions: RNG stream,
// decode bounds, FE accounting, incumbent curve, target bookkeeping.
class SearchContext {
public:
    SearchContext(const SerialParallelProblem& problem, const HybridConfig& config,
                  std::optional<double> target, EvalObserver observer);

    /// Counts one FE, evaluates, notifies the observer, and latches
    /// fe_to_target when the result matches the target.
    Evaluation evaluate(const Allocation& alloc);

    /// Budget exhausted or target matched.
    bool done() const;

    void record_improvement(const Evaluation& eval);

    const std::vector<int>& bounds() const { return bounds_; }
    Rng& rng() { return rng_; }
    long long fe_used() const { return fe_used_; }
    long long max_fe() const { return max_fe_; }
    const std::vector<CurvePoint>& curve() const { return curve_; }
    std::optional<long long> fe_to_target() const { return fe_to_target_; }

    /// Targets match within the six-decimal reporting grain.
    static constexpr double kTargetTolerance = 5e-7;

private:
    const SerialParallelProblem& problem_;
    std::vector<int> bounds_;
    Rng rng_;
    long long fe_used_ = 0;
    long long max_fe_;
    std::optional<double> target_;
    bool target_hit_ = false;
    std::optional<long long> fe_to_target_;
    std::vector<CurvePoint> curve_;
    EvalObserver observer_;
};

/// Outcome of offering a candidate to the population.
enum class Admission {
    rejected,        // does not beat the worst member, or duplicates one
    replaced_worst,  // entered the memory
    new_incumbent,   // entered and beats the previous best
};

/// Worst-replacement selection shared by both phases: the candidate enters
/// iff it beats the current worst member under compare and its decoded
/// allocation is not already held (duplicates would collapse the memory and
/// starve the DE difference vectors).
Admission admit_candidate(Population& pop, Candidate&& cand);

/// P genotypes uniform over [1, u_i] per component, all evaluated (P FE).
Population init_population(const SerialParallelProblem& problem,
                           const HybridConfig& config, SearchContext& ctx);

/// phase_length harmony improvisations; each new candidate replaces the
/// population's worst member iff it beats it under compare and its decoded
/// allocation is not already in the memory.
void imhs_phase(Population& pop, const SerialParallelProblem& problem,
                const HybridConfig& config, SearchContext& ctx);

/// phase_length DE/rand/1/bin generations with HS-style selection: each
/// trial is judged against the population's worst member, not its parent.
void mde_phase(Population& pop, const SerialParallelProblem& problem,
               const HybridConfig& config, SearchContext& ctx);

/// The alternating hybrid, IMHS first, one shared population throughout.
/// Stops on budget exhaustion, stall_phases phases without improvement, or
/// immediately upon matching `target`.
RunTrace hybrid_optimize(const SerialParallelProblem& problem,
                         const HybridConfig& config,
                         std::optional<double> target = std::nullopt,
                         const EvalObserver& observer = {});

/// Same loop restricted to a single phase kind (imhs or mde).
RunTrace solo_optimize(const SerialParallelProblem& problem,
                       const HybridConfig& config, Variant variant,
                       std::optional<double> target = std::nullopt,
                       const EvalObserver& observer = {});

}  // namespace rrap

#endif  // RRAP_OPTIMIZER_HPP
