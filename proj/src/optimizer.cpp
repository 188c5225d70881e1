#include "rrap/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "rrap/oracle.hpp"

namespace rrap {

namespace {

std::size_t find_worst(const Population& pop) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pop.members.size(); ++i) {
        if (beats(pop.members[worst].eval, pop.members[i].eval)) worst = i;
    }
    return worst;
}

bool memory_contains(const Population& pop, const Allocation& alloc) {
    for (const Candidate& m : pop.members) {
        if (m.alloc == alloc) return true;
    }
    return false;
}

// Worst-replacement with a duplicate guard: the candidate enters iff it
// beats the current worst member and its decoded allocation is not already
// held. Keeping the memory free of duplicate allocations preserves the
// difference vectors MDE mutates along; without it the population collapses
// to copies of the incumbent and both phases go inert.
bool admit(Population& pop, Candidate&& cand, SearchContext& ctx) {
    const std::size_t worst = find_worst(pop);
    if (!beats(cand.eval, pop.members[worst].eval)) return false;
    if (memory_contains(pop, cand.alloc)) return false;
    const bool improved = beats(cand.eval, pop.best().eval);
    pop.members[worst] = std::move(cand);
    if (improved) {
        pop.best_index = worst;
        ctx.record_improvement(pop.members[worst].eval);
    }
    return true;
}

std::size_t distinct_index(Rng& rng, std::size_t n, std::size_t a,
                           std::size_t b, std::size_t c) {
    std::size_t r = rng.index(n);
    while (r == a || r == b || r == c) r = rng.index(n);
    return r;
}

RunTrace run_search(const SerialParallelProblem& problem, const HybridConfig& config,
                    Variant variant, std::optional<double> target,
                    const EvalObserver& observer) {
    validate_problem(problem);
    validate_config(config);

    SearchContext ctx(problem, config, target, observer);
    Population pop = init_population(problem, config, ctx);

    int stall = 0;
    long long phase_index = 0;
    while (!ctx.done() && stall < config.stall_phases) {
        const Evaluation before = pop.best().eval;
        const bool run_imhs =
            variant == Variant::imhs ||
            (variant == Variant::hybrid && phase_index % 2 == 0);
        if (run_imhs) {
            imhs_phase(pop, problem, config, ctx);
        } else {
            mde_phase(pop, problem, config, ctx);
        }
        stall = beats(pop.best().eval, before) ? 0 : stall + 1;
        ++phase_index;
    }

    RunTrace trace;
    trace.fe_used = ctx.fe_used();
    trace.best_curve = ctx.curve();
    trace.best_allocation = pop.best().alloc;
    trace.best_evaluation = pop.best().eval;
    trace.fe_to_target = ctx.fe_to_target();
    return trace;
}

}  // namespace

void validate_config(const HybridConfig& config) {
    auto probability = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!probability(config.cr)) throw std::invalid_argument("cr must lie in [0,1]");
    if (!probability(config.par)) throw std::invalid_argument("par must lie in [0,1]");
    if (!probability(config.hmcr)) throw std::invalid_argument("hmcr must lie in [0,1]");
    if (!(config.f > 0.0)) throw std::invalid_argument("f must be positive");
    if (!(config.bw > 0.0)) throw std::invalid_argument("bw must be positive");
    if (config.population_size < 4) {
        throw std::invalid_argument("population_size must be >= 4 (DE/rand/1 needs three distinct partners)");
    }
    if (config.phase_length < 1) throw std::invalid_argument("phase_length must be >= 1");
    if (config.max_fe < config.population_size) {
        throw std::invalid_argument("max_fe must cover at least the initial population");
    }
    if (config.stall_phases < 1) throw std::invalid_argument("stall_phases must be >= 1");
}

int decode_component(double gene, int upper) {
    const int rounded = static_cast<int>(std::floor(gene + 0.5));
    return std::clamp(rounded, 1, upper);
}

Allocation decode_genotype(const std::vector<double>& genotype,
                           const std::vector<int>& bounds) {
    Allocation alloc;
    alloc.counts.reserve(genotype.size());
    for (std::size_t i = 0; i < genotype.size(); ++i) {
        alloc.counts.push_back(decode_component(genotype[i], bounds[i]));
    }
    return alloc;
}

SearchContext::SearchContext(const SerialParallelProblem& problem,
                             const HybridConfig& config,
                             std::optional<double> target, EvalObserver observer)
    : problem_(problem),
      bounds_(upper_bounds(problem)),
      rng_(config.seed),
      max_fe_(config.max_fe),
      target_(target),
      observer_(std::move(observer)) {}

Evaluation SearchContext::evaluate(const Allocation& alloc) {
    ++fe_used_;
    Evaluation eval = evaluate_constraints(problem_, alloc);
    if (observer_) observer_(alloc, eval);
    if (target_ && !target_hit_ && eval.feasible &&
        eval.system_reliability >= *target_ - kTargetTolerance) {
        target_hit_ = true;
        fe_to_target_ = fe_used_;
    }
    return eval;
}

bool SearchContext::done() const {
    return target_hit_ || fe_used_ >= max_fe_;
}

void SearchContext::record_improvement(const Evaluation& eval) {
    curve_.push_back(CurvePoint{fe_used_, eval.system_reliability,
                                eval.feasible, eval.violation});
}

Population init_population(const SerialParallelProblem& problem,
                           const HybridConfig& config, SearchContext& ctx) {
    Population pop;
    pop.members.reserve(config.population_size);
    for (int k = 0; k < config.population_size; ++k) {
        Candidate cand;
        cand.genotype.reserve(ctx.bounds().size());
        for (int upper : ctx.bounds()) {
            cand.genotype.push_back(ctx.rng().uniform(1.0, static_cast<double>(upper)));
        }
        cand.alloc = decode_genotype(cand.genotype, ctx.bounds());
        cand.eval = ctx.evaluate(cand.alloc);
        pop.members.push_back(std::move(cand));
        if (k == 0 || beats(pop.members[k].eval, pop.best().eval)) {
            pop.best_index = static_cast<std::size_t>(k);
            ctx.record_improvement(pop.members[k].eval);
        }
    }
    return pop;
}

void imhs_phase(Population& pop, const SerialParallelProblem& problem,
                const HybridConfig& config, SearchContext& ctx) {
    (void)problem;  // evaluation goes through ctx
    const std::vector<int>& bounds = ctx.bounds();
    const std::size_t dims = bounds.size();
    const std::size_t pop_size = pop.members.size();

    for (int step = 0; step < config.phase_length; ++step) {
        if (ctx.done()) return;
        Candidate cand;
        cand.genotype.resize(dims);
        for (std::size_t j = 0; j < dims; ++j) {
            const double hi = static_cast<double>(bounds[j]);
            double gene;
            if (ctx.rng().uniform01() < config.hmcr) {
                gene = pop.members[ctx.rng().index(pop_size)].genotype[j];
                if (ctx.rng().uniform01() < config.par) {
                    gene += ctx.rng().uniform(-config.bw, config.bw);
                }
            } else {
                gene = ctx.rng().uniform(1.0, hi);
            }
            cand.genotype[j] = std::clamp(gene, 1.0, hi);
        }
        cand.alloc = decode_genotype(cand.genotype, bounds);
        cand.eval = ctx.evaluate(cand.alloc);
        admit(pop, std::move(cand), ctx);
    }
}

void mde_phase(Population& pop, const SerialParallelProblem& problem,
               const HybridConfig& config, SearchContext& ctx) {
    (void)problem;
    const std::vector<int>& bounds = ctx.bounds();
    const std::size_t dims = bounds.size();
    const std::size_t pop_size = pop.members.size();

    for (int gen = 0; gen < config.phase_length; ++gen) {
        if (ctx.done()) return;
        for (std::size_t i = 0; i < pop_size; ++i) {
            if (ctx.done()) return;
            const std::size_t r1 = distinct_index(ctx.rng(), pop_size, i, i, i);
            const std::size_t r2 = distinct_index(ctx.rng(), pop_size, i, r1, r1);
            const std::size_t r3 = distinct_index(ctx.rng(), pop_size, i, r1, r2);
            const std::size_t forced = ctx.rng().index(dims);

            Candidate trial;
            trial.genotype.resize(dims);
            for (std::size_t j = 0; j < dims; ++j) {
                double gene;
                if (ctx.rng().uniform01() < config.cr || j == forced) {
                    gene = pop.members[r1].genotype[j] +
                           config.f * (pop.members[r2].genotype[j] -
                                       pop.members[r3].genotype[j]);
                } else {
                    gene = pop.members[i].genotype[j];
                }
                trial.genotype[j] = std::clamp(gene, 1.0, static_cast<double>(bounds[j]));
            }
            trial.alloc = decode_genotype(trial.genotype, bounds);
            trial.eval = ctx.evaluate(trial.alloc);
            admit(pop, std::move(trial), ctx);
        }
    }
}

RunTrace hybrid_optimize(const SerialParallelProblem& problem,
                         const HybridConfig& config, std::optional<double> target,
                         const EvalObserver& observer) {
    return run_search(problem, config, Variant::hybrid, target, observer);
}

RunTrace solo_optimize(const SerialParallelProblem& problem,
                       const HybridConfig& config, Variant variant,
                       std::optional<double> target, const EvalObserver& observer) {
    if (variant == Variant::hybrid) {
        throw std::invalid_argument("solo_optimize runs a single phase kind; use hybrid_optimize");
    }
    return run_search(problem, config, variant, target, observer);
}

}  // namespace rrap
