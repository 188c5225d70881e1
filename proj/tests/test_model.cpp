#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <compare>
#include <vector>

#include "rrap/model.hpp"
#include "rrap/problem_io.hpp"
#include "test_support.hpp"

using namespace rrap;
using namespace rrap::test;

TEST_CASE("benchmark file carries the expected constants") {
    const SerialParallelProblem p = load_rrap15();
    REQUIRE(p.size() == 15);
    CHECK(p.name == "rrap15");
    CHECK(p.cost_budget == 400);
    CHECK(p.weight_budget == 414);
    for (int i = 0; i < 15; ++i) {
        CHECK(p.subsystems[i].reliability == doctest::Approx(kRrap15Reliability[i]).epsilon(0));
        CHECK(p.subsystems[i].cost == kRrap15Cost[i]);
        CHECK(p.subsystems[i].weight == kRrap15Weight[i]);
    }
}

TEST_CASE("published optimum allocation evaluates to 0.945613") {
    const SerialParallelProblem p = load_rrap15();
    const double rs = evaluate_reliability(p, kOptimumAllocation);
    CHECK(rs == doctest::Approx(kPublishedOptimum).epsilon(0).scale(1));
    CHECK(std::abs(rs - kPublishedOptimum) < 5e-7);
    CHECK(rs == doctest::Approx(kOptimumReliability).epsilon(1e-12));

    const Evaluation eval = evaluate_constraints(p, kOptimumAllocation);
    CHECK(eval.cost_used == 392);
    CHECK(eval.weight_used == 414);  // weight binds exactly at the budget
    CHECK(eval.feasible);
    CHECK(eval.violation == 0.0);
}

TEST_CASE("single subsystem identities") {
    const SerialParallelProblem p = make_problem({0.9}, {1}, {1}, 10, 10);
    CHECK(evaluate_reliability(p, Allocation{{1}}) == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(evaluate_reliability(p, Allocation{{2}}) == doctest::Approx(0.99).epsilon(1e-14));
}

TEST_CASE("all-ones allocation multiplies the reliability row") {
    const SerialParallelProblem p = load_rrap15();
    const Allocation ones{std::vector<int>(15, 1)};
    CHECK(evaluate_reliability(p, ones) ==
          doctest::Approx(kAllOnesReliability).epsilon(1e-12));

    const Evaluation eval = evaluate_constraints(p, ones);
    CHECK(eval.cost_used == 97);
    CHECK(eval.weight_used == 110);
    CHECK(eval.feasible);
}

TEST_CASE("grossly oversized allocation is infeasible with positive violation") {
    const SerialParallelProblem p = load_rrap15();
    const Allocation hundreds{std::vector<int>(15, 100)};
    const Evaluation eval = evaluate_constraints(p, hundreds);
    CHECK_FALSE(eval.feasible);
    CHECK(eval.violation > 0.0);
    CHECK(eval.cost_used == 9700);
    CHECK(eval.weight_used == 11000);
}

TEST_CASE("evaluator rejects malformed allocations") {
    const SerialParallelProblem p = load_rrap15();
    CHECK_THROWS_AS(evaluate_reliability(p, Allocation{{1, 2, 3}}), LengthMismatchError);
    CHECK_THROWS_AS(evaluate_constraints(p, Allocation{{1, 2, 3}}), LengthMismatchError);
    Allocation zero = kOptimumAllocation;
    zero.counts[4] = 0;
    CHECK_THROWS_AS(evaluate_reliability(p, zero), InvalidAllocationError);
}

TEST_CASE("problem validation") {
    CHECK_THROWS_AS(validate_problem(SerialParallelProblem{}), InvalidProblemError);
    // budget below the all-ones floor
    CHECK_THROWS_AS(validate_problem(make_problem({0.9, 0.9}, {5, 5}, {1, 1}, 9, 10)),
                    InvalidProblemError);
    CHECK_THROWS_AS(validate_problem(make_problem({0.9, 0.9}, {1, 1}, {5, 5}, 10, 9)),
                    InvalidProblemError);
    // reliability outside (0,1)
    CHECK_THROWS_AS(validate_problem(make_problem({1.0}, {1}, {1}, 5, 5)),
                    InvalidProblemError);
    CHECK_THROWS_AS(validate_problem(make_problem({0.0}, {1}, {1}, 5, 5)),
                    InvalidProblemError);
    // zero-cost subsystem
    CHECK_THROWS_AS(validate_problem(make_problem({0.9}, {0}, {1}, 5, 5)),
                    InvalidProblemError);
    CHECK_NOTHROW(validate_problem(load_rrap15()));
}

TEST_CASE("log-space evaluation agrees with the direct product") {
    const SerialParallelProblem p = load_rrap15();
    TestRand rand(42);
    for (int trial = 0; trial < 50; ++trial) {
        Allocation alloc;
        for (int i = 0; i < 15; ++i) alloc.counts.push_back(rand.range(1, 8));
        double direct = 1.0;
        for (int i = 0; i < 15; ++i) {
            direct *= 1.0 - std::pow(1.0 - p.subsystems[i].reliability, alloc.counts[i]);
        }
        const double logged = evaluate_reliability(p, alloc);
        CHECK(std::abs(logged - direct) <= 1e-12 * direct);
    }
}

TEST_CASE("resource sums are exact integers") {
    const SerialParallelProblem p = load_rrap15();
    TestRand rand(7);
    for (int trial = 0; trial < 100; ++trial) {
        Allocation alloc;
        long long cost = 0;
        long long weight = 0;
        for (int i = 0; i < 15; ++i) {
            alloc.counts.push_back(rand.range(1, 1000));
            cost += static_cast<long long>(p.subsystems[i].cost) * alloc.counts[i];
            weight += static_cast<long long>(p.subsystems[i].weight) * alloc.counts[i];
        }
        const Evaluation eval = evaluate_constraints(p, alloc);
        CHECK(eval.cost_used == cost);
        CHECK(eval.weight_used == weight);
        CHECK(eval.feasible == (cost <= 400 && weight <= 414));
    }
}

TEST_CASE("incrementing any x_i strictly increases reliability") {
    TestRand rand(11);
    for (int trial = 0; trial < 200; ++trial) {
        const SerialParallelProblem p = random_small_problem(rand);
        Allocation alloc;
        for (int i = 0; i < p.size(); ++i) alloc.counts.push_back(rand.range(1, 6));
        const int idx = rand.range(0, p.size() - 1);
        const double before = evaluate_reliability(p, alloc);
        ++alloc.counts[idx];
        CHECK(evaluate_reliability(p, alloc) > before);
    }
}

TEST_CASE("system reliability never exceeds its weakest subsystem") {
    const SerialParallelProblem p = load_rrap15();
    TestRand rand(13);
    for (int trial = 0; trial < 50; ++trial) {
        Allocation alloc;
        for (int i = 0; i < 15; ++i) alloc.counts.push_back(rand.range(1, 10));
        double weakest = 1.0;
        for (int i = 0; i < 15; ++i) {
            weakest = std::min(weakest, subsystem_reliability(p.subsystems[i].reliability,
                                                              alloc.counts[i]));
        }
        CHECK(evaluate_reliability(p, alloc) <= weakest + 1e-15);
    }
}

namespace {

Evaluation fake_eval(double reliability, bool feasible, double violation) {
    Evaluation e;
    e.system_reliability = reliability;
    e.feasible = feasible;
    e.violation = feasible ? 0.0 : violation;
    return e;
}

}  // namespace

TEST_CASE("Deb comparison rules") {
    CHECK(beats(fake_eval(0.5, true, 0.0), fake_eval(0.99, false, 0.1)));
    CHECK(beats(fake_eval(0.93, true, 0.0), fake_eval(0.91, true, 0.0)));
    CHECK(beats(fake_eval(0.1, false, 0.1), fake_eval(0.9, false, 0.4)));
    CHECK(compare(fake_eval(0.8, true, 0.0), fake_eval(0.8, true, 0.0)) ==
          std::weak_ordering::equivalent);
}

TEST_CASE("comparison is a total preorder") {
    TestRand rand(3);
    std::vector<Evaluation> evals;
    for (int i = 0; i < 60; ++i) {
        const bool feasible = rand.range(0, 1) == 1;
        evals.push_back(fake_eval(rand.real(0.0, 1.0), feasible,
                                  feasible ? 0.0 : rand.real(0.001, 2.0)));
    }
    for (const Evaluation& a : evals) {
        CHECK(compare(a, a) == std::weak_ordering::equivalent);
        for (const Evaluation& b : evals) {
            // antisymmetry up to ties
            const auto ab = compare(a, b);
            const auto ba = compare(b, a);
            if (ab == std::weak_ordering::greater) CHECK(ba == std::weak_ordering::less);
            if (ab == std::weak_ordering::equivalent) CHECK(ba == std::weak_ordering::equivalent);
            for (const Evaluation& c : evals) {
                if (compare(a, b) != std::weak_ordering::less &&
                    compare(b, c) != std::weak_ordering::less) {
                    CHECK(compare(a, c) != std::weak_ordering::less);
                }
            }
        }
    }
}

TEST_CASE("serial reliability") {
    CHECK(serial_reliability(0.9995, 5) == doctest::Approx(0.9975).epsilon(1e-4));
    CHECK(serial_reliability(0.9995, 5) == doctest::Approx(0.9975024987503127).epsilon(1e-12));
    CHECK(serial_reliability(0.7, 1) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(serial_reliability(0.5, 2) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("sla reliability") {
    CHECK(sla_reliability(0.9995, 2, 3) == doctest::Approx(0.999000).epsilon(0).scale(1));
    CHECK(std::abs(sla_reliability(0.9995, 2, 3) - 0.999000) < 1e-6);
    CHECK(sla_reliability(0.9995, 2, 3) ==
          doctest::Approx(0.9990002498751251).epsilon(1e-12));
    CHECK(sla_reliability(0.6, 1, 1) == doctest::Approx(0.36).epsilon(1e-14));
    // wide parallel block: the serial term dominates
    CHECK(sla_reliability(0.9995, 1, 60) == doctest::Approx(0.9995).epsilon(1e-12));
}

namespace {

// independent scan used to pin sla_size expectations
std::optional<SlaSizing> scan_sla(const SlaSpec& spec, int max_n, int max_m) {
    std::optional<SlaSizing> best;
    for (int n = 1; n <= max_n; ++n) {
        for (int m = 1; m <= max_m; ++m) {
            const double rel = std::pow(spec.unit_reliability, n) *
                               (1.0 - std::pow(1.0 - spec.unit_reliability, m));
            if (rel < spec.target) continue;
            const double cost = spec.unit_cost * (n + m);
            if (!best || cost < best->total_cost) best = SlaSizing{n, m, cost, rel};
        }
    }
    return best;
}

}  // namespace

TEST_CASE("sla sizing picks the cheapest feasible pair") {
    const SlaSpec spec{0.9995, 0.999, 1000.0};
    const auto sized = sla_size(spec, 5, 5);
    REQUIRE(sized.has_value());
    const auto expected = scan_sla(spec, 5, 5);
    REQUIRE(expected.has_value());
    CHECK(sized->series_count == expected->series_count);
    CHECK(sized->parallel_count == expected->parallel_count);
    CHECK(sized->total_cost == doctest::Approx(expected->total_cost).epsilon(0));
    // one of each suffices here
    CHECK(sized->series_count == 1);
    CHECK(sized->parallel_count == 1);
    CHECK(sized->total_cost == doctest::Approx(2000.0).epsilon(0));
}

TEST_CASE("sla sizing reports unreachable targets") {
    // r^n <= r for every n >= 1, so a target above the unit reliability can
    // never be met by this formula.
    const auto sized = sla_size(SlaSpec{0.9995, 0.99999, 1000.0}, 5, 5);
    CHECK_FALSE(sized.has_value());
    CHECK_FALSE(sla_size(SlaSpec{0.9995, 0.99999, 1000.0}, 50, 50).has_value());
}

TEST_CASE("sla sizing on a loose target") {
    const auto sized = sla_size(SlaSpec{0.9, 0.5, 1.0}, 3, 3);
    REQUIRE(sized.has_value());
    CHECK(sized->series_count == 1);
    CHECK(sized->parallel_count == 1);
    CHECK(sized->total_cost == doctest::Approx(2.0).epsilon(0));
}

TEST_CASE("problem JSON round trip") {
    const SerialParallelProblem p = load_rrap15();
    const SerialParallelProblem again = parse_problem(problem_to_json(p));
    CHECK(again.name == p.name);
    REQUIRE(again.size() == p.size());
    for (int i = 0; i < p.size(); ++i) {
        CHECK(again.subsystems[i].reliability == p.subsystems[i].reliability);
        CHECK(again.subsystems[i].cost == p.subsystems[i].cost);
        CHECK(again.subsystems[i].weight == p.subsystems[i].weight);
    }
    CHECK(again.cost_budget == p.cost_budget);
    CHECK(again.weight_budget == p.weight_budget);
}

TEST_CASE("problem parsing rejects bad input") {
    CHECK_THROWS_AS(parse_problem("not json"), InvalidProblemError);
    CHECK_THROWS_AS(parse_problem("{}"), InvalidProblemError);
    CHECK_THROWS_AS(parse_problem(R"({"subsystems": [], "cost_budget": 1, "weight_budget": 1})"),
                    InvalidProblemError);
    // budget below the all-ones floor is rejected at load time
    CHECK_THROWS_AS(parse_problem(R"({"name": "tight",
        "subsystems": [{"r": 0.9, "c": 5, "w": 5}],
        "cost_budget": 4, "weight_budget": 5})"),
                    InvalidProblemError);
    CHECK_THROWS_AS(load_problem("/nonexistent/path.json"), InvalidProblemError);
}
