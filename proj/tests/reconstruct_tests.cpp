#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "qcut/bench.hpp"
#include "qcut/benchmarks.hpp"
#include "qcut/reconstruct.hpp"

using namespace qcut;

namespace {

struct Prepared {
    Circuit circuit;
    CutPlan plan;
    std::vector<std::vector<VariantOutcome>> outcomes;
};

Prepared prepare(Circuit circuit, const SearchConfig& config) {
    Prepared p;
    p.circuit = std::move(circuit);
    const auto solution = find_cuts(build_dag(p.circuit), config);
    REQUIRE(solution.has_value());
    p.plan = extract_subcircuits(p.circuit, *solution);
    p.outcomes = run_all_variants(p.plan, RunMode{});
    return p;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want,
                 double tolerance) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(std::fabs(got[i] - want[i]) < tolerance);
}

}  // namespace

TEST_SUITE_BEGIN("reconstruct");

TEST_CASE("attribution matches the explicit one-cut formulas") {
    const Prepared p = prepare(five_qubit_chain_example(), {3, 5, 10});
    const Subcircuit& up = p.plan.subcircuits[0];
    const Subcircuit& down = p.plan.subcircuits[1];

    // Upstream measures its last local qubit; with kept state x and measured
    // bit b, variant v (0=Z, 1=X, 2=Y) yields probability pv[2x + b].
    const std::vector<double> z = p.outcomes[0][0].estimates();
    const std::vector<double> x = p.outcomes[0][1].estimates();
    const std::vector<double> y = p.outcomes[0][2].estimates();
    for (std::size_t s = 0; s < 4; ++s) {
        CHECK(attribute(up, p.outcomes[0], {0})[s] == doctest::Approx(2 * z[2 * s]));
        CHECK(attribute(up, p.outcomes[0], {1})[s] == doctest::Approx(2 * z[2 * s + 1]));
        CHECK(attribute(up, p.outcomes[0], {2})[s] ==
              doctest::Approx(x[2 * s] - x[2 * s + 1]));
        CHECK(attribute(up, p.outcomes[0], {3})[s] ==
              doctest::Approx(y[2 * s] - y[2 * s + 1]));
    }

    // Downstream keeps everything; the |+> and |+i> rows subtract the
    // computational-basis preparations.
    const std::vector<double> q0 = p.outcomes[1][0].estimates();
    const std::vector<double> q1 = p.outcomes[1][1].estimates();
    const std::vector<double> qp = p.outcomes[1][2].estimates();
    const std::vector<double> qi = p.outcomes[1][3].estimates();
    for (std::size_t s = 0; s < 8; ++s) {
        CHECK(attribute(down, p.outcomes[1], {0})[s] == doctest::Approx(q0[s]));
        CHECK(attribute(down, p.outcomes[1], {1})[s] == doctest::Approx(q1[s]));
        CHECK(attribute(down, p.outcomes[1], {2})[s] ==
              doctest::Approx(2 * qp[s] - q0[s] - q1[s]));
        CHECK(attribute(down, p.outcomes[1], {3})[s] ==
              doctest::Approx(2 * qi[s] - q0[s] - q1[s]));
    }
}

TEST_CASE("the first two terms of a cut sum to twice the marginal") {
    const Prepared p = prepare(five_qubit_chain_example(), {3, 5, 10});
    const Subcircuit& up = p.plan.subcircuits[0];

    const std::vector<double> t0 = attribute(up, p.outcomes[0], {0});
    const std::vector<double> t1 = attribute(up, p.outcomes[0], {1});
    const std::vector<double> z = p.outcomes[0][0].estimates();
    for (std::size_t s = 0; s < t0.size(); ++s)
        CHECK(t0[s] + t1[s] == doctest::Approx(2 * (z[2 * s] + z[2 * s + 1])));
}

TEST_CASE("full-definition reconstruction equals the dense-matrix oracle") {
    std::vector<Prepared> cases;
    cases.push_back(prepare(five_qubit_chain_example(), {3, 5, 10}));
    cases.push_back(prepare(generate_benchmark(bv_spec(6)), {4, 5, 10}));
    BenchmarkSpec adder;
    adder.family = BenchmarkFamily::Adder;
    adder.n_qubits = 6;
    adder.adder_a = 3;
    adder.adder_b = 2;
    cases.push_back(prepare(generate_benchmark(adder), {4, 5, 10}));

    std::mt19937_64 rng(31);
    for (int i = 0; i < 5; ++i)
        cases.push_back(prepare(random_connected_circuit(rng, 5, 6), {3, 4, 10}));

    for (const Prepared& p : cases) {
        const FdResult fd = reconstruct_fd(p.plan, p.outcomes);
        check_close(fd.probabilities, test::oracle_probabilities(p.circuit), 1e-10);

        double sum = 0;
        for (double v : fd.probabilities) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

        CHECK(fd.term_count == (std::uint64_t(1) << (2 * p.plan.solution.cut_count)));
        CHECK(fd.terms_evaluated + fd.terms_skipped == fd.term_count);
    }
}

TEST_CASE("a wire that leaves and returns still reconstructs exactly") {
    Circuit circuit(4);
    circuit.add(GateKind::H, 0).add(GateKind::T, 1);
    circuit.add(GateKind::CX, 0, 1).add(GateKind::CX, 0, 2).add(GateKind::CX, 0, 3);
    circuit.add(GateKind::H, 2);

    CutSolution solution;
    solution.n_subcircuits = 2;
    solution.assignment = {0, 1, 0};
    solution.cut_edges = {{0, 1, 0, 0, 1}, {1, 2, 0, 1, 0}};
    solution.cut_count = 2;
    solution.counts = {{3, 1, 1, 4, 3}, {1, 1, 1, 2, 1}};
    solution.objective = evaluate_objective(2, {3, 1});
    REQUIRE(validate_solution(build_dag(circuit), solution, {4, 5, 10}).empty());

    const CutPlan plan = extract_subcircuits(circuit, solution);
    const auto outcomes = run_all_variants(plan, RunMode{});
    const FdResult fd = reconstruct_fd(plan, outcomes);
    check_close(fd.probabilities, test::oracle_probabilities(circuit), 1e-10);
}

TEST_CASE("multiplication count matches the cost estimate with all tricks off") {
    struct Case {
        Circuit circuit;
        SearchConfig config;
    };
    std::vector<Case> cases;
    cases.push_back({five_qubit_chain_example(), {3, 5, 10}});
    cases.push_back({generate_benchmark(bv_spec(10)), {5, 5, 10}});

    for (Case& c : cases) {
        const auto solution = find_cuts(build_dag(c.circuit), c.config);
        const CutPlan plan = extract_subcircuits(c.circuit, *solution);
        const auto outcomes = run_all_variants(plan, RunMode{});

        FdOptions plain;
        plain.greedy_order = false;
        plain.early_termination = false;
        const FdResult fd = reconstruct_fd(plan, outcomes, plain);
        CHECK(fd.mults_build == solution->objective);
        CHECK(fd.terms_skipped == 0);

        // The optimizations only remove work and never change the output.
        const FdResult tuned = reconstruct_fd(plan, outcomes);
        CHECK(tuned.mults_build <= fd.mults_build);
        check_close(tuned.probabilities, fd.probabilities, 1e-12);
    }
}

TEST_CASE("explicit evaluation order overrides the greedy choice") {
    const Prepared p = prepare(generate_benchmark(bv_spec(8)), {5, 5, 10});
    const FdResult byDefault = reconstruct_fd(p.plan, p.outcomes);

    FdOptions reversed;
    reversed.order_override = std::vector<int>{1, 0};
    const FdResult forced = reconstruct_fd(p.plan, p.outcomes, reversed);
    CHECK(forced.block_order == std::vector<int>{1, 0});
    check_close(forced.probabilities, byDefault.probabilities, 1e-12);

    FdOptions bad;
    bad.order_override = std::vector<int>{0, 0};
    CHECK_THROWS_AS(reconstruct_fd(p.plan, p.outcomes, bad), std::invalid_argument);
    bad.order_override = std::vector<int>{0};
    CHECK_THROWS_AS(reconstruct_fd(p.plan, p.outcomes, bad), std::invalid_argument);
}

TEST_CASE("threading is deterministic and thread counts agree") {
    const Prepared p = prepare(generate_benchmark(bv_spec(10)), {5, 5, 10});
    FdOptions one, two, eight;
    one.threads = 1;
    two.threads = 2;
    eight.threads = 8;
    const std::vector<double> a = reconstruct_fd(p.plan, p.outcomes, one).probabilities;
    const std::vector<double> b = reconstruct_fd(p.plan, p.outcomes, two).probabilities;
    const std::vector<double> c = reconstruct_fd(p.plan, p.outcomes, eight).probabilities;

    // Same thread count twice: the fixed-order reduction is bitwise stable.
    CHECK(reconstruct_fd(p.plan, p.outcomes, eight).probabilities == c);

    // Across counts the additions regroup, so allow rounding-level slack.
    check_close(b, a, 1e-12);
    check_close(c, a, 1e-12);
}

TEST_SUITE_END();
