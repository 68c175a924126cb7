#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracle.hpp"
#include "qcut/bench.hpp"
#include "qcut/benchmarks.hpp"
#include "qcut/dd.hpp"

using namespace qcut;

namespace {

struct Prepared {
    Circuit circuit;
    CutPlan plan;
    std::vector<std::vector<VariantOutcome>> outcomes;
    std::vector<double> oracle;
};

Prepared prepare(Circuit circuit, const SearchConfig& config) {
    Prepared p;
    p.circuit = std::move(circuit);
    const auto solution = find_cuts(build_dag(p.circuit), config);
    REQUIRE(solution.has_value());
    p.plan = extract_subcircuits(p.circuit, *solution);
    p.outcomes = run_all_variants(p.plan, RunMode{});
    p.oracle = test::oracle_probabilities(p.circuit);
    return p;
}

/// Reference bin distribution straight from the full 2^n oracle vector.
std::vector<double> marginalize(const std::vector<double>& full, int n_qubits,
                                const std::vector<QubitLabel>& labeling) {
    std::vector<int> active;
    for (int q = 0; q < n_qubits; ++q)
        if (labeling[q].kind == LabelKind::Active) active.push_back(q);

    std::vector<double> bins(std::size_t(1) << active.size(), 0.0);
    for (std::size_t state = 0; state < full.size(); ++state) {
        bool keep = true;
        std::size_t bin = 0;
        for (int q = 0; q < n_qubits; ++q) {
            const int bit = int(state >> (n_qubits - 1 - q)) & 1;
            if (labeling[q].kind == LabelKind::Zoomed && labeling[q].bit != bit) keep = false;
        }
        if (!keep) continue;
        for (std::size_t a = 0; a < active.size(); ++a) {
            const int bit = int(state >> (n_qubits - 1 - active[a])) & 1;
            bin |= std::size_t(bit) << (active.size() - 1 - a);
        }
        bins[bin] += full[state];
    }
    return bins;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want,
                 double tolerance) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(std::fabs(got[i] - want[i]) < tolerance);
}

/// X pattern then a CX ladder: the state stays a classical basis state
/// (it lands on |01101100>), and every wire meets a two-qubit gate, so the
/// circuit remains connected and cuttable.
Circuit point_mass_circuit() {
    Circuit c(8, "point8");
    c.add(GateKind::X, 1).add(GateKind::X, 3).add(GateKind::X, 4).add(GateKind::X, 6);
    for (int q = 0; q + 1 < 8; ++q) c.add(GateKind::CX, q, q + 1);
    return c;
}

constexpr std::size_t kPointState = 0b01101100;

}  // namespace

TEST_SUITE_BEGIN("dd");

TEST_CASE("bin distributions equal oracle marginals for every label mix") {
    const Prepared p = prepare(five_qubit_chain_example(), {3, 5, 10});
    const auto tables = attribute_tables(p.plan, p.outcomes);

    const LabelKind M = LabelKind::Merged;
    const LabelKind A = LabelKind::Active;
    std::vector<std::vector<QubitLabel>> labelings = {
        {{A}, {A}, {A}, {A}, {A}},                          // fully active: the FD answer
        {{A}, {A}, {M}, {M}, {M}},                          // leading pair
        {{M}, {A}, {M}, {A}, {M}},                          // interleaved
        {{M}, {M}, {M}, {M}, {M}},                          // no active qubits: total mass
        {{LabelKind::Zoomed, 1}, {A}, {A}, {M}, {M}},       // zoom on a 1 bit
        {{LabelKind::Zoomed, 0}, {M}, {A}, {LabelKind::Zoomed, 1}, {A}},
    };

    for (const auto& labeling : labelings) {
        const std::vector<double> bins = dd_bins(p.plan, tables, labeling);
        check_close(bins, marginalize(p.oracle, 5, labeling), 1e-10);
    }
}

TEST_CASE("bin mass is conserved as qubits merge") {
    const Prepared p = prepare(generate_benchmark(bv_spec(8)), {5, 5, 10});
    const auto tables = attribute_tables(p.plan, p.outcomes);

    std::vector<QubitLabel> fine(8, {LabelKind::Active, 0});
    std::vector<QubitLabel> coarse(8, {LabelKind::Merged, 0});
    for (int q = 0; q < 4; ++q) coarse[q].kind = LabelKind::Active;

    const std::vector<double> fineBins = dd_bins(p.plan, tables, fine);
    const std::vector<double> coarseBins = dd_bins(p.plan, tables, coarse);

    // Each coarse bin is the sum of its 16 fine refinements.
    for (std::size_t c = 0; c < coarseBins.size(); ++c) {
        double sum = 0;
        for (std::size_t rest = 0; rest < 16; ++rest) sum += fineBins[c * 16 + rest];
        CHECK(coarseBins[c] == doctest::Approx(sum).epsilon(1e-12));
    }
    const double total = std::accumulate(fineBins.begin(), fineBins.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("depth-first search walks down the known point mass") {
    const Prepared p = prepare(point_mass_circuit(), {5, 5, 10});
    REQUIRE(p.oracle[kPointState] == doctest::Approx(1.0));

    DdOptions options;
    options.max_active = 3;
    const DdResult result = dd_query(p.plan, p.outcomes, options);

    // 8 qubits at 3 per recursion: labelings AAA/zzzAAA/zzzzzzAA.
    REQUIRE(result.recursions.size() == 3);
    CHECK(result.recursions[0].active_qubits == std::vector<int>{0, 1, 2});
    CHECK(result.recursions[1].active_qubits == std::vector<int>{3, 4, 5});
    CHECK(result.recursions[2].active_qubits == std::vector<int>{6, 7});
    CHECK(result.recursions[1].parent == 0);
    CHECK(result.recursions[2].parent == 1);

    // Each zoom follows the state's bits: 011, then 011, then 00.
    CHECK(result.recursions[1].parent_bin == 0b011);
    CHECK(result.recursions[2].parent_bin == 0b011);
    CHECK(result.recursions[2].bins[0b00] == doctest::Approx(1.0).epsilon(1e-9));

    // The flattened estimate recovers the point mass exactly.
    const std::vector<double> estimate = expand_bins(8, result.recursions);
    for (std::size_t s = 0; s < estimate.size(); ++s)
        CHECK(estimate[s] == doctest::Approx(s == kPointState ? 1.0 : 0.0).epsilon(1e-9));
}

TEST_CASE("breadth-first search is deterministic and never re-expands a bin") {
    const Prepared p = prepare(five_qubit_chain_example(), {3, 5, 10});
    DdOptions options;
    options.max_active = 2;
    options.strategy = DdStrategy::BFS;
    options.max_recursions = 12;
    options.epsilon = 0.0;

    const DdResult a = dd_query(p.plan, p.outcomes, options);
    const DdResult b = dd_query(p.plan, p.outcomes, options);
    REQUIRE(a.recursions.size() == b.recursions.size());
    for (std::size_t i = 0; i < a.recursions.size(); ++i) {
        CHECK(a.recursions[i].parent == b.recursions[i].parent);
        CHECK(a.recursions[i].parent_bin == b.recursions[i].parent_bin);
        CHECK(a.recursions[i].bins == b.recursions[i].bins);
    }

    // No (parent, bin) pair may be expanded twice.
    std::vector<std::pair<int, int>> seen;
    for (const auto& rec : a.recursions) {
        const std::pair<int, int> key{rec.parent, rec.parent_bin};
        for (const auto& old : seen) CHECK(old != key);
        seen.push_back(key);
    }

    // The queue always expands the heaviest pending bin first, so the zoomed
    // masses arrive in non-increasing order among siblings of one parent.
    for (std::size_t i = 1; i < a.recursions.size(); ++i) {
        const auto& prev = a.recursions[i - 1];
        const auto& cur = a.recursions[i];
        if (prev.parent == cur.parent) {
            const double prevMass = a.recursions[prev.parent].bins[prev.parent_bin];
            const double curMass = a.recursions[cur.parent].bins[cur.parent_bin];
            CHECK(prevMass >= curMass);
        }
    }
}

TEST_CASE("expand_bins spreads merged mass and lets later recursions refine") {
    // Hand-built trace on 2 qubits: first everything merged except qubit 0,
    // then a zoom into qubit 0 = 1 resolving qubit 1.
    DdRecursionRecord top;
    top.labeling = {{LabelKind::Active, 0}, {LabelKind::Merged, 0}};
    top.active_qubits = {0};
    top.bins = {0.25, 0.75};

    DdRecursionRecord zoom;
    zoom.labeling = {{LabelKind::Zoomed, 1}, {LabelKind::Active, 0}};
    zoom.active_qubits = {1};
    zoom.bins = {0.10, 0.65};
    zoom.parent = 0;
    zoom.parent_bin = 1;

    const std::vector<double> estimate = expand_bins(2, {top, zoom});
    // States 00,01 keep the smeared top-level value 0.25 / 2; states 10,11
    // are overwritten by the zoomed recursion.
    CHECK(estimate[0] == doctest::Approx(0.125));
    CHECK(estimate[1] == doctest::Approx(0.125));
    CHECK(estimate[2] == doctest::Approx(0.10));
    CHECK(estimate[3] == doctest::Approx(0.65));
}

TEST_CASE("recursion and mass cutoffs stop the descent") {
    const Prepared p = prepare(generate_benchmark(bv_spec(8)), {5, 5, 10});

    DdOptions capped;
    capped.max_active = 2;
    capped.max_recursions = 2;
    CHECK(dd_query(p.plan, p.outcomes, capped).recursions.size() == 2);

    // BV has a pure point mass, so a huge epsilon stops after one recursion
    // only when the best bin falls below it; mass 1.0 never does, but an
    // epsilon above 1 always does.
    DdOptions eager;
    eager.max_active = 2;
    eager.epsilon = 1.5;
    CHECK(dd_query(p.plan, p.outcomes, eager).recursions.size() == 1);
}

TEST_CASE("a scripted zoom path overrides the strategy") {
    const Prepared p = prepare(point_mass_circuit(), {5, 5, 10});

    // Follow the state's prefix 011, then deliberately take a wrong turn.
    DdOptions scripted;
    scripted.max_active = 3;
    scripted.zoom_path = std::vector<int>{0b011, 0b111};
    const DdResult result = dd_query(p.plan, p.outcomes, scripted);
    REQUIRE(result.recursions.size() == 3);
    CHECK(result.recursions[1].parent_bin == 0b011);
    CHECK(result.recursions[2].parent_bin == 0b111);
    // The wrong branch holds no mass at all, yet was still expanded: the
    // scripted path overrides the epsilon cutoff.
    for (double v : result.recursions[2].bins) CHECK(std::fabs(v) < 1e-9);

    // A path exhausts early: only the scripted steps run.
    DdOptions shallow;
    shallow.max_active = 3;
    shallow.zoom_path = std::vector<int>{0b011};
    CHECK(dd_query(p.plan, p.outcomes, shallow).recursions.size() == 2);

    DdOptions bad;
    bad.max_active = 3;
    bad.zoom_path = std::vector<int>{8};  // bins hold 2^3 entries, index 8 is out
    CHECK_THROWS_AS(dd_query(p.plan, p.outcomes, bad), std::out_of_range);
}

TEST_SUITE_END();
