#include "qcut/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <thread>

#include "qcut/benchmarks.hpp"
#include "qcut/cut_search.hpp"
#include "qcut/cutter.hpp"
#include "qcut/dag.hpp"
#include "qcut/dd.hpp"
#include "qcut/metrics.hpp"
#include "qcut/reconstruct.hpp"
#include "qcut/sim.hpp"

namespace qcut {

namespace {

std::string fmt(const char* pattern, ...) {
    va_list args;
    va_start(args, pattern);
    char buffer[512];
    std::vsnprintf(buffer, sizeof(buffer), pattern, args);
    va_end(args);
    return buffer;
}

struct PreparedCase {
    std::string label;
    Circuit circuit;
    CutSolution solution;
    CutPlan plan;
    std::vector<std::vector<VariantOutcome>> outcomes;  // exact
};

PreparedCase prepare_exact(std::string label, Circuit circuit, const SearchConfig& config) {
    const CircuitDag dag = build_dag(circuit);
    auto solution = find_cuts(dag, config);
    if (!solution) throw std::runtime_error(label + ": no cut found");
    PreparedCase c;
    c.label = std::move(label);
    c.plan = extract_subcircuits(circuit, *solution);
    c.solution = std::move(*solution);
    c.circuit = std::move(circuit);
    c.outcomes = run_all_variants(c.plan, RunMode{});
    return c;
}

struct CaseSpec {
    std::string label;
    Circuit circuit;
    int device;
};

BenchmarkSpec family_spec(BenchmarkFamily family, int n_qubits) {
    BenchmarkSpec spec;
    spec.family = family;
    spec.n_qubits = n_qubits;
    return spec;
}

std::vector<CaseSpec> equivalence_cases() {
    std::vector<CaseSpec> cases;
    auto add = [&](std::string label, Circuit c, int device) {
        cases.push_back({std::move(label), std::move(c), device});
    };
    add("bv8/D4", generate_benchmark(bv_spec(8)), 4);
    add("bv10/D5", generate_benchmark(bv_spec(10)), 5);
    add("bv12/D6", generate_benchmark(bv_spec(12)), 6);
    add("aqft8/D4", generate_benchmark(family_spec(BenchmarkFamily::AQFT, 8)), 4);
    add("aqft8/D5", generate_benchmark(family_spec(BenchmarkFamily::AQFT, 8)), 5);
    add("aqft10/D6", generate_benchmark(family_spec(BenchmarkFamily::AQFT, 10)), 6);
    add("adder8/D4", generate_benchmark(family_spec(BenchmarkFamily::Adder, 8)), 4);
    add("adder8/D5", generate_benchmark(family_spec(BenchmarkFamily::Adder, 8)), 5);
    add("adder10/D6", generate_benchmark(family_spec(BenchmarkFamily::Adder, 10)), 6);
    add("hwea8/D4", generate_benchmark(family_spec(BenchmarkFamily::HWEA, 8)), 4);
    add("hwea10/D5", generate_benchmark(family_spec(BenchmarkFamily::HWEA, 10)), 5);
    add("hwea12/D6", generate_benchmark(family_spec(BenchmarkFamily::HWEA, 12)), 6);
    add("supremacy2x4/D4", generate_benchmark(supremacy_spec(2, 4)), 4);
    add("supremacy3x3/D5", generate_benchmark(supremacy_spec(3, 3)), 5);
    add("supremacy3x4/D6", generate_benchmark(supremacy_spec(3, 4)), 6);
    return cases;
}

// --- criterion 1 -----------------------------------------------------------

CriterionResult criterion1(std::ostream& log) {
    CriterionResult result{1, "fd-oracle-equivalence", true, ""};
    double worst_linf = 0, worst_chi2 = 0;
    int count = 0;
    for (CaseSpec& spec : equivalence_cases()) {
        PreparedCase c =
            prepare_exact(spec.label, std::move(spec.circuit), {spec.device, 5, 10});
        const FdResult fd = reconstruct_fd(c.plan, c.outcomes);
        const std::vector<double> oracle = probabilities(c.circuit);
        double linf = 0;
        for (std::size_t i = 0; i < oracle.size(); ++i)
            linf = std::max(linf, std::fabs(fd.probabilities[i] - oracle[i]));
        const double chi2 = std::fabs(chi_squared(fd.probabilities, oracle));
        log << fmt("  [1] %-16s K=%d linf=%.3e chi2=%.3e\n", c.label.c_str(),
                   c.solution.cut_count, linf, chi2);
        if (linf >= 1e-8 || chi2 >= 1e-12) result.pass = false;
        worst_linf = std::max(worst_linf, linf);
        worst_chi2 = std::max(worst_chi2, chi2);
        ++count;
    }
    result.detail =
        fmt("%d cases, worst linf=%.3e (<1e-8), worst chi2=%.3e (<1e-12)", count, worst_linf,
            worst_chi2);
    return result;
}

// --- criterion 2 -----------------------------------------------------------

CriterionResult criterion2(std::ostream& log) {
    CriterionResult result{2, "five-qubit-chain-replication", false, ""};
    PreparedCase c = prepare_exact("chain5/D3", five_qubit_chain_example(), {3, 5, 10});
    const std::vector<double> oracle = probabilities(c.circuit);

    const bool shape_ok = c.solution.n_subcircuits == 2 && c.solution.cut_count == 1 &&
                          c.plan.subcircuits[0].width() == 3 &&
                          c.plan.subcircuits[1].width() == 3 &&
                          c.plan.subcircuits[0].variant_count() == 3 &&
                          c.plan.subcircuits[1].variant_count() == 4;

    // p(|01010>) as half the sum over the four cut terms of the product of
    // the two subcircuits' attributed entries.
    const std::size_t target = 0b01010;
    double by_terms = 0;
    for (int term = 0; term < 4; ++term) {
        const std::vector<double> up = attribute(c.plan.subcircuits[0], c.outcomes[0], {term});
        const std::vector<double> down = attribute(c.plan.subcircuits[1], c.outcomes[1], {term});
        by_terms += up[0b01] * down[0b010];
    }
    by_terms /= 2;

    const FdResult fd = reconstruct_fd(c.plan, c.outcomes);
    const double err_terms = std::fabs(by_terms - oracle[target]);
    const double err_fd = std::fabs(fd.probabilities[target] - oracle[target]);
    log << fmt("  [2] m=%d K=%d widths=%d,%d variants=%llu+%llu p(01010)=%.12f oracle=%.12f\n",
               c.solution.n_subcircuits, c.solution.cut_count, c.plan.subcircuits[0].width(),
               c.plan.subcircuits[1].width(),
               (unsigned long long)c.plan.subcircuits[0].variant_count(),
               (unsigned long long)c.plan.subcircuits[1].variant_count(), by_terms,
               oracle[target]);
    result.pass = shape_ok && err_terms < 1e-10 && err_fd < 1e-10;
    result.detail = fmt("K=%d, 3+4 variants, |p-oracle|=%.3e (<1e-10)%s", c.solution.cut_count,
                        std::max(err_terms, err_fd), shape_ok ? "" : ", wrong shape");
    return result;
}

// --- criterion 3 -----------------------------------------------------------

CriterionResult criterion3(std::ostream& log) {
    CriterionResult result{3, "term-count-law", true, ""};
    struct Instance {
        std::string label;
        Circuit circuit;
        int device;
        int expect_k;
    };
    std::vector<Instance> instances;
    instances.push_back({"chain5/D3", five_qubit_chain_example(), 3, 1});
    instances.push_back({"bv10/D5", generate_benchmark(bv_spec(10)), 5, 2});
    instances.push_back({"bv15/D5", generate_benchmark(bv_spec(15)), 5, 3});
    instances.push_back({"bv20/D5", generate_benchmark(bv_spec(20)), 5, 4});
    std::string tail;
    for (Instance& inst : instances) {
        PreparedCase c =
            prepare_exact(inst.label, std::move(inst.circuit), {inst.device, 5, 10});
        const FdResult fd = reconstruct_fd(c.plan, c.outcomes);
        const std::uint64_t expected = std::uint64_t(1) << (2 * c.solution.cut_count);
        const bool ok = c.solution.cut_count == inst.expect_k &&
                        fd.term_count == expected &&
                        fd.terms_evaluated + fd.terms_skipped == expected;
        log << fmt("  [3] %-10s K=%d evaluated=%llu skipped=%llu total=%llu\n",
                   c.label.c_str(), c.solution.cut_count,
                   (unsigned long long)fd.terms_evaluated, (unsigned long long)fd.terms_skipped,
                   (unsigned long long)expected);
        if (!ok) result.pass = false;
        tail = fmt("K=%d: %llu+%llu=%llu", c.solution.cut_count,
                   (unsigned long long)fd.terms_evaluated, (unsigned long long)fd.terms_skipped,
                   (unsigned long long)expected);
    }
    result.detail = "evaluated+skipped=4^K for K=1..4; " + tail;
    return result;
}

// --- criterion 4 -----------------------------------------------------------

struct BruteResult {
    bool found = false;
    BigUint objective = 0;
    int cuts = 0;
    int blocks = 0;
    std::vector<int> labels;
};

BruteResult brute_force_cuts(const CircuitDag& dag, const SearchConfig& config) {
    const int nv = dag.vertex_count();
    BruteResult best;
    std::vector<int> labels(nv, 0);
    // Single block: zero cuts and an empty cost sum, feasible when the whole
    // circuit already fits on the device.
    if (dag.n_qubits <= config.device_qubits) best = {true, 0, 0, 1, labels};
    for (int m = 2; m <= config.max_subcircuits; ++m) {
        std::fill(labels.begin(), labels.end(), 0);
        while (true) {
            // Evaluate the current labeling from scratch.
            std::vector<int> alpha(m, 0), rho(m, 0), measured(m, 0), size(m, 0);
            for (int v = 0; v < nv; ++v) {
                alpha[labels[v]] += dag.weights[v];
                ++size[labels[v]];
            }
            int cuts = 0;
            for (const DagEdge& e : dag.edges)
                if (labels[e.from] != labels[e.to]) {
                    ++cuts;
                    ++rho[labels[e.to]];
                    ++measured[labels[e.from]];
                }
            bool ok = cuts <= config.max_cuts;
            std::vector<int> outputs(m);
            for (int b = 0; b < m && ok; ++b) {
                if (size[b] == 0 || alpha[b] + rho[b] > config.device_qubits) ok = false;
                outputs[b] = alpha[b] + rho[b] - measured[b];
            }
            if (ok) {
                const BigUint objective = evaluate_objective(cuts, outputs);
                bool better = !best.found;
                if (!better && objective < best.objective) better = true;
                if (!better && objective == best.objective) {
                    if (cuts < best.cuts)
                        better = true;
                    else if (cuts == best.cuts)
                        better = std::lexicographical_compare(labels.begin(), labels.end(),
                                                              best.labels.begin(),
                                                              best.labels.end());
                }
                if (better) best = {true, objective, cuts, m, labels};
            }
            // Next labeling with label[v] <= min(v, m-1).
            int v = nv - 1;
            while (v >= 0 && labels[v] == std::min(v, m - 1)) labels[v--] = 0;
            if (v < 0) break;
            ++labels[v];
        }
    }
    return best;
}

CriterionResult criterion4(std::ostream& log) {
    CriterionResult result{4, "cut-search-optimality", true, ""};
    std::mt19937_64 rng(42);
    int feasible = 0, infeasible = 0, mismatched = 0;
    for (int i = 0; i < 50; ++i) {
        const int n = 4 + static_cast<int>(rng() % 3);
        const int min_verts = n - 1;
        const int verts = min_verts + static_cast<int>(rng() % (10 - min_verts + 1));
        const Circuit circuit = random_connected_circuit(rng, n, verts);
        const SearchConfig config{3 + static_cast<int>(rng() % 2), 3, 10};
        const CircuitDag dag = build_dag(circuit);

        const BruteResult brute = brute_force_cuts(dag, config);
        const auto found = find_cuts(dag, config);
        if (brute.found != found.has_value()) {
            result.pass = false;
            ++mismatched;
            log << fmt("  [4] case %d: feasibility mismatch\n", i);
            continue;
        }
        if (!found) {
            ++infeasible;
            continue;
        }
        ++feasible;
        const bool equal = found->objective == brute.objective &&
                           found->cut_count == brute.cuts &&
                           found->n_subcircuits == brute.blocks &&
                           found->assignment == brute.labels;
        const bool valid = validate_solution(dag, *found, config).empty();
        if (!equal || !valid) {
            result.pass = false;
            ++mismatched;
            log << fmt("  [4] case %d (n=%d verts=%d D=%d): %s%s; L=%s vs brute %s\n", i, n,
                       verts, config.device_qubits, equal ? "" : "solution mismatch",
                       valid ? "" : " validation violations", found->objective.str().c_str(),
                       brute.objective.str().c_str());
        }
    }
    log << fmt("  [4] %d feasible, %d infeasible, %d mismatched against exhaustive search\n",
               feasible, infeasible, mismatched);
    result.detail = fmt("50 random circuits (%d feasible, %d infeasible): %d mismatches vs "
                        "exhaustive search",
                        feasible, infeasible, mismatched);
    return result;
}

// --- criterion 5 -----------------------------------------------------------

CriterionResult criterion5(std::ostream& log) {
    CriterionResult result{5, "dd-solution-location", true, ""};
    struct Instance {
        int n;
        int device;
    };
    for (Instance inst : {Instance{4, 3}, Instance{8, 5}, Instance{12, 6}}) {
        PreparedCase c = prepare_exact(fmt("bv%d/D%d", inst.n, inst.device),
                                       generate_benchmark(bv_spec(inst.n)),
                                       {inst.device, 5, 10});
        DdOptions options;
        options.max_active = 1;
        options.strategy = DdStrategy::DFS;
        const DdResult dd = dd_query(c.plan, c.outcomes, options);

        // Hidden string all ones plus the ancilla: the state |11..1>.
        std::size_t located = 0;
        double final_prob = 0;
        const DdRecursionRecord& last = dd.recursions.back();
        int best_bin = 0;
        for (std::size_t j = 1; j < last.bins.size(); ++j)
            if (last.bins[j] > last.bins[best_bin]) best_bin = static_cast<int>(j);
        final_prob = last.bins[best_bin];
        for (int q = 0; q < inst.n; ++q) {
            const QubitLabel& l = last.labeling[q];
            int bit;
            if (l.kind == LabelKind::Zoomed)
                bit = l.bit;
            else
                bit = (best_bin >> (last.active_qubits.size() - 1 -
                                    (std::find(last.active_qubits.begin(),
                                               last.active_qubits.end(), q) -
                                     last.active_qubits.begin()))) &
                      1;
            located = (located << 1) | static_cast<std::size_t>(bit);
        }
        const std::size_t expected = (std::size_t(1) << inst.n) - 1;
        const bool ok = static_cast<int>(dd.recursions.size()) == inst.n &&
                        located == expected && std::fabs(final_prob - 1.0) < 1e-8;
        log << fmt("  [5] bv%-2d: %zu recursions, located=%zu, prob=%.12f\n", inst.n,
                   dd.recursions.size(), located, final_prob);
        if (!ok) result.pass = false;
    }
    result.detail = "BV 4/8/12 located in exactly n recursions with final bin prob 1 (1e-8)";
    return result;
}

// --- criterion 6 -----------------------------------------------------------

std::vector<double> marginalize(const std::vector<double>& full,
                                const std::vector<QubitLabel>& labeling) {
    const int n = static_cast<int>(labeling.size());
    std::vector<int> active;
    for (int q = 0; q < n; ++q)
        if (labeling[q].kind == LabelKind::Active) active.push_back(q);
    std::vector<double> bins(std::size_t(1) << active.size(), 0.0);
    for (std::size_t idx = 0; idx < full.size(); ++idx) {
        bool match = true;
        for (int q = 0; q < n && match; ++q)
            if (labeling[q].kind == LabelKind::Zoomed &&
                static_cast<int>((idx >> (n - 1 - q)) & 1) != labeling[q].bit)
                match = false;
        if (!match) continue;
        std::size_t bin = 0;
        for (std::size_t r = 0; r < active.size(); ++r)
            bin |= ((idx >> (n - 1 - active[r])) & 1) << (active.size() - 1 - r);
        bins[bin] += full[idx];
    }
    return bins;
}

CriterionResult criterion6(std::ostream& log) {
    CriterionResult result{6, "dd-conservation-consistency", true, ""};
    std::mt19937_64 rng(7);
    double worst_sum = 0, worst_elem = 0;
    for (int i = 0; i < 100; ++i) {
        const int n = 4 + static_cast<int>(rng() % 4);
        const int verts = (n - 1) + static_cast<int>(rng() % 5);
        const Circuit circuit = random_connected_circuit(rng, n, verts);
        const CircuitDag dag = build_dag(circuit);
        SearchConfig config{n - 1 - static_cast<int>(rng() % 2), 4, 10};
        auto solution = find_cuts(dag, config);
        if (!solution) {
            config.device_qubits = n;  // runs uncut; the labeling math still applies
            solution = find_cuts(dag, config);
        }
        const CutPlan plan = extract_subcircuits(circuit, *solution);
        const auto outcomes = run_all_variants(plan, RunMode{});
        const FdResult fd = reconstruct_fd(plan, outcomes);

        std::vector<QubitLabel> labeling(n);
        for (QubitLabel& l : labeling) {
            switch (rng() % 4) {
                case 0: l = {LabelKind::Merged, 0}; break;
                case 1: l = {LabelKind::Active, 0}; break;
                default: l = {LabelKind::Zoomed, static_cast<int>(rng() % 2)}; break;
            }
        }
        const std::vector<double> bins =
            dd_bins(plan, attribute_tables(plan, outcomes), labeling);
        const std::vector<double> expected = marginalize(fd.probabilities, labeling);
        const double region = std::accumulate(expected.begin(), expected.end(), 0.0);
        const double bin_sum = std::accumulate(bins.begin(), bins.end(), 0.0);
        const double sum_err = std::fabs(bin_sum - region);
        double elem_err = 0;
        for (std::size_t j = 0; j < bins.size(); ++j)
            elem_err = std::max(elem_err, std::fabs(bins[j] - expected[j]));
        worst_sum = std::max(worst_sum, sum_err);
        worst_elem = std::max(worst_elem, elem_err);
        if (sum_err >= 1e-8 || elem_err >= 1e-8) {
            result.pass = false;
            log << fmt("  [6] case %d: sum_err=%.3e elem_err=%.3e\n", i, sum_err, elem_err);
        }
    }
    log << fmt("  [6] 100 cases: worst sum err=%.3e, worst elementwise err=%.3e\n", worst_sum,
               worst_elem);
    result.detail = fmt("100 random circuit/labeling pairs: bins conserve region mass "
                        "(worst %.3e) and match marginals (worst %.3e), both <1e-8",
                        worst_sum, worst_elem);
    return result;
}

// --- criterion 7 -----------------------------------------------------------

CriterionResult criterion7(std::ostream& log) {
    CriterionResult result{7, "optimization-neutrality", true, ""};
    double worst = 0;
    int count = 0;
    for (CaseSpec& spec : equivalence_cases()) {
        PreparedCase c =
            prepare_exact(spec.label, std::move(spec.circuit), {spec.device, 5, 10});
        FdOptions base;
        const std::vector<double> reference = reconstruct_fd(c.plan, c.outcomes, base).probabilities;
        double case_worst = 0;
        auto compare = [&](const FdOptions& options) {
            const std::vector<double> got =
                reconstruct_fd(c.plan, c.outcomes, options).probabilities;
            for (std::size_t i = 0; i < got.size(); ++i)
                case_worst = std::max(case_worst, std::fabs(got[i] - reference[i]));
        };
        FdOptions plain;
        plain.greedy_order = false;
        plain.early_termination = false;
        compare(plain);
        FdOptions two = base;
        two.threads = 2;
        compare(two);
        FdOptions eight = base;
        eight.threads = 8;
        compare(eight);
        log << fmt("  [7] %-16s max diff=%.3e\n", c.label.c_str(), case_worst);
        if (case_worst >= 1e-9) result.pass = false;
        worst = std::max(worst, case_worst);
        ++count;
    }
    result.detail = fmt("%d cases x {plain, threads 2, threads 8}: max elementwise "
                        "difference %.3e (<1e-9)",
                        count, worst);
    return result;
}

// --- criterion 8 -----------------------------------------------------------

CriterionResult criterion8(std::ostream& log) {
    CriterionResult result{8, "shots-mode-convergence", false, ""};
    PreparedCase c = prepare_exact("bv8/D5", generate_benchmark(bv_spec(8)), {5, 5, 10});
    const std::vector<double> oracle = probabilities(c.circuit);
    double tv_low = 0, tv_high = 0;
    long long negatives = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (std::uint64_t shots : {std::uint64_t(256), std::uint64_t(8192)}) {
            RunMode mode;
            mode.exact = false;
            mode.shots = shots;
            mode.seed = seed;
            const auto outcomes = run_all_variants(c.plan, mode);
            const FdResult fd = reconstruct_fd(c.plan, outcomes);
            const double tv = total_variation(fd.probabilities, oracle);
            negatives += std::count_if(fd.probabilities.begin(), fd.probabilities.end(),
                                       [](double x) { return x < 0.0; });
            (shots == 256 ? tv_low : tv_high) += tv / 5;
        }
    }
    log << fmt("  [8] avg TV over 5 seeds: 256 shots=%.4f, 8192 shots=%.4f, "
               "negative entries seen=%lld\n",
               tv_low, tv_high, negatives);
    result.pass = tv_high < tv_low;
    result.detail = fmt("avg TV 8192 shots %.4f < 256 shots %.4f; %lld negative entries reported",
                        tv_high, tv_low, negatives);
    return result;
}

// --- criterion 9 -----------------------------------------------------------

CriterionResult criterion9(std::ostream& log) {
    CriterionResult result{9, "parallel-scaling", false, ""};
    PreparedCase c = prepare_exact("bv20/D5", generate_benchmark(bv_spec(20)), {5, 5, 10});
    const std::uint64_t terms = std::uint64_t(1) << (2 * c.solution.cut_count);

    auto time_with = [&](int threads) {
        FdOptions options;
        options.threads = threads;
        options.greedy_order = false;      // keep every term's product full width
        options.early_termination = false;
        double best = 1e300;
        for (int rep = 0; rep < 3; ++rep)
            best = std::min(best, reconstruct_fd(c.plan, c.outcomes, options).wall_seconds);
        return best;
    };
    const double t1 = time_with(1);
    const double t8 = time_with(8);
    const double ratio = t8 / t1;
    const unsigned cores = std::thread::hardware_concurrency();
    log << fmt("  [9] %llu terms, 2^20 outputs: threads1=%.3fs threads8=%.3fs ratio=%.2f "
               "(%u hardware threads)\n",
               (unsigned long long)terms, t1, t8, ratio, cores);
    result.pass = terms >= 256 && ratio <= 0.5;
    result.detail = fmt("8-thread/1-thread wall ratio %.2f (need <=0.50) on %llu terms, "
                        "2^20 outputs, %u hardware threads",
                        ratio, (unsigned long long)terms, cores);
    return result;
}

// --- criterion 10 ----------------------------------------------------------

CriterionResult criterion10(std::ostream& log) {
    CriterionResult result{10, "noisy-fidelity-advantage", false, ""};
    PreparedCase c = prepare_exact("bv10/D5", generate_benchmark(bv_spec(10)), {5, 5, 10});
    const std::vector<double> oracle = probabilities(c.circuit);
    const double noise = 0.01;
    const std::uint64_t shots = 8192;
    double chi_direct = 0, chi_cut = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RunMode direct_mode;
        direct_mode.exact = false;
        direct_mode.shots = shots;
        direct_mode.seed = seed;
        direct_mode.stream = make_stream_id(0xD17EC7, 0);
        direct_mode.depolarizing = noise;
        const VariantOutcome direct = run_variant(c.circuit, direct_mode);
        chi_direct += chi_squared(direct.estimates(), oracle) / 5;

        RunMode cut_mode;
        cut_mode.exact = false;
        cut_mode.shots = shots;
        cut_mode.seed = seed;
        cut_mode.depolarizing = noise;
        const auto outcomes = run_all_variants(c.plan, cut_mode);
        const FdResult fd = reconstruct_fd(c.plan, outcomes);
        chi_cut += chi_squared(fd.probabilities, oracle) / 5;
    }
    const double reduction = 100.0 * (chi_direct - chi_cut) / chi_direct;
    log << fmt("  [10] avg chi2 over 5 seeds at %.0f%% gate noise: direct=%.4f cut=%.4f "
               "(%.0f%% reduction)\n",
               noise * 100, chi_direct, chi_cut, reduction);
    result.pass = chi_cut < chi_direct;
    result.detail = fmt("cut chi2 %.4f < direct chi2 %.4f at 1%% depolarizing noise "
                        "(%.0f%% reduction, 5 seeds)",
                        chi_cut, chi_direct, reduction);
    return result;
}

}  // namespace

Circuit five_qubit_chain_example() {
    // A CZ chain over five qubits, cuttable on wire 2 between the middle CZ
    // gates into two width-3 halves. The single-qubit gates are chosen so that
    // every basis state keeps a distinct nonzero probability.
    Circuit c;
    c.n_qubits = 5;
    c.name = "chain5";
    for (int q = 0; q < 5; ++q) c.add(GateKind::H, q);
    c.add(GateKind::CZ, 0, 1);
    c.add(GateKind::T, 0);
    c.add(GateKind::H, 0);
    c.add(GateKind::T, 1);
    c.add(GateKind::CZ, 1, 2);
    c.add(GateKind::H, 1);
    c.add(GateKind::T, 2);
    c.add(GateKind::CZ, 2, 3);
    c.add(GateKind::H, 2);
    c.add(GateKind::T, 3);
    c.add(GateKind::CZ, 3, 4);
    c.add(GateKind::H, 3);
    c.add(GateKind::T, 4);
    c.add(GateKind::H, 4);
    return c;
}

Circuit random_connected_circuit(std::mt19937_64& rng, int n_qubits, int two_qubit_gates) {
    if (n_qubits < 2) throw std::invalid_argument("need at least two qubits");
    if (two_qubit_gates < n_qubits - 1)
        throw std::invalid_argument("too few two-qubit gates to connect every qubit");
    const GateKind singles[] = {GateKind::H, GateKind::X,  GateKind::S,
                                GateKind::T, GateKind::RY, GateKind::RZ};
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Circuit c;
        c.n_qubits = n_qubits;
        for (int g = 0; g < two_qubit_gates; ++g) {
            if (rng() % 2) {
                const GateKind kind = singles[rng() % 6];
                const double angle = gate_has_angle(kind)
                                         ? 6.283185307179586 * (rng() >> 11) * 0x1.0p-53
                                         : 0.0;
                c.add(kind, static_cast<int>(rng() % n_qubits), -1, angle);
            }
            const int a = static_cast<int>(rng() % n_qubits);
            int b = static_cast<int>(rng() % (n_qubits - 1));
            if (b >= a) ++b;
            c.add(rng() % 2 ? GateKind::CX : GateKind::CZ, a, b);
        }
        if (rng() % 2) c.add(GateKind::H, static_cast<int>(rng() % n_qubits));
        if (build_dag(c).fully_connected()) return c;
    }
    throw std::runtime_error("failed to draw a connected circuit");
}

CriterionResult run_criterion(int id, std::ostream& log) {
    switch (id) {
        case 1: return criterion1(log);
        case 2: return criterion2(log);
        case 3: return criterion3(log);
        case 4: return criterion4(log);
        case 5: return criterion5(log);
        case 6: return criterion6(log);
        case 7: return criterion7(log);
        case 8: return criterion8(log);
        case 9: return criterion9(log);
        case 10: return criterion10(log);
        default: throw std::invalid_argument("criterion id must be 1..10");
    }
}

std::vector<CriterionResult> run_criteria(std::ostream& log) {
    std::vector<CriterionResult> results;
    for (int id = 1; id <= 10; ++id) results.push_back(run_criterion(id, log));
    return results;
}

}  // namespace qcut
