#include "qcut/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qcut/dag.hpp"
#include "qcut/metrics.hpp"

namespace qcut {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PipelineResult run_pipeline(const Circuit& circuit, const PipelineOptions& options) {
    PipelineResult result;

    auto t0 = std::chrono::steady_clock::now();
    const CircuitDag dag = build_dag(circuit);
    auto solution = find_cuts(dag, options.search);
    if (!solution)
        throw CutInfeasibleError("no cut with at most " +
                                 std::to_string(options.search.max_subcircuits) +
                                 " subcircuits and " + std::to_string(options.search.max_cuts) +
                                 " cuts fits " + std::to_string(options.search.device_qubits) +
                                 " qubits");
    result.solution = *solution;
    result.plan = extract_subcircuits(circuit, *solution);
    result.seconds_cut = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto outcomes = run_all_variants(result.plan, options.mode);
    result.seconds_run = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    if (options.use_dd) {
        result.dd = dd_query(result.plan, outcomes, options.dd);
        result.probabilities = expand_bins(circuit.n_qubits, result.dd.recursions);
    } else {
        result.fd = reconstruct_fd(result.plan, outcomes, options.fd);
        result.probabilities = result.fd.probabilities;
    }
    result.seconds_build = seconds_since(t0);

    result.negative_entries =
        std::count_if(result.probabilities.begin(), result.probabilities.end(),
                      [](double x) { return x < 0.0; });
    return result;
}

VerifyReport verify_against_oracle(const Circuit& circuit, const std::vector<double>& estimate,
                                   bool exact_mode, std::uint64_t shots, int cut_count) {
    const std::vector<double> oracle = probabilities(circuit);
    if (oracle.size() != estimate.size())
        throw std::invalid_argument("estimate size does not match the circuit");
    VerifyReport report;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        report.linf = std::max(report.linf, std::fabs(estimate[i] - oracle[i]));
        if (estimate[i] < 0.0) ++report.negative_entries;
    }
    report.tvd = total_variation(estimate, oracle);
    report.chi2 = chi_squared(estimate, oracle);
    if (exact_mode) {
        report.tvd_threshold = 1e-6;
    } else {
        // Statistical envelope. An s-shot histogram of a w-qubit distribution
        // sits at total variation ~ sqrt(2^w / s); the attributed variant data
        // is shared across reconstruction terms, so sampling noise compounds
        // only mildly with the cut count (measured growth ~ sqrt(K + 1)).
        // The 0.5 prefactor leaves a 3x margin over the worst measured run.
        const double base =
            std::sqrt(std::ldexp(1.0, circuit.n_qubits) / static_cast<double>(shots));
        report.tvd_threshold = std::min(0.75, 0.5 * std::sqrt(cut_count + 1.0) * base);
    }
    report.pass = report.tvd <= report.tvd_threshold;
    return report;
}

}  // namespace qcut
