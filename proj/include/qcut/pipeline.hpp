#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qcut/cut_search.hpp"
#include "qcut/cutter.hpp"
#include "qcut/dd.hpp"
#include "qcut/reconstruct.hpp"
#include "qcut/sim.hpp"

namespace qcut {

/// Process exit codes shared by the command-line tools.
enum ExitCode : int {
    kExitOk = 0,
    kExitError = 1,       ///< bad input, internal failure
    kExitInfeasible = 2,  ///< no cut satisfies the device constraints
    kExitCapacity = 3,    ///< a requested simulation exceeds the size limit
    kExitVerifyFailed = 4 ///< reconstruction disagrees with the oracle
};

/// The cut searcher proved no admissible partition exists.
class CutInfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PipelineOptions {
    SearchConfig search;
    RunMode mode;      ///< exact or shots, optional depolarizing noise
    FdOptions fd;
    bool use_dd = false;
    DdOptions dd;
};

struct PipelineResult {
    CutSolution solution;
    CutPlan plan;
    FdResult fd;  ///< populated for full-definition queries
    DdResult dd;  ///< populated for dynamic-definition queries
    /// Reconstructed distribution over the uncut outputs (expanded from bins
    /// for dynamic-definition queries). May contain small negative entries in
    /// shots mode.
    std::vector<double> probabilities;
    long long negative_entries = 0;
    double seconds_cut = 0;
    double seconds_run = 0;
    double seconds_build = 0;
};

/// Cut, run all subcircuit variants, reconstruct. Throws CutInfeasibleError
/// when no cut fits, CapacityError when a subcircuit exceeds the simulator
/// limit, std::invalid_argument for malformed input.
PipelineResult run_pipeline(const Circuit& circuit, const PipelineOptions& options);

struct VerifyReport {
    double linf = 0;
    double tvd = 0;
    double chi2 = 0;
    long long negative_entries = 0;
    double tvd_threshold = 0;
    bool pass = false;
};

/// Compares a reconstructed distribution against the exact statevector
/// oracle. Exact-mode reconstructions must match to near round-off;
/// shots-mode reconstructions get a statistical allowance that grows with
/// the cut count and shrinks with the shot count. Throws CapacityError when
/// the uncut circuit is too wide to simulate.
VerifyReport verify_against_oracle(const Circuit& circuit, const std::vector<double>& estimate,
                                   bool exact_mode, std::uint64_t shots, int cut_count);

}  // namespace qcut
