#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcut/cutter.hpp"
#include "qcut/sim.hpp"

namespace qcut {

/// Runs every measurement/preparation variant of every subcircuit.
/// outcome[b][v] is subcircuit b under variant v; shots-mode runs draw an
/// independent reproducible stream per (b, v) from mode.seed.
std::vector<std::vector<VariantOutcome>> run_all_variants(const CutPlan& plan,
                                                          const RunMode& mode);

/// Vector over a subcircuit's surviving outputs attributed to one joint term
/// assignment of its incident cuts (`term_digits`, one 0..3 digit per
/// incident cut in ascending cut order).
///
/// Per measured cut, terms fold the measured bit with weights
/// (2,0), (0,2), (1,-1), (1,-1) applied to the Z, Z, X, Y bases; per
/// initialized cut, terms combine the |0>, |1>, |+>, |+i> preparations with
/// coefficient rows (1,0,0,0), (0,1,0,0), (-1,-1,2,0), (-1,-1,0,2). Summing
/// terms 0 and 1 of one cut therefore yields twice the marginal over the
/// others.
std::vector<double> attribute(const Subcircuit& sub,
                              const std::vector<VariantOutcome>& outcomes,
                              const std::vector<int>& term_digits);

/// All 4^(incident cuts) attributed vectors of one subcircuit, ranked in
/// radix 4 with the first incident cut most significant. `is_zero` marks
/// vectors whose entries are all exactly zero.
struct AttributedTable {
    std::vector<std::vector<double>> vectors;
    std::vector<char> is_zero;
};

AttributedTable attribute_all(const Subcircuit& sub,
                              const std::vector<VariantOutcome>& outcomes);

struct FdOptions {
    int threads = 1;
    /// Multiply subcircuits in ascending output-count order instead of label
    /// order. Off, the measured multiplication count equals the search
    /// objective exactly.
    bool greedy_order = true;
    /// Skip terms in which some subcircuit contributes an all-zero vector.
    bool early_termination = true;
    /// Explicit multiplication order (a permutation of the subcircuit
    /// labels); overrides greedy_order.
    std::optional<std::vector<int>> order_override;
};

struct FdResult {
    /// Quasi-probabilities over the uncut circuit's outputs, qubit 0 most
    /// significant. Sums to 1 up to rounding for exact subcircuit runs.
    std::vector<double> probabilities;
    std::vector<int> block_order;
    std::uint64_t term_count = 0;        ///< 4^cuts
    std::uint64_t terms_evaluated = 0;   ///< terms multiplied out
    std::uint64_t terms_skipped = 0;     ///< terms dropped by early termination
    std::uint64_t mults_build = 0;       ///< multiplications spent on products
    std::uint64_t mults_total = 0;       ///< mults_build plus final scaling
    double wall_seconds = 0.0;
};

/// Full-definition reconstruction: sums, over all 4^cuts joint term
/// assignments, the Kronecker product of each subcircuit's attributed vector,
/// scales by 2^-cuts, and reorders the surviving outputs back to original
/// qubit order. Terms are split into `threads` contiguous chunks accumulated
/// in private buffers and reduced in chunk order, so results are
/// deterministic for a fixed thread count and agree across thread counts up
/// to floating-point reassociation.
FdResult reconstruct_fd(const CutPlan& plan,
                        const std::vector<std::vector<VariantOutcome>>& outcomes,
                        const FdOptions& options = {});

}  // namespace qcut
