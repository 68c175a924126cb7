#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcut/cutter.hpp"
#include "qcut/reconstruct.hpp"

namespace qcut {

/// Role of one original qubit during a dynamic-definition recursion: summed
/// over (Merged), resolved in this recursion's bins (Active), or pinned to a
/// bit chosen by an earlier recursion (Zoomed).
enum class LabelKind { Merged, Active, Zoomed };

struct QubitLabel {
    LabelKind kind = LabelKind::Merged;
    int bit = 0;  ///< meaningful only when kind == Zoomed

    bool operator==(const QubitLabel&) const = default;
};

/// Builds one attribution table per subcircuit.
std::vector<AttributedTable> attribute_tables(
    const CutPlan& plan, const std::vector<std::vector<VariantOutcome>>& outcomes);

/// Probability mass per joint assignment of the active qubits, merged qubits
/// summed out and zoomed qubits pinned. Bins are indexed by the active qubits
/// in ascending original order, first active qubit most significant. Each
/// subcircuit's attributed vectors are collapsed to its active locals before
/// any cross-subcircuit product, so the working set stays near 2^(active)
/// regardless of the full circuit width.
std::vector<double> dd_bins(const CutPlan& plan, const std::vector<AttributedTable>& tables,
                            const std::vector<QubitLabel>& labeling);

enum class DdStrategy { DFS, BFS };

struct DdOptions {
    int max_active = 10;       ///< qubits resolved per recursion
    int max_recursions = 64;   ///< cap on bin-distribution evaluations
    double epsilon = 1e-6;     ///< stop descending into bins below this mass
    DdStrategy strategy = DdStrategy::DFS;

    /// Scripted zooming: recursion r + 1 zooms bin zoom_path[r] of the latest
    /// recursion instead of the strategy's own choice; epsilon is ignored.
    /// Stops when the path is exhausted (or no merged qubits remain). Throws
    /// std::out_of_range for a bin index outside the current bin vector.
    std::optional<std::vector<int>> zoom_path;
};

struct DdRecursionRecord {
    std::vector<QubitLabel> labeling;
    std::vector<int> active_qubits;  ///< ascending original indices
    std::vector<double> bins;
    int parent = -1;      ///< recursion whose bin this one zooms into
    int parent_bin = -1;  ///< bin index within the parent
};

struct DdResult {
    int n_qubits = 0;
    std::vector<DdRecursionRecord> recursions;
    std::uint64_t bins_computed = 0;
    std::uint64_t peak_workspace_doubles = 0;  ///< collapsed tables plus bins
    double wall_seconds = 0.0;
};

/// Recursive dynamic-definition query.
///
/// DFS: resolve the first max_active qubits, then repeatedly zoom into the
/// largest bin (ties to the lowest index), pinning its active qubits and
/// promoting the next merged qubits in ascending order; stops when no merged
/// qubits remain, the chosen bin falls below epsilon, or max_recursions is
/// reached.
///
/// BFS: a global queue ordered by (mass desc, recursion asc, bin asc)
/// expands the heaviest unresolved bin anywhere in the tree; each bin is
/// expanded at most once and fully resolved bins are skipped.
DdResult dd_query(const CutPlan& plan,
                  const std::vector<std::vector<VariantOutcome>>& outcomes,
                  const DdOptions& options = {});

/// Flattens a recursion trace into a full 2^n estimate: in trace order, each
/// bin's mass is spread uniformly over its merged qubits
/// (value / 2^merged) and written over every matching state, later
/// recursions overwriting the coarser values of earlier ones.
std::vector<double> expand_bins(int n_qubits, const std::vector<DdRecursionRecord>& recursions);

}  // namespace qcut
