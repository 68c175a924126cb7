#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcut/dag.hpp"

namespace qcut {

/// Cost values can reach 4^K * n_C * 2^n; 256 checked bits cover the
/// supported range (cut counts to 10, output exponents to 128) and overflow
/// raises std::overflow_error instead of wrapping.
using BigUint = boost::multiprecision::checked_uint256_t;

struct SearchConfig {
    int device_qubits = 5;   // max qubits any subcircuit may occupy
    int max_subcircuits = 5;
    int max_cuts = 10;
};

/// Per-subcircuit qubit bookkeeping.
///  - input_qubits:    qubits whose first two-qubit gate lies here
///  - init_qubits:     cut wires entering (initialization qubits)
///  - measured_qubits: cut wires leaving (measured-out qubits)
///  - width:           input_qubits + init_qubits, the device footprint
///  - output_qubits:   width - measured_qubits, the final-output count
struct SubcircuitCounts {
    int input_qubits = 0;
    int init_qubits = 0;
    int measured_qubits = 0;
    int width = 0;
    int output_qubits = 0;

    bool operator==(const SubcircuitCounts&) const = default;
};

/// A cut wire segment together with the subcircuits on each side.
struct CutEdgeRef {
    int from_vertex = 0;
    int to_vertex = 0;
    int qubit = 0;
    int upstream = 0;    // subcircuit of from_vertex
    int downstream = 0;  // subcircuit of to_vertex

    bool operator==(const CutEdgeRef&) const = default;
};

struct CutSolution {
    int n_subcircuits = 1;
    std::vector<int> assignment;        // subcircuit index per dag vertex
    std::vector<CutEdgeRef> cut_edges;  // sorted by (from, to, qubit); index = cut id
    std::vector<SubcircuitCounts> counts;
    int cut_count = 0;                  // == cut_edges.size()
    BigUint objective = 0;              // classical postprocessing cost estimate
    bool no_cut_needed = false;         // whole circuit fits the device
};

/// Postprocessing cost estimate for a solution: with subcircuit output counts
/// f_1..f_m (in subcircuit order) and K cuts,
///
///   cost = 4^K * sum_{c=2}^{m} prod_{i<=c} 2^{f_i},
///
/// i.e. the Kronecker build multiplications, 4^K terms each built by running
/// prefix products over the subcircuit outputs. Zero when m == 1. Throws
/// std::overflow_error if a term exceeds the 256-bit range.
BigUint evaluate_objective(int cut_count, const std::vector<int>& output_qubit_counts);

struct Violation {
    enum class Code {
        Assignment,      // vertex without exactly one subcircuit, or empty subcircuit
        SymmetryOrder,   // vertex k placed in a subcircuit with index above k
        Capacity,        // width above the device limit, or config limits exceeded
        CutConsistency,  // stored cut edges disagree with the assignment
        Counts,          // stored per-subcircuit counts or K disagree with recomputation
        Objective,       // stored cost disagrees with evaluate_objective
    };
    Code code;
    std::string message;
};

/// Re-derive everything from (dag, assignment) and report all mismatches with
/// the stored solution; empty result means the solution is consistent.
std::vector<Violation> validate_solution(const CircuitDag& dag, const CutSolution& solution,
                                         const SearchConfig& config);

/// Exact minimum-cost cut search.
///
/// Returns the assignment minimizing evaluate_objective over every subcircuit
/// count in [2, max_subcircuits] and every assignment that respects the
/// vertex-order symmetry rule (vertex k may only enter subcircuits 0..k),
/// keeps every subcircuit within device_qubits, uses every subcircuit, and
/// cuts at most max_cuts wire segments. Ties prefer fewer cuts, then the
/// lexicographically smallest assignment vector.
///
/// When device_qubits >= n_qubits the whole circuit fits and the trivial
/// one-subcircuit solution is returned with no_cut_needed set. Returns
/// nullopt when no feasible assignment exists. Throws std::invalid_argument
/// for disconnected circuits (they should be run as separate circuits, not
/// cut) and for invalid configs.
///
/// Implementation: depth-first branch and bound over vertices in program
/// order, pruning on partial width, partial cut count, and a cost lower bound
/// of 4^cuts * sum_c 2^max(0, n - (m - c) * D) against the incumbent. Cut
/// counts are explored by iterative deepening: if k0 is the smallest feasible
/// cut count, any solution with k0 + 2 or more cuts costs more than the best
/// with at most k0 + 1 (the 4^K factor outgrows the bounded remainder), so
/// the final pass caps cuts at k0 + 1.
std::optional<CutSolution> find_cuts(const CircuitDag& dag, const SearchConfig& config);

}  // namespace qcut
