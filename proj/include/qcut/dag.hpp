#pragma once

#include <vector>

#include "qcut/circuit.hpp"

namespace qcut {

/// Wire segment between two consecutive two-qubit gates on a common qubit.
/// `from` precedes `to` in program order.
struct DagEdge {
    int from = 0;
    int to = 0;
    int qubit = 0;

    bool operator==(const DagEdge&) const = default;
};

/// Cut-search view of a circuit. Vertices are the two-qubit gates in program
/// order; single-qubit gates do not appear. weight[v] counts the qubits whose
/// first two-qubit gate is v, so weights sum to the number of qubits touched
/// by at least one two-qubit gate.
struct CircuitDag {
    int n_qubits = 0;
    std::vector<int> vertex_gates;  // vertex -> index into Circuit::gates
    std::vector<DagEdge> edges;     // sorted by (from, to, qubit)
    std::vector<int> weights;       // per vertex, 0..2

    int vertex_count() const { return static_cast<int>(vertex_gates.size()); }

    /// Qubits acted on by at least one two-qubit gate.
    int touched_qubit_count() const;

    /// True when every qubit participates in a two-qubit gate and the vertices
    /// form a single connected component (single-qubit circuits are connected).
    /// Disconnected circuits are reported to the caller rather than cut.
    bool fully_connected() const;
};

CircuitDag build_dag(const Circuit& circuit);

}  // namespace qcut
