#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "qcut/circuit.hpp"

namespace qcut {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Five-qubit chain: a Hadamard layer, then a CZ ladder with T and H
/// interleaves. Cut to three-qubit devices it splits into two three-qubit
/// halves joined by a single wire cut.
Circuit five_qubit_chain_example();

/// Seeded random circuit over `n_qubits` with exactly `two_qubit_gates`
/// two-qubit gates, one-qubit gates sprinkled in between, and a fully
/// connected interaction graph.
Circuit random_connected_circuit(std::mt19937_64& rng, int n_qubits, int two_qubit_gates);

/// Runs one verification criterion (1..10), writing progress to `log`.
CriterionResult run_criterion(int id, std::ostream& log);

/// Runs every criterion in order.
std::vector<CriterionResult> run_criteria(std::ostream& log);

}  // namespace qcut
