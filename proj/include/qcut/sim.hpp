#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qcut/circuit.hpp"

namespace qcut {

/// Default cap on dense simulation width; override with the QCUT_ORACLE_CAP
/// environment variable (checked by simulation_capacity()).
inline constexpr int kDefaultSimCapacity = 26;

/// Effective capacity: QCUT_ORACLE_CAP if set and valid, else the default.
int simulation_capacity();

/// Thrown when a dense simulation would exceed the capacity cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense statevector over n qubits, initialized to |0...0>.
///
/// Qubit 0 is the most significant bit of the amplitude index (the shared
/// project convention), so |q0 q1 ... q_{n-1}> lives at index
/// sum_i q_i * 2^(n-1-i).
class StateVector {
public:
    explicit StateVector(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amplitudes_.size(); }

    void apply(const Gate& gate);

    const std::complex<double>& amplitude(std::size_t index) const { return amplitudes_[index]; }
    std::vector<double> probabilities() const;
    double norm_squared() const;

private:
    void apply_single(const Gate& gate);
    void apply_cx(int control, int target);
    void apply_cz(int a, int b);

    int n_qubits_;
    std::vector<std::complex<double>> amplitudes_;
};

/// Run the whole circuit on |0...0>. Throws CapacityError above the cap.
StateVector simulate_statevector(const Circuit& circuit);

/// Exact output distribution of the circuit.
std::vector<double> probabilities(const Circuit& circuit);

/// How a variant (or full circuit) is evaluated.
struct RunMode {
    bool exact = true;          // exact probabilities vs sampled shots
    std::uint64_t shots = 8192;
    std::uint64_t seed = 1;     // root seed; combined with the stream name
    std::uint64_t stream = 0;   // distinct value per variant (see make_stream_id)

    // Depolarizing noise: after every gate, each qubit of the register
    // (acting and idle alike, an idle-decoherence analogue) is hit by a
    // uniformly random Pauli with this probability. Only available in shots
    // mode, where each shot samples an independent error trajectory.
    double depolarizing = 0;
};

/// Derive a per-variant stream id so every (subcircuit, variant) pair samples
/// from an independent, reproducible sequence.
std::uint64_t make_stream_id(std::uint64_t subcircuit, std::uint64_t variant);

/// Result of running one circuit variant: exact probabilities, or counts
/// normalized on demand.
struct VariantOutcome {
    bool exact = true;
    std::uint64_t shots = 0;
    std::vector<double> probs;          // exact mode
    std::vector<std::uint64_t> counts;  // shots mode

    std::size_t size() const { return exact ? probs.size() : counts.size(); }
    /// Probability estimates regardless of mode.
    std::vector<double> estimates() const;
};

/// Evaluate a circuit in the requested mode. Shot sampling inverts the CDF of
/// the exact distribution with a seeded generator; with noise enabled each
/// shot simulates its own error trajectory. Throws std::invalid_argument for
/// noise in exact mode and CapacityError above the cap.
VariantOutcome run_variant(const Circuit& circuit, const RunMode& mode);

}  // namespace qcut
