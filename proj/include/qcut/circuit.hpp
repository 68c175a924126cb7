#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcut {

/// Fixed gate alphabet. One- and two-qubit gates only; rotation kinds carry
/// exactly one angle parameter, every other kind carries none.
enum class GateKind {
    H, X, Y, Z, S, Sdg, T, Tdg, SX, SY,  // one qubit, no parameter
    RX, RY, RZ,                          // one qubit, one angle
    CZ, CX,                              // two qubits
};

/// Number of qubits the gate kind acts on (1 or 2).
int gate_arity(GateKind kind);

/// True for RX/RY/RZ, the kinds that carry an angle.
bool gate_has_angle(GateKind kind);

/// Lowercase mnemonic used by the text format ("h", "cx", "rz", ...).
const std::string& gate_name(GateKind kind);

/// Inverse of gate_name; throws std::invalid_argument for unknown names.
GateKind gate_kind_from_name(const std::string& name);

struct Gate {
    GateKind kind = GateKind::H;
    int q0 = 0;
    int q1 = -1;       // second operand for two-qubit kinds, else -1
    double angle = 0;  // meaningful only when gate_has_angle(kind)

    bool operator==(const Gate& other) const;
};

/// Gate-level circuit on n_qubits qubits, gates in program order.
///
/// Bit convention used across the whole project: qubit 0 is the most
/// significant bit of a computational-basis state index, so state
/// |q0 q1 ... q_{n-1}> has index sum_i q_i * 2^(n-1-i).
struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
    std::string name;  // free-form label, ignored by equality

    Circuit() = default;
    explicit Circuit(int n, std::string label = "") : n_qubits(n), name(std::move(label)) {}

    /// Append a gate with validation (range, arity, distinct operands,
    /// finite angle). Throws std::invalid_argument on violation.
    Circuit& add(GateKind kind, int q0, int q1 = -1, double angle = 0);

    /// Validate every gate; throws std::invalid_argument on the first violation.
    void check() const;

    /// Equality compares structure (qubit count and gate list), not the name.
    bool operator==(const Circuit& other) const;

    /// Number of two-qubit gates acting on qubit q.
    int two_qubit_gate_count(int qubit) const;
};

/// Error from parse_circuit with the 1-based offending line recorded
/// (0 when the input is JSON or the location is not line-oriented).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + std::move(message)
                                      : std::move(message)),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

/// Parse a circuit from the plain-text format:
///
///   qubits <n>
///   <kind> <q0> [<q1>] [<angle>]   # one gate per line, '#' starts a comment
///
/// A leading '{' switches to the JSON mirror format:
///   {"n_qubits": n, "gates": [{"kind": "...", "qubits": [...], "params": [...]}]}
///
/// Both formats round-trip doubles exactly. Throws ParseError on bad input.
Circuit parse_circuit(const std::string& text);

/// Serialize to the plain-text format; parse_circuit(serialize_circuit(c)) == c.
std::string serialize_circuit(const Circuit& circuit);

/// Serialize to the JSON mirror format (also accepted by parse_circuit).
std::string serialize_circuit_json(const Circuit& circuit);

}  // namespace qcut
