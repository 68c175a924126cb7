#include "oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace qcut::test {

namespace {

using cd = std::complex<double>;

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat identity(int qubits) {
    return Mat::Identity(Eigen::Index(1) << qubits, Eigen::Index(1) << qubits);
}

// M acting on qubit q of n, identity elsewhere.
Mat embed_single(const Mat& m, int q, int n) {
    return kron(identity(q), kron(m, identity(n - 1 - q)));
}

}  // namespace

Mat gate_matrix_2x2(GateKind kind, double angle) {
    const double r = std::numbers::sqrt2 / 2.0;
    const cd i{0, 1};
    Mat m(2, 2);
    switch (kind) {
        case GateKind::H: m << r, r, r, -r; break;
        case GateKind::X: m << 0, 1, 1, 0; break;
        case GateKind::Y: m << 0, -i, i, 0; break;
        case GateKind::Z: m << 1, 0, 0, -1; break;
        case GateKind::S: m << 1, 0, 0, i; break;
        case GateKind::Sdg: m << 1, 0, 0, -i; break;
        case GateKind::T: m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4); break;
        case GateKind::Tdg: m << 1, 0, 0, std::polar(1.0, -std::numbers::pi / 4); break;
        case GateKind::SX:
            m << 0.5 * cd{1, 1}, 0.5 * cd{1, -1}, 0.5 * cd{1, -1}, 0.5 * cd{1, 1};
            break;
        case GateKind::SY:
            m << 0.5 * cd{1, 1}, 0.5 * cd{-1, -1}, 0.5 * cd{1, 1}, 0.5 * cd{1, 1};
            break;
        case GateKind::RX: {
            const double c = std::cos(angle / 2), s = std::sin(angle / 2);
            m << c, -i * s, -i * s, c;
            break;
        }
        case GateKind::RY: {
            const double c = std::cos(angle / 2), s = std::sin(angle / 2);
            m << c, -s, s, c;
            break;
        }
        case GateKind::RZ:
            m << std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2);
            break;
        default: throw std::invalid_argument("not a single-qubit gate");
    }
    return m;
}

Mat embed_gate(const Gate& gate, int n_qubits) {
    if (gate_arity(gate.kind) == 1)
        return embed_single(gate_matrix_2x2(gate.kind, gate.angle), gate.q0, n_qubits);

    // CX / CZ as |0><0| (x) I + |1><1| (x) U.
    Mat p0(2, 2), p1(2, 2);
    p0 << 1, 0, 0, 0;
    p1 << 0, 0, 0, 1;
    const Mat u = gate_matrix_2x2(gate.kind == GateKind::CX ? GateKind::X : GateKind::Z);
    return embed_single(p0, gate.q0, n_qubits) +
           embed_single(p1, gate.q0, n_qubits) * embed_single(u, gate.q1, n_qubits);
}

Vec oracle_state(const Circuit& circuit) {
    Vec state = Vec::Zero(Eigen::Index(1) << circuit.n_qubits);
    state(0) = 1.0;
    for (const Gate& gate : circuit.gates) state = embed_gate(gate, circuit.n_qubits) * state;
    return state;
}

std::vector<double> oracle_probabilities(const Circuit& circuit) {
    const Vec state = oracle_state(circuit);
    std::vector<double> probs(static_cast<std::size_t>(state.size()));
    for (Eigen::Index i = 0; i < state.size(); ++i) probs[i] = std::norm(state(i));
    return probs;
}

}  // namespace qcut::test
