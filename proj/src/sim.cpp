#include "qcut/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

namespace qcut {

namespace {

using cd = std::complex<double>;

std::array<cd, 4> gate_matrix(GateKind kind, double angle) {
    constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    const cd i{0, 1};
    switch (kind) {
        case GateKind::H: return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case GateKind::X: return {0, 1, 1, 0};
        case GateKind::Y: return {0, -i, i, 0};
        case GateKind::Z: return {1, 0, 0, -1};
        case GateKind::S: return {1, 0, 0, i};
        case GateKind::Sdg: return {1, 0, 0, -i};
        case GateKind::T: return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
        case GateKind::Tdg: return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
        case GateKind::SX:
            return {0.5 * cd{1, 1}, 0.5 * cd{1, -1}, 0.5 * cd{1, -1}, 0.5 * cd{1, 1}};
        case GateKind::SY:
            return {0.5 * cd{1, 1}, 0.5 * cd{-1, -1}, 0.5 * cd{1, 1}, 0.5 * cd{1, 1}};
        case GateKind::RX: {
            double c = std::cos(angle / 2), s = std::sin(angle / 2);
            return {c, -i * s, -i * s, c};
        }
        case GateKind::RY: {
            double c = std::cos(angle / 2), s = std::sin(angle / 2);
            return {c, -s, s, c};
        }
        case GateKind::RZ:
            return {std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2)};
        default: throw std::logic_error("not a single-qubit gate");
    }
}

// splitmix64; used to fold (seed, stream) into generator seeds.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 make_rng(const RunMode& mode) {
    return std::mt19937_64(mix64(mode.seed) ^ mix64(mix64(mode.stream) + 0x715ea5e1ull));
}

std::size_t sample_index(const std::vector<double>& cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return static_cast<std::size_t>(it - cdf.begin());
}

void simulate_noisy_trajectory(StateVector& state, const Circuit& circuit, double p,
                               std::mt19937_64& rng) {
    const GateKind paulis[3] = {GateKind::X, GateKind::Y, GateKind::Z};
    for (const Gate& g : circuit.gates) {
        state.apply(g);
        for (int q = 0; q < circuit.n_qubits; ++q)
            if (uniform01(rng) < p) state.apply({paulis[rng() % 3], q, -1, 0});
    }
}

}  // namespace

int simulation_capacity() {
    if (const char* env = std::getenv("QCUT_ORACLE_CAP")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end && *end == '\0' && value >= 1 && value <= 30) return static_cast<int>(value);
    }
    return kDefaultSimCapacity;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("statevector needs at least one qubit");
    if (n_qubits > simulation_capacity())
        throw CapacityError("statevector of " + std::to_string(n_qubits) +
                            " qubits exceeds the capacity cap of " +
                            std::to_string(simulation_capacity()));
    amplitudes_.assign(std::size_t{1} << n_qubits, cd{0, 0});
    amplitudes_[0] = 1;
}

void StateVector::apply(const Gate& gate) {
    if (gate.q0 < 0 || gate.q0 >= n_qubits_ ||
        (gate_arity(gate.kind) == 2 && (gate.q1 < 0 || gate.q1 >= n_qubits_)))
        throw std::invalid_argument("gate operand out of range");
    switch (gate.kind) {
        case GateKind::CX: apply_cx(gate.q0, gate.q1); break;
        case GateKind::CZ: apply_cz(gate.q0, gate.q1); break;
        default: apply_single(gate);
    }
}

void StateVector::apply_single(const Gate& gate) {
    const auto m = gate_matrix(gate.kind, gate.angle);
    const std::size_t stride = std::size_t{1} << (n_qubits_ - 1 - gate.q0);
    for (std::size_t base = 0; base < amplitudes_.size(); base += 2 * stride)
        for (std::size_t offset = 0; offset < stride; ++offset) {
            cd& a0 = amplitudes_[base + offset];
            cd& a1 = amplitudes_[base + offset + stride];
            const cd t0 = m[0] * a0 + m[1] * a1;
            const cd t1 = m[2] * a0 + m[3] * a1;
            a0 = t0;
            a1 = t1;
        }
}

void StateVector::apply_cx(int control, int target) {
    const std::size_t cm = std::size_t{1} << (n_qubits_ - 1 - control);
    const std::size_t tm = std::size_t{1} << (n_qubits_ - 1 - target);
    for (std::size_t idx = 0; idx < amplitudes_.size(); ++idx)
        if ((idx & cm) && !(idx & tm)) std::swap(amplitudes_[idx], amplitudes_[idx | tm]);
}

void StateVector::apply_cz(int a, int b) {
    const std::size_t am = std::size_t{1} << (n_qubits_ - 1 - a);
    const std::size_t bm = std::size_t{1} << (n_qubits_ - 1 - b);
    for (std::size_t idx = 0; idx < amplitudes_.size(); ++idx)
        if ((idx & am) && (idx & bm)) amplitudes_[idx] = -amplitudes_[idx];
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> out(amplitudes_.size());
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) out[i] = std::norm(amplitudes_[i]);
    return out;
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const cd& a : amplitudes_) total += std::norm(a);
    return total;
}

StateVector simulate_statevector(const Circuit& circuit) {
    circuit.check();
    StateVector state(circuit.n_qubits);
    for (const Gate& g : circuit.gates) state.apply(g);
    return state;
}

std::vector<double> probabilities(const Circuit& circuit) {
    return simulate_statevector(circuit).probabilities();
}

std::uint64_t make_stream_id(std::uint64_t subcircuit, std::uint64_t variant) {
    return mix64(subcircuit * 0x100000001b3ull + variant);
}

std::vector<double> VariantOutcome::estimates() const {
    if (exact) return probs;
    std::vector<double> out(counts.size());
    if (shots == 0) return out;
    for (std::size_t i = 0; i < counts.size(); ++i)
        out[i] = double(counts[i]) / double(shots);
    return out;
}

VariantOutcome run_variant(const Circuit& circuit, const RunMode& mode) {
    VariantOutcome outcome;
    outcome.exact = mode.exact;
    if (mode.exact) {
        if (mode.depolarizing != 0)
            throw std::invalid_argument("depolarizing noise requires shots mode");
        outcome.probs = probabilities(circuit);
        return outcome;
    }
    if (mode.shots == 0) throw std::invalid_argument("shots mode requires shots >= 1");
    outcome.shots = mode.shots;
    outcome.counts.assign(std::size_t{1} << circuit.n_qubits, 0);
    std::mt19937_64 rng = make_rng(mode);
    if (mode.depolarizing == 0) {
        std::vector<double> cdf = probabilities(circuit);
        for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
        for (std::uint64_t s = 0; s < mode.shots; ++s)
            ++outcome.counts[sample_index(cdf, uniform01(rng))];
        return outcome;
    }
    circuit.check();
    for (std::uint64_t s = 0; s < mode.shots; ++s) {
        StateVector state(circuit.n_qubits);
        simulate_noisy_trajectory(state, circuit, mode.depolarizing, rng);
        std::vector<double> cdf = state.probabilities();
        for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
        ++outcome.counts[sample_index(cdf, uniform01(rng))];
    }
    return outcome;
}

}  // namespace qcut
