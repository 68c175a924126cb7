#pragma once

#include <cstdint>
#include <string>

#include "qcut/circuit.hpp"

namespace qcut {

enum class BenchmarkFamily { BV, AQFT, Adder, HWEA, SupremacyGrid };

const std::string& benchmark_family_name(BenchmarkFamily family);
BenchmarkFamily benchmark_family_from_name(const std::string& name);

/// Parameters for generate_benchmark. Unused fields are ignored per family.
/// All randomness (supremacy single-qubit gate choices, HWEA angles) is drawn
/// from `seed`, so equal specs generate identical circuits.
struct BenchmarkSpec {
    BenchmarkFamily family = BenchmarkFamily::BV;
    int n_qubits = 0;

    // BV: hidden bitstring of length n_qubits - 1 ('0'/'1' characters).
    // Empty string means all ones, which keeps the circuit connected.
    std::string hidden_string;

    // AQFT: keep controlled-phase rotations of angle >= pi / 2^degree, i.e.
    // couplings between qubits at distance <= degree. 0 means ceil(log2 n),
    // the usual approximation depth.
    int aqft_degree = 0;

    // Adder: operand values for the two registers (n must be even; register
    // width is (n - 2) / 2). Defaults below fit any width.
    std::uint64_t adder_a = 0x5555555555555555ull;  // masked to register width
    std::uint64_t adder_b = 0x3333333333333333ull;

    // HWEA: entangling-layer count, and a switch that zeroes every rotation
    // angle (useful as a known-output identity check).
    int hwea_layers = 2;
    bool hwea_zero_angles = false;

    // SupremacyGrid: grid shape (rows * cols == n_qubits, |rows - cols| <= 2)
    // and the number of coupler cycles.
    int grid_rows = 0;
    int grid_cols = 0;
    int depth = 10;

    std::uint64_t seed = 1;
};

/// Build one of the five benchmark families:
///
///  - BV: Bernstein-Vazirani with the given hidden string; the final state is
///    |s>|1>, so the all-ones string yields |11...1> with probability 1.
///  - AQFT: approximate quantum Fourier transform; controlled-phase rotations
///    below the degree cutoff are dropped, the rest are compiled to RZ/CX.
///  - Adder: ripple-carry adder (majority/unmajority blocks, Toffolis
///    decomposed into the native set) summing two equal-width registers with
///    one carry-in ancilla; requires even n_qubits >= 4.
///  - HWEA: hardware-efficient ansatz, alternating RY/RZ rotation layers with
///    linear CX entangling chains.
///  - SupremacyGrid: 2-D grid with layered CZ couplers and seeded
///    single-qubit gates from {T, SX, SY} (see generator for the exact rule).
///
/// Throws std::invalid_argument for inconsistent specs.
Circuit generate_benchmark(const BenchmarkSpec& spec);

/// Convenience spec builders used by the CLI and tests.
BenchmarkSpec bv_spec(int n_qubits, std::string hidden = "");
BenchmarkSpec supremacy_spec(int rows, int cols, int depth = 10, std::uint64_t seed = 1);

}  // namespace qcut
