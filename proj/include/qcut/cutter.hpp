#pragma once

#include <cstdint>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/cut_search.hpp"

namespace qcut {

/// How a local qubit of a subcircuit begins its life.
enum class QubitOrigin { OriginalInput, CutInit };

/// How a local qubit of a subcircuit ends its life.
enum class QubitFate { FinalOutput, CutMeasure };

/// One local qubit of a subcircuit. A local qubit covers one maximal run of an
/// original wire inside a single subcircuit; `segment` counts that qubit's
/// runs from the start of the uncut circuit, so the same original qubit can
/// appear twice in one subcircuit with different segments.
struct LocalQubit {
    int original_qubit = 0;
    int segment = 0;
    QubitOrigin origin = QubitOrigin::OriginalInput;
    QubitFate fate = QubitFate::FinalOutput;
    int init_cut = -1;     ///< cut id when origin == CutInit
    int measure_cut = -1;  ///< cut id when fate == CutMeasure

    bool operator==(const LocalQubit&) const = default;
};

/// A subcircuit produced by cutting. Local qubits are ordered by
/// (original_qubit, segment); qubit 0 is the most significant output bit,
/// matching the simulator convention.
struct Subcircuit {
    Circuit circuit;
    std::vector<LocalQubit> qubits;

    /// Cut ids touching this subcircuit, ascending. Aligned vectors give the
    /// role (initialized here vs measured here) and the local qubit involved.
    std::vector<int> incident_cuts;
    std::vector<bool> incident_is_init;
    std::vector<int> incident_local;

    std::vector<int> measured_locals;  ///< local indices measured out at cuts, ascending
    std::vector<int> kept_locals;      ///< local indices surviving to the final output, ascending

    int width() const { return circuit.n_qubits; }

    /// 4^(initialized) * 3^(measured): one run per physical preparation/basis
    /// choice.
    std::uint64_t variant_count() const;
};

/// One cut: the upstream subcircuit measures `upstream_local`, the downstream
/// subcircuit receives it again as `downstream_local`.
struct CutPoint {
    int original_qubit = 0;
    int upstream = 0;
    int downstream = 0;
    int upstream_local = 0;
    int downstream_local = 0;

    bool operator==(const CutPoint&) const = default;
};

/// Full cutting plan: subcircuits plus per-cut wiring. `points` is indexed by
/// cut id, which in turn indexes `solution.cut_edges`.
struct CutPlan {
    int n_qubits = 0;
    CutSolution solution;
    std::vector<Subcircuit> subcircuits;
    std::vector<CutPoint> points;

    /// Original qubit carried by each surviving output slot when subcircuit
    /// outputs are concatenated in `block_order` (each block's kept locals in
    /// ascending order). The result is a permutation of 0..n_qubits-1.
    std::vector<int> kept_origins(const std::vector<int>& block_order) const;
};

/// Splits `circuit` along `solution`. Two-qubit gates follow their vertex
/// assignment; a one-qubit gate joins the run of the next two-qubit gate on
/// its wire (cuts sit immediately after the upstream vertex), or the final
/// run when no two-qubit gate follows. Throws std::invalid_argument when the
/// solution does not fit the circuit, e.g. a wire that no subcircuit could
/// own.
CutPlan extract_subcircuits(const Circuit& circuit, const CutSolution& solution);

/// Physical run configuration of one subcircuit. `digits` aligns with
/// `incident_cuts`: measured cuts take 0 = Z, 1 = X, 2 = Y and initialized
/// cuts take 0..3 = |0>, |1>, |+>, |+i>.
struct VariantSpec {
    std::uint64_t index = 0;
    std::vector<int> digits;
};

/// Mixed-radix decode of a variant index; the first incident cut is the most
/// significant digit.
VariantSpec decode_variant(const Subcircuit& sub, std::uint64_t index);

/// Inverse of decode_variant.
std::uint64_t encode_variant(const Subcircuit& sub, const std::vector<int>& digits);

/// Builds the runnable circuit for a variant: state preparation on
/// initialized qubits (|1> -> X, |+> -> H, |+i> -> H S), the subcircuit body,
/// then basis rotations before measurement (X -> H, Y -> Sdg H), each emitted
/// in ascending local qubit order.
Circuit make_variant(const Subcircuit& sub, const VariantSpec& spec);

}  // namespace qcut
