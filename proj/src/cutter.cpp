#include "qcut/cutter.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

#include "qcut/dag.hpp"

namespace qcut {

namespace {

struct WireRun {
    int qubit = 0;
    int segment = 0;
    int block = 0;
    int first_vertex = -1;
    int last_vertex = -1;
    int local = -1;  // assigned once runs are sorted within their block
};

int find_cut_id(const std::vector<CutEdgeRef>& cuts, int from, int to, int qubit) {
    for (std::size_t i = 0; i < cuts.size(); ++i)
        if (cuts[i].from_vertex == from && cuts[i].to_vertex == to && cuts[i].qubit == qubit)
            return static_cast<int>(i);
    return -1;
}

CutPlan whole_circuit_plan(const Circuit& circuit, const CutSolution& solution) {
    CutPlan plan;
    plan.n_qubits = circuit.n_qubits;
    plan.solution = solution;
    Subcircuit sub;
    sub.circuit = circuit;
    for (int q = 0; q < circuit.n_qubits; ++q) {
        sub.qubits.push_back({q, 0, QubitOrigin::OriginalInput, QubitFate::FinalOutput, -1, -1});
        sub.kept_locals.push_back(q);
    }
    plan.subcircuits.push_back(std::move(sub));
    return plan;
}

}  // namespace

std::uint64_t Subcircuit::variant_count() const {
    std::uint64_t count = 1;
    for (bool is_init : incident_is_init) count *= is_init ? 4u : 3u;
    return count;
}

CutPlan extract_subcircuits(const Circuit& circuit, const CutSolution& solution) {
    circuit.check();
    const int m = solution.n_subcircuits;
    if (m < 1) throw std::invalid_argument("solution declares no subcircuits");
    if (m == 1) return whole_circuit_plan(circuit, solution);

    const int n_gates = static_cast<int>(circuit.gates.size());
    int n_vertices = 0;
    for (const Gate& g : circuit.gates)
        if (gate_arity(g.kind) == 2) ++n_vertices;
    if (static_cast<int>(solution.assignment.size()) != n_vertices)
        throw std::invalid_argument("assignment does not cover the circuit's two-qubit gates");
    for (int b : solution.assignment)
        if (b < 0 || b >= m) throw std::invalid_argument("assignment label out of range");

    // Build wire runs: maximal spans of each qubit's two-qubit gates that stay
    // in one subcircuit. A one-qubit gate joins the run of the next two-qubit
    // gate on its wire, or the last run if none follows.
    std::vector<WireRun> runs;
    std::vector<std::vector<int>> qubit_runs(circuit.n_qubits);
    std::vector<int> current_run(circuit.n_qubits, -1);
    std::vector<std::vector<int>> pending(circuit.n_qubits);  // 1q gate indices awaiting a run
    std::vector<int> gate_run_q0(n_gates, -1), gate_run_q1(n_gates, -1);

    int vertex = 0;
    for (int g = 0; g < n_gates; ++g) {
        const Gate& gate = circuit.gates[g];
        if (gate_arity(gate.kind) == 1) {
            pending[gate.q0].push_back(g);
            continue;
        }
        const int block = solution.assignment[vertex];
        for (int q : {gate.q0, gate.q1}) {
            int r = current_run[q];
            if (r < 0 || runs[r].block != block) {
                int segment = static_cast<int>(qubit_runs[q].size());
                r = static_cast<int>(runs.size());
                runs.push_back({q, segment, block, vertex, vertex, -1});
                qubit_runs[q].push_back(r);
                current_run[q] = r;
            }
            runs[r].last_vertex = vertex;
            for (int pg : pending[q]) gate_run_q0[pg] = r;
            pending[q].clear();
            (q == gate.q0 ? gate_run_q0 : gate_run_q1)[g] = r;
        }
        ++vertex;
    }
    for (int q = 0; q < circuit.n_qubits; ++q) {
        if (current_run[q] < 0 && !pending[q].empty())
            throw std::invalid_argument("qubit " + std::to_string(q) +
                                        " carries gates but touches no two-qubit gate, so no "
                                        "subcircuit can own its wire");
        if (current_run[q] < 0 && m > 1)
            throw std::invalid_argument("qubit " + std::to_string(q) +
                                        " touches no two-qubit gate; cut circuits must be fully "
                                        "connected");
        for (int pg : pending[q]) gate_run_q0[pg] = current_run[q];
    }

    // Match run boundaries against the solution's cut edges, one to one.
    struct Boundary {
        int upstream_run, downstream_run;
    };
    std::vector<Boundary> boundary_of_cut(solution.cut_edges.size(), {-1, -1});
    int boundaries = 0;
    for (int q = 0; q < circuit.n_qubits; ++q)
        for (std::size_t i = 0; i + 1 < qubit_runs[q].size(); ++i) {
            const WireRun& up = runs[qubit_runs[q][i]];
            const WireRun& down = runs[qubit_runs[q][i + 1]];
            int cut = find_cut_id(solution.cut_edges, up.last_vertex, down.first_vertex, q);
            if (cut < 0)
                throw std::invalid_argument("assignment cuts qubit " + std::to_string(q) +
                                            " at a point missing from the solution's cut list");
            boundary_of_cut[cut] = {qubit_runs[q][i], qubit_runs[q][i + 1]};
            ++boundaries;
        }
    if (boundaries != static_cast<int>(solution.cut_edges.size()))
        throw std::invalid_argument("solution lists cut edges the assignment does not produce");

    // Local qubit numbering: per subcircuit, runs sorted by (qubit, segment).
    std::vector<std::vector<int>> block_runs(m);
    for (int r = 0; r < static_cast<int>(runs.size()); ++r)
        block_runs[runs[r].block].push_back(r);
    for (int b = 0; b < m; ++b) {
        std::sort(block_runs[b].begin(), block_runs[b].end(), [&](int a, int c) {
            return std::pair(runs[a].qubit, runs[a].segment) <
                   std::pair(runs[c].qubit, runs[c].segment);
        });
        for (std::size_t l = 0; l < block_runs[b].size(); ++l)
            runs[block_runs[b][l]].local = static_cast<int>(l);
    }

    CutPlan plan;
    plan.n_qubits = circuit.n_qubits;
    plan.solution = solution;
    plan.subcircuits.resize(m);

    for (std::size_t cut = 0; cut < boundary_of_cut.size(); ++cut) {
        const WireRun& up = runs[boundary_of_cut[cut].upstream_run];
        const WireRun& down = runs[boundary_of_cut[cut].downstream_run];
        plan.points.push_back({up.qubit, up.block, down.block, up.local, down.local});
    }

    for (int b = 0; b < m; ++b) {
        Subcircuit& sub = plan.subcircuits[b];
        sub.circuit.n_qubits = static_cast<int>(block_runs[b].size());
        if (!circuit.name.empty())
            sub.circuit.name = circuit.name + "_sub" + std::to_string(b);
        for (int rid : block_runs[b]) {
            const WireRun& run = runs[rid];
            LocalQubit lq;
            lq.original_qubit = run.qubit;
            lq.segment = run.segment;
            if (run.segment > 0) {
                lq.origin = QubitOrigin::CutInit;
                lq.init_cut = find_cut_id(solution.cut_edges,
                                          runs[qubit_runs[run.qubit][run.segment - 1]].last_vertex,
                                          run.first_vertex, run.qubit);
            }
            if (run.segment + 1 < static_cast<int>(qubit_runs[run.qubit].size())) {
                lq.fate = QubitFate::CutMeasure;
                lq.measure_cut = find_cut_id(
                    solution.cut_edges, run.last_vertex,
                    runs[qubit_runs[run.qubit][run.segment + 1]].first_vertex, run.qubit);
                sub.measured_locals.push_back(run.local);
            } else {
                sub.kept_locals.push_back(run.local);
            }
            sub.qubits.push_back(lq);
        }
    }

    for (std::size_t cut = 0; cut < plan.points.size(); ++cut) {
        const CutPoint& pt = plan.points[cut];
        Subcircuit& up = plan.subcircuits[pt.upstream];
        up.incident_cuts.push_back(static_cast<int>(cut));
        up.incident_is_init.push_back(false);
        up.incident_local.push_back(pt.upstream_local);
        Subcircuit& down = plan.subcircuits[pt.downstream];
        down.incident_cuts.push_back(static_cast<int>(cut));
        down.incident_is_init.push_back(true);
        down.incident_local.push_back(pt.downstream_local);
    }

    vertex = 0;
    for (int g = 0; g < n_gates; ++g) {
        const Gate& gate = circuit.gates[g];
        if (gate_arity(gate.kind) == 1) {
            const WireRun& run = runs[gate_run_q0[g]];
            plan.subcircuits[run.block].circuit.add(gate.kind, run.local, -1, gate.angle);
            continue;
        }
        const WireRun& r0 = runs[gate_run_q0[g]];
        const WireRun& r1 = runs[gate_run_q1[g]];
        assert(r0.block == r1.block && r0.block == solution.assignment[vertex]);
        plan.subcircuits[r0.block].circuit.add(gate.kind, r0.local, r1.local, gate.angle);
        ++vertex;
    }
    return plan;
}

std::vector<int> CutPlan::kept_origins(const std::vector<int>& block_order) const {
    std::vector<int> origins;
    for (int b : block_order)
        for (int l : subcircuits[b].kept_locals)
            origins.push_back(subcircuits[b].qubits[l].original_qubit);
    std::vector<bool> seen(n_qubits, false);
    for (int q : origins) {
        if (q < 0 || q >= n_qubits || seen[q])
            throw std::logic_error("surviving outputs do not form a permutation of the qubits");
        seen[q] = true;
    }
    if (static_cast<int>(origins.size()) != n_qubits)
        throw std::logic_error("surviving outputs do not cover every qubit");
    return origins;
}

VariantSpec decode_variant(const Subcircuit& sub, std::uint64_t index) {
    if (index >= sub.variant_count()) throw std::out_of_range("variant index out of range");
    VariantSpec spec;
    spec.index = index;
    spec.digits.assign(sub.incident_cuts.size(), 0);
    for (std::size_t i = sub.incident_cuts.size(); i-- > 0;) {
        const std::uint64_t radix = sub.incident_is_init[i] ? 4 : 3;
        spec.digits[i] = static_cast<int>(index % radix);
        index /= radix;
    }
    return spec;
}

std::uint64_t encode_variant(const Subcircuit& sub, const std::vector<int>& digits) {
    if (digits.size() != sub.incident_cuts.size())
        throw std::invalid_argument("one digit per incident cut required");
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const int radix = sub.incident_is_init[i] ? 4 : 3;
        if (digits[i] < 0 || digits[i] >= radix)
            throw std::invalid_argument("variant digit out of range");
        index = index * static_cast<std::uint64_t>(radix) + static_cast<std::uint64_t>(digits[i]);
    }
    return index;
}

Circuit make_variant(const Subcircuit& sub, const VariantSpec& spec) {
    if (spec.digits.size() != sub.incident_cuts.size())
        throw std::invalid_argument("variant spec does not match the subcircuit");
    Circuit out;
    out.n_qubits = sub.width();
    if (!sub.circuit.name.empty())
        out.name = sub.circuit.name + "_v" + std::to_string(spec.index);

    std::vector<int> init_state(sub.width(), -1), measure_basis(sub.width(), -1);
    for (std::size_t i = 0; i < sub.incident_cuts.size(); ++i)
        (sub.incident_is_init[i] ? init_state : measure_basis)[sub.incident_local[i]] =
            spec.digits[i];

    for (int q = 0; q < sub.width(); ++q) {
        switch (init_state[q]) {
            case 1: out.add(GateKind::X, q); break;
            case 2: out.add(GateKind::H, q); break;
            case 3:
                out.add(GateKind::H, q);
                out.add(GateKind::S, q);
                break;
            default: break;
        }
    }
    for (const Gate& g : sub.circuit.gates) out.gates.push_back(g);
    for (int q = 0; q < sub.width(); ++q) {
        switch (measure_basis[q]) {
            case 1: out.add(GateKind::H, q); break;
            case 2:
                out.add(GateKind::Sdg, q);
                out.add(GateKind::H, q);
                break;
            default: break;
        }
    }
    return out;
}

}  // namespace qcut
