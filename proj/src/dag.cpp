#include "qcut/dag.hpp"

#include <algorithm>
#include <numeric>

namespace qcut {

int CircuitDag::touched_qubit_count() const {
    // Each touched qubit is counted exactly once, at its first two-qubit gate.
    return std::accumulate(weights.begin(), weights.end(), 0);
}

bool CircuitDag::fully_connected() const {
    if (n_qubits <= 1) return true;
    if (touched_qubit_count() != n_qubits) return false;
    const int n = vertex_count();
    if (n == 0) return false;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    int components = n;
    for (const DagEdge& e : edges) {
        int a = find(e.from), b = find(e.to);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

CircuitDag build_dag(const Circuit& circuit) {
    circuit.check();
    CircuitDag dag;
    dag.n_qubits = circuit.n_qubits;
    std::vector<int> last_vertex(circuit.n_qubits, -1);  // latest vertex per wire
    for (int gi = 0; gi < static_cast<int>(circuit.gates.size()); ++gi) {
        const Gate& g = circuit.gates[gi];
        if (gate_arity(g.kind) != 2) continue;
        const int v = dag.vertex_count();
        dag.vertex_gates.push_back(gi);
        int weight = 0;
        for (int q : {g.q0, g.q1}) {
            if (last_vertex[q] == -1)
                ++weight;
            else
                dag.edges.push_back({last_vertex[q], v, q});
            last_vertex[q] = v;
        }
        dag.weights.push_back(weight);
    }
    std::sort(dag.edges.begin(), dag.edges.end(), [](const DagEdge& a, const DagEdge& b) {
        return std::tie(a.from, a.to, a.qubit) < std::tie(b.from, b.to, b.qubit);
    });
    return dag;
}

}  // namespace qcut
