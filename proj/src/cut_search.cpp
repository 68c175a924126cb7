#include "qcut/cut_search.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace qcut {

namespace {

constexpr int kMaxBlocks = 32;

int bit_length(const BigUint& value) {
    return value == 0 ? 0 : static_cast<int>(boost::multiprecision::msb(value)) + 1;
}

BigUint power_of_two(int exponent) {
    if (exponent < 0 || exponent > 250)
        throw std::overflow_error("cut objective exceeds the supported 256-bit range");
    return BigUint(1) << exponent;
}

struct Best {
    bool found = false;
    BigUint cost = 0;
    int cuts = 0;
    int blocks = 0;
    std::vector<int> labels;
};

// Depth-first branch and bound over vertex assignments in program order for a
// fixed subcircuit count. Prunes on partial width, partial cut count, unfilled
// subcircuits, total remaining capacity, and the cost lower bound
// 4^cuts * min_tail, where min_tail underestimates the prefix-product sum.
class BlockSearch {
public:
    BlockSearch(const CircuitDag& dag, const SearchConfig& config, int blocks, int cut_cap)
        : dag_(dag), device_(config.device_qubits), blocks_(blocks), cut_cap_(cut_cap) {
        const int nv = dag.vertex_count();
        incoming_offset_.assign(nv + 1, 0);
        for (const DagEdge& e : dag.edges) ++incoming_offset_[e.to + 1];
        for (int v = 0; v < nv; ++v) incoming_offset_[v + 1] += incoming_offset_[v];
        incoming_from_.resize(dag.edges.size());
        std::vector<int> cursor(incoming_offset_.begin(), incoming_offset_.end() - 1);
        for (const DagEdge& e : dag.edges) incoming_from_[cursor[e.to]++] = e.from;

        suffix_weight_.assign(nv + 1, 0);
        for (int v = nv - 1; v >= 0; --v)
            suffix_weight_[v] = suffix_weight_[v + 1] + dag.weights[v];

        const int n = dag.n_qubits;
        min_tail_ = 0;
        for (int c = 2; c <= blocks_; ++c)
            min_tail_ += power_of_two(std::max(0, n - (blocks_ - c) * device_));

        label_.assign(nv, -1);
        alpha_.fill(0);
        rho_.fill(0);
        measured_.fill(0);
        width_.fill(0);
        size_.fill(0);
        free_capacity_ = blocks_ * device_;
    }

    /// Optimizing pass; updates best across calls (and across block counts).
    void run(Best& best) {
        best_ = &best;
        feasibility_only_ = false;
        refresh_cut_limit();
        descend(0);
    }

    /// Returns true as soon as any feasible assignment exists.
    bool feasible() {
        best_ = nullptr;
        feasibility_only_ = true;
        found_feasible_ = false;
        cut_limit_ = cut_cap_;
        descend(0);
        return found_feasible_;
    }

private:
    void refresh_cut_limit() {
        cut_limit_ = cut_cap_;
        if (!best_ || !best_->found) return;
        // Largest k with min_tail * 4^k still at or below the incumbent; any
        // partial assignment beyond that many cuts can only end up costlier.
        // -1 means even zero further cuts cannot match the incumbent.
        const int base = bit_length(min_tail_);
        int k = -1;
        while (k < cut_cap_) {
            const int next = k + 1;
            if (base + 2 * next > 256 || (min_tail_ << (2 * next)) > best_->cost) break;
            ++k;
        }
        cut_limit_ = k;
    }

    void record_leaf() {
        if (feasibility_only_) {
            found_feasible_ = true;
            return;
        }
        BigUint cost = 0;
        int prefix = 0;
        for (int b = 0; b < blocks_; ++b) {
            prefix += width_[b] - measured_[b];
            if (b > 0) cost += power_of_two(2 * cuts_ + prefix);
        }
        Best& best = *best_;
        bool better = false;
        if (!best.found || cost < best.cost) {
            better = true;
        } else if (cost == best.cost) {
            if (cuts_ < best.cuts)
                better = true;
            else if (cuts_ == best.cuts)
                better = std::lexicographical_compare(label_.begin(), label_.end(),
                                                      best.labels.begin(), best.labels.end());
        }
        if (better) {
            best.found = true;
            best.cost = cost;
            best.cuts = cuts_;
            best.blocks = blocks_;
            best.labels = label_;
            refresh_cut_limit();
        }
    }

    void descend(int v) {
        if (feasibility_only_ && found_feasible_) return;
        if (v == dag_.vertex_count()) {
            record_leaf();
            return;
        }
        const int weight = dag_.weights[v];
        const int remaining_after = dag_.vertex_count() - v - 1;
        const int top = std::min(v, blocks_ - 1);  // vertex v may enter blocks 0..v
        for (int b = 0; b <= top; ++b) {
            const bool opens = size_[b] == 0;
            if (blocks_ - opened_ - (opens ? 1 : 0) > remaining_after) continue;
            if (width_[b] + weight > device_) continue;

            int new_cuts = 0;
            for (int i = incoming_offset_[v]; i < incoming_offset_[v + 1]; ++i)
                if (label_[incoming_from_[i]] != b) ++new_cuts;
            if (cuts_ + new_cuts > cut_limit_) continue;
            if (width_[b] + weight + new_cuts > device_) continue;
            if (free_capacity_ - weight - new_cuts < suffix_weight_[v + 1]) continue;

            label_[v] = b;
            alpha_[b] += weight;
            width_[b] += weight;
            ++size_[b];
            if (opens) ++opened_;
            cuts_ += new_cuts;
            rho_[b] += new_cuts;
            width_[b] += new_cuts;
            free_capacity_ -= weight + new_cuts;
            for (int i = incoming_offset_[v]; i < incoming_offset_[v + 1]; ++i)
                if (int u = incoming_from_[i]; label_[u] != b) ++measured_[label_[u]];

            descend(v + 1);

            for (int i = incoming_offset_[v]; i < incoming_offset_[v + 1]; ++i)
                if (int u = incoming_from_[i]; label_[u] != b) --measured_[label_[u]];
            free_capacity_ += weight + new_cuts;
            width_[b] -= new_cuts;
            rho_[b] -= new_cuts;
            cuts_ -= new_cuts;
            if (opens) --opened_;
            --size_[b];
            width_[b] -= weight;
            alpha_[b] -= weight;
            label_[v] = -1;
        }
    }

    const CircuitDag& dag_;
    const int device_;
    const int blocks_;
    const int cut_cap_;
    std::vector<int> incoming_offset_, incoming_from_;
    std::vector<int> suffix_weight_;
    std::vector<int> label_;
    std::array<int, kMaxBlocks> alpha_{}, rho_{}, measured_{}, width_{}, size_{};
    int cuts_ = 0;
    int opened_ = 0;
    int free_capacity_ = 0;
    BigUint min_tail_ = 0;
    int cut_limit_ = 0;
    Best* best_ = nullptr;
    bool feasibility_only_ = false;
    bool found_feasible_ = false;
};

void check_config(const SearchConfig& config) {
    if (config.device_qubits < 1)
        throw std::invalid_argument("device_qubits must be at least 1");
    if (config.max_subcircuits < 2 || config.max_subcircuits > kMaxBlocks)
        throw std::invalid_argument("max_subcircuits must lie in [2, " +
                                    std::to_string(kMaxBlocks) + "]");
    if (config.max_cuts < 1) throw std::invalid_argument("max_cuts must be at least 1");
}

CutSolution assemble_solution(const CircuitDag& dag, const Best& best) {
    CutSolution sol;
    sol.n_subcircuits = best.blocks;
    sol.assignment = best.labels;
    for (const DagEdge& e : dag.edges) {
        int up = best.labels[e.from], down = best.labels[e.to];
        if (up != down) sol.cut_edges.push_back({e.from, e.to, e.qubit, up, down});
    }
    sol.cut_count = static_cast<int>(sol.cut_edges.size());
    sol.counts.assign(best.blocks, {});
    for (int v = 0; v < dag.vertex_count(); ++v)
        sol.counts[best.labels[v]].input_qubits += dag.weights[v];
    for (const CutEdgeRef& e : sol.cut_edges) {
        ++sol.counts[e.downstream].init_qubits;
        ++sol.counts[e.upstream].measured_qubits;
    }
    std::vector<int> outputs;
    for (SubcircuitCounts& c : sol.counts) {
        c.width = c.input_qubits + c.init_qubits;
        c.output_qubits = c.width - c.measured_qubits;
        outputs.push_back(c.output_qubits);
    }
    sol.objective = evaluate_objective(sol.cut_count, outputs);
    return sol;
}

}  // namespace

BigUint evaluate_objective(int cut_count, const std::vector<int>& output_qubit_counts) {
    if (cut_count < 0) throw std::invalid_argument("cut count must be non-negative");
    if (output_qubit_counts.size() <= 1) return 0;
    BigUint total = 0;
    int prefix = 0;
    for (std::size_t c = 0; c < output_qubit_counts.size(); ++c) {
        if (output_qubit_counts[c] < 0)
            throw std::invalid_argument("output qubit counts must be non-negative");
        prefix += output_qubit_counts[c];
        if (c > 0) total += power_of_two(2 * cut_count + prefix);
    }
    return total;
}

std::vector<Violation> validate_solution(const CircuitDag& dag, const CutSolution& solution,
                                         const SearchConfig& config) {
    std::vector<Violation> out;
    auto flag = [&](Violation::Code code, std::string message) {
        out.push_back({code, std::move(message)});
    };
    const int nv = dag.vertex_count();
    const int m = solution.n_subcircuits;
    if (m < 1) {
        flag(Violation::Code::Assignment, "solution declares no subcircuits");
        return out;
    }
    if (static_cast<int>(solution.assignment.size()) != nv) {
        flag(Violation::Code::Assignment,
             "assignment covers " + std::to_string(solution.assignment.size()) + " of " +
                 std::to_string(nv) + " vertices");
        return out;
    }
    for (int v = 0; v < nv; ++v) {
        int b = solution.assignment[v];
        if (b < 0 || b >= m) {
            flag(Violation::Code::Assignment,
                 "vertex " + std::to_string(v) + " is not assigned to exactly one subcircuit");
            return out;
        }
        if (b > v)
            flag(Violation::Code::SymmetryOrder, "vertex " + std::to_string(v) +
                                                     " placed in subcircuit " + std::to_string(b) +
                                                     " above its order limit");
    }

    std::vector<int> block_size(m, 0);
    for (int b : solution.assignment) ++block_size[b];
    for (int b = 0; b < m; ++b)
        if (block_size[b] == 0)
            flag(Violation::Code::Assignment, "subcircuit " + std::to_string(b) + " is empty");

    std::vector<CutEdgeRef> derived;
    for (const DagEdge& e : dag.edges) {
        int up = solution.assignment[e.from], down = solution.assignment[e.to];
        if (up != down) derived.push_back({e.from, e.to, e.qubit, up, down});
    }
    if (derived != solution.cut_edges)
        flag(Violation::Code::CutConsistency,
             "stored cut edges disagree with the assignment (expected " +
                 std::to_string(derived.size()) + " cuts, stored " +
                 std::to_string(solution.cut_edges.size()) + ")");
    if (solution.cut_count != static_cast<int>(derived.size()))
        flag(Violation::Code::Counts,
             "cut count " + std::to_string(solution.cut_count) + " != derived " +
                 std::to_string(derived.size()));

    std::vector<SubcircuitCounts> counts(m);
    for (int v = 0; v < nv; ++v) counts[solution.assignment[v]].input_qubits += dag.weights[v];
    for (const CutEdgeRef& e : derived) {
        ++counts[e.downstream].init_qubits;
        ++counts[e.upstream].measured_qubits;
    }
    std::vector<int> outputs;
    for (int b = 0; b < m; ++b) {
        counts[b].width = counts[b].input_qubits + counts[b].init_qubits;
        counts[b].output_qubits = counts[b].width - counts[b].measured_qubits;
        outputs.push_back(counts[b].output_qubits);
        if (counts[b].width > config.device_qubits)
            flag(Violation::Code::Capacity, "subcircuit " + std::to_string(b) + " needs " +
                                                std::to_string(counts[b].width) +
                                                " qubits, device limit is " +
                                                std::to_string(config.device_qubits));
    }
    if (static_cast<int>(solution.counts.size()) != m || counts != solution.counts)
        flag(Violation::Code::Counts, "stored per-subcircuit counts disagree with recomputation");
    if (m > config.max_subcircuits)
        flag(Violation::Code::Capacity, "subcircuit count " + std::to_string(m) +
                                            " exceeds the limit " +
                                            std::to_string(config.max_subcircuits));
    if (static_cast<int>(derived.size()) > config.max_cuts)
        flag(Violation::Code::Capacity, "cut count " + std::to_string(derived.size()) +
                                            " exceeds the limit " +
                                            std::to_string(config.max_cuts));
    BigUint expected = evaluate_objective(static_cast<int>(derived.size()), outputs);
    if (expected != solution.objective)
        flag(Violation::Code::Objective, "stored cost " + solution.objective.str() +
                                             " != recomputed " + expected.str());
    if (solution.no_cut_needed && (m != 1 || solution.cut_count != 0))
        flag(Violation::Code::Counts, "no_cut_needed implies one subcircuit and zero cuts");
    return out;
}

std::optional<CutSolution> find_cuts(const CircuitDag& dag, const SearchConfig& config) {
    check_config(config);
    if (config.device_qubits >= dag.n_qubits) {
        CutSolution sol;
        sol.n_subcircuits = 1;
        sol.assignment.assign(dag.vertex_count(), 0);
        sol.counts.assign(1, {});
        sol.counts[0].input_qubits = dag.touched_qubit_count();
        sol.counts[0].width = sol.counts[0].input_qubits;
        sol.counts[0].output_qubits = sol.counts[0].width;
        sol.no_cut_needed = true;
        return sol;
    }
    if (!dag.fully_connected())
        throw std::invalid_argument(
            "circuit is not fully connected; run its components separately instead of cutting");

    // Smallest feasible cut count k0 by iterative deepening; the optimum then
    // lies within k0 + 1 cuts (see header).
    int k0 = -1;
    for (int cap = 1; cap <= config.max_cuts && k0 < 0; ++cap)
        for (int blocks = 2; blocks <= config.max_subcircuits; ++blocks)
            if (BlockSearch(dag, config, blocks, cap).feasible()) {
                k0 = cap;
                break;
            }
    if (k0 < 0) return std::nullopt;

    const int final_cap = std::min(k0 + 1, config.max_cuts);
    Best best;
    for (int blocks = 2; blocks <= config.max_subcircuits; ++blocks)
        BlockSearch(dag, config, blocks, final_cap).run(best);
    assert(best.found);
    return assemble_solution(dag, best);
}

}  // namespace qcut
