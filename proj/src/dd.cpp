#include "qcut/dd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace qcut {

namespace {

void select_bit(std::vector<double>& vec, int pos, int bit) {
    const std::size_t half = vec.size() / 2;
    const std::size_t lo_mask = (std::size_t(1) << pos) - 1;
    std::vector<double> out(half);
    for (std::size_t j = 0; j < half; ++j) {
        const std::size_t i0 = ((j >> pos) << (pos + 1)) | (j & lo_mask);
        out[j] = vec[i0 | (std::size_t(bit) << pos)];
    }
    vec = std::move(out);
}

void sum_bit(std::vector<double>& vec, int pos) {
    const std::size_t half = vec.size() / 2;
    const std::size_t lo_mask = (std::size_t(1) << pos) - 1;
    std::vector<double> out(half);
    for (std::size_t j = 0; j < half; ++j) {
        const std::size_t i0 = ((j >> pos) << (pos + 1)) | (j & lo_mask);
        out[j] = vec[i0] + vec[i0 | (std::size_t(1) << pos)];
    }
    vec = std::move(out);
}

int argmax_bin(const std::vector<double>& bins) {
    int best = 0;
    for (int j = 1; j < static_cast<int>(bins.size()); ++j)
        if (bins[j] > bins[best]) best = j;
    return best;
}

bool has_merged(const std::vector<QubitLabel>& labeling) {
    return std::any_of(labeling.begin(), labeling.end(),
                       [](const QubitLabel& l) { return l.kind == LabelKind::Merged; });
}

/// Zooms a recursion's active qubits to the bits of `bin`, then promotes up
/// to max_active merged qubits (ascending) to active.
std::vector<QubitLabel> child_labeling(const DdRecursionRecord& rec, int bin, int max_active) {
    std::vector<QubitLabel> labeling = rec.labeling;
    const int a = static_cast<int>(rec.active_qubits.size());
    for (int r = 0; r < a; ++r)
        labeling[rec.active_qubits[r]] = {LabelKind::Zoomed, static_cast<int>(bin >> (a - 1 - r)) & 1};
    int promoted = 0;
    for (QubitLabel& l : labeling) {
        if (promoted == max_active) break;
        if (l.kind == LabelKind::Merged) {
            l = {LabelKind::Active, 0};
            ++promoted;
        }
    }
    return labeling;
}

std::vector<int> active_of(const std::vector<QubitLabel>& labeling) {
    std::vector<int> active;
    for (std::size_t q = 0; q < labeling.size(); ++q)
        if (labeling[q].kind == LabelKind::Active) active.push_back(static_cast<int>(q));
    return active;
}

}  // namespace

std::vector<AttributedTable> attribute_tables(
    const CutPlan& plan, const std::vector<std::vector<VariantOutcome>>& outcomes) {
    if (outcomes.size() != plan.subcircuits.size())
        throw std::invalid_argument("one outcome list per subcircuit required");
    std::vector<AttributedTable> tables;
    tables.reserve(plan.subcircuits.size());
    for (std::size_t b = 0; b < plan.subcircuits.size(); ++b)
        tables.push_back(attribute_all(plan.subcircuits[b], outcomes[b]));
    return tables;
}

std::vector<double> dd_bins(const CutPlan& plan, const std::vector<AttributedTable>& tables,
                            const std::vector<QubitLabel>& labeling) {
    if (static_cast<int>(labeling.size()) != plan.n_qubits)
        throw std::invalid_argument("one label per original qubit required");
    if (tables.size() != plan.subcircuits.size())
        throw std::invalid_argument("one attribution table per subcircuit required");
    for (const QubitLabel& l : labeling)
        if (l.kind == LabelKind::Zoomed && l.bit != 0 && l.bit != 1)
            throw std::invalid_argument("zoomed bit must be 0 or 1");

    const int m = static_cast<int>(plan.subcircuits.size());
    const int cuts = static_cast<int>(plan.points.size());

    // Collapse every attributed vector to this labeling: keep active slots,
    // sum merged slots, pin zoomed slots. Folding from the highest slot keeps
    // lower slots' positions stable.
    std::vector<std::vector<std::vector<double>>> collapsed(m);
    std::vector<std::vector<char>> zero(m);
    std::vector<int> active_locals(m, 0);
    for (int b = 0; b < m; ++b) {
        const Subcircuit& sub = plan.subcircuits[b];
        const int kept = static_cast<int>(sub.kept_locals.size());
        for (int s = 0; s < kept; ++s)
            if (labeling[sub.qubits[sub.kept_locals[s]].original_qubit].kind == LabelKind::Active)
                ++active_locals[b];
        collapsed[b].reserve(tables[b].vectors.size());
        zero[b].reserve(tables[b].vectors.size());
        for (const std::vector<double>& full : tables[b].vectors) {
            std::vector<double> vec = full;
            int width = kept;
            for (int s = kept - 1; s >= 0; --s) {
                const QubitLabel& l = labeling[sub.qubits[sub.kept_locals[s]].original_qubit];
                if (l.kind == LabelKind::Active) continue;
                if (l.kind == LabelKind::Merged)
                    sum_bit(vec, width - 1 - s);
                else
                    select_bit(vec, width - 1 - s, l.bit);
                --width;
            }
            zero[b].push_back(
                std::all_of(vec.begin(), vec.end(), [](double x) { return x == 0.0; }));
            collapsed[b].push_back(std::move(vec));
        }
    }

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return active_locals[a] < active_locals[b]; });

    std::vector<std::vector<int>> shifts(m);
    for (int b = 0; b < m; ++b)
        for (int cut : plan.subcircuits[b].incident_cuts)
            shifts[b].push_back(2 * (cuts - 1 - cut));

    const int total_active =
        std::accumulate(active_locals.begin(), active_locals.end(), 0);
    const std::size_t n_bins = std::size_t(1) << total_active;
    std::vector<double> acc(n_bins, 0.0), prefix(n_bins), next(n_bins);
    std::vector<std::size_t> ranks(m);
    const std::uint64_t terms = std::uint64_t(1) << (2 * cuts);
    for (std::uint64_t t = 0; t < terms; ++t) {
        bool skip = false;
        for (int oi = 0; oi < m && !skip; ++oi) {
            const int b = order[oi];
            std::size_t rank = 0;
            for (int shift : shifts[b]) rank = (rank << 2) | ((t >> shift) & 3);
            ranks[b] = rank;
            if (zero[b][rank]) skip = true;
        }
        if (skip) continue;
        const std::vector<double>& first = collapsed[order[0]][ranks[order[0]]];
        std::size_t len = first.size();
        std::copy(first.begin(), first.end(), prefix.begin());
        for (int oi = 1; oi < m; ++oi) {
            const std::vector<double>& v = collapsed[order[oi]][ranks[order[oi]]];
            for (std::size_t a = 0; a < len; ++a) {
                const double pa = prefix[a];
                double* dst = next.data() + a * v.size();
                for (std::size_t c = 0; c < v.size(); ++c) dst[c] = pa * v[c];
            }
            len *= v.size();
            std::swap(prefix, next);
        }
        for (std::size_t i = 0; i < n_bins; ++i) acc[i] += prefix[i];
    }
    if (cuts > 0) {
        const double scale = std::ldexp(1.0, -cuts);
        for (double& x : acc) x *= scale;
    }

    // Concatenated slots -> bins indexed by active qubits ascending, first
    // active most significant.
    std::vector<int> active = active_of(labeling);
    std::vector<int> slot_shift;
    for (int b : order)
        for (int s : plan.subcircuits[b].kept_locals) {
            const int q = plan.subcircuits[b].qubits[s].original_qubit;
            if (labeling[q].kind != LabelKind::Active) continue;
            const int rank = static_cast<int>(
                std::lower_bound(active.begin(), active.end(), q) - active.begin());
            slot_shift.push_back(total_active - 1 - rank);
        }
    std::vector<double> bins(n_bins, 0.0);
    for (std::size_t i = 0; i < n_bins; ++i) {
        std::size_t o = 0;
        for (std::size_t s = 0; s < slot_shift.size(); ++s)
            if ((i >> (total_active - 1 - static_cast<int>(s))) & 1)
                o |= std::size_t(1) << slot_shift[s];
        bins[o] = acc[i];
    }
    return bins;
}

DdResult dd_query(const CutPlan& plan,
                  const std::vector<std::vector<VariantOutcome>>& outcomes,
                  const DdOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    if (options.max_active < 1) throw std::invalid_argument("max_active must be positive");
    if (options.max_recursions < 1) throw std::invalid_argument("max_recursions must be positive");

    const std::vector<AttributedTable> tables = attribute_tables(plan, outcomes);
    DdResult result;
    result.n_qubits = plan.n_qubits;

    std::uint64_t table_doubles = 0;
    for (const AttributedTable& t : tables)
        for (const std::vector<double>& v : t.vectors) table_doubles += v.size();

    auto evaluate = [&](std::vector<QubitLabel> labeling, int parent, int parent_bin) {
        DdRecursionRecord rec;
        rec.labeling = std::move(labeling);
        rec.active_qubits = active_of(rec.labeling);
        rec.bins = dd_bins(plan, tables, rec.labeling);
        rec.parent = parent;
        rec.parent_bin = parent_bin;
        result.bins_computed += rec.bins.size();
        // Collapsed copies of every table plus the bins themselves.
        std::uint64_t workspace = rec.bins.size();
        for (std::size_t b = 0; b < tables.size(); ++b) {
            int active_b = 0;
            const Subcircuit& sub = plan.subcircuits[b];
            for (int s : sub.kept_locals)
                if (rec.labeling[sub.qubits[s].original_qubit].kind == LabelKind::Active)
                    ++active_b;
            workspace += tables[b].vectors.size() * (std::uint64_t(1) << active_b);
        }
        result.peak_workspace_doubles = std::max(result.peak_workspace_doubles, workspace);
        result.recursions.push_back(std::move(rec));
        return static_cast<int>(result.recursions.size()) - 1;
    };

    std::vector<QubitLabel> root(plan.n_qubits);
    int promoted = 0;
    for (QubitLabel& l : root) {
        if (promoted == options.max_active) break;
        l = {LabelKind::Active, 0};
        ++promoted;
    }

    if (options.zoom_path) {
        int idx = evaluate(std::move(root), -1, -1);
        for (int bin : *options.zoom_path) {
            if (!has_merged(result.recursions[idx].labeling) ||
                static_cast<int>(result.recursions.size()) >= options.max_recursions)
                break;
            const DdRecursionRecord& rec = result.recursions[idx];
            if (bin < 0 || static_cast<std::size_t>(bin) >= rec.bins.size())
                throw std::out_of_range("zoom path bin index out of range");
            idx = evaluate(child_labeling(rec, bin, options.max_active), idx, bin);
        }
    } else if (options.strategy == DdStrategy::DFS) {
        int idx = evaluate(std::move(root), -1, -1);
        while (has_merged(result.recursions[idx].labeling) &&
               static_cast<int>(result.recursions.size()) < options.max_recursions) {
            const DdRecursionRecord& rec = result.recursions[idx];
            const int bin = argmax_bin(rec.bins);
            if (rec.bins[bin] < options.epsilon) break;
            idx = evaluate(child_labeling(rec, bin, options.max_active), idx, bin);
        }
    } else {
        struct Entry {
            double mass;
            int recursion;
            int bin;
        };
        auto worse = [](const Entry& a, const Entry& b) {
            if (a.mass != b.mass) return a.mass < b.mass;
            if (a.recursion != b.recursion) return a.recursion > b.recursion;
            return a.bin > b.bin;
        };
        std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);
        int idx = evaluate(std::move(root), -1, -1);
        for (std::size_t j = 0; j < result.recursions[idx].bins.size(); ++j)
            queue.push({result.recursions[idx].bins[j], idx, static_cast<int>(j)});
        while (!queue.empty() &&
               static_cast<int>(result.recursions.size()) < options.max_recursions) {
            const Entry top = queue.top();
            queue.pop();
            if (top.mass < options.epsilon) break;
            if (!has_merged(result.recursions[top.recursion].labeling)) continue;
            idx = evaluate(
                child_labeling(result.recursions[top.recursion], top.bin, options.max_active),
                top.recursion, top.bin);
            for (std::size_t j = 0; j < result.recursions[idx].bins.size(); ++j)
                queue.push({result.recursions[idx].bins[j], idx, static_cast<int>(j)});
        }
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::vector<double> expand_bins(int n_qubits, const std::vector<DdRecursionRecord>& recursions) {
    std::vector<double> out(std::size_t(1) << n_qubits, 0.0);
    for (const DdRecursionRecord& rec : recursions) {
        if (static_cast<int>(rec.labeling.size()) != n_qubits)
            throw std::invalid_argument("labeling width mismatch");
        std::size_t base = 0;
        std::vector<int> merged;
        for (int q = 0; q < n_qubits; ++q) {
            if (rec.labeling[q].kind == LabelKind::Zoomed && rec.labeling[q].bit)
                base |= std::size_t(1) << (n_qubits - 1 - q);
            if (rec.labeling[q].kind == LabelKind::Merged) merged.push_back(q);
        }
        const int a = static_cast<int>(rec.active_qubits.size());
        if (rec.bins.size() != std::size_t(1) << a)
            throw std::invalid_argument("bin count mismatch");
        const double spread = std::ldexp(1.0, -static_cast<int>(merged.size()));
        for (std::size_t j = 0; j < rec.bins.size(); ++j) {
            std::size_t with_active = base;
            for (int r = 0; r < a; ++r)
                if ((j >> (a - 1 - r)) & 1)
                    with_active |= std::size_t(1) << (n_qubits - 1 - rec.active_qubits[r]);
            const double value = rec.bins[j] * spread;
            for (std::size_t mm = 0; mm < std::size_t(1) << merged.size(); ++mm) {
                std::size_t idx = with_active;
                for (std::size_t k = 0; k < merged.size(); ++k)
                    if ((mm >> (merged.size() - 1 - k)) & 1)
                        idx |= std::size_t(1) << (n_qubits - 1 - merged[k]);
                out[idx] = value;
            }
        }
    }
    return out;
}

}  // namespace qcut
