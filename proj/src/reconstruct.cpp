#include "qcut/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace qcut {

namespace {

// Measured-bit weights per term: Z kept low, Z kept high, X parity, Y parity.
constexpr double kFold[4][2] = {{2, 0}, {0, 2}, {1, -1}, {1, -1}};
// Preparation-state coefficients per term over |0>, |1>, |+>, |+i>.
constexpr double kInitRow[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, -1, 2, 0}, {-1, -1, 0, 2}};

// Removes the bit at LSB position `pos`, combining the halves with w0/w1.
void fold_bit(std::vector<double>& vec, int pos, double w0, double w1) {
    const std::size_t half = vec.size() / 2;
    const std::size_t lo_mask = (std::size_t(1) << pos) - 1;
    std::vector<double> out(half);
    for (std::size_t j = 0; j < half; ++j) {
        const std::size_t i0 = ((j >> pos) << (pos + 1)) | (j & lo_mask);
        out[j] = w0 * vec[i0] + w1 * vec[i0 | (std::size_t(1) << pos)];
    }
    vec = std::move(out);
}

void check_outcomes(const CutPlan& plan,
                    const std::vector<std::vector<VariantOutcome>>& outcomes) {
    if (outcomes.size() != plan.subcircuits.size())
        throw std::invalid_argument("one outcome list per subcircuit required");
    for (std::size_t b = 0; b < outcomes.size(); ++b) {
        if (outcomes[b].size() != plan.subcircuits[b].variant_count())
            throw std::invalid_argument("subcircuit " + std::to_string(b) +
                                        " is missing variant outcomes");
        for (const VariantOutcome& o : outcomes[b])
            if (o.size() != std::size_t(1) << plan.subcircuits[b].width())
                throw std::invalid_argument("variant outcome width mismatch");
    }
}

}  // namespace

std::vector<std::vector<VariantOutcome>> run_all_variants(const CutPlan& plan,
                                                          const RunMode& mode) {
    std::vector<std::vector<VariantOutcome>> out(plan.subcircuits.size());
    for (std::size_t b = 0; b < plan.subcircuits.size(); ++b) {
        const Subcircuit& sub = plan.subcircuits[b];
        out[b].reserve(sub.variant_count());
        for (std::uint64_t v = 0; v < sub.variant_count(); ++v) {
            RunMode variant_mode = mode;
            variant_mode.stream = make_stream_id(b, v);
            out[b].push_back(run_variant(make_variant(sub, decode_variant(sub, v)), variant_mode));
        }
    }
    return out;
}

std::vector<double> attribute(const Subcircuit& sub, const std::vector<VariantOutcome>& outcomes,
                              const std::vector<int>& term_digits) {
    if (term_digits.size() != sub.incident_cuts.size())
        throw std::invalid_argument("one term digit per incident cut required");
    for (int d : term_digits)
        if (d < 0 || d > 3) throw std::invalid_argument("term digit out of range");
    if (outcomes.size() != sub.variant_count())
        throw std::invalid_argument("outcome per variant required");

    const int kept = static_cast<int>(sub.kept_locals.size());
    std::vector<double> result(std::size_t(1) << kept, 0.0);

    // Physical digits: measured cuts are fixed by the term (Z/Z/X/Y); the
    // preparation states of initialized cuts are summed with kInitRow.
    std::vector<int> physical(term_digits.size(), 0);
    std::vector<std::size_t> init_positions;
    for (std::size_t i = 0; i < term_digits.size(); ++i) {
        if (sub.incident_is_init[i])
            init_positions.push_back(i);
        else
            physical[i] = term_digits[i] < 2 ? 0 : term_digits[i] - 1;
    }

    auto add_tuple = [&](double coeff) {
        std::vector<double> vec = outcomes[encode_variant(sub, physical)].estimates();
        // Fold measured locals from the highest down; lower locals keep their
        // bit rank, so the LSB position of local l is width-folded-1-l.
        int current_width = sub.width();
        for (auto it = sub.measured_locals.rbegin(); it != sub.measured_locals.rend(); ++it) {
            const int local = *it;
            std::size_t pos_in_incident = 0;
            while (sub.incident_is_init[pos_in_incident] ||
                   sub.incident_local[pos_in_incident] != local)
                ++pos_in_incident;
            const double* weights = kFold[term_digits[pos_in_incident]];
            fold_bit(vec, current_width - 1 - local, weights[0], weights[1]);
            --current_width;
        }
        for (std::size_t i = 0; i < result.size(); ++i) result[i] += coeff * vec[i];
    };

    auto enumerate = [&](auto&& self, std::size_t idx, double coeff) -> void {
        if (idx == init_positions.size()) {
            add_tuple(coeff);
            return;
        }
        const int term = term_digits[init_positions[idx]];
        for (int s = 0; s < 4; ++s) {
            if (kInitRow[term][s] == 0) continue;
            physical[init_positions[idx]] = s;
            self(self, idx + 1, coeff * kInitRow[term][s]);
        }
    };
    enumerate(enumerate, 0, 1.0);
    return result;
}

AttributedTable attribute_all(const Subcircuit& sub,
                              const std::vector<VariantOutcome>& outcomes) {
    const std::size_t ranks = std::size_t(1) << (2 * sub.incident_cuts.size());
    AttributedTable table;
    table.vectors.reserve(ranks);
    table.is_zero.reserve(ranks);
    std::vector<int> digits(sub.incident_cuts.size(), 0);
    for (std::size_t rank = 0; rank < ranks; ++rank) {
        for (std::size_t i = 0; i < digits.size(); ++i)
            digits[i] = static_cast<int>(rank >> (2 * (digits.size() - 1 - i))) & 3;
        table.vectors.push_back(attribute(sub, outcomes, digits));
        const std::vector<double>& v = table.vectors.back();
        table.is_zero.push_back(std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }));
    }
    return table;
}

FdResult reconstruct_fd(const CutPlan& plan,
                        const std::vector<std::vector<VariantOutcome>>& outcomes,
                        const FdOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    check_outcomes(plan, outcomes);
    if (options.threads < 1) throw std::invalid_argument("thread count must be positive");

    const int m = static_cast<int>(plan.subcircuits.size());
    const int n = plan.n_qubits;
    const int cuts = static_cast<int>(plan.points.size());
    const std::size_t full = std::size_t(1) << n;

    FdResult result;
    result.term_count = std::uint64_t(1) << (2 * cuts);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    if (options.order_override) {
        order = *options.order_override;
        std::vector<int> check = order;
        std::sort(check.begin(), check.end());
        std::vector<int> identity(m);
        std::iota(identity.begin(), identity.end(), 0);
        if (check != identity)
            throw std::invalid_argument("order override must permute the subcircuit labels");
    } else if (options.greedy_order) {
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return plan.subcircuits[a].kept_locals.size() < plan.subcircuits[b].kept_locals.size();
        });
    }
    result.block_order = order;

    std::vector<AttributedTable> tables;
    tables.reserve(m);
    for (int b = 0; b < m; ++b) tables.push_back(attribute_all(plan.subcircuits[b], outcomes[b]));

    // Term digit of cut c lives at bit offset 2*(cuts-1-c); a subcircuit's
    // table rank folds its incident cuts' digits in ascending cut order.
    std::vector<std::vector<int>> shifts(m);
    for (int b = 0; b < m; ++b)
        for (int cut : plan.subcircuits[b].incident_cuts)
            shifts[b].push_back(2 * (cuts - 1 - cut));

    const int n_threads = options.threads;
    std::vector<std::vector<double>> buffers(n_threads);
    std::vector<std::uint64_t> mults(n_threads, 0), evaluated(n_threads, 0),
        skipped(n_threads, 0);

    auto worker = [&](int tid, std::uint64_t begin, std::uint64_t end) {
        std::vector<double>& acc = buffers[tid];
        acc.assign(full, 0.0);
        std::vector<double> prefix(full), next(full);
        std::vector<std::size_t> ranks(m);
        for (std::uint64_t t = begin; t < end; ++t) {
            bool skip = false;
            for (int oi = 0; oi < m && !skip; ++oi) {
                const int b = order[oi];
                std::size_t rank = 0;
                for (int shift : shifts[b]) rank = (rank << 2) | ((t >> shift) & 3);
                ranks[b] = rank;
                if (options.early_termination && tables[b].is_zero[rank]) skip = true;
            }
            if (skip) {
                ++skipped[tid];
                continue;
            }
            ++evaluated[tid];

            const std::vector<double>* acc_vec = &tables[order[0]].vectors[ranks[order[0]]];
            std::size_t len = acc_vec->size();
            std::copy(acc_vec->begin(), acc_vec->end(), prefix.begin());
            for (int oi = 1; oi < m; ++oi) {
                const std::vector<double>& v = tables[order[oi]].vectors[ranks[order[oi]]];
                for (std::size_t a = 0; a < len; ++a) {
                    const double pa = prefix[a];
                    double* dst = next.data() + a * v.size();
                    for (std::size_t c = 0; c < v.size(); ++c) dst[c] = pa * v[c];
                }
                mults[tid] += std::uint64_t(len) * v.size();
                len *= v.size();
                std::swap(prefix, next);
            }
            for (std::size_t i = 0; i < full; ++i) acc[i] += prefix[i];
        }
    };

    if (n_threads == 1) {
        worker(0, 0, result.term_count);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < n_threads; ++tid) {
            const std::uint64_t begin = result.term_count * tid / n_threads;
            const std::uint64_t end = result.term_count * (tid + 1) / n_threads;
            pool.emplace_back(worker, tid, begin, end);
        }
        for (std::thread& th : pool) th.join();
    }

    std::vector<double> acc(full, 0.0);
    for (int tid = 0; tid < n_threads; ++tid) {
        for (std::size_t i = 0; i < full; ++i) acc[i] += buffers[tid][i];
        result.mults_build += mults[tid];
        result.terms_evaluated += evaluated[tid];
        result.terms_skipped += skipped[tid];
    }
    result.mults_total = result.mults_build;
    if (cuts > 0) {
        const double scale = std::ldexp(1.0, -cuts);
        for (double& x : acc) x *= scale;
        result.mults_total += full;
    }

    // Surviving outputs are concatenated in block order; route each slot's
    // bit back to its original qubit (qubit 0 most significant).
    const std::vector<int> origins = plan.kept_origins(order);
    result.probabilities.assign(full, 0.0);
    for (std::size_t i = 0; i < full; ++i) {
        std::size_t o = 0;
        for (int s = 0; s < n; ++s)
            if ((i >> (n - 1 - s)) & 1) o |= std::size_t(1) << (n - 1 - origins[s]);
        result.probabilities[o] = acc[i];
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace qcut
