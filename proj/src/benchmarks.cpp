#include "qcut/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qcut {

namespace {

Circuit make_bv(const BenchmarkSpec& spec) {
    const int n = spec.n_qubits;
    if (n < 2) throw std::invalid_argument("bv requires at least 2 qubits");
    std::string hidden = spec.hidden_string.empty() ? std::string(n - 1, '1') : spec.hidden_string;
    if (static_cast<int>(hidden.size()) != n - 1)
        throw std::invalid_argument("bv hidden string must have n_qubits - 1 bits");
    if (hidden.find_first_not_of("01") != std::string::npos)
        throw std::invalid_argument("bv hidden string must be binary");
    Circuit c(n, "bv" + std::to_string(n) + "_" + hidden);
    const int anc = n - 1;
    c.add(GateKind::X, anc);
    for (int q = 0; q < n; ++q) c.add(GateKind::H, q);
    for (int q = 0; q < n - 1; ++q)
        if (hidden[q] == '1') c.add(GateKind::CX, q, anc);
    for (int q = 0; q < n; ++q) c.add(GateKind::H, q);
    return c;
}

// Controlled phase diag(1,1,1,e^{i*angle}) on (control, target), compiled to
// the native set up to global phase.
void add_cphase(Circuit& c, int control, int target, double angle) {
    c.add(GateKind::RZ, control, -1, angle / 2);
    c.add(GateKind::RZ, target, -1, angle / 2);
    c.add(GateKind::CX, control, target);
    c.add(GateKind::RZ, target, -1, -angle / 2);
    c.add(GateKind::CX, control, target);
}

Circuit make_aqft(const BenchmarkSpec& spec) {
    const int n = spec.n_qubits;
    if (n < 2) throw std::invalid_argument("aqft requires at least 2 qubits");
    int degree = spec.aqft_degree;
    if (degree == 0) degree = std::max(1, static_cast<int>(std::ceil(std::log2(n))));
    if (degree < 1) throw std::invalid_argument("aqft degree must be positive");
    Circuit c(n, "aqft" + std::to_string(n) + "_d" + std::to_string(degree));
    for (int i = 0; i < n; ++i) {
        c.add(GateKind::H, i);
        for (int j = i + 1; j < n && j - i <= degree; ++j)
            add_cphase(c, j, i, std::numbers::pi / double(1ull << (j - i)));
    }
    return c;
}

// Toffoli on (control a, control b, target t), the standard T-depth
// decomposition over {H, T, Tdg, CX}.
void add_toffoli(Circuit& c, int a, int b, int t) {
    c.add(GateKind::H, t);
    c.add(GateKind::CX, b, t);
    c.add(GateKind::Tdg, t);
    c.add(GateKind::CX, a, t);
    c.add(GateKind::T, t);
    c.add(GateKind::CX, b, t);
    c.add(GateKind::Tdg, t);
    c.add(GateKind::CX, a, t);
    c.add(GateKind::T, b);
    c.add(GateKind::T, t);
    c.add(GateKind::H, t);
    c.add(GateKind::CX, a, b);
    c.add(GateKind::T, a);
    c.add(GateKind::Tdg, b);
    c.add(GateKind::CX, a, b);
}

// Ripple-carry adder: qubit 0 is the carry-in ancilla, qubits 1..m hold
// register a, m+1..2m register b, and qubit 2m+1 receives the carry-out.
// After the circuit, b holds (a + b) mod 2^m, the carry-out qubit holds the
// high bit, and a and the ancilla are restored.
Circuit make_adder(const BenchmarkSpec& spec) {
    const int n = spec.n_qubits;
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("adder requires an even qubit count >= 4");
    const int m = (n - 2) / 2;
    const std::uint64_t mask = (m == 64) ? ~0ull : ((1ull << m) - 1);
    const std::uint64_t a_val = spec.adder_a & mask;
    const std::uint64_t b_val = spec.adder_b & mask;
    Circuit c(n, "adder" + std::to_string(n));
    auto a_q = [&](int bit) { return 1 + bit; };
    auto b_q = [&](int bit) { return 1 + m + bit; };
    const int carry_in = 0;
    const int carry_out = n - 1;

    for (int bit = 0; bit < m; ++bit) {
        if ((a_val >> bit) & 1) c.add(GateKind::X, a_q(bit));
        if ((b_val >> bit) & 1) c.add(GateKind::X, b_q(bit));
    }
    auto maj = [&](int x, int y, int z) {
        c.add(GateKind::CX, z, y);
        c.add(GateKind::CX, z, x);
        add_toffoli(c, x, y, z);
    };
    auto unmaj = [&](int x, int y, int z) {
        add_toffoli(c, x, y, z);
        c.add(GateKind::CX, z, x);
        c.add(GateKind::CX, x, y);
    };
    maj(carry_in, b_q(0), a_q(0));
    for (int bit = 1; bit < m; ++bit) maj(a_q(bit - 1), b_q(bit), a_q(bit));
    c.add(GateKind::CX, a_q(m - 1), carry_out);
    for (int bit = m - 1; bit >= 1; --bit) unmaj(a_q(bit - 1), b_q(bit), a_q(bit));
    unmaj(carry_in, b_q(0), a_q(0));
    return c;
}

Circuit make_hwea(const BenchmarkSpec& spec) {
    const int n = spec.n_qubits;
    if (n < 2) throw std::invalid_argument("hwea requires at least 2 qubits");
    if (spec.hwea_layers < 1) throw std::invalid_argument("hwea requires at least one layer");
    Circuit c(n, "hwea" + std::to_string(n) + "_l" + std::to_string(spec.hwea_layers));
    std::mt19937_64 rng(spec.seed);
    auto angle = [&]() -> double {
        if (spec.hwea_zero_angles) return 0;
        return 2.0 * std::numbers::pi * double(rng() >> 11) * 0x1.0p-53;
    };
    auto rotation_layer = [&]() {
        for (int q = 0; q < n; ++q) c.add(GateKind::RY, q, -1, angle());
        for (int q = 0; q < n; ++q) c.add(GateKind::RZ, q, -1, angle());
    };
    rotation_layer();
    for (int layer = 0; layer < spec.hwea_layers; ++layer) {
        for (int q = 0; q + 1 < n; ++q) c.add(GateKind::CX, q, q + 1);
        rotation_layer();
    }
    return c;
}

// Layered coupler pattern on a rows x cols grid. Cycle t activates couplers
// in one direction (horizontal for even t, vertical for odd) at a shift that
// walks through the four offsets, so consecutive cycles touch different edge
// sets. Single-qubit rule: a qubit idle in this cycle that already saw a CZ
// receives T the first time, afterwards a seeded-uniform draw from
// {T, SX, SY} excluding the gate it received most recently. Cycles whose
// coupler set is empty are skipped entirely.
Circuit make_supremacy(const BenchmarkSpec& spec) {
    const int rows = spec.grid_rows, cols = spec.grid_cols;
    if (rows < 1 || cols < 1 || rows * cols != spec.n_qubits)
        throw std::invalid_argument("supremacy grid shape must match n_qubits");
    if (std::abs(rows - cols) > 2)
        throw std::invalid_argument("supremacy grid dimensions may differ by at most 2");
    if (spec.depth < 1) throw std::invalid_argument("supremacy depth must be positive");
    Circuit c(spec.n_qubits,
              "supremacy" + std::to_string(rows) + "x" + std::to_string(cols));
    std::mt19937_64 rng(spec.seed);
    auto qubit = [&](int r, int col) { return r * cols + col; };

    for (int q = 0; q < spec.n_qubits; ++q) c.add(GateKind::H, q);

    std::vector<char> coupled(spec.n_qubits, 0);    // saw at least one CZ so far
    std::vector<GateKind> last(spec.n_qubits, GateKind::H);
    for (int t = 0; t < spec.depth; ++t) {
        const int dr = t % 2, dc = 1 - dr;
        const int shift = (t >> 1) % 4;
        std::vector<std::pair<int, int>> layer;
        for (int r = 0; r < rows; ++r)
            for (int col = 0; col < cols; ++col) {
                int r2 = r + dr, c2 = col + dc;
                if (r2 >= rows || c2 >= cols) continue;
                if ((r * (2 - dr) + col * (2 - dc)) % 4 != shift) continue;
                layer.emplace_back(qubit(r, col), qubit(r2, c2));
            }
        if (layer.empty()) continue;
        std::vector<char> busy(spec.n_qubits, 0);
        for (auto [a, b] : layer) busy[a] = busy[b] = 1;
        for (int q = 0; q < spec.n_qubits; ++q) {
            if (busy[q] || !coupled[q]) continue;
            GateKind pick;
            if (last[q] == GateKind::H) {
                pick = GateKind::T;
            } else {
                const GateKind pool[3] = {GateKind::T, GateKind::SX, GateKind::SY};
                GateKind options[2];
                int count = 0;
                for (GateKind g : pool)
                    if (g != last[q]) options[count++] = g;
                pick = options[rng() % 2];
            }
            c.add(pick, q);
            last[q] = pick;
        }
        for (auto [a, b] : layer) {
            c.add(GateKind::CZ, a, b);
            coupled[a] = coupled[b] = 1;
        }
    }
    return c;
}

}  // namespace

const std::string& benchmark_family_name(BenchmarkFamily family) {
    static const std::string names[] = {"bv", "aqft", "adder", "hwea", "supremacy"};
    return names[static_cast<int>(family)];
}

BenchmarkFamily benchmark_family_from_name(const std::string& name) {
    for (BenchmarkFamily f : {BenchmarkFamily::BV, BenchmarkFamily::AQFT, BenchmarkFamily::Adder,
                              BenchmarkFamily::HWEA, BenchmarkFamily::SupremacyGrid})
        if (benchmark_family_name(f) == name) return f;
    throw std::invalid_argument("unknown benchmark family '" + name + "'");
}

Circuit generate_benchmark(const BenchmarkSpec& spec) {
    switch (spec.family) {
        case BenchmarkFamily::BV: return make_bv(spec);
        case BenchmarkFamily::AQFT: return make_aqft(spec);
        case BenchmarkFamily::Adder: return make_adder(spec);
        case BenchmarkFamily::HWEA: return make_hwea(spec);
        case BenchmarkFamily::SupremacyGrid: return make_supremacy(spec);
    }
    throw std::invalid_argument("unknown benchmark family");
}

BenchmarkSpec bv_spec(int n_qubits, std::string hidden) {
    BenchmarkSpec spec;
    spec.family = BenchmarkFamily::BV;
    spec.n_qubits = n_qubits;
    spec.hidden_string = std::move(hidden);
    return spec;
}

BenchmarkSpec supremacy_spec(int rows, int cols, int depth, std::uint64_t seed) {
    BenchmarkSpec spec;
    spec.family = BenchmarkFamily::SupremacyGrid;
    spec.n_qubits = rows * cols;
    spec.grid_rows = rows;
    spec.grid_cols = cols;
    spec.depth = depth;
    spec.seed = seed;
    return spec;
}

}  // namespace qcut
