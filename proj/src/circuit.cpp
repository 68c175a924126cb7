#include "qcut/circuit.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace qcut {

namespace {

struct KindInfo {
    GateKind kind;
    const char* name;
    int arity;
    bool has_angle;
};

constexpr std::array<KindInfo, 15> kKinds = {{
    {GateKind::H, "h", 1, false},
    {GateKind::X, "x", 1, false},
    {GateKind::Y, "y", 1, false},
    {GateKind::Z, "z", 1, false},
    {GateKind::S, "s", 1, false},
    {GateKind::Sdg, "sdg", 1, false},
    {GateKind::T, "t", 1, false},
    {GateKind::Tdg, "tdg", 1, false},
    {GateKind::SX, "sx", 1, false},
    {GateKind::SY, "sy", 1, false},
    {GateKind::RX, "rx", 1, true},
    {GateKind::RY, "ry", 1, true},
    {GateKind::RZ, "rz", 1, true},
    {GateKind::CZ, "cz", 2, false},
    {GateKind::CX, "cx", 2, false},
}};

const KindInfo& info(GateKind kind) { return kKinds[static_cast<size_t>(kind)]; }

std::string format_angle(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace

int gate_arity(GateKind kind) { return info(kind).arity; }

bool gate_has_angle(GateKind kind) { return info(kind).has_angle; }

const std::string& gate_name(GateKind kind) {
    static const std::array<std::string, kKinds.size()> names = [] {
        std::array<std::string, kKinds.size()> out;
        for (size_t i = 0; i < kKinds.size(); ++i) out[i] = kKinds[i].name;
        return out;
    }();
    return names[static_cast<size_t>(kind)];
}

GateKind gate_kind_from_name(const std::string& name) {
    for (const auto& k : kKinds)
        if (name == k.name) return k.kind;
    throw std::invalid_argument("unknown gate kind '" + name + "'");
}

bool Gate::operator==(const Gate& other) const {
    if (kind != other.kind || q0 != other.q0 || q1 != other.q1) return false;
    return !gate_has_angle(kind) || angle == other.angle;
}

Circuit& Circuit::add(GateKind kind, int q0, int q1, double angle) {
    Gate g{kind, q0, q1, angle};
    const int arity = gate_arity(kind);
    if (arity == 1 && g.q1 != -1)
        throw std::invalid_argument("gate '" + gate_name(kind) + "' takes one qubit");
    if (arity == 2 && g.q1 == -1)
        throw std::invalid_argument("gate '" + gate_name(kind) + "' takes two qubits");
    if (g.q0 < 0 || g.q0 >= n_qubits || (arity == 2 && (g.q1 < 0 || g.q1 >= n_qubits)))
        throw std::invalid_argument("qubit index out of range for gate '" + gate_name(kind) + "'");
    if (arity == 2 && g.q0 == g.q1)
        throw std::invalid_argument("two-qubit gate operands must be distinct");
    if (gate_has_angle(kind) && !std::isfinite(angle))
        throw std::invalid_argument("rotation angle must be finite");
    if (!gate_has_angle(kind)) g.angle = 0;
    gates.push_back(g);
    return *this;
}

void Circuit::check() const {
    if (n_qubits < 1) throw std::invalid_argument("circuit must have at least one qubit");
    Circuit probe(n_qubits);
    for (const Gate& g : gates) probe.add(g.kind, g.q0, g.q1, g.angle);
}

bool Circuit::operator==(const Circuit& other) const {
    return n_qubits == other.n_qubits && gates == other.gates;
}

int Circuit::two_qubit_gate_count(int qubit) const {
    int count = 0;
    for (const Gate& g : gates)
        if (gate_arity(g.kind) == 2 && (g.q0 == qubit || g.q1 == qubit)) ++count;
    return count;
}

namespace {

Circuit parse_circuit_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("gates"))
        throw ParseError("JSON circuit requires 'n_qubits' and 'gates'");
    Circuit c(doc.at("n_qubits").get<int>());
    if (c.n_qubits < 1) throw ParseError("n_qubits must be positive");
    if (doc.contains("name")) c.name = doc.at("name").get<std::string>();
    for (const auto& item : doc.at("gates")) {
        GateKind kind = gate_kind_from_name(item.at("kind").get<std::string>());
        const auto& qubits = item.at("qubits");
        if (!qubits.is_array() || qubits.empty() || qubits.size() > 2)
            throw ParseError("gate 'qubits' must list one or two indices");
        if (static_cast<int>(qubits.size()) != gate_arity(kind))
            throw ParseError("gate '" + gate_name(kind) + "' has wrong operand count");
        double angle = 0;
        if (gate_has_angle(kind)) {
            if (!item.contains("params") || item.at("params").size() != 1)
                throw ParseError("gate '" + gate_name(kind) + "' requires one parameter");
            angle = item.at("params").at(0).get<double>();
        } else if (item.contains("params") && !item.at("params").empty()) {
            throw ParseError("gate '" + gate_name(kind) + "' takes no parameter");
        }
        try {
            c.add(kind, qubits.at(0).get<int>(),
                  qubits.size() == 2 ? qubits.at(1).get<int>() : -1, angle);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    return c;
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty circuit description");
    if (text[first] == '{') return parse_circuit_json(text);

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    Circuit c;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string word;
        if (!(fields >> word)) continue;  // blank or comment-only line
        if (!saw_header) {
            if (word != "qubits") throw ParseError("expected 'qubits <n>' header", line_no);
            if (!(fields >> c.n_qubits) || c.n_qubits < 1)
                throw ParseError("qubit count must be a positive integer", line_no);
            std::string extra;
            if (fields >> extra) throw ParseError("trailing token '" + extra + "'", line_no);
            saw_header = true;
            continue;
        }
        GateKind kind;
        try {
            kind = gate_kind_from_name(word);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
        int q0 = 0, q1 = -1;
        double angle = 0;
        if (!(fields >> q0)) throw ParseError("missing qubit operand", line_no);
        if (gate_arity(kind) == 2 && !(fields >> q1))
            throw ParseError("gate '" + gate_name(kind) + "' needs a second qubit", line_no);
        if (gate_has_angle(kind) && !(fields >> angle))
            throw ParseError("gate '" + gate_name(kind) + "' needs an angle", line_no);
        std::string extra;
        if (fields >> extra) throw ParseError("trailing token '" + extra + "'", line_no);
        try {
            c.add(kind, q0, q1, angle);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    if (!saw_header) throw ParseError("missing 'qubits <n>' header");
    return c;
}

std::string serialize_circuit(const Circuit& circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.n_qubits << "\n";
    for (const Gate& g : circuit.gates) {
        out << gate_name(g.kind) << ' ' << g.q0;
        if (gate_arity(g.kind) == 2) out << ' ' << g.q1;
        if (gate_has_angle(g.kind)) out << ' ' << format_angle(g.angle);
        out << "\n";
    }
    return out.str();
}

std::string serialize_circuit_json(const Circuit& circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : circuit.gates) {
        nlohmann::json item;
        item["kind"] = gate_name(g.kind);
        item["qubits"] = gate_arity(g.kind) == 2 ? nlohmann::json{g.q0, g.q1}
                                                 : nlohmann::json{g.q0};
        item["params"] = gate_has_angle(g.kind) ? nlohmann::json{g.angle}
                                                : nlohmann::json::array();
        gates.push_back(std::move(item));
    }
    nlohmann::json doc;
    doc["n_qubits"] = circuit.n_qubits;
    if (!circuit.name.empty()) doc["name"] = circuit.name;
    doc["gates"] = std::move(gates);
    return doc.dump(2) + "\n";
}

}  // namespace qcut
