#include "qcut/io.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qcut {

namespace {

using nlohmann::json;

constexpr char kProbMagic[8] = {'Q', 'C', 'U', 'T', 'P', 'R', 'B', '1'};

json counts_to_json(const SubcircuitCounts& c) {
    return json{{"input_qubits", c.input_qubits},
                {"init_qubits", c.init_qubits},
                {"measured_qubits", c.measured_qubits},
                {"width", c.width},
                {"output_qubits", c.output_qubits}};
}

SubcircuitCounts counts_from_json(const json& j) {
    SubcircuitCounts c;
    c.input_qubits = j.at("input_qubits").get<int>();
    c.init_qubits = j.at("init_qubits").get<int>();
    c.measured_qubits = j.at("measured_qubits").get<int>();
    c.width = j.at("width").get<int>();
    c.output_qubits = j.at("output_qubits").get<int>();
    return c;
}

const char* origin_name(QubitOrigin o) {
    return o == QubitOrigin::OriginalInput ? "input" : "cut_init";
}

const char* fate_name(QubitFate f) {
    return f == QubitFate::FinalOutput ? "output" : "cut_measure";
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string cut_solution_to_json(const CutSolution& solution) {
    json edges = json::array();
    for (const CutEdgeRef& e : solution.cut_edges)
        edges.push_back(json{{"from", e.from_vertex},
                             {"to", e.to_vertex},
                             {"qubit", e.qubit},
                             {"upstream", e.upstream},
                             {"downstream", e.downstream}});
    json counts = json::array();
    for (const SubcircuitCounts& c : solution.counts) counts.push_back(counts_to_json(c));
    json j{{"n_C", solution.n_subcircuits}, {"assignment", solution.assignment},
           {"cut_edges", std::move(edges)}, {"K", solution.cut_count},
           {"L", solution.objective.str()}, {"counts", std::move(counts)},
           {"no_cut_needed", solution.no_cut_needed}};
    return j.dump(2) + "\n";
}

CutSolution cut_solution_from_json(const std::string& text) {
    json j = json::parse(text);
    CutSolution solution;
    solution.n_subcircuits = j.at("n_C").get<int>();
    solution.assignment = j.at("assignment").get<std::vector<int>>();
    for (const json& e : j.at("cut_edges")) {
        CutEdgeRef edge;
        edge.from_vertex = e.at("from").get<int>();
        edge.to_vertex = e.at("to").get<int>();
        edge.qubit = e.at("qubit").get<int>();
        edge.upstream = e.at("upstream").get<int>();
        edge.downstream = e.at("downstream").get<int>();
        solution.cut_edges.push_back(edge);
    }
    solution.cut_count = j.at("K").get<int>();
    solution.objective = BigUint(j.at("L").get<std::string>());
    if (j.contains("counts"))
        for (const json& c : j.at("counts")) solution.counts.push_back(counts_from_json(c));
    if (j.contains("no_cut_needed")) solution.no_cut_needed = j.at("no_cut_needed").get<bool>();
    return solution;
}

void save_probabilities(const std::string& path, const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(kProbMagic, sizeof(kProbMagic));
    for (double v : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        char bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
        out.write(bytes, 8);
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<double> load_probabilities(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kProbMagic, 8) != 0)
        throw std::runtime_error(path + " is not a probability file");
    std::vector<double> values;
    char bytes[8];
    while (in.read(bytes, 8)) {
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
        double v;
        std::memcpy(&v, &bits, sizeof(v));
        values.push_back(v);
    }
    if (in.gcount() != 0) throw std::runtime_error(path + " has a truncated trailing entry");
    return values;
}

void write_bundle(const std::string& dir, const Circuit& original, const CutPlan& plan) {
    std::filesystem::create_directories(dir);
    json subs = json::array();
    for (std::size_t b = 0; b < plan.subcircuits.size(); ++b) {
        const Subcircuit& sub = plan.subcircuits[b];
        json qubits = json::array();
        for (const LocalQubit& q : sub.qubits)
            qubits.push_back(json{{"original_qubit", q.original_qubit},
                                  {"segment", q.segment},
                                  {"origin", origin_name(q.origin)},
                                  {"fate", fate_name(q.fate)},
                                  {"init_cut", q.init_cut},
                                  {"measure_cut", q.measure_cut}});
        json files = json::array();
        for (std::uint64_t v = 0; v < sub.variant_count(); ++v) {
            const std::string file =
                "sub" + std::to_string(b) + "_v" + std::to_string(v) + ".qc";
            write_text_file(dir + "/" + file,
                            serialize_circuit(make_variant(sub, decode_variant(sub, v))));
            files.push_back(file);
        }
        subs.push_back(json{{"index", b},
                            {"n_qubits", sub.width()},
                            {"variant_count", sub.variant_count()},
                            {"qubits", std::move(qubits)},
                            {"files", std::move(files)}});
    }
    json manifest{{"name", original.name},
                  {"n_qubits", original.n_qubits},
                  {"solution", json::parse(cut_solution_to_json(plan.solution))},
                  {"subcircuits", std::move(subs)}};
    write_text_file(dir + "/manifest.json", manifest.dump(2) + "\n");
}

std::string dd_result_to_json(const DdResult& result) {
    json recs = json::array();
    for (const DdRecursionRecord& rec : result.recursions) {
        json labels = json::array();
        for (const QubitLabel& l : rec.labeling) {
            switch (l.kind) {
                case LabelKind::Merged: labels.push_back(json{{"kind", "merged"}}); break;
                case LabelKind::Active: labels.push_back(json{{"kind", "active"}}); break;
                case LabelKind::Zoomed:
                    labels.push_back(json{{"kind", "zoomed"}, {"bit", l.bit}});
                    break;
            }
        }
        recs.push_back(json{{"labeling", std::move(labels)},
                            {"active_qubits", rec.active_qubits},
                            {"bins", rec.bins},
                            {"parent", rec.parent},
                            {"parent_bin", rec.parent_bin}});
    }
    json j{{"n_qubits", result.n_qubits},
           {"recursions", std::move(recs)},
           {"bins_computed", result.bins_computed},
           {"peak_workspace_doubles", result.peak_workspace_doubles},
           {"wall_seconds", result.wall_seconds}};
    return j.dump(2) + "\n";
}

}  // namespace qcut
