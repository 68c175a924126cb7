#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "qcut/bench.hpp"
#include "qcut/benchmarks.hpp"
#include "qcut/io.hpp"
#include "qcut/reconstruct.hpp"

using namespace qcut;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory per test case, removed on destruction.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("qcut_io_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

CutPlan plan_for(const Circuit& circuit, const SearchConfig& config) {
    const auto solution = find_cuts(build_dag(circuit), config);
    REQUIRE(solution.has_value());
    return extract_subcircuits(circuit, *solution);
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("cut solution JSON round-trips, with the cost as a decimal string") {
    const Circuit circuit = five_qubit_chain_example();
    const auto solution = find_cuts(build_dag(circuit), {3, 5, 10});
    REQUIRE(solution.has_value());

    const std::string text = cut_solution_to_json(*solution);
    const CutSolution back = cut_solution_from_json(text);
    CHECK(back.n_subcircuits == solution->n_subcircuits);
    CHECK(back.assignment == solution->assignment);
    CHECK(back.cut_edges == solution->cut_edges);
    CHECK(back.cut_count == solution->cut_count);
    CHECK(back.objective == solution->objective);
    CHECK(back.counts == solution->counts);
    CHECK(back.no_cut_needed == solution->no_cut_needed);

    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("L").is_string());
    CHECK(j.at("L").get<std::string>() == "128");
    CHECK(j.at("K").get<int>() == 1);
    CHECK(j.at("n_C").get<int>() == 2);

    // A cost beyond 64 bits survives the string representation.
    CutSolution big = *solution;
    big.objective = BigUint("340282366920938463463374607431768211456");  // 2^128
    CHECK(cut_solution_from_json(cut_solution_to_json(big)).objective == big.objective);
}

TEST_CASE("probability files round-trip doubles bit for bit") {
    const TempDir dir("prb");
    const std::string path = dir.file("probs.bin");

    std::vector<double> values{0.0,
                               1.0,
                               -3.25e-17,
                               0.1234567890123456789,
                               std::numeric_limits<double>::denorm_min(),
                               -1.0 / 3.0};
    save_probabilities(path, values);
    CHECK(load_probabilities(path) == values);

    // File size: 8-byte magic plus 8 bytes per entry.
    CHECK(fs::file_size(path) == 8 + 8 * values.size());

    save_probabilities(path, {});
    CHECK(load_probabilities(path).empty());
}

TEST_CASE("probability loader rejects wrong magic and truncated payloads") {
    const TempDir dir("prbbad");

    const std::string wrong = dir.file("wrong.bin");
    write_text_file(wrong, "NOTMAGIC" + std::string(16, '\0'));
    CHECK_THROWS_AS(load_probabilities(wrong), std::runtime_error);

    const std::string shortFile = dir.file("short.bin");
    write_text_file(shortFile, "QCUT");
    CHECK_THROWS_AS(load_probabilities(shortFile), std::runtime_error);

    const std::string torn = dir.file("torn.bin");
    save_probabilities(torn, {0.5, 0.5});
    fs::resize_file(torn, fs::file_size(torn) - 3);
    CHECK_THROWS_AS(load_probabilities(torn), std::runtime_error);

    CHECK_THROWS_AS(load_probabilities(dir.file("missing.bin")), std::runtime_error);
}

TEST_CASE("a bundle writes every variant plus a faithful manifest") {
    const TempDir dir("bundle");
    const Circuit circuit = five_qubit_chain_example();
    const CutPlan plan = plan_for(circuit, {3, 5, 10});
    const std::string out = (dir.path / "bundle").string();
    write_bundle(out, circuit, plan);

    const auto manifest = nlohmann::json::parse(read_text_file(out + "/manifest.json"));
    CHECK(manifest.at("name").get<std::string>() == circuit.name);
    CHECK(manifest.at("n_qubits").get<int>() == 5);

    const CutSolution stored = cut_solution_from_json(manifest.at("solution").dump());
    CHECK(stored.assignment == plan.solution.assignment);
    CHECK(stored.objective == plan.solution.objective);

    const auto& subs = manifest.at("subcircuits");
    REQUIRE(subs.size() == plan.subcircuits.size());

    // One upstream measured cut (3 variants) and one downstream init (4).
    CHECK(subs[0].at("variant_count").get<std::uint64_t>() == 3);
    CHECK(subs[1].at("variant_count").get<std::uint64_t>() == 4);
    CHECK(subs[0].at("qubits")[2].at("fate").get<std::string>() == "cut_measure");
    CHECK(subs[1].at("qubits")[0].at("origin").get<std::string>() == "cut_init");

    // Every listed file exists and parses back to exactly make_variant's output.
    for (std::size_t b = 0; b < plan.subcircuits.size(); ++b) {
        const Subcircuit& sub = plan.subcircuits[b];
        const auto& files = subs[b].at("files");
        REQUIRE(files.size() == sub.variant_count());
        for (std::uint64_t v = 0; v < sub.variant_count(); ++v) {
            const std::string name = files[v].get<std::string>();
            const Circuit parsed = parse_circuit(read_text_file(out + "/" + name));
            CHECK(parsed == make_variant(sub, decode_variant(sub, v)));
        }
    }
}

TEST_CASE("dynamic-definition traces serialize with full label detail") {
    const Circuit circuit = generate_benchmark(bv_spec(6));
    const CutPlan plan = plan_for(circuit, {4, 5, 10});
    const auto outcomes = run_all_variants(plan, RunMode{});
    DdOptions options;
    options.max_active = 3;
    const DdResult result = dd_query(plan, outcomes, options);

    const auto j = nlohmann::json::parse(dd_result_to_json(result));
    CHECK(j.at("n_qubits").get<int>() == 6);
    REQUIRE(j.at("recursions").size() == result.recursions.size());

    const auto& first = j.at("recursions")[0];
    CHECK(first.at("parent").get<int>() == -1);
    CHECK(first.at("active_qubits").get<std::vector<int>>() == std::vector<int>{0, 1, 2});
    CHECK(first.at("bins").get<std::vector<double>>() == result.recursions[0].bins);
    CHECK(first.at("labeling")[0].at("kind").get<std::string>() == "active");
    CHECK(first.at("labeling")[3].at("kind").get<std::string>() == "merged");

    const auto& second = j.at("recursions")[1];
    CHECK(second.at("parent").get<int>() == 0);
    CHECK(second.at("labeling")[0].at("kind").get<std::string>() == "zoomed");
    CHECK(second.at("labeling")[0].at("bit").get<int>() ==
          result.recursions[1].labeling[0].bit);
    CHECK(j.at("bins_computed").get<std::uint64_t>() == result.bins_computed);
}

TEST_CASE("text file helpers report unreadable paths") {
    CHECK_THROWS_AS(read_text_file("/nonexistent/qcut/file.txt"), std::runtime_error);
    CHECK_THROWS_AS(write_text_file("/nonexistent/qcut/file.txt", "x"), std::runtime_error);
}

TEST_SUITE_END();
