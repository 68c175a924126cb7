// qcut: cut a circuit, run the pieces, and reconstruct the uncut output.
//
// Subcommands: cut, run, dd, verify, bench. Every command exits with 0 on
// success, 1 on bad input or internal failure, 2 when no cut satisfies the
// device constraints, 3 when a simulation exceeds the statevector capacity,
// and 4 when a verification fails.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcut/bench.hpp"
#include "qcut/benchmarks.hpp"
#include "qcut/io.hpp"
#include "qcut/metrics.hpp"
#include "qcut/pipeline.hpp"

namespace {

using nlohmann::json;
using namespace qcut;

// --- circuit sources --------------------------------------------------------

struct CircuitSource {
    std::string file;
    std::string bench;
    int n_qubits = 0;
    std::string hidden;
    int degree = 0;
    int layers = 2;
    bool zero_angles = false;
    std::string dims;
    int depth = 10;
    std::uint64_t adder_a = 0x5555555555555555ull;
    std::uint64_t adder_b = 0x3333333333333333ull;
    std::uint64_t gen_seed = 1;
};

void add_source_options(CLI::App& cmd, CircuitSource& src) {
    cmd.add_option("circuit", src.file, "circuit file (text or JSON)");
    cmd.add_option("--bench", src.bench, "benchmark family: bv, aqft, adder, hwea, supremacy");
    cmd.add_option("--n", src.n_qubits, "benchmark qubit count");
    cmd.add_option("--hidden", src.hidden, "bv: hidden bitstring (default all ones)");
    cmd.add_option("--degree", src.degree, "aqft: approximation degree (default ceil(log2 n))");
    cmd.add_option("--layers", src.layers, "hwea: entangling layer count");
    cmd.add_flag("--zero-angles", src.zero_angles, "hwea: zero every rotation angle");
    cmd.add_option("--dims", src.dims, "supremacy: grid shape, e.g. 2x4");
    cmd.add_option("--depth", src.depth, "supremacy: coupler cycle count");
    cmd.add_option("--adder-a", src.adder_a, "adder: first operand");
    cmd.add_option("--adder-b", src.adder_b, "adder: second operand");
    cmd.add_option("--gen-seed", src.gen_seed, "benchmark generator seed");
}

Circuit load_circuit(const CircuitSource& src) {
    if (src.file.empty() == src.bench.empty())
        throw CLI::ValidationError("circuit", "give either a circuit file or --bench");
    if (!src.file.empty()) return parse_circuit(read_text_file(src.file));

    BenchmarkSpec spec;
    spec.family = benchmark_family_from_name(src.bench);
    spec.n_qubits = src.n_qubits;
    spec.hidden_string = src.hidden;
    spec.aqft_degree = src.degree;
    spec.hwea_layers = src.layers;
    spec.hwea_zero_angles = src.zero_angles;
    spec.adder_a = src.adder_a;
    spec.adder_b = src.adder_b;
    spec.depth = src.depth;
    spec.seed = src.gen_seed;
    if (!src.dims.empty()) {
        const std::size_t x = src.dims.find('x');
        if (x == std::string::npos)
            throw CLI::ValidationError("--dims", "expected ROWSxCOLS, e.g. 2x4");
        spec.grid_rows = std::stoi(src.dims.substr(0, x));
        spec.grid_cols = std::stoi(src.dims.substr(x + 1));
        if (spec.n_qubits == 0) spec.n_qubits = spec.grid_rows * spec.grid_cols;
    }
    Circuit circuit = generate_benchmark(spec);
    if (circuit.name.empty()) circuit.name = src.bench;
    return circuit;
}

// --- shared option groups ---------------------------------------------------

void add_search_options(CLI::App& cmd, SearchConfig& config) {
    cmd.add_option("--device", config.device_qubits, "device qubit budget per subcircuit")
        ->capture_default_str();
    cmd.add_option("--max-subcircuits", config.max_subcircuits, "subcircuit count cap")
        ->capture_default_str();
    cmd.add_option("--max-cuts", config.max_cuts, "cut count cap")->capture_default_str();
}

void add_mode_options(CLI::App& cmd, RunMode& mode, std::string& mode_name) {
    cmd.add_option("--mode", mode_name, "exact or shots")
        ->check(CLI::IsMember({"exact", "shots"}))
        ->capture_default_str();
    cmd.add_option("--shots", mode.shots, "shots per variant (shots mode)")
        ->capture_default_str();
    cmd.add_option("--seed", mode.seed, "root random seed")->capture_default_str();
    cmd.add_option("--noise", mode.depolarizing,
                   "depolarizing probability per qubit per gate (shots mode)")
        ->capture_default_str();
}

void add_dd_options(CLI::App& cmd, DdOptions& dd, std::string& strategy,
                    std::vector<int>& zoom_path) {
    cmd.add_option("--max-active", dd.max_active, "qubits resolved per recursion")
        ->capture_default_str();
    cmd.add_option("--recursions", dd.max_recursions, "bin evaluation cap")
        ->capture_default_str();
    cmd.add_option("--epsilon", dd.epsilon, "ignore bins below this mass")
        ->capture_default_str();
    cmd.add_option("--strategy", strategy, "zoom order: dfs or bfs")
        ->check(CLI::IsMember({"dfs", "bfs"}))
        ->capture_default_str();
    cmd.add_option("--zoom-path", zoom_path, "explicit bin indices to zoom, in order")
        ->delimiter(',');
}

void finish_dd_options(DdOptions& dd, const std::string& strategy,
                       const std::vector<int>& zoom_path) {
    dd.strategy = strategy == "bfs" ? DdStrategy::BFS : DdStrategy::DFS;
    if (!zoom_path.empty()) dd.zoom_path = zoom_path;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content << '\n';
    else
        write_text_file(path, content);
}

// --- run report --------------------------------------------------------------

json report_json(const Circuit& circuit, const PipelineOptions& options,
                 const PipelineResult& result) {
    json report;
    report["benchmark"] = circuit.name.empty() ? "circuit" : circuit.name;
    report["n_qubits"] = circuit.n_qubits;
    report["device_qubits"] = options.search.device_qubits;
    report["n_subcircuits"] = result.solution.n_subcircuits;
    report["cuts"] = result.solution.cut_count;
    report["no_cut_needed"] = result.solution.no_cut_needed;
    report["cost_estimate"] = result.solution.objective.str();
    report["mode"] = json{{"exact", options.mode.exact},
                          {"shots", options.mode.shots},
                          {"seed", options.mode.seed},
                          {"noise", options.mode.depolarizing}};
    if (!options.mode.exact) report["mode"]["shots"] = options.mode.shots;
    report["wall_seconds"] = json{{"cut", result.seconds_cut},
                                  {"run", result.seconds_run},
                                  {"build", result.seconds_build}};
    if (options.use_dd) {
        report["recursions"] = result.dd.recursions.size();
        report["bins_computed"] = result.dd.bins_computed;
        report["peak_workspace_doubles"] = result.dd.peak_workspace_doubles;
    } else {
        report["terms_evaluated"] = result.fd.terms_evaluated;
        report["terms_skipped"] = result.fd.terms_skipped;
        report["multiplications"] = result.fd.mults_total;
        report["multiplications_build"] = result.fd.mults_build;
    }
    report["negative_entries"] = result.negative_entries;
    return report;
}

// --- subcommand payloads ------------------------------------------------------

int do_cut(const CircuitSource& src, const SearchConfig& config, const std::string& out,
           const std::string& bundle_dir) {
    const Circuit circuit = load_circuit(src);
    const auto solution = find_cuts(build_dag(circuit), config);
    if (!solution) {
        std::cerr << "no cut fits: device " << config.device_qubits << " qubits, at most "
                  << config.max_subcircuits << " subcircuits, " << config.max_cuts
                  << " cuts\n";
        return kExitInfeasible;
    }
    write_output(out, cut_solution_to_json(*solution));
    if (!bundle_dir.empty()) {
        const CutPlan plan = extract_subcircuits(circuit, *solution);
        write_bundle(bundle_dir, circuit, plan);
        std::cerr << "bundle written to " << bundle_dir << '\n';
    }
    return kExitOk;
}

int do_run(const CircuitSource& src, const PipelineOptions& options, bool verify,
           bool clip_renormalize, bool count_flops, const std::string& out_dir,
           const std::string& format) {
    const Circuit circuit = load_circuit(src);
    PipelineResult result = run_pipeline(circuit, options);

    if (clip_renormalize) {
        double total = 0;
        for (double& p : result.probabilities) {
            if (p < 0) p = 0;
            total += p;
        }
        if (total > 0)
            for (double& p : result.probabilities) p /= total;
    }

    json report = report_json(circuit, options, result);
    if (clip_renormalize) report["clip_renormalize"] = true;
    if (count_flops && !options.use_dd)
        std::cerr << "multiplications: " << result.fd.mults_total << '\n';

    int exit_code = kExitOk;
    if (verify) {
        try {
            const VerifyReport v =
                verify_against_oracle(circuit, result.probabilities, options.mode.exact,
                                      options.mode.shots, result.solution.cut_count);
            report["verify"] = json{{"verdict", v.pass ? "pass" : "fail"},
                                    {"linf", v.linf},
                                    {"tvd", v.tvd},
                                    {"chi2", v.chi2},
                                    {"tvd_threshold", v.tvd_threshold},
                                    {"negative_entries", v.negative_entries}};
            if (!v.pass) exit_code = kExitVerifyFailed;
        } catch (const CapacityError&) {
            report["verify"] = json{{"verdict", "unverified"}};
        }
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        write_text_file((dir / "report.json").string(), report.dump(2));
        write_text_file((dir / "solution.json").string(),
                        cut_solution_to_json(result.solution));
        if (format == "bin") {
            save_probabilities((dir / "probabilities.bin").string(), result.probabilities);
        } else {
            write_text_file((dir / "probabilities.json").string(),
                            json(result.probabilities).dump());
        }
    }
    std::cout << report.dump(2) << '\n';
    return exit_code;
}

int do_dd(const CircuitSource& src, const PipelineOptions& options, const std::string& out) {
    const Circuit circuit = load_circuit(src);
    PipelineResult result = run_pipeline(circuit, options);
    write_output(out, dd_result_to_json(result.dd));
    return kExitOk;
}

int do_verify(const CircuitSource& src, const std::string& estimate_file,
              const SearchConfig& config, bool exact_mode, std::uint64_t shots, int cuts) {
    const Circuit circuit = load_circuit(src);
    std::vector<double> estimate;
    try {
        estimate = load_probabilities(estimate_file);
    } catch (const std::runtime_error&) {
        // Not the binary format; try a JSON array.
        estimate = json::parse(read_text_file(estimate_file)).get<std::vector<double>>();
    }
    if (cuts < 0) {
        const auto solution = find_cuts(build_dag(circuit), config);
        if (!solution) return kExitInfeasible;
        cuts = solution->cut_count;
    }
    const VerifyReport v = verify_against_oracle(circuit, estimate, exact_mode, shots, cuts);
    json report{{"verdict", v.pass ? "pass" : "fail"}, {"linf", v.linf},
                {"tvd", v.tvd},                        {"chi2", v.chi2},
                {"tvd_threshold", v.tvd_threshold},    {"negative_entries", v.negative_entries},
                {"cuts", cuts}};
    std::cout << report.dump(2) << '\n';
    return v.pass ? kExitOk : kExitVerifyFailed;
}

int do_bench(int criterion) {
    bool all_pass = true;
    std::vector<CriterionResult> results;
    if (criterion == 0) {
        results = run_criteria(std::cout);
    } else {
        results.push_back(run_criterion(criterion, std::cout));
    }
    for (const CriterionResult& r : results) {
        std::printf("[%s] %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcut: quantum circuit cutting, simulation, and reconstruction"};
    app.require_subcommand(1);

    CircuitSource src;
    PipelineOptions options;
    std::string mode_name = "exact";
    std::string dd_strategy = "dfs";
    std::vector<int> zoom_path;
    std::string out, bundle_dir, format = "bin";
    bool verify = false, clip_renormalize = false, count_flops = false;
    int verify_cuts = -1;
    bool verify_exact = true;
    std::string estimate_file;
    int criterion = 0;

    CLI::App* cut = app.add_subcommand("cut", "find an optimal cut, emit the solution JSON");
    add_source_options(*cut, src);
    add_search_options(*cut, options.search);
    cut->add_option("--out", out, "solution file (default stdout)");
    cut->add_option("--bundle", bundle_dir, "also write all variant circuits into this directory");

    CLI::App* run = app.add_subcommand("run", "cut, simulate every variant, reconstruct");
    add_source_options(*run, src);
    add_search_options(*run, options.search);
    add_mode_options(*run, options.mode, mode_name);
    run->add_option("--threads", options.fd.threads, "reconstruction threads")
        ->capture_default_str();
    run->add_flag("--no-greedy", "disable the greedy subcircuit ordering");
    run->add_flag("--no-early-term", "disable zero-term skipping");
    run->add_flag("--dd", options.use_dd, "reconstruct by dynamic definition");
    add_dd_options(*run, options.dd, dd_strategy, zoom_path);
    run->add_flag("--verify", verify, "compare against the exact oracle");
    run->add_flag("--clip-renormalize", clip_renormalize,
                  "clip negative entries to zero and renormalize");
    run->add_flag("--count-flops", count_flops, "print the multiplication count to stderr");
    run->add_option("--out", out, "directory for report.json, solution.json, probabilities");
    run->add_option("--format", format, "probability file format")
        ->check(CLI::IsMember({"json", "bin"}))
        ->capture_default_str();

    CLI::App* dd = app.add_subcommand("dd", "dynamic-definition query, emit the recursion trace");
    add_source_options(*dd, src);
    add_search_options(*dd, options.search);
    add_mode_options(*dd, options.mode, mode_name);
    dd->add_option("--threads", options.fd.threads, "reconstruction threads")
        ->capture_default_str();
    add_dd_options(*dd, options.dd, dd_strategy, zoom_path);
    dd->add_option("--out", out, "trace file (default stdout)");

    CLI::App* ver = app.add_subcommand("verify", "compare a saved estimate with the oracle");
    ver->add_option("estimate", estimate_file, "probability file (binary or JSON array)")
        ->required();
    add_source_options(*ver, src);
    add_search_options(*ver, options.search);
    ver->add_option("--mode", mode_name, "tolerance regime the estimate was produced under")
        ->check(CLI::IsMember({"exact", "shots"}))
        ->capture_default_str();
    ver->add_option("--shots", options.mode.shots, "shots behind the estimate")
        ->capture_default_str();
    ver->add_option("--cuts", verify_cuts, "cut count behind the estimate (default: search)");

    CLI::App* bench = app.add_subcommand("bench", "run the built-in verification suite");
    bench->add_option("--criterion", criterion, "run a single criterion 1..10 (default all)");

    CLI11_PARSE(app, argc, argv);

    try {
        options.mode.exact = mode_name == "exact";
        options.fd.greedy_order = run->count("--no-greedy") == 0;
        options.fd.early_termination = run->count("--no-early-term") == 0;
        finish_dd_options(options.dd, dd_strategy, zoom_path);
        verify_exact = mode_name == "exact";

        if (cut->parsed()) return do_cut(src, options.search, out, bundle_dir);
        if (run->parsed())
            return do_run(src, options, verify, clip_renormalize, count_flops, out, format);
        if (dd->parsed()) {
            options.use_dd = true;
            return do_dd(src, options, out);
        }
        if (ver->parsed())
            return do_verify(src, estimate_file, options.search, verify_exact,
                             options.mode.shots, verify_cuts);
        if (bench->parsed()) return do_bench(criterion);
    } catch (const CutInfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
