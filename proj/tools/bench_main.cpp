#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqbench/bench.hpp"
#include "sqbench/compile.hpp"
#include "sqbench/experiment.hpp"

namespace {

constexpr int kExitConfigError = 2;

int run_command(const std::string& config_path, const std::string& out_override,
                int threads_override, bool dump_events) {
    sqbench::ExperimentConfig cfg;
    try {
        cfg = sqbench::ExperimentConfig::from_json_file(config_path);
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (threads_override >= 0) cfg.threads = threads_override;
        cfg.dump_events = cfg.dump_events || dump_events;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
    sqbench::ExperimentResult result = sqbench::run_experiment(cfg);
    std::cout << "wrote " << result.rows.size() << " result rows\n";
    for (const auto& f : result.files_written) std::cout << "  " << f << "\n";
    return 0;
}

int compile_command(const std::string& cg_name, const std::string& cg_file, int cols,
                    int trials, std::uint64_t seed, const std::string& circuit_path,
                    const std::string& builtin, int cycles) {
    using namespace sqbench;
    try {
        Circuit circuit;
        if (!builtin.empty()) {
            if (builtin == "ame")
                circuit = ame62_circuit();
            else if (builtin == "qed")
                circuit = qed412_circuit(cycles);
            else
                throw std::invalid_argument("unknown builtin circuit: " + builtin);
        } else if (!circuit_path.empty()) {
            std::ifstream in(circuit_path);
            if (!in) throw std::invalid_argument("cannot open circuit: " + circuit_path);
            std::stringstream buf;
            buf << in.rdbuf();
            circuit = parse_circuit(buf.str());
        } else {
            throw std::invalid_argument("pass --circuit FILE or --builtin {ame,qed}");
        }

        CgVariant variant = variant_from_string(cg_name);
        ConnectivityGraph cg = [&]() {
            if (variant != CgVariant::Custom) return build_cg(variant, cols);
            if (cg_file.empty())
                throw std::invalid_argument("--cg custom requires --cg-file");
            std::ifstream in(cg_file);
            if (!in) throw std::invalid_argument("cannot open cg file: " + cg_file);
            std::stringstream buf;
            buf << in.rdbuf();
            return load_cg_json(buf.str());
        }();

        Placement placement = sabre_placement(circuit, cg, trials, seed);
        CompiledCircuit compiled = route(circuit, cg, placement, seed);
        AuditResult audit = audit_stream(circuit, compiled, cg);
        if (!audit.ok) throw std::runtime_error("internal audit failed: " + audit.message);

        std::cout << "# compiled stream (" << variant_name(cg.variant()) << ", 2x"
                  << cg.grid().cols << ")\n";
        std::cout << "# placement:";
        for (int q = 0; q < compiled.n_qubits; ++q)
            std::cout << " q" << q << "=" << to_string(compiled.initial_placement.dot_of[q]);
        std::cout << "\n";
        for (const auto& op : compiled.ops) std::cout << format_operation(op) << "\n";

        nlohmann::json summary = {
            {"shuttles", compiled.shuttle_count},
            {"duration_ns", compiled.duration_ns},
        };
        std::cout << summary.dump() << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bilinear spin-qubit array benchmarking toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = -1;
    bool dump_events = false;
    CLI::App* run = app.add_subcommand("run", "Run a configured experiment sweep");
    run->add_option("--config", config_path, "Experiment config JSON")->required();
    run->add_option("--out", out_dir, "Output directory (overrides config)");
    run->add_option("--threads", threads, "Worker threads (0 = all cores)");
    run->add_flag("--dump-events", dump_events, "Write per-trial error events CSV");

    std::string cg_name = "2", cg_file, circuit_path, builtin;
    int cols = 4, trials = 10, cycles = 1;
    std::uint64_t seed = 1;
    CLI::App* compile =
        app.add_subcommand("compile", "Place and route a circuit onto an array");
    compile->add_option("--cg", cg_name, "Connectivity graph: 1, 2, 3 or custom");
    compile->add_option("--cg-file", cg_file, "Custom connectivity JSON file");
    compile->add_option("--cols", cols, "Array columns in [4, 7]");
    compile->add_option("--trials", trials, "Placement search trials");
    compile->add_option("--seed", seed, "Placement search seed");
    compile->add_option("--circuit", circuit_path, "Circuit text file");
    compile->add_option("--builtin", builtin, "Built-in circuit: ame or qed");
    compile->add_option("--cycles", cycles, "Cycles for the qed builtin");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_command(config_path, out_dir, threads, dump_events);
        return compile_command(cg_name, cg_file, cols, trials, seed, circuit_path,
                               builtin, cycles);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
