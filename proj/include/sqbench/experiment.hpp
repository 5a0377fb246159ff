#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqbench/arch.hpp"
#include "sqbench/bench.hpp"
#include "sqbench/compile.hpp"
#include "sqbench/noise.hpp"

namespace sqbench {

enum class ExperimentKind { Ame, Qed, I3, Crosstalk };

const char* experiment_name(ExperimentKind k);
ExperimentKind experiment_from_string(const std::string& s);

// Monte Carlo sweep description. Loaded from JSON; see the repository README
// for the schema.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Qed;
    std::vector<CgVariant> cg_variants = {CgVariant::CG1, CgVariant::CG2,
                                          CgVariant::CG3};
    std::optional<std::string> custom_cg_json;  // required when variants include Custom
    int cols_lo = 4, cols_hi = 7;
    int cycles_lo = 1, cycles_hi = 10;
    long trials = 0;  // 0 selects the per-experiment default
    std::uint64_t master_seed = 1;
    int sabre_trials = 5;
    int threads = 1;
    std::string out_dir = "results";
    bool dump_events = false;

    NoiseParamsQ q_params;
    NoiseParamsTN tn_params;
    std::vector<double> crosstalk_rates = {0.01, 0.03, 0.05, 0.08};
    HardwareProfile profile;
    I3Partition i3_partition = default_qed_partition();

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);

    long effective_trials() const;
    void validate() const;  // throws std::invalid_argument
};

// One aggregated measurement. `cycle` is 0 where cycles do not apply;
// crosstalk-enabled sweeps use the metric name suffix "_xt".
struct ResultRow {
    std::string experiment;
    std::string cg;
    int cols = 0;
    int cycle = 0;
    double error_rate = 0.0;
    std::string metric;
    double mean = 0.0;
    double std_error = 0.0;
    long shuttles = 0;
    std::uint64_t seed = 0;
};

// Collision-resistant 64-bit mixing of (master seed, cell, trial).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell_hash,
                          std::uint64_t trial);
std::uint64_t hash_cell(std::initializer_list<std::uint64_t> parts);

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<std::string> files_written;
};

// Run the configured sweep: compile once per cell, fan trials out over
// threads with per-trial derived seeds, and write results.csv plus the
// cycle- and size-averaged summary CSVs and SVG charts under out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string format_csv_value(double v);  // 9 significant digits
void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);

}  // namespace sqbench
