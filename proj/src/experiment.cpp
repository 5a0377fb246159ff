#include "sqbench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "sqbench/svg.hpp"

namespace sqbench {

namespace fs = std::filesystem;
using nlohmann::json;

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Ame: return "ame";
        case ExperimentKind::Qed: return "qed";
        case ExperimentKind::I3: return "i3";
        case ExperimentKind::Crosstalk: return "crosstalk";
    }
    return "?";
}

ExperimentKind experiment_from_string(const std::string& s) {
    if (s == "ame") return ExperimentKind::Ame;
    if (s == "qed") return ExperimentKind::Qed;
    if (s == "i3") return ExperimentKind::I3;
    if (s == "crosstalk") return ExperimentKind::Crosstalk;
    throw std::invalid_argument("unknown experiment: " + s);
}

long ExperimentConfig::effective_trials() const {
    if (trials > 0) return trials;
    switch (experiment) {
        case ExperimentKind::Ame: return 10000;
        case ExperimentKind::Qed: return 20000;
        default: return 2000;
    }
}

void ExperimentConfig::validate() const {
    if (cg_variants.empty()) throw std::invalid_argument("no connectivity variants");
    if (cols_lo < 4 || cols_hi > 7 || cols_lo > cols_hi)
        throw std::invalid_argument("cols range must lie within [4, 7]");
    if (cycles_lo < 1 || cycles_hi > 10 || cycles_lo > cycles_hi)
        throw std::invalid_argument("cycles range must lie within [1, 10]");
    if (trials < 0) throw std::invalid_argument("trials must be >= 1");
    if (sabre_trials < 1) throw std::invalid_argument("sabre_trials must be >= 1");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    for (double r : crosstalk_rates)
        if (!(r >= 0.0 && r <= 0.1))
            throw std::invalid_argument("crosstalk rates must lie in [0, 0.1]");
    bool has_custom = std::find(cg_variants.begin(), cg_variants.end(),
                                CgVariant::Custom) != cg_variants.end();
    if (has_custom && !custom_cg_json)
        throw std::invalid_argument("custom variant requires custom_cg");
    q_params.validate();
    NoiseParamsTN tn = tn_params;
    tn.xi = 1.0;  // xi is filled per graph; validate the rest
    tn.validate();
    i3_partition.validate(kQedNumQubits);
    profile.validate();
}

namespace {

HardwareProfile profile_from_json(const json& j, HardwareProfile base) {
    auto get = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    get("t_1q_ns", base.t_1q_ns);
    get("t_shuttle_ns", base.t_shuttle_ns);
    get("t_2q_ns", base.t_2q_ns);
    get("t_meas_ns", base.t_meas_ns);
    get("t2_ns", base.t2_ns);
    get("f_1q", base.f_1q);
    get("f_shuttle", base.f_shuttle);
    get("f_2q", base.f_2q);
    get("f_meas", base.f_meas);
    return base;
}

std::pair<int, int> range_from_json(const json& j, const char* what) {
    if (j.is_number_integer()) {
        int v = j.get<int>();
        return {v, v};
    }
    if (j.is_array() && j.size() == 2)
        return {j.at(0).get<int>(), j.at(1).get<int>()};
    throw std::invalid_argument(std::string(what) + " must be an int or [lo, hi]");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.experiment = experiment_from_string(j.at("experiment").get<std::string>());
        if (j.contains("cg")) {
            cfg.cg_variants.clear();
            for (const auto& v : j.at("cg")) {
                std::string name =
                    v.is_number_integer() ? std::to_string(v.get<int>()) : v.get<std::string>();
                cfg.cg_variants.push_back(variant_from_string(name));
            }
        }
        if (j.contains("custom_cg")) cfg.custom_cg_json = j.at("custom_cg").dump();
        if (j.contains("cols"))
            std::tie(cfg.cols_lo, cfg.cols_hi) = range_from_json(j.at("cols"), "cols");
        if (j.contains("cycles"))
            std::tie(cfg.cycles_lo, cfg.cycles_hi) =
                range_from_json(j.at("cycles"), "cycles");
        if (j.contains("trials")) cfg.trials = j.at("trials").get<long>();
        if (j.contains("seed")) cfg.master_seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("sabre_trials")) cfg.sabre_trials = j.at("sabre_trials").get<int>();
        if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
        if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
        if (j.contains("hardware")) cfg.profile = profile_from_json(j.at("hardware"), {});
        if (j.contains("noise")) {
            const json& n = j.at("noise");
            if (n.contains("p1d")) cfg.q_params.p1d = n.at("p1d").get<double>();
            if (n.contains("p1r")) cfg.tn_params.p1r = n.at("p1r").get<double>();
            if (n.contains("tau1p") && !n.at("tau1p").is_null())
                cfg.tn_params.tau1p_override = n.at("tau1p").get<double>();
            if (n.contains("tn_rotation_scope")) {
                std::string scope = n.at("tn_rotation_scope").get<std::string>();
                if (scope == "operands")
                    cfg.tn_params.scope = RotationScope::Operands;
                else if (scope == "all")
                    cfg.tn_params.scope = RotationScope::AllQubits;
                else
                    throw std::invalid_argument("tn_rotation_scope must be operands|all");
            }
            if (n.contains("tn_post_measurement_noise"))
                cfg.tn_params.post_measurement_noise =
                    n.at("tn_post_measurement_noise").get<bool>();
            if (n.contains("crosstalk_rates"))
                cfg.crosstalk_rates = n.at("crosstalk_rates").get<std::vector<double>>();
        }
        if (j.contains("i3_partition")) {
            const json& p = j.at("i3_partition");
            cfg.i3_partition.a = p.at("a").get<std::vector<int>>();
            cfg.i3_partition.b = p.at("b").get<std::vector<int>>();
            cfg.i3_partition.c = p.at("c").get<std::vector<int>>();
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad config: ") + e.what());
    }
    cfg.q_params.profile = cfg.profile;
    cfg.tn_params.profile = cfg.profile;
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_json_text(text);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell_hash,
                          std::uint64_t trial) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ cell_hash);
    h = splitmix64(h ^ (trial + 0x9e3779b97f4a7c15ULL));
    return h;
}

std::uint64_t hash_cell(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
}

std::string format_csv_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

constexpr std::uint64_t kSabreTrialSentinel = ~std::uint64_t{0};

void csv_header(std::ostream& os) {
    os << "experiment,cg,cols,cycle,error_rate,metric,mean,std_error,shuttles,seed\n";
}

void csv_row(std::ostream& os, const ResultRow& r) {
    os << r.experiment << ',' << r.cg << ',' << r.cols << ',' << r.cycle << ','
       << format_csv_value(r.error_rate) << ',' << r.metric << ','
       << format_csv_value(r.mean) << ',' << format_csv_value(r.std_error) << ','
       << r.shuttles << ',' << r.seed << '\n';
}

struct MeanStdErr {
    double mean = 0.0;
    double std_error = 0.0;
};

// Compensated two-pass mean and standard error; summation order is fixed so
// that trial-level concurrency cannot change the result.
MeanStdErr aggregate(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double mean = sum / static_cast<double>(xs.size());
    if (xs.size() == 1) return {mean, 0.0};
    double var_sum = 0.0, var_comp = 0.0;
    for (double x : xs) {
        double d = (x - mean) * (x - mean) - var_comp;
        double t = var_sum + d;
        var_comp = (t - var_sum) - d;
        var_sum = t;
    }
    double var = var_sum / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

void parallel_for(long n, int threads, const std::function<void(long)>& body) {
    if (threads <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (long i; (i = next.fetch_add(1)) < n;) body(i);
        });
    for (auto& th : pool) th.join();
}

struct Cell {
    CgVariant variant;
    int cols = 0;
    int cycle = 0;  // 0 for the entanglement-generation sweep
};

struct CompiledCell {
    ConnectivityGraph cg;
    CompiledCircuit compiled;
    double esp_value = 0.0;
};

class EventSink {
public:
    explicit EventSink(const std::string& path) : out_(path) {
        out_ << "experiment,cg,cols,cycle,error_rate,trial,op_index,before,"
                "channel,kind,operands,angle\n";
    }
    void append(const ResultRow& context, std::span<const ErrorEvent> events) {
        for (const auto& e : events) {
            out_ << context.experiment << ',' << context.cg << ',' << context.cols
                 << ',' << context.cycle << ',' << format_csv_value(context.error_rate)
                 << ',' << e.trial << ',' << e.op_index << ',' << (e.before ? 1 : 0)
                 << ',' << channel_name(e.channel) << ',' << gate_name(e.kind) << ',';
            for (std::size_t i = 0; i < e.operands.size(); ++i)
                out_ << (i ? "|" : "") << 'q' << e.operands[i];
            out_ << ',' << format_csv_value(e.angle) << '\n';
        }
    }
    void flush() { out_.flush(); }

private:
    std::ofstream out_;
};

class Runner {
public:
    explicit Runner(const ExperimentConfig& cfg) : cfg_(cfg) {
        threads_ = cfg.threads == 0
                       ? static_cast<int>(std::thread::hardware_concurrency())
                       : cfg.threads;
        if (threads_ < 1) threads_ = 1;
    }

    ExperimentResult run() {
        fs::create_directories(cfg_.out_dir);
        const std::string results_path = cfg_.out_dir + "/results.csv";
        std::ofstream results(results_path);
        if (!results) throw std::runtime_error("cannot write " + results_path);
        csv_header(results);
        result_.files_written.push_back(results_path);

        if (cfg_.dump_events) {
            const std::string events_path = cfg_.out_dir + "/events.csv";
            events_ = std::make_unique<EventSink>(events_path);
            result_.files_written.push_back(events_path);
        }

        for (const Cell& cell : make_cells()) {
            std::vector<ResultRow> rows = run_cell(cell);
            for (const auto& row : rows) {
                csv_row(results, row);
                result_.rows.push_back(row);
            }
            results.flush();  // keep partial results on interrupt
            if (events_) events_->flush();
        }
        write_summaries();
        write_plots();
        return std::move(result_);
    }

private:
    std::vector<Cell> make_cells() const {
        std::vector<Cell> cells;
        const bool has_cycles = cfg_.experiment != ExperimentKind::Ame;
        for (CgVariant v : cfg_.cg_variants)
            for (int cols = cfg_.cols_lo; cols <= cfg_.cols_hi; ++cols) {
                if (!has_cycles) {
                    cells.push_back({v, cols, 0});
                    continue;
                }
                for (int cy = cfg_.cycles_lo; cy <= cfg_.cycles_hi; ++cy)
                    cells.push_back({v, cols, cy});
            }
        return cells;
    }

    ConnectivityGraph make_graph(const Cell& cell) const {
        if (cell.variant == CgVariant::Custom)
            return load_cg_json(*cfg_.custom_cg_json);
        return build_cg(cell.variant, cell.cols);
    }

    CompiledCell compile_cell(const Cell& cell, const Circuit& circuit,
                              std::uint64_t cell_id) const {
        ConnectivityGraph cg = make_graph(cell);
        std::uint64_t sabre_seed =
            derive_seed(cfg_.master_seed, cell_id, kSabreTrialSentinel);
        Placement placement =
            sabre_placement(circuit, cg, cfg_.sabre_trials, sabre_seed, cfg_.profile);
        CompiledCircuit compiled = route(circuit, cg, placement, sabre_seed, cfg_.profile);
        double e = esp(compiled, cfg_.profile);
        return {std::move(cg), std::move(compiled), e};
    }

    std::uint64_t cell_id(const Cell& cell, double rate, bool crosstalk) const {
        return hash_cell({static_cast<std::uint64_t>(cfg_.experiment),
                          static_cast<std::uint64_t>(cell.variant),
                          static_cast<std::uint64_t>(cell.cols),
                          static_cast<std::uint64_t>(cell.cycle),
                          static_cast<std::uint64_t>(std::llround(rate * 1e9)),
                          static_cast<std::uint64_t>(crosstalk ? 1 : 0)});
    }

    ResultRow base_row(const Cell& cell, double rate, long shuttles) const {
        ResultRow row;
        row.experiment = experiment_name(cfg_.experiment);
        row.cg = variant_name(cell.variant);
        row.cols = cell.cols;
        row.cycle = cell.cycle;
        row.error_rate = rate;
        row.shuttles = shuttles;
        row.seed = cfg_.master_seed;
        return row;
    }

    std::vector<ResultRow> run_cell(const Cell& cell) {
        switch (cfg_.experiment) {
            case ExperimentKind::Ame: return run_ame_cell(cell);
            case ExperimentKind::Qed: return run_qed_cell(cell);
            case ExperimentKind::I3: return run_i3_cell(cell, cfg_.tn_params.p1r, false);
            case ExperimentKind::Crosstalk: return run_crosstalk_cell(cell);
        }
        return {};
    }

    std::vector<ResultRow> run_ame_cell(const Cell& cell) {
        const Circuit circuit = ame62_circuit();
        const std::uint64_t id = cell_id(cell, cfg_.q_params.p1d, false);
        CompiledCell cc = compile_cell(cell, circuit, id);
        const StabilizerGroup group = ame62_group();
        const long trials = cfg_.effective_trials();
        std::vector<double> bell(static_cast<std::size_t>(trials));
        run_trials(trials, id, [&](long t, Rng& rng, std::vector<ErrorEvent>* log) {
            DepolarizingNoise noise(cfg_.q_params);
            TrajectoryResult r = run_trajectory(circuit.n_qubits, cc.compiled.ops,
                                                noise, rng, log != nullptr,
                                                static_cast<int>(t));
            bell[static_cast<std::size_t>(t)] = bell_expectation(r.state, group);
            if (log) *log = std::move(r.events);
        }, cell, cfg_.q_params.p1d);

        MeanStdErr agg = aggregate(bell);
        std::vector<ResultRow> rows;
        ResultRow row = base_row(cell, cfg_.q_params.p1d, cc.compiled.shuttle_count);
        row.metric = "bell";
        row.mean = agg.mean;
        row.std_error = agg.std_error;
        rows.push_back(row);
        row.metric = "esp";
        row.mean = cc.esp_value;
        row.std_error = 0.0;
        rows.push_back(row);
        return rows;
    }

    std::vector<ResultRow> run_qed_cell(const Cell& cell) {
        const Circuit circuit = qed412_circuit(cell.cycle);
        const std::uint64_t id = cell_id(cell, cfg_.q_params.p1d, false);
        CompiledCell cc = compile_cell(cell, circuit, id);
        const long trials = cfg_.effective_trials();
        std::vector<int> classes(static_cast<std::size_t>(trials));
        run_trials(trials, id, [&](long t, Rng& rng, std::vector<ErrorEvent>* log) {
            DepolarizingNoise noise(cfg_.q_params);
            TrajectoryResult r = run_trajectory(circuit.n_qubits, cc.compiled.ops,
                                                noise, rng, log != nullptr,
                                                static_cast<int>(t));
            SyndromeRecord rec = syndromes_from_outcomes(r.measurements);
            classes[static_cast<std::size_t>(t)] =
                static_cast<int>(classify_syndrome(rec.final_syndrome()));
            if (log) *log = std::move(r.events);
        }, cell, cfg_.q_params.p1d);

        auto rate_of = [&](SyndromeClass cls) {
            long hits = std::count(classes.begin(), classes.end(), static_cast<int>(cls));
            double p = static_cast<double>(hits) / static_cast<double>(trials);
            double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
            return MeanStdErr{p, se};
        };

        std::vector<ResultRow> rows;
        ResultRow row = base_row(cell, cfg_.q_params.p1d, cc.compiled.shuttle_count);
        auto push = [&rows, &row](const char* metric, MeanStdErr v) {
            row.metric = metric;
            row.mean = v.mean;
            row.std_error = v.std_error;
            rows.push_back(row);
        };
        push("ps", rate_of(SyndromeClass::Success));
        push("rate_x", rate_of(SyndromeClass::ErrorX));
        push("rate_y", rate_of(SyndromeClass::ErrorY));
        push("rate_z", rate_of(SyndromeClass::ErrorZ));
        push("rate_other", rate_of(SyndromeClass::Other));
        push("esp", {cc.esp_value, 0.0});
        return rows;
    }

    std::vector<ResultRow> run_i3_cell(const Cell& cell, double p1r, bool crosstalk,
                                       const CompiledCell* precompiled = nullptr) {
        const Circuit circuit = qed412_circuit(cell.cycle);
        const std::uint64_t id = cell_id(cell, p1r, crosstalk);
        CompiledCell local = precompiled
                                 ? CompiledCell{*precompiled}
                                 : compile_cell(cell, circuit,
                                                cell_id(cell, cfg_.tn_params.p1r, false));
        NoiseParamsTN params = cfg_.tn_params;
        params.p1r = p1r;
        params.crosstalk = crosstalk;
        params.xi = local.cg.average_degree();
        params.validate();

        const long trials = cfg_.effective_trials();
        std::vector<double> i3(static_cast<std::size_t>(trials));
        run_trials(trials, id, [&](long t, Rng& rng, std::vector<ErrorEvent>* log) {
            RotationNoise noise(params);
            TrajectoryResult r = run_trajectory(circuit.n_qubits, local.compiled.ops,
                                                noise, rng, log != nullptr,
                                                static_cast<int>(t));
            i3[static_cast<std::size_t>(t)] = tripartite_mi(r.state, cfg_.i3_partition);
            if (log) *log = std::move(r.events);
        }, cell, p1r);

        MeanStdErr agg = aggregate(i3);
        ResultRow row = base_row(cell, p1r, local.compiled.shuttle_count);
        row.metric = crosstalk ? "i3_xt" : "i3";
        row.mean = agg.mean;
        row.std_error = agg.std_error;
        return {row};
    }

    std::vector<ResultRow> run_crosstalk_cell(const Cell& cell) {
        const Circuit circuit = qed412_circuit(cell.cycle);
        CompiledCell cc =
            compile_cell(cell, circuit, cell_id(cell, cfg_.tn_params.p1r, false));
        std::vector<ResultRow> rows;
        for (double rate : cfg_.crosstalk_rates)
            for (bool xt : {false, true}) {
                auto cell_rows = run_i3_cell(cell, rate, xt, &cc);
                rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
            }
        return rows;
    }

    // Fan the trial loop out over the worker pool. Each trial draws an
    // independent seeded stream; outputs land in per-trial slots so the
    // schedule cannot affect any result.
    void run_trials(long trials, std::uint64_t cell_hash_value,
                    const std::function<void(long, Rng&, std::vector<ErrorEvent>*)>& body,
                    const Cell& cell, double rate) {
        std::vector<std::vector<ErrorEvent>> event_logs;
        const bool record = events_ != nullptr;
        if (record) event_logs.resize(static_cast<std::size_t>(trials));
        parallel_for(trials, threads_, [&](long t) {
            Rng rng(derive_seed(cfg_.master_seed, cell_hash_value,
                                static_cast<std::uint64_t>(t)));
            body(t, rng, record ? &event_logs[static_cast<std::size_t>(t)] : nullptr);
        });
        if (record) {
            ResultRow context = base_row(cell, rate, 0);
            for (long t = 0; t < trials; ++t)
                events_->append(context, event_logs[static_cast<std::size_t>(t)]);
        }
    }

    // Cycle-averaged view: one line per (cg, cols). Size-averaged view: one
    // line per (cg, cycle).
    void write_summaries() {
        if (result_.rows.empty()) return;
        struct Key {
            std::string cg;
            int group = 0;
            std::string metric;
            double rate = 0.0;
            bool operator<(const Key& o) const {
                return std::tie(cg, group, metric, rate) <
                       std::tie(o.cg, o.group, o.metric, o.rate);
            }
        };
        auto summarize = [&](auto group_of, const std::string& path,
                             const char* group_col) {
            std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
            for (const auto& r : result_.rows) {
                Key k{r.cg, group_of(r), r.metric, r.error_rate};
                groups[k].first.push_back(r.mean);
                groups[k].second.push_back(static_cast<double>(r.shuttles));
            }
            std::ofstream out(path);
            out << "experiment,cg," << group_col << ",error_rate,metric,mean,shuttles\n";
            for (const auto& [k, vals] : groups) {
                out << experiment_name(cfg_.experiment) << ',' << k.cg << ','
                    << k.group << ',' << format_csv_value(k.rate) << ',' << k.metric
                    << ',' << format_csv_value(aggregate(vals.first).mean) << ','
                    << format_csv_value(aggregate(vals.second).mean) << '\n';
            }
            result_.files_written.push_back(path);
        };
        if (cfg_.experiment == ExperimentKind::Ame) {
            summarize([](const ResultRow& r) { return r.cols; },
                      cfg_.out_dir + "/summary_by_size.csv", "cols");
            summarize([](const ResultRow&) { return 0; },
                      cfg_.out_dir + "/summary_by_cg.csv", "all_sizes");
            return;
        }
        summarize([](const ResultRow& r) { return r.cols; },
                  cfg_.out_dir + "/summary_by_size.csv", "cols");
        summarize([](const ResultRow& r) { return r.cycle; },
                  cfg_.out_dir + "/summary_by_cycle.csv", "cycle");
    }

    void write_plots() {
        std::vector<std::string> metrics;
        for (const auto& r : result_.rows)
            if (std::find(metrics.begin(), metrics.end(), r.metric) == metrics.end())
                metrics.push_back(r.metric);

        for (const std::string& metric : metrics) {
            for (double rate : distinct_rates(metric)) {
                emit_metric_plot(metric, rate, /*vs_cycle=*/false);
                if (cfg_.experiment != ExperimentKind::Ame)
                    emit_metric_plot(metric, rate, /*vs_cycle=*/true);
            }
        }
    }

    std::vector<double> distinct_rates(const std::string& metric) const {
        std::vector<double> rates;
        for (const auto& r : result_.rows)
            if (r.metric == metric &&
                std::find(rates.begin(), rates.end(), r.error_rate) == rates.end())
                rates.push_back(r.error_rate);
        return rates;
    }

    void emit_metric_plot(const std::string& metric, double rate, bool vs_cycle) {
        // Average the orthogonal axis away, one series per connectivity graph.
        std::map<std::string, std::map<int, std::vector<double>>> grouped;
        bool any_value = false;
        for (const auto& r : result_.rows) {
            if (r.metric != metric || r.error_rate != rate) continue;
            int x = vs_cycle ? r.cycle : r.cols;
            grouped[r.cg][x].push_back(r.mean);
            if (std::isfinite(r.mean)) any_value = true;
        }
        if (grouped.empty() || !any_value) {
            std::cerr << "plot skipped: no data for metric " << metric << "\n";
            return;
        }
        std::vector<PlotSeries> series;
        for (const auto& [cg, by_x] : grouped) {
            PlotSeries s;
            s.label = cg;
            for (const auto& [x, vals] : by_x)
                s.points.push_back({static_cast<double>(x), aggregate(vals).mean});
            series.push_back(std::move(s));
        }
        PlotOptions opts;
        opts.xlabel = vs_cycle ? "cycles" : "array columns";
        opts.ylabel = metric;
        opts.zero_line = metric.rfind("i3", 0) == 0;
        char rate_tag[32] = "";
        if (cfg_.experiment == ExperimentKind::Crosstalk)
            std::snprintf(rate_tag, sizeof rate_tag, "_r%g", rate);
        opts.title = std::string(experiment_name(cfg_.experiment)) + ": " + metric +
                     (vs_cycle ? " vs cycles (size-averaged)"
                               : " vs array size (cycle-averaged)") +
                     rate_tag;
        std::string path = cfg_.out_dir + "/" + experiment_name(cfg_.experiment) + "_" +
                           metric + rate_tag + (vs_cycle ? "_vs_cycle" : "_vs_size") +
                           ".svg";
        std::ofstream out(path);
        out << render_line_chart(series, opts);
        result_.files_written.push_back(path);
    }

    const ExperimentConfig& cfg_;
    int threads_ = 1;
    ExperimentResult result_;
    std::unique_ptr<EventSink> events_;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    Runner runner(cfg);
    return runner.run();
}

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    csv_header(out);
    for (const auto& r : rows) csv_row(out, r);
}

}  // namespace sqbench
