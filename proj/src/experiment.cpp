#include "cresa/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cresa/models.hpp"

namespace cresa {

namespace {

using ordered_json = nlohmann::ordered_json;

// Stream tags keep the per-purpose substreams apart: input columns use the
// bare column index, the pick-freeze design and convergence repeats get
// their own offsets.
constexpr std::uint64_t kSobolStreamTag = 0x536f626f6cULL;
constexpr std::uint64_t kConvergeStreamTag = 0x436f6e76ULL;

SampleMatrix build_wave(const ExperimentConfig& config, const ModelFn& model,
                        std::size_t n, RngSeed seed) {
    SampleMatrix matrix;
    matrix.labels.reserve(config.inputs.size());
    matrix.inputs.reserve(config.inputs.size());
    for (std::size_t j = 0; j < config.inputs.size(); ++j) {
        matrix.labels.push_back(config.inputs[j].label);
        matrix.inputs.push_back(sample(config.inputs[j].dist, n, derive_stream(seed, j)));
    }
    matrix.output = evaluate_model(model, matrix.inputs);
    matrix.validate();
    return matrix;
}

double round_trip_ms(std::chrono::steady_clock::time_point start) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double, std::milli>(elapsed).count();
}

void format_double(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    os << buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& payload) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << payload;
    }
    std::filesystem::rename(tmp, path);
}

void append_column(ordered_json& row, const char* name, const MethodColumn& col,
                   std::size_t i) {
    if (!col.present) return;
    row[name] = col.values[i];
    row[std::string(name) + "_rank"] = col.ranks[i];
}

std::size_t index_of_label(const std::vector<InputSpec>& inputs, const std::string& label) {
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (inputs[i].label == label) return i;
    throw ConfigError("config: unknown input label '" + label + "'");
}

}  // namespace

std::vector<int> rank_descending(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<int> ranks(values.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        ranks[order[pos]] = static_cast<int>(pos + 1);
    return ranks;
}

SensitivityReport run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();
    const ModelFn& model = *find_model(config.model);

    SensitivityReport report;
    report.model = config.model;
    report.sample_size = config.sample_size;
    report.seed = config.seed;
    report.grid = config.grid;
    report.methods = config.methods;
    for (const auto& input : config.inputs) report.labels.push_back(input.label);

    const bool wants_kappa = config.has_method("kappa") || config.has_method("kappa_pairs");
    const bool wants_given_data =
        wants_kappa || config.has_method("delta") || config.has_method("shannon_mi");

    SampleMatrix wave;
    if (wants_given_data)
        wave = build_wave(config, model, config.sample_size, RngSeed{config.seed});

    if (wants_kappa) {
        auto decomposition = decompose(wave, config.grid, RngSeed{config.seed},
                                       config.has_method("kappa_pairs"));
        report.kappa.present = true;
        report.kappa.values = decomposition.kappa_single;
        report.kappa.ranks = rank_descending(report.kappa.values);
        report.decomposition = std::move(decomposition);
    }
    if (config.has_method("delta")) {
        report.delta.present = true;
        report.delta_partitions = config.delta_partitions;
        report.delta_y_bins = config.delta_y_bins;
        for (std::size_t i = 0; i < config.inputs.size(); ++i)
            report.delta.values.push_back(
                delta_index(wave, i, config.delta_partitions, config.delta_y_bins));
        report.delta.ranks = rank_descending(report.delta.values);
    }
    if (config.has_method("shannon_mi")) {
        report.shannon.present = true;
        report.mi_bins = config.mi_bins;
        for (std::size_t i = 0; i < config.inputs.size(); ++i)
            report.shannon.values.push_back(shannon_mi(wave, i, config.mi_bins));
        report.shannon.ranks = rank_descending(report.shannon.values);
    }
    if (config.has_method("sobol")) {
        std::vector<DistributionSpec> specs;
        for (const auto& input : config.inputs) specs.push_back(input.dist);
        const std::size_t n_sobol =
            config.sobol_sample_size ? config.sobol_sample_size : config.sample_size;
        const auto sobol = sobol_indices(model, specs, n_sobol,
                                         derive_stream(RngSeed{config.seed}, kSobolStreamTag));
        report.sobol_sample_size = n_sobol;
        report.sobol_main.present = report.sobol_total.present = true;
        report.sobol_main.values = sobol.main_effect;
        report.sobol_total.values = sobol.total_effect;
        report.sobol_main.ranks = rank_descending(sobol.main_effect);
        report.sobol_total.ranks = rank_descending(sobol.total_effect);
    }
    if (config.cost) {
        if (!report.decomposition)
            throw ConfigError("config: the cost section needs the kappa method");
        std::vector<DistributionSpec> specs;
        std::vector<double> magnitudes;
        for (std::size_t i = 0; i < config.inputs.size(); ++i) {
            specs.push_back(config.inputs[i].dist);
            magnitudes.push_back(empirical_cre(wave.inputs[i]));
        }
        report.cost_table =
            strategy_table(specs, *report.decomposition, *config.cost, &magnitudes);
    }

    report.wall_seconds = round_trip_ms(start) / 1000.0;
    return report;
}

namespace {

std::string indices_csv(const SensitivityReport& report) {
    std::ostringstream os;
    os << "variable";
    const auto header = [&](const char* name, const MethodColumn& col) {
        if (col.present) os << ',' << name << ',' << name << "_rank";
    };
    header("S", report.sobol_main);
    header("ST", report.sobol_total);
    header("delta", report.delta);
    header("eta", report.shannon);
    header("kappa", report.kappa);
    os << '\n';
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
        os << report.labels[i];
        const auto cell = [&](const MethodColumn& col) {
            if (!col.present) return;
            os << ',';
            format_double(os, col.values[i]);
            os << ',' << col.ranks[i];
        };
        cell(report.sobol_main);
        cell(report.sobol_total);
        cell(report.delta);
        cell(report.shannon);
        cell(report.kappa);
        os << '\n';
    }
    return os.str();
}

std::string decomposition_csv(const SensitivityReport& report) {
    const DecompositionResult& d = *report.decomposition;
    std::ostringstream os;
    os << "term,value,raw\n";
    os << "total_cre,";
    format_double(os, d.total_cre);
    os << ',';
    format_double(os, d.total_cre);
    os << '\n';
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
        os << "kappa[" << d.labels[i] << "],";
        format_double(os, d.kappa_single[i]);
        os << ',';
        format_double(os, d.kappa_single_raw[i]);
        os << '\n';
    }
    for (const auto& pair : d.kappa_pair) {
        os << "kappa[" << d.labels[pair.i] << ',' << d.labels[pair.j] << "],";
        format_double(os, pair.value);
        os << ',';
        format_double(os, pair.raw);
        os << '\n';
    }
    os << "higher_order_residual,";
    format_double(os, d.higher_order_residual);
    os << ',';
    format_double(os, d.higher_order_residual_raw);
    os << '\n';
    return os.str();
}

std::string cost_csv(const SensitivityReport& report) {
    std::ostringstream os;
    os << "variable,cre_magnitude,relative_uncertainty,cost,kappa\n";
    for (const auto& row : report.cost_table->rows) {
        os << row.label << ',';
        format_double(os, row.magnitude);
        os << ',';
        format_double(os, row.relative_uncertainty);
        os << ',';
        format_double(os, row.cost);
        os << ',';
        format_double(os, row.kappa);
        os << '\n';
    }
    os << "recommendation," << report.cost_table->recommendation << ",,,\n";
    return os.str();
}

ordered_json report_json(const SensitivityReport& report) {
    ordered_json meta;
    meta["model"] = report.model;
    meta["samples"] = report.sample_size;
    meta["seed"] = report.seed;
    meta["grid"] = {{"m", report.grid.m}, {"i", report.grid.grid_i}, {"j", report.grid.grid_j}};
    meta["methods"] = report.methods;
    if (report.sobol_main.present) meta["sobol_samples"] = report.sobol_sample_size;
    if (report.delta.present)
        meta["delta"] = {{"partitions", report.delta_partitions},
                         {"y_bins", report.delta_y_bins}};
    if (report.shannon.present) meta["shannon_mi"] = {{"bins", report.mi_bins}};

    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
        ordered_json row;
        row["variable"] = report.labels[i];
        append_column(row, "S", report.sobol_main, i);
        append_column(row, "ST", report.sobol_total, i);
        append_column(row, "delta", report.delta, i);
        append_column(row, "eta", report.shannon, i);
        append_column(row, "kappa", report.kappa, i);
        rows.push_back(std::move(row));
    }

    ordered_json doc;
    doc["metadata"] = std::move(meta);
    doc["indices"] = std::move(rows);

    if (report.decomposition) {
        const DecompositionResult& d = *report.decomposition;
        ordered_json dec;
        dec["total_cre"] = d.total_cre;
        ordered_json singles = ordered_json::array();
        for (std::size_t i = 0; i < d.labels.size(); ++i)
            singles.push_back({{"variable", d.labels[i]},
                               {"kappa", d.kappa_single[i]},
                               {"raw", d.kappa_single_raw[i]}});
        dec["singles"] = std::move(singles);
        ordered_json pairs = ordered_json::array();
        for (const auto& pair : d.kappa_pair)
            pairs.push_back({{"variables", {d.labels[pair.i], d.labels[pair.j]}},
                             {"kappa", pair.value},
                             {"raw", pair.raw}});
        dec["pairs"] = std::move(pairs);
        dec["higher_order_residual"] = d.higher_order_residual;
        dec["higher_order_residual_raw"] = d.higher_order_residual_raw;
        doc["decomposition"] = std::move(dec);
    }
    if (report.cost_table) {
        ordered_json cost;
        ordered_json rows_json = ordered_json::array();
        for (const auto& row : report.cost_table->rows)
            rows_json.push_back({{"variable", row.label},
                                 {"cre_magnitude", row.magnitude},
                                 {"relative_uncertainty", row.relative_uncertainty},
                                 {"cost", row.cost},
                                 {"kappa", row.kappa}});
        cost["rows"] = std::move(rows_json);
        cost["recommendation"] = report.cost_table->recommendation;
        doc["cost"] = std::move(cost);
    }
    return doc;
}

}  // namespace

std::vector<std::string> write_report(const SensitivityReport& report, const std::string& dir,
                                      const std::string& basename) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path root = std::filesystem::path(dir) / basename;
    std::vector<std::string> written;

    write_atomic(root.string() + ".json", report_json(report).dump(2) + "\n");
    written.push_back(root.string() + ".json");
    write_atomic(root.string() + "_indices.csv", indices_csv(report));
    written.push_back(root.string() + "_indices.csv");
    if (report.decomposition) {
        write_atomic(root.string() + "_decomposition.csv", decomposition_csv(report));
        written.push_back(root.string() + "_decomposition.csv");
    }
    if (report.cost_table) {
        write_atomic(root.string() + "_cost.csv", cost_csv(report));
        written.push_back(root.string() + "_cost.csv");
    }
    return written;
}

std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& config) {
    validate_config(config);
    const ModelFn& model = *find_model(config.model);
    const ConvergeSpec& study = config.converge;
    if (study.sizes.empty()) throw ConfigError("converge: no sizes given");
    if (!std::is_sorted(study.sizes.begin(), study.sizes.end()))
        throw ConfigError("converge: sizes must be ascending");
    if (study.repeats < 1) throw ConfigError("converge: repeats must be >= 1");

    std::vector<std::size_t> cond_indices;
    for (const auto& label : study.condition_on)
        cond_indices.push_back(index_of_label(config.inputs, label));
    if (study.quantity == "empirical_cre") {
        if (!cond_indices.empty())
            throw ConfigError("converge: empirical_cre takes no conditioning inputs");
    } else if (study.quantity == "conditional_cre_1") {
        if (cond_indices.size() != 1)
            throw ConfigError("converge: conditional_cre_1 needs one conditioning input");
    } else if (study.quantity == "conditional_cre_2") {
        if (cond_indices.size() != 2)
            throw ConfigError("converge: conditional_cre_2 needs two conditioning inputs");
    } else {
        throw ConfigError("converge: unknown quantity '" + study.quantity + "'");
    }

    std::vector<ConvergenceRow> rows;
    rows.reserve(study.sizes.size());
    const RngSeed study_seed = derive_stream(RngSeed{config.seed}, kConvergeStreamTag);
    for (std::size_t s = 0; s < study.sizes.size(); ++s) {
        const std::size_t n = study.sizes[s];
        if (n < 2) throw ConfigError("converge: sizes must be >= 2");
        std::vector<double> estimates;
        estimates.reserve(study.repeats);
        double ms_total = 0.0;
        for (std::size_t r = 0; r < study.repeats; ++r) {
            const RngSeed rep_seed = derive_stream(study_seed, s * study.repeats + r);
            const SampleMatrix wave = build_wave(config, model, n, rep_seed);
            const auto t0 = std::chrono::steady_clock::now();
            double estimate = 0.0;
            if (study.quantity == "empirical_cre") {
                estimate = empirical_cre(wave.output);
            } else if (study.quantity == "conditional_cre_1") {
                estimate = conditional_cre_1(wave.inputs[cond_indices[0]], wave.output,
                                             std::min(config.grid.m, n));
            } else {
                estimate = conditional_cre_2(wave.inputs[cond_indices[0]],
                                             wave.inputs[cond_indices[1]], wave.output,
                                             config.grid.grid_i, config.grid.grid_j);
            }
            ms_total += round_trip_ms(t0);
            estimates.push_back(estimate);
        }
        ConvergenceRow row;
        row.size = n;
        row.mean = std::accumulate(estimates.begin(), estimates.end(), 0.0) /
                   static_cast<double>(estimates.size());
        double ss = 0.0;
        for (double e : estimates) ss += (e - row.mean) * (e - row.mean);
        row.spread = estimates.size() > 1
                         ? std::sqrt(ss / static_cast<double>(estimates.size() - 1))
                         : 0.0;
        row.mean_ms = ms_total / static_cast<double>(study.repeats);
        rows.push_back(row);
    }
    return rows;
}

std::string write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                                  const ExperimentConfig& config, const std::string& dir,
                                  const std::string& basename) {
    std::filesystem::create_directories(dir);
    std::ostringstream os;
    os << "# model=" << config.model << " quantity=" << config.converge.quantity;
    if (!config.converge.condition_on.empty()) {
        os << " condition_on=";
        for (std::size_t i = 0; i < config.converge.condition_on.size(); ++i)
            os << (i ? "+" : "") << config.converge.condition_on[i];
    }
    os << " m=" << config.grid.m << " i=" << config.grid.grid_i << " j=" << config.grid.grid_j
       << " seed=" << config.seed << " repeats=" << config.converge.repeats << '\n';
    os << "size,mean,sd,mean_ms\n";
    for (const auto& row : rows) {
        os << row.size << ',';
        format_double(os, row.mean);
        os << ',';
        format_double(os, row.spread);
        os << ',';
        format_double(os, row.mean_ms);
        os << '\n';
    }
    const std::filesystem::path path =
        std::filesystem::path(dir) / (basename + "_convergence.csv");
    write_atomic(path, os.str());
    return path.string();
}

std::string resolve_output_dir(const ExperimentConfig& config) {
    if (!config.output_dir.empty()) return config.output_dir;
    if (const char* env = std::getenv("CRESA_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

}  // namespace cresa
