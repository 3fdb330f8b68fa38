#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cresa/baselines.hpp"
#include "cresa/config.hpp"
#include "cresa/costs.hpp"
#include "cresa/importance.hpp"

namespace cresa {

/// One per-input index column plus its rank order (1 = most important).
struct MethodColumn {
    bool present = false;
    std::vector<double> values;
    std::vector<int> ranks;
};

/// Everything one experiment produces: the Table-2/4/6 shaped index block,
/// the optional decomposition and cost sections, and the settings needed to
/// replay the run. Wall time is reported on stdout only so that rerunning
/// an identical config rewrites identical report bytes.
struct SensitivityReport {
    std::vector<std::string> labels;
    MethodColumn sobol_main;
    MethodColumn sobol_total;
    MethodColumn delta;
    MethodColumn shannon;
    MethodColumn kappa;
    std::optional<DecompositionResult> decomposition;
    std::optional<CostResult> cost_table;

    std::string model;
    std::size_t sample_size = 0;
    std::uint64_t seed = 0;
    GridParams grid;
    std::size_t sobol_sample_size = 0;
    std::size_t delta_partitions = 0;
    std::size_t delta_y_bins = 0;
    std::size_t mi_bins = 0;
    std::vector<std::string> methods;
    double wall_seconds = 0.0;
};

/// Ranks by descending value; ties resolve to the earlier column.
std::vector<int> rank_descending(const std::vector<double>& values);

/// Builds the shared given-data wave (one column stream per input), runs
/// every requested method, and assembles the report.
SensitivityReport run_experiment(const ExperimentConfig& config);

/// Writes <basename>.json plus <basename>_indices.csv (and _decomposition /
/// _cost CSVs when those sections exist) atomically under dir.
/// Returns the written file paths.
std::vector<std::string> write_report(const SensitivityReport& report,
                                      const std::string& dir, const std::string& basename);

struct ConvergenceRow {
    std::size_t size = 0;
    double mean = 0.0;
    double spread = 0.0;   // sample sd over repeats
    double mean_ms = 0.0;  // mean wall time of one estimate
};

/// Repeated estimation at growing sample sizes for the configured quantity
/// (empirical CRE of the output, or a conditional CRE given one or two
/// named inputs).
std::vector<ConvergenceRow> convergence_study(const ExperimentConfig& config);

/// Writes the study as <basename>_convergence.csv under dir.
std::string write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                                  const ExperimentConfig& config, const std::string& dir,
                                  const std::string& basename);

/// Output directory resolution: config value, else $CRESA_OUTPUT_DIR, else ".".
std::string resolve_output_dir(const ExperimentConfig& config);

}  // namespace cresa
