#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cresa/costs.hpp"
#include "cresa/distributions.hpp"
#include "cresa/estimators.hpp"

namespace cresa {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputSpec {
    std::string label;
    DistributionSpec dist;
};

/// Settings of the convergence-study subcommand: which estimate is tracked
/// and which input columns condition it.
struct ConvergeSpec {
    std::string quantity = "empirical_cre";
    std::vector<std::string> condition_on;
    std::vector<std::size_t> sizes;
    std::size_t repeats = 10;
};

struct ExperimentConfig {
    std::string model;
    std::vector<InputSpec> inputs;  // declaration order = model argument order
    std::size_t sample_size = 20000;
    std::uint64_t seed = 1;
    std::vector<std::string> methods;  // subset of kappa, kappa_pairs, sobol, delta, shannon_mi
    GridParams grid;
    std::size_t sobol_sample_size = 0;  // 0: same as sample_size
    std::size_t delta_partitions = 20;
    std::size_t delta_y_bins = 100;
    std::size_t mi_bins = 20;
    std::optional<CostSpec> cost;
    ConvergeSpec converge;
    std::string output_dir;  // empty: CRESA_OUTPUT_DIR or "."
    std::string output_basename = "report";

    bool has_method(std::string_view name) const;
};

/// Parses the INI-style experiment file (sections in brackets, key = value,
/// '#' comments; one [input.<label>] section per model argument).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");

/// Structural checks: known model, matching arity, known non-empty method
/// set, usable grid and sample sizes. Throws ConfigError.
void validate_config(const ExperimentConfig& config);

}  // namespace cresa
