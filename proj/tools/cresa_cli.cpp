#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cresa/experiment.hpp"
#include "cresa/models.hpp"

namespace {

struct Overrides {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t m = 0;
    std::string grid;
    std::uint64_t sobol_n = 0;
    std::string output_dir;
    std::string basename;
    std::string sizes;
    std::uint64_t repeats = 0;
    std::string quantity;
    std::string condition_on;
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    for (char c : s) {
        if (c == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

void apply_overrides(cresa::ExperimentConfig& config, const Overrides& ov) {
    if (ov.n) config.sample_size = ov.n;
    if (ov.seed_set) config.seed = ov.seed;
    if (ov.m) config.grid.m = ov.m;
    if (!ov.grid.empty()) {
        const auto parts = split_csv(ov.grid);
        if (parts.size() != 2) throw cresa::ConfigError("--grid expects I,J");
        config.grid.grid_i = std::stoull(parts[0]);
        config.grid.grid_j = std::stoull(parts[1]);
    }
    if (ov.sobol_n) config.sobol_sample_size = ov.sobol_n;
    if (!ov.output_dir.empty()) config.output_dir = ov.output_dir;
    if (!ov.basename.empty()) config.output_basename = ov.basename;
    if (!ov.sizes.empty()) {
        config.converge.sizes.clear();
        for (const auto& s : split_csv(ov.sizes)) config.converge.sizes.push_back(std::stoull(s));
    }
    if (ov.repeats) config.converge.repeats = ov.repeats;
    if (!ov.quantity.empty()) config.converge.quantity = ov.quantity;
    if (!ov.condition_on.empty()) config.converge.condition_on = split_csv(ov.condition_on);
}

void add_common_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--n", ov.n, "Override sample size");
    cmd->add_option("--seed", ov.seed, "Override RNG seed")->each([&](const std::string&) {
        ov.seed_set = true;
    });
    cmd->add_option("--m", ov.m, "Override grid m (1-variable conditioning)");
    cmd->add_option("--grid", ov.grid, "Override grid counts as I,J");
    cmd->add_option("--output", ov.output_dir, "Output directory");
    cmd->add_option("--basename", ov.basename, "Report basename");
}

void print_report_summary(const cresa::SensitivityReport& report) {
    std::printf("model=%s n=%zu seed=%llu (%.2fs)\n", report.model.c_str(), report.sample_size,
                static_cast<unsigned long long>(report.seed), report.wall_seconds);
    const auto head = [&](const char* name, const cresa::MethodColumn& col) {
        if (col.present) std::printf(" %10s", name);
    };
    std::printf("%-10s", "variable");
    head("S", report.sobol_main);
    head("ST", report.sobol_total);
    head("delta", report.delta);
    head("eta", report.shannon);
    head("kappa", report.kappa);
    std::printf("\n");
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
        std::printf("%-10s", report.labels[i].c_str());
        const auto cell = [&](const cresa::MethodColumn& col) {
            if (col.present) std::printf(" %6.4f (%d)", col.values[i], col.ranks[i]);
        };
        cell(report.sobol_main);
        cell(report.sobol_total);
        cell(report.delta);
        cell(report.shannon);
        cell(report.kappa);
        std::printf("\n");
    }
    if (report.decomposition) {
        std::printf("total CRE %.6g, higher-order residual %.4f\n",
                    report.decomposition->total_cre,
                    report.decomposition->higher_order_residual);
    }
    if (report.cost_table)
        std::printf("recommendation: %s\n", report.cost_table->recommendation.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CRE-based global sensitivity analysis"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;

    CLI::App* analyze = app.add_subcommand("analyze", "Run one experiment and write reports");
    analyze->add_option("config", config_path, "Experiment config file")->required();
    add_common_flags(analyze, ov);
    analyze->add_option("--sobol-n", ov.sobol_n, "Override Sobol pick-freeze sample size");

    CLI::App* converge = app.add_subcommand("converge", "Convergence study over sample sizes");
    converge->add_option("config", config_path, "Experiment config file")->required();
    add_common_flags(converge, ov);
    converge->add_option("--sizes", ov.sizes, "Comma-separated ascending sample sizes");
    converge->add_option("--repeats", ov.repeats, "Repeats per size");
    converge->add_option("--quantity", ov.quantity,
                         "empirical_cre | conditional_cre_1 | conditional_cre_2");
    converge->add_option("--condition-on", ov.condition_on,
                         "Conditioning input labels (comma-separated)");

    CLI::App* list = app.add_subcommand("list-models", "List built-in models");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : cresa::model_names()) {
                const cresa::ModelFn* m = cresa::find_model(name);
                std::printf("%-16s arity %zu\n", name.c_str(), m->arity);
            }
            return 0;
        }
        cresa::ExperimentConfig config = cresa::load_config(config_path);
        apply_overrides(config, ov);
        const std::string out_dir = cresa::resolve_output_dir(config);

        if (analyze->parsed()) {
            const auto report = cresa::run_experiment(config);
            print_report_summary(report);
            for (const auto& path :
                 cresa::write_report(report, out_dir, config.output_basename))
                std::printf("wrote %s\n", path.c_str());
            return 0;
        }
        // converge
        const auto rows = cresa::convergence_study(config);
        std::printf("%8s %12s %12s %10s\n", "size", "mean", "sd", "mean_ms");
        for (const auto& row : rows)
            std::printf("%8zu %12.5f %12.5f %10.3f\n", row.size, row.mean, row.spread,
                        row.mean_ms);
        const std::string path =
            cresa::write_convergence_csv(rows, config, out_dir, config.output_basename);
        std::printf("wrote %s\n", path.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
