#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cresa/experiment.hpp"

using namespace cresa;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kSmallConfig = R"(
[experiment]
model = appendix_b
samples = 4000
seed = 11
methods = kappa, kappa_pairs, sobol, delta, shannon_mi

[grid]
m = 200
i = 10
j = 10

[input.a]
family = exponential
rate = 0.5

[input.b]
family = normal
mean = 40
sd = 4

[output]
basename = small
)";

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("cresa_test_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("config parsing covers every section") {
    const auto config = parse_config(kSmallConfig);
    CHECK(config.model == "appendix_b");
    CHECK(config.sample_size == 4000);
    CHECK(config.seed == 11);
    CHECK(config.methods.size() == 5);
    CHECK(config.grid.m == 200);
    CHECK(config.grid.grid_i == 10);
    CHECK(config.inputs.size() == 2);
    CHECK(config.inputs[0].label == "a");
    CHECK(config.inputs[0].dist.family == Family::kExponential);
    CHECK(config.inputs[1].dist.p2 == 4.0);
    CHECK(config.output_basename == "small");
    CHECK_NOTHROW(validate_config(config));
}

TEST_CASE("config validation rejects broken setups") {
    auto base = parse_config(kSmallConfig);

    auto no_methods = base;
    no_methods.methods.clear();
    CHECK_THROWS_AS(validate_config(no_methods), ConfigError);

    auto bad_model = base;
    bad_model.model = "not_a_model";
    CHECK_THROWS_AS(validate_config(bad_model), ConfigError);

    auto bad_arity = base;
    bad_arity.inputs.pop_back();
    CHECK_THROWS_AS(validate_config(bad_arity), ConfigError);

    auto bad_method = base;
    bad_method.methods.push_back("astrology");
    CHECK_THROWS_AS(validate_config(bad_method), ConfigError);

    auto bad_grid = base;
    bad_grid.grid.m = 1;
    CHECK_THROWS_AS(validate_config(bad_grid), ConfigError);

    auto cost_without_kappa = base;
    cost_without_kappa.methods = {"sobol"};
    cost_without_kappa.cost = CostSpec{};
    CHECK_THROWS_AS(validate_config(cost_without_kappa), ConfigError);
}

TEST_CASE("config parser reports malformed text") {
    CHECK_THROWS_AS(parse_config("[experiment\nmodel = x\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("key_outside = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[experiment]\nmodel ishigami\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[experiment]\nsamples = twenty\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[mystery]\nkey = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[input.x]\nfamily = cauchy\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[input.x]\nfamily = normal\nmean = 0\n"), ConfigError);
}

TEST_CASE("run_experiment fills every requested column with valid ranks") {
    const auto config = parse_config(kSmallConfig);
    const auto report = run_experiment(config);
    REQUIRE(report.labels.size() == 2);
    for (const MethodColumn* col :
         {&report.kappa, &report.sobol_main, &report.sobol_total, &report.delta,
          &report.shannon}) {
        REQUIRE(col->present);
        REQUIRE(col->values.size() == 2);
        // ranks are a permutation of 1..n
        std::vector<int> sorted = col->ranks;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::vector<int>{1, 2});
    }
    REQUIRE(report.decomposition.has_value());
    CHECK(report.decomposition->kappa_pair.size() == 1);
    // additive model: the wide normal (CRE ~3.6) outweighs the exponential (CRE 2)
    CHECK(report.kappa.values[1] > report.kappa.values[0]);
    CHECK_FALSE(report.cost_table.has_value());
}

TEST_CASE("reports are written atomically and byte-identical across reruns") {
    TempDir dir;
    auto config = parse_config(kSmallConfig);
    config.output_dir = dir.path.string();

    const auto report_a = run_experiment(config);
    const auto files_a = write_report(report_a, dir.path.string(), "run_a");
    REQUIRE(files_a.size() == 3);  // json, indices, decomposition

    const auto report_b = run_experiment(config);
    write_report(report_b, dir.path.string(), "run_b");

    CHECK(slurp((dir.path / "run_a.json").string()) ==
          slurp((dir.path / "run_b.json").string()));
    CHECK(slurp((dir.path / "run_a_indices.csv").string()) ==
          slurp((dir.path / "run_b_indices.csv").string()));
    CHECK(slurp((dir.path / "run_a_decomposition.csv").string()) ==
          slurp((dir.path / "run_b_decomposition.csv").string()));
    // no leftover temp files from the atomic write
    for (const auto& entry : std::filesystem::directory_iterator(dir.path))
        CHECK(entry.path().extension() != ".tmp");

    // a different seed must change the payload
    config.seed = 999;
    const auto files_c = write_report(run_experiment(config), dir.path.string(), "run_c");
    CHECK(slurp((dir.path / "run_a.json").string()) !=
          slurp((dir.path / "run_c.json").string()));
}

TEST_CASE("indices CSV carries the table layout") {
    TempDir dir;
    auto config = parse_config(kSmallConfig);
    const auto report = run_experiment(config);
    write_report(report, dir.path.string(), "layout");
    const std::string csv = slurp((dir.path / "layout_indices.csv").string());
    CHECK(csv.rfind("variable,S,S_rank,ST,ST_rank,delta,delta_rank,eta,eta_rank,kappa,kappa_rank",
                    0) == 0);
    CHECK(csv.find("\na,") != std::string::npos);
    CHECK(csv.find("\nb,") != std::string::npos);
}

TEST_CASE("shipped configs parse, validate, and carry the documented settings") {
    const std::filesystem::path root = std::filesystem::path(__FILE__).parent_path() / ".." /
                                       "configs";
    for (const char* name : {"ishigami.cfg", "ishigami_decomposition.cfg", "risk.cfg",
                             "bearing.cfg", "appendix_a_convergence.cfg",
                             "appendix_b_convergence.cfg", "appendix_c_convergence.cfg"}) {
        const auto config = load_config((root / name).string());
        CHECK_NOTHROW(validate_config(config));
    }
    const auto bearing = load_config((root / "bearing.cfg").string());
    REQUIRE(bearing.cost.has_value());
    CHECK(bearing.cost->u_reference == 0.1);
    CHECK(bearing.cost->budget == 20.0);
    const auto risk = load_config((root / "risk.cfg").string());
    CHECK(risk.inputs.size() == 7);
    CHECK(risk.inputs[2].dist.family == Family::kLognormal);
}

TEST_CASE("convergence study approaches the known CRE and stays sorted") {
    ExperimentConfig config = parse_config(R"(
[experiment]
model = identity
samples = 16000
seed = 600
methods = kappa

[input.x1]
family = exponential
rate = 0.5

[converge]
quantity = empirical_cre
sizes = 200, 2000, 16000
repeats = 5
)");
    const auto rows = convergence_study(config);
    REQUIRE(rows.size() == 3);
    CHECK(rows.front().size == 200);
    CHECK(rows.back().size == 16000);
    // estimates tighten toward 2.0
    CHECK(std::abs(rows.back().mean - 2.0) < 0.05);
    CHECK(rows.back().spread < rows.front().spread + 0.05);
    for (const auto& row : rows) CHECK(row.mean_ms >= 0.0);
}

TEST_CASE("convergence study validates its own settings") {
    auto config = parse_config(kSmallConfig);
    config.converge.quantity = "empirical_cre";
    config.converge.sizes = {1000, 500};
    CHECK_THROWS_AS(convergence_study(config), ConfigError);

    config.converge.sizes = {500, 1000};
    config.converge.quantity = "conditional_cre_1";
    config.converge.condition_on = {};
    CHECK_THROWS_AS(convergence_study(config), ConfigError);

    config.converge.condition_on = {"nope"};
    CHECK_THROWS_AS(convergence_study(config), ConfigError);

    config.converge.quantity = "weird";
    config.converge.condition_on = {};
    CHECK_THROWS_AS(convergence_study(config), ConfigError);
}

TEST_CASE("convergence CSV is plot-ready") {
    TempDir dir;
    ExperimentConfig config = parse_config(R"(
[experiment]
model = appendix_b
samples = 4000
seed = 700
methods = kappa

[grid]
m = 200

[input.a]
family = exponential
rate = 0.5

[input.b]
family = normal
mean = 40
sd = 4

[converge]
quantity = conditional_cre_1
condition_on = b
sizes = 500, 2000
repeats = 3
)");
    const auto rows = convergence_study(config);
    const std::string path = write_convergence_csv(rows, config, dir.path.string(), "study");
    const std::string csv = slurp(path);
    CHECK(csv.find("size,mean,sd,mean_ms") != std::string::npos);
    CHECK(csv.find("conditional_cre_1") != std::string::npos);
    CHECK(csv.find("\n500,") != std::string::npos);
    CHECK(csv.find("\n2000,") != std::string::npos);
}

TEST_CASE("output directory resolution prefers config, then environment") {
    auto config = parse_config(kSmallConfig);
    config.output_dir = "explicit";
    CHECK(resolve_output_dir(config) == "explicit");
    config.output_dir.clear();
    setenv("CRESA_OUTPUT_DIR", "/tmp/from_env", 1);
    CHECK(resolve_output_dir(config) == "/tmp/from_env");
    unsetenv("CRESA_OUTPUT_DIR");
    CHECK(resolve_output_dir(config) == ".");
}

}  // TEST_SUITE
