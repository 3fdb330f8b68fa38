#include <doctest.h>

#include <cmath>

#include "cresa/costs.hpp"
#include "cresa/distributions.hpp"

using namespace cresa;

namespace {

std::vector<DistributionSpec> bearing_specs() {
    return {DistributionSpec::normal(0.39, 0.015, "k0"),
            DistributionSpec::normal(0.75, 0.08, "ec"),
            DistributionSpec::normal(0.28, 0.01, "Cu"),
            DistributionSpec::normal(11.5, 0.6, "P")};
}

// Decomposition stand-in with the importance ordering observed on the
// bearing case (k0 highest, then ec, P, Cu).
DecompositionResult bearing_decomposition() {
    DecompositionResult d;
    d.labels = {"k0", "ec", "Cu", "P"};
    d.kappa_single = {0.30, 0.21, 0.027, 0.053};
    d.kappa_single_raw = d.kappa_single;
    d.total_cre = 0.0065;
    d.sample_size = 20000;
    return d;
}

}  // namespace

TEST_SUITE("costs") {

TEST_CASE("relative uncertainty in both frameworks") {
    const auto ec = DistributionSpec::normal(0.75, 0.08);
    CHECK(relative_uncertainty(ec, UncertaintyFramework::kCre) ==
          doctest::Approx(0.9032 * 0.08 / 0.75).epsilon(1e-12));
    CHECK(std::abs(relative_uncertainty(ec, UncertaintyFramework::kCre) - 0.0964) < 0.0002);

    const auto p = DistributionSpec::normal(11.5, 0.6);
    CHECK(std::abs(relative_uncertainty(p, UncertaintyFramework::kCre) - 0.0471) < 0.0002);
    CHECK(relative_uncertainty(p, UncertaintyFramework::kVariance) ==
          doctest::Approx(0.6 / 11.5).epsilon(1e-12));

    // non-normal families work through their analytic CRE / moments
    const auto expo = DistributionSpec::exponential(0.5);
    CHECK(relative_uncertainty(expo, UncertaintyFramework::kCre) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(relative_uncertainty(DistributionSpec::uniform(-1.0, 1.0),
                                         UncertaintyFramework::kCre),
                    std::domain_error);
    CHECK_THROWS_AS(relative_uncertainty(DistributionSpec::lognormal(0.0, 0.5),
                                         UncertaintyFramework::kCre),
                    UnsupportedFamilyError);
}

TEST_CASE("reduction cost formula and domain") {
    const CostSpec spec{0.1, 100.0, 0.2, UncertaintyFramework::kCre, 1e300};
    CHECK(reduction_cost(0.1, spec) == 0.0);
    CHECK(std::abs(reduction_cost(0.0964, spec) - 0.736) < 0.02);
    CHECK(std::abs(reduction_cost(0.0348, spec) - 23.5) < 0.2);
    CHECK_THROWS_AS(reduction_cost(0.11, spec), std::domain_error);
    CHECK_THROWS_AS(reduction_cost(0.0, spec), std::domain_error);
}

TEST_CASE("reduction cost is strictly decreasing in u") {
    const CostSpec spec{0.1, 100.0, 0.2, UncertaintyFramework::kCre, 1e300};
    double previous = reduction_cost(0.005, spec);
    for (int step = 2; step <= 20; ++step) {
        const double k = reduction_cost(0.005 * step, spec);
        CHECK(k < previous);
        previous = k;
    }
    CHECK(previous == 0.0);  // the final step lands exactly on u_reference
}

TEST_CASE("bearing strategy table reproduces the reference costs") {
    CostSpec cost{0.1, 100.0, 0.2, UncertaintyFramework::kCre, 20.0};
    const auto result = strategy_table(bearing_specs(), bearing_decomposition(), cost);

    const double expected_rel[4] = {0.0348, 0.0964, 0.0322, 0.0471};
    const double expected_cost[4] = {23.5, 0.736, 25.4, 16.3};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(result.rows[i].relative_uncertainty - expected_rel[i]) /
                  expected_rel[i] <
              0.01);
        CHECK(std::abs(result.rows[i].cost - expected_cost[i]) / expected_cost[i] < 0.02);
    }
    // with the analytic fallback the magnitude column is 0.9032*sd
    CHECK(result.rows[0].magnitude == doctest::Approx(0.9032 * 0.015).epsilon(1e-12));
    // k0 is most important but over budget; ec is the best affordable target
    CHECK(result.recommendation == "ec");
}

TEST_CASE("CRE and variance frameworks price identically for normal inputs") {
    CostSpec cre{0.1, 100.0, 0.2, UncertaintyFramework::kCre, 1e300};
    CostSpec var{0.1107, 100.0, 0.2, UncertaintyFramework::kVariance, 1e300};
    const auto a = strategy_table(bearing_specs(), bearing_decomposition(), cre);
    const auto b = strategy_table(bearing_specs(), bearing_decomposition(), var);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(a.rows[i].cost - b.rows[i].cost) / a.rows[i].cost < 0.005);
}

TEST_CASE("strategy table honors empirical magnitudes when provided") {
    CostSpec cost{0.1, 100.0, 0.2, UncertaintyFramework::kCre, 1e300};
    const std::vector<double> magnitudes = {0.0134, 0.0724, 0.0091, 0.5428};
    const auto result =
        strategy_table(bearing_specs(), bearing_decomposition(), cost, &magnitudes);
    for (std::size_t i = 0; i < 4; ++i) CHECK(result.rows[i].magnitude == magnitudes[i]);
}

TEST_CASE("recommendation rules") {
    CostSpec unlimited{0.1, 100.0, 0.2, UncertaintyFramework::kCre,
                       std::numeric_limits<double>::infinity()};
    // unlimited budget: pure importance ordering picks k0
    const auto no_budget = strategy_table(bearing_specs(), bearing_decomposition(), unlimited);
    CHECK(no_budget.recommendation == "k0");

    // budget below every cost: fall back to the cheapest variable
    CostSpec strict{0.1, 100.0, 0.2, UncertaintyFramework::kCre, 0.1};
    const auto cheapest = strategy_table(bearing_specs(), bearing_decomposition(), strict);
    CHECK(cheapest.recommendation == "ec");

    // a single variable below the reference is recommended regardless
    DecompositionResult single;
    single.labels = {"only"};
    single.kappa_single = {1.0};
    single.kappa_single_raw = {1.0};
    const std::vector<DistributionSpec> one = {DistributionSpec::normal(1.0, 0.05, "only")};
    CHECK(strategy_table(one, single, unlimited).recommendation == "only");
}

TEST_CASE("strategy table rows are permutation invariant") {
    CostSpec cost{0.1, 100.0, 0.2, UncertaintyFramework::kCre, 20.0};
    auto specs = bearing_specs();
    auto decomposition = bearing_decomposition();
    const auto before = strategy_table(specs, decomposition, cost);

    std::swap(specs[0], specs[3]);
    std::swap(decomposition.labels[0], decomposition.labels[3]);
    std::swap(decomposition.kappa_single[0], decomposition.kappa_single[3]);
    std::swap(decomposition.kappa_single_raw[0], decomposition.kappa_single_raw[3]);
    const auto after = strategy_table(specs, decomposition, cost);

    CHECK(after.recommendation == before.recommendation);
    for (const auto& row : before.rows) {
        bool found = false;
        for (const auto& other : after.rows)
            if (other.label == row.label && other.cost == row.cost &&
                other.kappa == row.kappa)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("argument validation") {
    CostSpec cost{0.1, 100.0, 0.2, UncertaintyFramework::kCre, 20.0};
    const auto specs = bearing_specs();
    DecompositionResult wrong = bearing_decomposition();
    wrong.kappa_single.pop_back();
    CHECK_THROWS_AS(strategy_table(specs, wrong, cost), std::invalid_argument);
    // zero mean blocks the ratio in either framework
    CHECK_THROWS_AS(
        relative_uncertainty(DistributionSpec::uniform(-2.0, 2.0), UncertaintyFramework::kVariance),
        std::domain_error);
}

}  // TEST_SUITE
