#include <doctest.h>

#include <cmath>
#include <random>

#include "cresa/distributions.hpp"
#include "cresa/models.hpp"

using namespace cresa;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_SUITE("models") {

TEST_CASE("ishigami point values") {
    CHECK(ishigami(0.0, 0.0, 0.0) == 0.0);
    CHECK(ishigami(kPi / 2, kPi / 2, 0.0) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(ishigami(kPi / 2, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    // default parameters are a=5, b=1
    CHECK(ishigami(0.3, -1.2, 2.1) ==
          doctest::Approx(ishigami(0.3, -1.2, 2.1, 5.0, 1.0)).epsilon(1e-15));
}

TEST_CASE("risk top event point values") {
    const std::vector<double> zeros(7, 0.0);
    CHECK(risk_top_event(zeros) == 0.0);
    const std::vector<double> ones(7, 1.0);
    CHECK(risk_top_event(ones) == 10.0);
    const std::vector<double> mixed = {1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(risk_top_event(mixed) == 4.0);
    const std::vector<double> six(6, 1.0);
    CHECK_THROWS_AS(risk_top_event(six), std::invalid_argument);
}

TEST_CASE("risk top event is multilinear in every input") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(7);
        for (auto& v : x) v = u(gen);
        for (std::size_t i = 0; i < 7; ++i) {
            auto lo = x, mid = x, hi = x;
            lo[i] = 0.5;
            mid[i] = 1.25;
            hi[i] = 2.0;
            // three-point collinearity: the midpoint value is the average
            const double expected = 0.5 * (risk_top_event(lo) + risk_top_event(hi));
            CHECK(risk_top_event(mid) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("bearing a_iso branch selection and nominal value") {
    // Frozen by direct evaluation of the first branch at the nominal point:
    //   coef = 2.2649/0.39^0.054381, base = 1 - (2.5671-coef)^0.83*(ec*cu/p)^(1/3)
    const double nominal = bearing_a_iso({0.39, 0.75, 0.28, 11.5});
    CHECK(nominal == doctest::Approx(0.18568134).epsilon(1e-6));
    CHECK(nominal > 0.0);

    // branch switch at 0.4: the formulas nearly agree there but not exactly
    const double left = bearing_a_iso({0.399999, 0.75, 0.28, 11.5});
    const double right = bearing_a_iso({0.4, 0.75, 0.28, 11.5});
    CHECK(left != right);
    CHECK(std::abs(left - right) / right < 0.01);

    // third branch engages at k0 >= 1
    CHECK_NOTHROW(bearing_a_iso({1.0, 0.75, 0.28, 11.5}));
    CHECK_NOTHROW(bearing_a_iso({3.9, 0.75, 0.28, 11.5}));
}

TEST_CASE("bearing a_iso degenerate contamination removes the correction") {
    // ec -> 0 zeroes the subtracted term: a_iso -> 0.1 * 1^(-9.3) = 0.1
    CHECK(bearing_a_iso({0.39, 1e-30, 0.28, 11.5}) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("bearing a_iso domain errors") {
    CHECK_THROWS_AS(bearing_a_iso({0.05, 0.75, 0.28, 11.5}), std::domain_error);
    CHECK_THROWS_AS(bearing_a_iso({4.0, 0.75, 0.28, 11.5}), std::domain_error);
    // enormous ec*cu/p pushes the bracketed base to or below zero
    CHECK_THROWS_AS(bearing_a_iso({0.39, 5000.0, 50.0, 0.01}), std::domain_error);
}

TEST_CASE("bearing a_iso monotonicity on the sampled region") {
    std::mt19937_64 gen(9);
    std::normal_distribution<double> k0d(0.39, 0.015), ecd(0.75, 0.08), cud(0.28, 0.01),
        pd(11.5, 0.6);
    for (int rep = 0; rep < 100; ++rep) {
        const BearingInputs base{k0d(gen), ecd(gen), cud(gen), pd(gen)};
        const double f0 = bearing_a_iso(base);
        const double h = 1e-4;
        CHECK(bearing_a_iso({base.k0, base.ec + h, base.cu, base.p}) > f0);
        CHECK(bearing_a_iso({base.k0, base.ec, base.cu + h, base.p}) > f0);
        CHECK(bearing_a_iso({base.k0, base.ec, base.cu, base.p + h}) < f0);
    }
}

TEST_CASE("shipped input distributions never leave the model domain") {
    const RngSeed seed{31337};
    const auto k0 = sample(DistributionSpec::normal(0.39, 0.015), 100000, derive_stream(seed, 0));
    const auto ec = sample(DistributionSpec::normal(0.75, 0.08), 100000, derive_stream(seed, 1));
    const auto cu = sample(DistributionSpec::normal(0.28, 0.01), 100000, derive_stream(seed, 2));
    const auto p = sample(DistributionSpec::normal(11.5, 0.6), 100000, derive_stream(seed, 3));
    for (std::size_t i = 0; i < k0.size(); ++i)
        CHECK_NOTHROW(bearing_a_iso({k0[i], ec[i], cu[i], p[i]}));
}

TEST_CASE("appendix validation models are plain sums") {
    CHECK(appendix_b_model(0.0, 0.0) == 0.0);
    CHECK(appendix_b_model(2.0, 40.0) == 42.0);
    CHECK(appendix_c_model(2.0, 10.0, 40.0) == 52.0);
}

TEST_CASE("registry lookup and evaluation") {
    for (const char* name :
         {"ishigami", "risk_fault_tree", "bearing_a_iso", "appendix_b", "appendix_c"}) {
        const ModelFn* m = find_model(name);
        REQUIRE(m != nullptr);
        CHECK(m->name == name);
    }
    CHECK(find_model("no_such_model") == nullptr);

    const ModelFn* ish = find_model("ishigami");
    const std::vector<std::vector<double>> cols = {{0.0, kPi / 2}, {0.0, kPi / 2}, {0.0, 0.0}};
    const auto out = evaluate_model(*ish, cols);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == doctest::Approx(6.0));
    CHECK_THROWS_AS(evaluate_model(*ish, {{1.0}}), std::invalid_argument);
}

}  // TEST_SUITE
