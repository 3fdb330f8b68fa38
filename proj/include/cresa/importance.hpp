#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cresa/distributions.hpp"
#include "cresa/estimators.hpp"

namespace cresa {

struct DegenerateOutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full CRE-based uncertainty decomposition of one sample wave. Reported
/// kappa values are clipped to their theoretical ranges ([0,1] for singles,
/// [0,1) for pairs); the raw estimates stay alongside for diagnostics.
/// higher_order_residual completes the reported terms to exactly one.
struct DecompositionResult {
    double total_cre = 0.0;
    std::vector<std::string> labels;
    std::vector<double> kappa_single;
    std::vector<double> kappa_single_raw;
    struct PairTerm {
        std::size_t i = 0;
        std::size_t j = 0;
        double value = 0.0;
        double raw = 0.0;
    };
    std::vector<PairTerm> kappa_pair;
    double higher_order_residual = 0.0;
    double higher_order_residual_raw = 0.0;
    std::size_t sample_size = 0;
    RngSeed seed;

    double pair_value(std::size_t i, std::size_t j) const;
};

/// kappa_i = 1 - E(Y|X_i)/E(Y), raw (unclipped) form.
double kappa_single_raw(const SampleMatrix& samples, std::size_t input,
                        const GridParams& grid);

/// kappa_i clipped to [0, 1].
double kappa_single(const SampleMatrix& samples, std::size_t input,
                    const GridParams& grid);

/// CRMI estimate E(Y) - E(Y|X_i), floored at zero.
double cr_mutual_information(const SampleMatrix& samples, std::size_t input,
                             const GridParams& grid);

/// kappa_ij = [E(Y|X_i) + E(Y|X_j) - E(Y|X_i,X_j) - E(Y)] / E(Y), raw form.
double kappa_pair_raw(const SampleMatrix& samples, std::size_t i, std::size_t j,
                      const GridParams& grid);

/// kappa_ij clipped to [0, 1).
double kappa_pair(const SampleMatrix& samples, std::size_t i, std::size_t j,
                  const GridParams& grid);

/// All singles, optionally all pairs, and the complement residual. The
/// per-term estimations run on a worker pool writing to disjoint slots.
DecompositionResult decompose(const SampleMatrix& samples, const GridParams& grid,
                              RngSeed seed, bool with_pairs = true);

}  // namespace cresa
