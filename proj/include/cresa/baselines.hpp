#pragma once

#include <cstddef>
#include <vector>

#include "cresa/distributions.hpp"
#include "cresa/estimators.hpp"
#include "cresa/models.hpp"

namespace cresa {

/// Sobol main and total effects from one pick-freeze design.
struct SobolIndices {
    std::vector<double> main_effect;   // S_i, clipped to [0, 1]
    std::vector<double> total_effect;  // S^T_i, clipped to [0, 1]
    std::size_t sample_size = 0;       // pick-freeze N (model evals: N*(n+2))
};

/// Pick-freeze estimation with two independent N x n matrices A and B and
/// the n column-substituted hybrids. Main effects use the Janon-Monod
/// correlation estimator on (f(B), f(AB_i)); totals use Jansen's formula on
/// (f(A), f(AB_i)). Throws DegenerateOutputError on zero output variance.
SobolIndices sobol_indices(const ModelFn& model, const std::vector<DistributionSpec>& specs,
                           std::size_t n, RngSeed seed);

/// Borgonovo delta from given data: X_i is cut into equal-count partitions,
/// conditional output histograms are compared to the marginal one on a
/// shared y grid, and delta is half the weighted L1 distance.
double delta_index(const SampleMatrix& samples, std::size_t input,
                   std::size_t partitions = 20, std::size_t y_bins = 100);

/// Histogram mutual information I(X_i; Y) in nats on a bins x bins
/// equal-width lattice, reported raw (no normalization).
double shannon_mi(const SampleMatrix& samples, std::size_t input, std::size_t bins = 20);

/// Differential entropy of U(a, b): ln(b - a). Demonstrates the negative
/// values that make differential entropy unusable as a magnitude measure.
double differential_entropy_uniform(double a, double b);

}  // namespace cresa
