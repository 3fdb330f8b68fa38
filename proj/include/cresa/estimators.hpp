#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cresa {

/// N x n input sample block plus the N model outputs, column-labelled.
/// Columns are stored contiguously (inputs[j] is the j-th variable).
struct SampleMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> inputs;
    std::vector<double> output;

    std::size_t size() const { return output.size(); }
    std::size_t arity() const { return inputs.size(); }

    /// Throws std::invalid_argument on ragged columns, N < 2, or
    /// non-finite entries.
    void validate() const;
};

/// Grid hyper-parameters for the conditional estimators: m samples per grid
/// when conditioning on one variable, an I x J cell lattice for two.
struct GridParams {
    std::size_t m = 500;
    std::size_t grid_i = 20;
    std::size_t grid_j = 20;
};

/// Empirical CRE from the order-statistic spacings:
///   -sum_{i=1..N-1} (x_(i+1) - x_(i)) * (1 - i/N) * ln(1 - i/N).
/// Non-negative; zero for a constant sample. Requires N >= 2.
double empirical_cre(std::span<const double> samples);

/// Conditional CRE of y given x: pairs are sorted by x (ties by original
/// index), the order statistic is cut into floor(N/m) grids of m samples
/// (the remainder joins the last grid), and the per-grid empirical CREs are
/// averaged with weights n_g/N.
double conditional_cre_1(std::span<const double> x, std::span<const double> y,
                         std::size_t m);

/// Conditional CRE of y given (x1, x2): each conditioning variable's range
/// is split into equal-width grids (I for x1, J for x2), y samples are
/// collected per (i, j) cell, and cell CREs are averaged with weights
/// n_ij/N. Cells with fewer than two samples carry zero CRE but keep their
/// weight, so the weights always sum to one.
double conditional_cre_2(std::span<const double> x1, std::span<const double> x2,
                         std::span<const double> y, std::size_t grid_i,
                         std::size_t grid_j);

/// Order of the original indices after sorting by value (stable in the
/// original index for tied values). Shared by the conditional estimators
/// and the given-data baselines.
std::vector<std::size_t> sort_order(std::span<const double> values);

/// Equal-width grid id per sample over [min, max]; degenerate ranges map
/// everything to grid 0.
std::vector<std::size_t> width_grid_ids(std::span<const double> values,
                                        std::size_t grid_count);

}  // namespace cresa
