#include "cresa/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cresa {

void SampleMatrix::validate() const {
    if (output.size() < 2) throw std::invalid_argument("SampleMatrix: needs N >= 2");
    if (labels.size() != inputs.size())
        throw std::invalid_argument("SampleMatrix: one label per input column");
    for (const auto& col : inputs) {
        if (col.size() != output.size())
            throw std::invalid_argument("SampleMatrix: column length mismatch");
        for (double v : col)
            if (!std::isfinite(v)) throw std::invalid_argument("SampleMatrix: non-finite input");
    }
    for (double v : output)
        if (!std::isfinite(v)) throw std::invalid_argument("SampleMatrix: non-finite output");
}

double empirical_cre(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("empirical_cre: needs at least 2 samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double inv_n = 1.0 / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double spacing = sorted[i] - sorted[i - 1];
        if (spacing == 0.0) continue;
        const double survival = 1.0 - static_cast<double>(i) * inv_n;
        total -= spacing * survival * std::log(survival);
    }
    return total;
}

std::vector<std::size_t> sort_order(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a < b;
    });
    return order;
}

double conditional_cre_1(std::span<const double> x, std::span<const double> y,
                         std::size_t m) {
    const std::size_t n = x.size();
    if (y.size() != n) throw std::invalid_argument("conditional_cre_1: length mismatch");
    if (m < 2) throw std::invalid_argument("conditional_cre_1: m must be >= 2");
    if (m > n) throw std::invalid_argument("conditional_cre_1: m exceeds sample size");

    const std::vector<std::size_t> order = sort_order(x);
    const std::size_t grids = n / m;
    std::vector<double> grid_y;
    grid_y.reserve(m + n % m);
    double total = 0.0;
    for (std::size_t g = 0; g < grids; ++g) {
        const std::size_t lo = g * m;
        const std::size_t hi = (g + 1 == grids) ? n : lo + m;
        grid_y.clear();
        for (std::size_t k = lo; k < hi; ++k) grid_y.push_back(y[order[k]]);
        total += static_cast<double>(hi - lo) * empirical_cre(grid_y);
    }
    return total / static_cast<double>(n);
}

std::vector<std::size_t> width_grid_ids(std::span<const double> values,
                                        std::size_t grid_count) {
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    std::vector<std::size_t> ids(values.size(), 0);
    if (span <= 0.0 || grid_count < 2) return ids;
    const double scale = static_cast<double>(grid_count) / span;
    for (std::size_t k = 0; k < values.size(); ++k) {
        auto id = static_cast<std::size_t>((values[k] - lo) * scale);
        ids[k] = std::min(id, grid_count - 1);
    }
    return ids;
}

double conditional_cre_2(std::span<const double> x1, std::span<const double> x2,
                         std::span<const double> y, std::size_t grid_i,
                         std::size_t grid_j) {
    const std::size_t n = y.size();
    if (x1.size() != n || x2.size() != n)
        throw std::invalid_argument("conditional_cre_2: length mismatch");
    if (grid_i < 2 || grid_j < 2)
        throw std::invalid_argument("conditional_cre_2: grid counts must be >= 2");
    if (grid_i * grid_j > n)
        throw std::invalid_argument("conditional_cre_2: I*J exceeds sample size");

    const std::vector<std::size_t> g1 = width_grid_ids(x1, grid_i);
    const std::vector<std::size_t> g2 = width_grid_ids(x2, grid_j);

    std::vector<std::vector<double>> cells(grid_i * grid_j);
    for (std::size_t k = 0; k < n; ++k) cells[g1[k] * grid_j + g2[k]].push_back(y[k]);

    double total = 0.0;
    for (const auto& cell : cells) {
        if (cell.size() < 2) continue;  // singleton cells are constant: zero CRE
        total += static_cast<double>(cell.size()) * empirical_cre(cell);
    }
    return total / static_cast<double>(n);
}

}  // namespace cresa
