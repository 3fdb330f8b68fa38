#include "cresa/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "cresa/importance.hpp"

namespace cresa {

namespace {

double clip01(double v) { return std::min(std::max(v, 0.0), 1.0); }

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

SobolIndices sobol_indices(const ModelFn& model, const std::vector<DistributionSpec>& specs,
                           std::size_t n, RngSeed seed) {
    if (specs.size() != model.arity)
        throw std::invalid_argument("sobol_indices: one spec per model input");
    if (n < 2) throw std::invalid_argument("sobol_indices: n too small");
    const std::size_t dim = specs.size();

    // Independent streams per (matrix, column); matrix B starts at stream `dim`.
    std::vector<std::vector<double>> a_cols(dim), b_cols(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        a_cols[j] = sample(specs[j], n, derive_stream(seed, j));
        b_cols[j] = sample(specs[j], n, derive_stream(seed, dim + j));
    }
    const std::vector<double> f_a = evaluate_model(model, a_cols);
    const std::vector<double> f_b = evaluate_model(model, b_cols);

    const double mean_ab = 0.5 * (mean_of(f_a) + mean_of(f_b));
    double pooled_var = 0.0;
    for (double v : f_a) pooled_var += (v - mean_ab) * (v - mean_ab);
    for (double v : f_b) pooled_var += (v - mean_ab) * (v - mean_ab);
    pooled_var /= static_cast<double>(2 * n);
    if (pooled_var <= 0.0)
        throw DegenerateOutputError("sobol_indices: output variance is zero");

    SobolIndices out;
    out.main_effect.resize(dim);
    out.total_effect.resize(dim);
    out.sample_size = n;

    std::vector<std::vector<double>> hybrid = a_cols;
    for (std::size_t i = 0; i < dim; ++i) {
        hybrid[i] = b_cols[i];
        const std::vector<double> f_h = evaluate_model(model, hybrid);
        hybrid[i] = a_cols[i];

        // Janon-Monod: S_i = [mean(fB*fH) - mu^2] / [mean((fB^2+fH^2)/2) - mu^2]
        // with mu = mean((fB+fH)/2). Ratio form keeps the estimate stable for
        // heavy-tailed outputs.
        double cross = 0.0, mu = 0.0, sq = 0.0, jansen = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            cross += f_b[k] * f_h[k];
            mu += 0.5 * (f_b[k] + f_h[k]);
            sq += 0.5 * (f_b[k] * f_b[k] + f_h[k] * f_h[k]);
            const double d = f_a[k] - f_h[k];
            jansen += d * d;
        }
        const double inv_n = 1.0 / static_cast<double>(n);
        cross *= inv_n;
        mu *= inv_n;
        sq *= inv_n;
        const double denom = sq - mu * mu;
        out.main_effect[i] = denom > 0.0 ? clip01((cross - mu * mu) / denom) : 0.0;
        out.total_effect[i] = clip01(jansen * inv_n / (2.0 * pooled_var));
    }
    return out;
}

double delta_index(const SampleMatrix& samples, std::size_t input, std::size_t partitions,
                   std::size_t y_bins) {
    if (input >= samples.arity()) throw std::invalid_argument("delta_index: bad input index");
    if (partitions < 2 || y_bins < 2) throw std::invalid_argument("delta_index: bad bin counts");
    const std::size_t n = samples.size();
    if (n < partitions) throw std::invalid_argument("delta_index: too few samples");

    const auto& y = samples.output;
    const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) throw DegenerateOutputError("delta_index: constant output");
    const double bin_width = (hi - lo) / static_cast<double>(y_bins);
    const auto bin_of = [&](double v) {
        auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(y_bins));
        return std::min(b, y_bins - 1);
    };

    std::vector<double> marginal(y_bins, 0.0);
    for (double v : y) marginal[bin_of(v)] += 1.0;
    const double norm = 1.0 / (static_cast<double>(n) * bin_width);
    for (auto& c : marginal) c *= norm;

    const std::vector<std::size_t> order = sort_order(samples.inputs[input]);
    const std::size_t base = n / partitions;
    std::vector<double> conditional(y_bins);
    double total = 0.0;
    for (std::size_t p = 0; p < partitions; ++p) {
        const std::size_t first = p * base;
        const std::size_t last = (p + 1 == partitions) ? n : first + base;
        const double count = static_cast<double>(last - first);
        std::fill(conditional.begin(), conditional.end(), 0.0);
        for (std::size_t k = first; k < last; ++k) conditional[bin_of(y[order[k]])] += 1.0;
        const double cond_norm = 1.0 / (count * bin_width);
        double l1 = 0.0;
        for (std::size_t b = 0; b < y_bins; ++b)
            l1 += std::abs(marginal[b] - conditional[b] * cond_norm) * bin_width;
        total += count / static_cast<double>(n) * 0.5 * l1;
    }
    return clip01(total);
}

double shannon_mi(const SampleMatrix& samples, std::size_t input, std::size_t bins) {
    if (input >= samples.arity()) throw std::invalid_argument("shannon_mi: bad input index");
    if (bins < 2) throw std::invalid_argument("shannon_mi: bad bin count");
    const std::size_t n = samples.size();

    const auto& y = samples.output;
    const auto [ylo_it, yhi_it] = std::minmax_element(y.begin(), y.end());
    if (!(*yhi_it > *ylo_it)) throw DegenerateOutputError("shannon_mi: constant output");

    const std::vector<std::size_t> gx = width_grid_ids(samples.inputs[input], bins);
    const std::vector<std::size_t> gy = width_grid_ids(y, bins);
    std::vector<double> joint(bins * bins, 0.0);
    std::vector<double> px(bins, 0.0), py(bins, 0.0);
    const double w = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        joint[gx[k] * bins + gy[k]] += w;
        px[gx[k]] += w;
        py[gy[k]] += w;
    }
    double mi = 0.0;
    for (std::size_t i = 0; i < bins; ++i)
        for (std::size_t j = 0; j < bins; ++j) {
            const double pij = joint[i * bins + j];
            if (pij > 0.0) mi += pij * std::log(pij / (px[i] * py[j]));
        }
    return std::max(mi, 0.0);
}

double differential_entropy_uniform(double a, double b) {
    if (!(a < b)) throw std::domain_error("differential_entropy_uniform: requires a < b");
    return std::log(b - a);
}

}  // namespace cresa
