#include "cresa/importance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace cresa {

namespace {

double output_cre_checked(const SampleMatrix& samples) {
    const double total = empirical_cre(samples.output);
    if (total <= 0.0)
        throw DegenerateOutputError("importance: model output is constant (zero CRE)");
    return total;
}

void check_input_index(const SampleMatrix& samples, std::size_t input) {
    if (input >= samples.arity())
        throw std::invalid_argument("importance: input index out of range");
}

double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// Runs fn(0..count-1) across a few worker threads; each task writes only to
// its own slot, so a join is the only synchronization.
void parallel_tasks(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    if (workers <= 1) {
        for (std::size_t t = 0; t < count; ++t) fn(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t t = next.fetch_add(1); t < count; t = next.fetch_add(1)) fn(t);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

double DecompositionResult::pair_value(std::size_t i, std::size_t j) const {
    for (const auto& term : kappa_pair)
        if ((term.i == i && term.j == j) || (term.i == j && term.j == i)) return term.value;
    throw std::invalid_argument("DecompositionResult: no such pair");
}

double kappa_single_raw(const SampleMatrix& samples, std::size_t input,
                        const GridParams& grid) {
    check_input_index(samples, input);
    const double total = output_cre_checked(samples);
    const double cond = conditional_cre_1(samples.inputs[input], samples.output, grid.m);
    return 1.0 - cond / total;
}

double kappa_single(const SampleMatrix& samples, std::size_t input, const GridParams& grid) {
    return clip(kappa_single_raw(samples, input, grid), 0.0, 1.0);
}

double cr_mutual_information(const SampleMatrix& samples, std::size_t input,
                             const GridParams& grid) {
    check_input_index(samples, input);
    const double total = output_cre_checked(samples);
    const double cond = conditional_cre_1(samples.inputs[input], samples.output, grid.m);
    return std::max(total - cond, 0.0);
}

double kappa_pair_raw(const SampleMatrix& samples, std::size_t i, std::size_t j,
                      const GridParams& grid) {
    check_input_index(samples, i);
    check_input_index(samples, j);
    if (i == j) throw std::invalid_argument("kappa_pair: indices must differ");
    const double total = output_cre_checked(samples);
    const double cond_i = conditional_cre_1(samples.inputs[i], samples.output, grid.m);
    const double cond_j = conditional_cre_1(samples.inputs[j], samples.output, grid.m);
    const double cond_ij = conditional_cre_2(samples.inputs[i], samples.inputs[j],
                                             samples.output, grid.grid_i, grid.grid_j);
    return (cond_i + cond_j - cond_ij - total) / total;
}

double kappa_pair(const SampleMatrix& samples, std::size_t i, std::size_t j,
                  const GridParams& grid) {
    const double raw = kappa_pair_raw(samples, i, j, grid);
    return clip(raw, 0.0, std::nextafter(1.0, 0.0));
}

DecompositionResult decompose(const SampleMatrix& samples, const GridParams& grid,
                              RngSeed seed, bool with_pairs) {
    samples.validate();
    const std::size_t n_inputs = samples.arity();
    if (n_inputs < 1) throw std::invalid_argument("decompose: needs at least one input");
    const double total = output_cre_checked(samples);

    DecompositionResult result;
    result.total_cre = total;
    result.labels = samples.labels;
    result.sample_size = samples.size();
    result.seed = seed;

    // E(Y|X_i) once per input; reused by singles and the pair formula.
    std::vector<double> cond1(n_inputs);
    parallel_tasks(n_inputs, [&](std::size_t i) {
        cond1[i] = conditional_cre_1(samples.inputs[i], samples.output, grid.m);
    });

    result.kappa_single_raw.resize(n_inputs);
    result.kappa_single.resize(n_inputs);
    for (std::size_t i = 0; i < n_inputs; ++i) {
        result.kappa_single_raw[i] = 1.0 - cond1[i] / total;
        result.kappa_single[i] = clip(result.kappa_single_raw[i], 0.0, 1.0);
    }

    if (with_pairs && n_inputs >= 2) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n_inputs; ++i)
            for (std::size_t j = i + 1; j < n_inputs; ++j) pairs.emplace_back(i, j);
        result.kappa_pair.resize(pairs.size());
        parallel_tasks(pairs.size(), [&](std::size_t t) {
            const auto [i, j] = pairs[t];
            const double cond_ij = conditional_cre_2(samples.inputs[i], samples.inputs[j],
                                                     samples.output, grid.grid_i, grid.grid_j);
            const double raw = (cond1[i] + cond1[j] - cond_ij - total) / total;
            result.kappa_pair[t] = {i, j, clip(raw, 0.0, std::nextafter(1.0, 0.0)), raw};
        });
    }

    double reported = 0.0, raw_sum = 0.0;
    for (std::size_t i = 0; i < n_inputs; ++i) {
        reported += result.kappa_single[i];
        raw_sum += result.kappa_single_raw[i];
    }
    for (const auto& term : result.kappa_pair) {
        reported += term.value;
        raw_sum += term.raw;
    }
    result.higher_order_residual = 1.0 - reported;
    result.higher_order_residual_raw = 1.0 - raw_sum;
    return result;
}

}  // namespace cresa
