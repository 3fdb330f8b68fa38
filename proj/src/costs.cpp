#include "cresa/costs.hpp"

#include <cmath>
#include <stdexcept>

namespace cresa {

double relative_uncertainty(const DistributionSpec& spec, UncertaintyFramework framework) {
    const double mu = spec.mean();
    if (mu == 0.0) throw std::domain_error("relative_uncertainty: zero mean");
    const double magnitude =
        framework == UncertaintyFramework::kCre ? analytic_cre(spec) : spec.stddev();
    return magnitude / mu;
}

double reduction_cost(double u, const CostSpec& spec) {
    if (!(u > 0.0)) throw std::domain_error("reduction_cost: u must be positive");
    if (u > spec.u_reference)
        throw std::domain_error("reduction_cost: u exceeds the reference uncertainty");
    return spec.base_cost * (std::pow(spec.u_reference / u, spec.alpha) - 1.0);
}

CostResult strategy_table(const std::vector<DistributionSpec>& specs,
                          const DecompositionResult& decomposition, const CostSpec& cost,
                          const std::vector<double>* empirical_magnitudes) {
    if (specs.size() != decomposition.kappa_single.size())
        throw std::invalid_argument("strategy_table: one spec per decomposed input");
    if (empirical_magnitudes && empirical_magnitudes->size() != specs.size())
        throw std::invalid_argument("strategy_table: one magnitude per input");

    CostResult result;
    result.rows.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        CostRow row;
        row.label = decomposition.labels.size() > i && !decomposition.labels[i].empty()
                        ? decomposition.labels[i]
                        : specs[i].label;
        row.magnitude =
            empirical_magnitudes ? (*empirical_magnitudes)[i] : analytic_cre(specs[i]);
        row.relative_uncertainty = relative_uncertainty(specs[i], cost.framework);
        row.cost = reduction_cost(row.relative_uncertainty, cost);
        row.kappa = decomposition.kappa_single[i];
        result.rows.push_back(std::move(row));
    }

    // Highest importance among affordable candidates, else cheapest overall.
    std::size_t best = specs.size();
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        if (result.rows[i].cost > cost.budget) continue;
        if (best == specs.size() || result.rows[i].kappa > result.rows[best].kappa) best = i;
    }
    if (best == specs.size()) {
        best = 0;
        for (std::size_t i = 1; i < result.rows.size(); ++i)
            if (result.rows[i].cost < result.rows[best].cost) best = i;
    }
    result.recommendation = result.rows[best].label;
    return result;
}

}  // namespace cresa
