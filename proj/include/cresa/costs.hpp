#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cresa/distributions.hpp"
#include "cresa/importance.hpp"

namespace cresa {

enum class UncertaintyFramework { kCre, kVariance };

/// Cost model K(u) = K0 * ((u_reference/u)^alpha - 1) for u <= u_reference,
/// plus the budget used by the strategy recommendation (infinite budget
/// reduces the rule to pure importance ordering).
struct CostSpec {
    double u_reference = 0.1;
    double base_cost = 100.0;  // K0
    double alpha = 0.2;
    UncertaintyFramework framework = UncertaintyFramework::kCre;
    double budget = std::numeric_limits<double>::infinity();
};

/// Relative uncertainty magnitude of one input: CRE framework uses
/// analytic CRE / mean (0.9032*sd/mean for a normal), variance framework
/// uses sd/mean. Requires a nonzero mean.
double relative_uncertainty(const DistributionSpec& spec, UncertaintyFramework framework);

/// Cost to push a variable's relative uncertainty from u_reference down to u.
double reduction_cost(double u, const CostSpec& spec);

struct CostRow {
    std::string label;
    double magnitude = 0.0;  // CRE of the input itself
    double relative_uncertainty = 0.0;
    double cost = 0.0;
    double kappa = 0.0;
};

struct CostResult {
    std::vector<CostRow> rows;
    std::string recommendation;
};

/// Joins uncertainty magnitude, cost, and importance into the strategy
/// table. Magnitudes come from `empirical_magnitudes` (CRE of the sampled
/// input columns, the way the report tables are produced) when given,
/// otherwise from analytic_cre. Recommendation: highest kappa among
/// variables whose reduction cost fits the budget; if none fit, the
/// cheapest variable.
CostResult strategy_table(const std::vector<DistributionSpec>& specs,
                          const DecompositionResult& decomposition, const CostSpec& cost,
                          const std::vector<double>* empirical_magnitudes = nullptr);

}  // namespace cresa
