#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cresa {

/// Deterministic benchmark model: a pure map from an input point to one
/// output value.
struct ModelFn {
    std::string name;
    std::size_t arity;
    std::function<double(std::span<const double>)> eval;
};

/// Ishigami test function y = sin(x1) + a*sin^2(x2) + b*x3^4*sin(x1).
double ishigami(double x1, double x2, double x3, double a = 5.0, double b = 1.0);

/// Fault-tree top event evaluated as the arithmetic sum of its ten
/// three-way minimal cut set products (rare-event reading; the inputs are
/// occurrence rates, not Booleans).
double risk_top_event(std::span<const double> x);

struct BearingInputs {
    double k0;  // viscosity ratio
    double ec;  // contamination factor
    double cu;  // fatigue load limit [kN]
    double p;   // dynamic equivalent load [kN]
};

/// ISO 281 life modification factor a_ISO. Piecewise in k0 with half-open
/// branches [0.1,0.4), [0.4,1), [1,4); throws std::domain_error outside
/// [0.1,4) or when the bracketed base is not positive.
double bearing_a_iso(const BearingInputs& in);

double appendix_b_model(double x1, double x2);
double appendix_c_model(double x1, double x2, double x3);

/// Named registry used by the CLI config. Returns nullptr for unknown names.
const ModelFn* find_model(std::string_view name);
std::vector<std::string> model_names();

/// Row-wise evaluation over input columns.
std::vector<double> evaluate_model(const ModelFn& model,
                                   const std::vector<std::vector<double>>& columns);

}  // namespace cresa
