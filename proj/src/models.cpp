#include "cresa/models.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace cresa {

double ishigami(double x1, double x2, double x3, double a, double b) {
    const double s1 = std::sin(x1);
    const double s2 = std::sin(x2);
    return s1 + a * s2 * s2 + b * x3 * x3 * x3 * x3 * s1;
}

double risk_top_event(std::span<const double> x) {
    if (x.size() != 7) throw std::invalid_argument("risk_top_event: expects 7 inputs");
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6];
    return x1 * x3 * x5 + x1 * x3 * x6 + x1 * x4 * x5 + x1 * x4 * x6 + x2 * x3 * x4 +
           x2 * x3 * x5 + x2 * x4 * x5 + x2 * x5 * x6 + x2 * x4 * x7 + x2 * x6 * x7;
}

double bearing_a_iso(const BearingInputs& in) {
    if (!(in.k0 >= 0.1 && in.k0 < 4.0))
        throw std::domain_error("bearing_a_iso: k0 outside [0.1, 4)");
    double coef;
    if (in.k0 < 0.4) {
        coef = 2.2649 / std::pow(in.k0, 0.054381);
    } else if (in.k0 < 1.0) {
        coef = 1.9987 / std::pow(in.k0, 0.19087);
    } else {
        coef = 1.9987 / std::pow(in.k0, 0.071739);
    }
    const double load_term = std::cbrt(in.ec * in.cu / in.p);
    const double base = 1.0 - std::pow(2.5671 - coef, 0.83) * load_term;
    if (!(base > 0.0)) throw std::domain_error("bearing_a_iso: bracketed base not positive");
    const double value = 0.1 * std::pow(base, -9.3);
    if (!std::isfinite(value)) throw std::domain_error("bearing_a_iso: non-finite result");
    return value;
}

double appendix_b_model(double x1, double x2) { return x1 + x2; }

double appendix_c_model(double x1, double x2, double x3) { return x1 + x2 + x3; }

namespace {

const std::array<ModelFn, 6> kRegistry = {{
    {"ishigami", 3, [](std::span<const double> x) { return ishigami(x[0], x[1], x[2]); }},
    {"risk_fault_tree", 7, [](std::span<const double> x) { return risk_top_event(x); }},
    {"bearing_a_iso", 4,
     [](std::span<const double> x) { return bearing_a_iso({x[0], x[1], x[2], x[3]}); }},
    {"appendix_b", 2, [](std::span<const double> x) { return appendix_b_model(x[0], x[1]); }},
    {"appendix_c", 3,
     [](std::span<const double> x) { return appendix_c_model(x[0], x[1], x[2]); }},
    // single-input pass-through, handy for convergence studies on one marginal
    {"identity", 1, [](std::span<const double> x) { return x[0]; }},
}};

}  // namespace

const ModelFn* find_model(std::string_view name) {
    for (const auto& m : kRegistry)
        if (m.name == name) return &m;
    return nullptr;
}

std::vector<std::string> model_names() {
    std::vector<std::string> names;
    names.reserve(kRegistry.size());
    for (const auto& m : kRegistry) names.push_back(m.name);
    return names;
}

std::vector<double> evaluate_model(const ModelFn& model,
                                   const std::vector<std::vector<double>>& columns) {
    if (columns.size() != model.arity)
        throw std::invalid_argument("evaluate_model: arity mismatch for " + model.name);
    const std::size_t n = columns.empty() ? 0 : columns.front().size();
    std::vector<double> out(n);
    std::vector<double> point(model.arity);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t j = 0; j < model.arity; ++j) point[j] = columns[j][row];
        out[row] = model.eval(point);
    }
    return out;
}

}  // namespace cresa
