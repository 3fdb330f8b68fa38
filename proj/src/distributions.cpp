#include "cresa/distributions.hpp"

#include <cmath>

namespace cresa {

std::string family_name(Family f) {
    switch (f) {
        case Family::kUniform: return "uniform";
        case Family::kNormal: return "normal";
        case Family::kExponential: return "exponential";
        case Family::kLognormal: return "lognormal";
    }
    return "?";
}

DistributionSpec DistributionSpec::uniform(double a, double b, std::string label) {
    if (!(a < b)) throw std::invalid_argument("uniform: requires a < b");
    return {Family::kUniform, a, b, std::move(label)};
}

DistributionSpec DistributionSpec::normal(double mean, double sd, std::string label) {
    if (!(sd > 0.0)) throw std::invalid_argument("normal: requires sd > 0");
    return {Family::kNormal, mean, sd, std::move(label)};
}

DistributionSpec DistributionSpec::exponential(double rate, std::string label) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: requires rate > 0");
    return {Family::kExponential, rate, 0.0, std::move(label)};
}

DistributionSpec DistributionSpec::lognormal(double log_mean, double log_sd, std::string label) {
    if (!(log_sd > 0.0)) throw std::invalid_argument("lognormal: requires log_sd > 0");
    return {Family::kLognormal, log_mean, log_sd, std::move(label)};
}

double DistributionSpec::mean() const {
    switch (family) {
        case Family::kUniform: return 0.5 * (p1 + p2);
        case Family::kNormal: return p1;
        case Family::kExponential: return 1.0 / p1;
        case Family::kLognormal: return std::exp(p1 + 0.5 * p2 * p2);
    }
    return 0.0;
}

double DistributionSpec::stddev() const {
    switch (family) {
        case Family::kUniform: return (p2 - p1) / std::sqrt(12.0);
        case Family::kNormal: return p2;
        case Family::kExponential: return 1.0 / p1;
        case Family::kLognormal: {
            const double v = std::exp(p2 * p2) - 1.0;
            return std::exp(p1 + 0.5 * p2 * p2) * std::sqrt(v);
        }
    }
    return 0.0;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RngSeed derive_stream(RngSeed base, std::uint64_t stream) {
    std::uint64_t s = base.value;
    std::uint64_t mixed = splitmix64(s);
    s ^= stream * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL;
    mixed ^= splitmix64(s);
    return RngSeed{mixed};
}

// Wichura's algorithm AS 241 (PPND16): max relative error ~1e-16.
double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p outside (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        const double num =
            q * (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                       6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                     1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                   1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return num / den;
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return q < 0.0 ? -value : value;
}

double Rng::standard_normal() { return inverse_normal_cdf(uniform01()); }

std::vector<double> sample(const DistributionSpec& spec, std::size_t n, RngSeed seed) {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    Rng rng(seed);
    std::vector<double> out(n);
    switch (spec.family) {
        case Family::kUniform:
            for (auto& v : out) v = spec.p1 + (spec.p2 - spec.p1) * rng.uniform01();
            break;
        case Family::kNormal:
            for (auto& v : out) v = spec.p1 + spec.p2 * rng.standard_normal();
            break;
        case Family::kExponential:
            for (auto& v : out) v = -std::log(rng.uniform01()) / spec.p1;
            break;
        case Family::kLognormal:
            for (auto& v : out) v = std::exp(spec.p1 + spec.p2 * rng.standard_normal());
            break;
    }
    return out;
}

double analytic_cre(const DistributionSpec& spec) {
    switch (spec.family) {
        case Family::kExponential: return 1.0 / spec.p1;
        case Family::kUniform: return (spec.p2 - spec.p1) / 4.0;
        case Family::kNormal: return kNormalCreConstant * spec.p2;
        case Family::kLognormal:
            throw UnsupportedFamilyError("analytic_cre: no closed form for lognormal");
    }
    throw UnsupportedFamilyError("analytic_cre: unknown family");
}

DistributionSpec lognormal_from_mean_ef(double mean, double error_factor, std::string label) {
    if (!(mean > 0.0)) throw std::domain_error("lognormal_from_mean_ef: mean must be > 0");
    if (!(error_factor > 1.0)) throw std::domain_error("lognormal_from_mean_ef: EF must be > 1");
    const double log_sd = std::log(error_factor) / 1.645;
    const double log_mean = std::log(mean) - 0.5 * log_sd * log_sd;
    return DistributionSpec::lognormal(log_mean, log_sd, std::move(label));
}

}  // namespace cresa
