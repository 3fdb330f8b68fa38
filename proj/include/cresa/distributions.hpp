#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cresa {

/// CRE of the standard normal distribution, kept at the four-digit value
/// used throughout the report tables so that reproduced numbers match.
inline constexpr double kNormalCreConstant = 0.9032;

struct UnsupportedFamilyError : std::domain_error {
    using std::domain_error::domain_error;
};

enum class Family { kUniform, kNormal, kExponential, kLognormal };

std::string family_name(Family f);

/// Parametric marginal of a single input variable. Parameter slots depend on
/// the family: Uniform(a, b), Normal(mean, sd), Exponential(rate),
/// Lognormal(log_mean, log_sd). Instances are immutable value types.
struct DistributionSpec {
    Family family;
    double p1 = 0.0;
    double p2 = 0.0;
    std::string label;

    static DistributionSpec uniform(double a, double b, std::string label = "");
    static DistributionSpec normal(double mean, double sd, std::string label = "");
    static DistributionSpec exponential(double rate, std::string label = "");
    static DistributionSpec lognormal(double log_mean, double log_sd, std::string label = "");

    double mean() const;
    double stddev() const;
};

struct RngSeed {
    std::uint64_t value = 0;
};

/// Derives an independent substream seed; used to give each input column
/// (and each repeat of a study) its own reproducible stream.
RngSeed derive_stream(RngSeed base, std::uint64_t stream);

/// Deterministic pseudo-random source: a seeded mt19937_64 driving
/// inverse-CDF transforms. mt19937_64 output is fully specified by the
/// standard and the transforms are ours, so the sample stream depends only
/// on the seed and the request sequence, never on the library vendor.
class Rng {
  public:
    explicit Rng(RngSeed seed) : engine_(seed.value) {}

    /// Uniform on the open interval (0, 1).
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }
    double standard_normal();

  private:
    std::mt19937_64 engine_;
};

/// Quantile function of the standard normal (Wichura's AS 241, full double
/// precision). Exposed for reuse by tests and the lognormal mean/EF checks.
double inverse_normal_cdf(double p);

/// n i.i.d. draws from the given marginal; identical seed gives an
/// identical stream on every platform.
std::vector<double> sample(const DistributionSpec& spec, std::size_t n, RngSeed seed);

/// Closed-form CRE: 1/rate for exponential, (b-a)/4 for uniform,
/// 0.9032*sd for normal. Lognormal has no closed form here.
double analytic_cre(const DistributionSpec& spec);

/// Builds the lognormal used by the risk model from a distribution mean and
/// an error factor EF = 95th percentile / median:
///   log_sd = ln(EF)/1.645,  log_mean = ln(mean) - log_sd^2/2.
DistributionSpec lognormal_from_mean_ef(double mean, double error_factor,
                                        std::string label = "");

}  // namespace cresa
