#pragma once

// Outcome statistics of collapse under scale jitter and the Gaussian model.

#include "omqm/constants.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace omqm::born {

/// Seedable, splittable generator: stream s of seed x is an mt19937_64
/// seeded from two SplitMix64 rounds over (x, s). Streams are independent
/// of how work is scheduled.
class StreamRng {
public:
    using engine_type = std::mt19937_64;

    explicit StreamRng(std::uint64_t seed) : seed_(seed) {}
    std::uint64_t seed() const { return seed_; }
    engine_type stream(std::uint64_t index) const;

    static std::uint64_t splitmix64(std::uint64_t& state);

private:
    std::uint64_t seed_;
};

/// Samples are drawn in batches of this size, one RNG stream per batch.
inline constexpr std::uint64_t kBatchSize = 4096;

struct JitterModel {
    double sigma_l = 1.0;
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;

    /// Throws std::invalid_argument unless sigma_l > 0 and samples >= 1000.
    void validate() const;
};

struct OutcomeDistribution {
    std::vector<std::uint64_t> counts;  // index k in [0, n)
    std::uint64_t total = 0;

    double probability(std::size_t k) const;
    std::vector<double> probabilities() const;
};

/// Tallies k* = collapse_index(round(l1 + eps) clamped at 0, n) with
/// eps ~ Normal(0, sigma_l). workers = 0 picks the hardware concurrency;
/// the result does not depend on it.
OutcomeDistribution empirical_distribution(const OMScale& scale, const JitterModel& jitter,
                                           unsigned workers = 0);

enum class ModelCentre {
    /// Continuous index ((l1 - 1/2) / 2) mod n, the mean of the jittered
    /// index before flooring.
    Continuous,
    /// k*(l1, n) itself; symmetric around the collapsed outcome.
    OutcomeIndex,
};

/// Width in index units: max(1, floor((l1 + s)/2) - floor((l1 - s)/2)) / 2,
/// from the unreduced scale.
double model_width(std::uint64_t l1, double sigma_l);

/// Wrapped Gaussian on {0..n-1} with width model_width, normalized.
/// Throws std::invalid_argument unless sigma_l > 0.
std::vector<double> gaussian_model(const OMScale& scale, double sigma_l,
                                   ModelCentre centre = ModelCentre::Continuous);

/// Omega = sqrt(A + B) / (pi sqrt 2).
double closed_form_width();

/// exp(-pi^2 (k - k*)^2 / (A + B)).
double closed_form_coefficient(std::int64_t k, std::int64_t k_star);

struct CoefficientRow {
    std::uint64_t k;
    double model_sqrt;   // sqrt of the Gaussian model probability
    double closed_form;  // exp(-pi^2 (k - k*)^2 / (A + B))
};

std::vector<CoefficientRow> coefficients(const OMScale& scale, double sigma_l,
                                         ModelCentre centre = ModelCentre::Continuous);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace omqm::born
