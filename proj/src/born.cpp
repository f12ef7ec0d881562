#include "omqm/born.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

namespace omqm::born {

std::uint64_t StreamRng::splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

StreamRng::engine_type StreamRng::stream(std::uint64_t index) const {
    std::uint64_t state = seed_;
    const std::uint64_t base = splitmix64(state);
    state = base ^ (index * 0xD1B54A32D192ED03ULL);
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                      static_cast<std::uint32_t>(state >> 32),
                      static_cast<std::uint32_t>(splitmix64(state)),
                      static_cast<std::uint32_t>(index)};
    return engine_type(seq);
}

void JitterModel::validate() const {
    if (!(sigma_l > 0.0) || !std::isfinite(sigma_l)) {
        throw std::invalid_argument("jitter: sigma_l must be positive and finite");
    }
    if (samples < 1000) {
        throw std::invalid_argument("jitter: at least 1000 samples required");
    }
}

double OutcomeDistribution::probability(std::size_t k) const {
    return total == 0 ? 0.0 : static_cast<double>(counts.at(k)) / static_cast<double>(total);
}

std::vector<double> OutcomeDistribution::probabilities() const {
    std::vector<double> p(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        p[k] = probability(k);
    }
    return p;
}

namespace {

std::uint64_t jittered_scale(double l1, double eps) {
    const double r = std::round(l1 + eps);
    if (r <= 0.0) {
        return 0;
    }
    if (r >= 1.8e19) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace

OutcomeDistribution empirical_distribution(const OMScale& scale, const JitterModel& jitter,
                                           unsigned workers) {
    jitter.validate();
    if (scale.n == 0) {
        throw std::invalid_argument("empirical_distribution: n must be >= 1");
    }
    if (scale.n > (1u << 24)) {
        throw std::invalid_argument("empirical_distribution: n too large to tabulate");
    }
    const std::uint64_t batches = (jitter.samples + kBatchSize - 1) / kBatchSize;
    if (workers == 0) {
        workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, batches));
    const StreamRng rng(jitter.seed);
    const double l1 = static_cast<double>(scale.l1);

    auto run = [&](unsigned w) {
        std::vector<std::uint64_t> counts(scale.n, 0);
        for (std::uint64_t b = w; b < batches; b += workers) {
            auto engine = rng.stream(b);
            std::normal_distribution<double> normal(0.0, jitter.sigma_l);
            const std::uint64_t begin = b * kBatchSize;
            const std::uint64_t end = std::min(jitter.samples, begin + kBatchSize);
            for (std::uint64_t i = begin; i < end; ++i) {
                ++counts[collapse_index(jittered_scale(l1, normal(engine)), scale.n)];
            }
        }
        return counts;
    };

    std::vector<std::future<std::vector<std::uint64_t>>> parts;
    for (unsigned w = 0; w < workers; ++w) {
        parts.push_back(std::async(std::launch::async, run, w));
    }
    OutcomeDistribution out;
    out.counts.assign(scale.n, 0);
    for (auto& f : parts) {
        const auto c = f.get();
        for (std::size_t k = 0; k < c.size(); ++k) {
            out.counts[k] += c[k];
        }
    }
    out.total = jitter.samples;
    return out;
}

double model_width(std::uint64_t l1, double sigma_l) {
    const double l = static_cast<double>(l1);
    const double span = std::floor((l + sigma_l) / 2.0) - std::floor((l - sigma_l) / 2.0);
    return std::max(1.0, span) / 2.0;
}

std::vector<double> gaussian_model(const OMScale& scale, double sigma_l, ModelCentre centre) {
    if (!(sigma_l > 0.0) || !std::isfinite(sigma_l)) {
        throw std::invalid_argument("gaussian_model: sigma_l must be positive and finite");
    }
    if (scale.n == 0 || scale.n > (1u << 24)) {
        throw std::invalid_argument("gaussian_model: n out of range");
    }
    const auto n = static_cast<double>(scale.n);
    const double width = model_width(scale.l1, sigma_l);
    double c = 0.0;
    if (centre == ModelCentre::Continuous) {
        c = std::fmod((static_cast<double>(reduce_scale(scale.l1, scale.n)) - 0.5) / 2.0 + n, n);
    } else {
        c = static_cast<double>(collapse_index(scale));
    }
    const auto wraps = static_cast<long>(std::ceil(8.0 * width / n)) + 1;
    std::vector<double> p(scale.n, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        double s = 0.0;
        for (long m = -wraps; m <= wraps; ++m) {
            const double d = static_cast<double>(k) - c + static_cast<double>(m) * n;
            s += std::exp(-d * d / (2.0 * width * width));
        }
        p[k] = s;
        total += s;
    }
    for (double& v : p) {
        v /= total;
    }
    return p;
}

double closed_form_width() {
    return std::sqrt(OMConstants::A() + OMConstants::B()) / (kPi * std::sqrt(2.0));
}

double closed_form_coefficient(std::int64_t k, std::int64_t k_star) {
    const double d = static_cast<double>(k - k_star);
    return std::exp(-kPi * kPi * d * d / (OMConstants::A() + OMConstants::B()));
}

std::vector<CoefficientRow> coefficients(const OMScale& scale, double sigma_l, ModelCentre centre) {
    const auto model = gaussian_model(scale, sigma_l, centre);
    const auto k_star = static_cast<std::int64_t>(collapse_index(scale));
    std::vector<CoefficientRow> rows;
    rows.reserve(model.size());
    for (std::size_t k = 0; k < model.size(); ++k) {
        rows.push_back({k, std::sqrt(model[k]),
                        closed_form_coefficient(static_cast<std::int64_t>(k), k_star)});
    }
    return rows;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("total_variation: size mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += std::abs(p[i] - q[i]);
    }
    return 0.5 * s;
}

}  // namespace omqm::born
