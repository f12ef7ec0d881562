#include "omqm/born.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace omqm;
using namespace omqm::born;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::size_t argmax(const std::vector<double>& v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

TEST_CASE("jitter validation") {
    CHECK_THROWS_AS((JitterModel{0.0, 1, 5000}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((JitterModel{-1.0, 1, 5000}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((JitterModel{1.0, 1, 999}.validate()), std::invalid_argument);
    CHECK_NOTHROW((JitterModel{1.0, 1, 1000}.validate()));
    CHECK_THROWS_AS(empirical_distribution({5, 0}, {1.0, 1, 5000}), std::invalid_argument);
}

TEST_CASE("streams are reproducible and distinct") {
    const StreamRng a(7);
    const StreamRng b(7);
    auto s0 = a.stream(0);
    auto t0 = b.stream(0);
    auto s1 = a.stream(1);
    const auto x = s0();
    CHECK(x == t0());
    CHECK(x != s1());
    CHECK(StreamRng(8).stream(0)() != x);
}

TEST_CASE("small jitter keeps the collapsed outcome") {
    oracle::Gen g(41);
    for (int i = 0; i < 20; ++i) {
        const OMScale s{g.uint(0, 1'000'000), g.uint(1, 32)};
        const auto d = empirical_distribution(s, {1e-6, g.uint(0, 1000), 2000});
        CHECK(d.counts[collapse_index(s)] == d.total);
        const auto e = empirical_distribution(s, {0.05, g.uint(0, 1000), 2000});
        CHECK(e.counts[collapse_index(s)] == e.total);
    }
}

TEST_CASE("n = 2 under wide jitter is a fair coin") {
    const auto d = empirical_distribution({1'000'003, 2}, {1000.0, 2024, 100000});
    CHECK(total_variation(d.probabilities(), {0.5, 0.5}) < 0.02);
}

TEST_CASE("empirical distribution follows the wrapped Gaussian") {
    for (const std::uint64_t l1 : {1000ULL, 1003ULL, 77ULL}) {
        const OMScale s{l1, 8};
        const auto d = empirical_distribution(s, {3.0, 99, 100000});
        CHECK(total_variation(d.probabilities(), gaussian_model(s, 3.0)) < 0.05);
    }
}

TEST_CASE("sampling is deterministic and independent of worker count") {
    const OMScale s{12345, 8};
    const JitterModel j{4.0, 555, 50000};
    const auto a = empirical_distribution(s, j, 1);
    const auto b = empirical_distribution(s, j, 3);
    const auto c = empirical_distribution(s, j);
    CHECK(a.counts == b.counts);
    CHECK(a.counts == c.counts);
    const auto other = empirical_distribution(s, {4.0, 556, 50000});
    CHECK(other.counts != a.counts);
}

TEST_CASE("distributions are normalized") {
    oracle::Gen g(42);
    for (int i = 0; i < 30; ++i) {
        const OMScale s{g.uint(0, 100000), g.uint(1, 40)};
        const double sigma = g.real(0.01, 200.0);
        const auto d = empirical_distribution(s, {sigma, g.uint(0, 99), 3000});
        CHECK(std::accumulate(d.counts.begin(), d.counts.end(), std::uint64_t{0}) == d.total);
        CHECK(std::abs(sum(d.probabilities()) - 1.0) < 1e-12);
        for (const auto centre : {ModelCentre::Continuous, ModelCentre::OutcomeIndex}) {
            const auto m = gaussian_model(s, sigma, centre);
            CHECK(std::abs(sum(m) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("Gaussian model shape") {
    oracle::Gen g(43);
    for (int i = 0; i < 100; ++i) {
        const OMScale s{g.uint(0, 100000), g.uint(3, 40)};
        const double sigma = g.real(0.5, 6.0);
        const auto k = collapse_index(s);
        CHECK(argmax(gaussian_model(s, sigma)) == k);
        const auto sym = gaussian_model(s, sigma, ModelCentre::OutcomeIndex);
        CHECK(argmax(sym) == k);
        for (std::uint64_t d = 1; d < s.n; ++d) {
            const auto up = (k + d) % s.n;
            const auto down = (k + s.n - d % s.n) % s.n;
            CHECK(sym[up] == doctest::Approx(sym[down]).epsilon(1e-12));
        }
    }
    const auto wide = gaussian_model({1000, 2}, 1000.0);
    CHECK(std::abs(wide[0] - 0.5) < 1e-3);
    CHECK(std::abs(wide[1] - 0.5) < 1e-3);
    CHECK_THROWS_AS(gaussian_model({5, 2}, 0.0), std::invalid_argument);
}

TEST_CASE("model width from unreduced scales") {
    CHECK(model_width(1000, 3.0) == 1.5);
    CHECK(model_width(1001, 3.0) == 1.5);
    CHECK(model_width(1000, 1e-6) == 0.5);
    CHECK(model_width(1000, 100.0) == 50.0);
}

TEST_CASE("closed-form coefficients") {
    CHECK(closed_form_width() == doctest::Approx(0.91890088117411675).epsilon(1e-13));
    CHECK(closed_form_coefficient(4, 4) == 1.0);
    CHECK(closed_form_coefficient(5, 4) == doctest::Approx(0.55313605637344146).epsilon(1e-13));
    CHECK(closed_form_coefficient(3, 4) == closed_form_coefficient(5, 4));
    double prev = 2.0;
    for (std::int64_t d = 0; d < 10; ++d) {
        const double v = closed_form_coefficient(d, 0);
        CHECK(v < prev);
        prev = v;
    }
    const auto rows = coefficients({1000, 8}, 3.0);
    REQUIRE(rows.size() == 8);
    double norm = 0.0;
    for (const auto& r : rows) {
        norm += r.model_sqrt * r.model_sqrt;
        CHECK(r.closed_form == closed_form_coefficient(static_cast<std::int64_t>(r.k), 4));
    }
    CHECK(std::abs(norm - 1.0) < 1e-12);
    const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.closed_form < b.closed_form;
    });
    CHECK(best->k == collapse_index(1000, 8));
}
