#include "omqm/collapse.hpp"
#include "omqm/zeta.hpp"
#include "support/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

using namespace omqm;
using namespace omqm::collapse;

namespace {

double quadrature_volume(double alpha, double l1) {
    auto f = [alpha](double u) { return alpha / u; };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 1.0, l1, 15, 1e-14);
}

}  // namespace

TEST_CASE("mixed state volumes") {
    const OMConstants unit(1, 1.0);
    CHECK(build_mixed_state({1, 5}, unit).vol_r == 0.0);
    const auto s7 = build_mixed_state({7, 2}, unit);
    CHECK(std::abs(s7.vol_r - std::log(7.0)) < 1e-15);
    CHECK(std::abs(s7.vol_r - quadrature_volume(1.0, 7.0)) < 1e-9);
    CHECK(s7.active_loops == 1);
    CHECK(s7.vol_h == 1.0);
    CHECK(std::abs(s7.value() - std::exp(Complex(std::log(7.0), 1.0))) < 1e-14);
    CHECK_THROWS_AS(build_mixed_state({0, 2}, unit), std::invalid_argument);

    oracle::Gen g(31);
    const OMConstants c;
    for (int i = 0; i < 200; ++i) {
        const auto l1 = g.uint(1, 1'000'000);
        const auto n = g.uint(1, 64);
        const auto s = build_mixed_state({l1, n}, c);
        CHECK(std::abs(s.vol_r - quadrature_volume(c.alpha_tilde(), static_cast<double>(l1))) < 1e-9);
        CHECK(s.active_loops == collapse_index(l1, n));
        CHECK(s.vol_h == doctest::Approx(c.alpha_tilde() * static_cast<double>(s.active_loops)));
    }
}

TEST_CASE("scale cut") {
    const OMConstants c;
    const auto s = build_mixed_state({1000, 9}, c);
    CHECK(scale_cut(s, 1000) == s);
    CHECK(scale_cut(s, 1).vol_r == 0.0);
    for (std::uint64_t cut : {2ULL, 17ULL, 500ULL, 999ULL}) {
        CHECK(scale_cut(s, cut) == build_mixed_state({cut, 9}, c));
    }
    CHECK_THROWS_AS(scale_cut(s, 1001), std::invalid_argument);
    CHECK_THROWS_AS(scale_cut(s, 0), std::invalid_argument);
}

TEST_CASE("braid rotation is the Mobius function") {
    for (std::uint64_t j = 1; j <= 10000; ++j) {
        const auto level = BraidLevel::make(j);
        REQUIRE(level.rotation == oracle::mobius(j));
        std::uint64_t prod = 1;
        for (const auto& [p, e] : level.crossing_profile) {
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        REQUIRE(prod == j);
    }
}

TEST_CASE("key-cylinder examples") {
    const OMConstants c;
    const auto a = key_cylinder_collapse({7, 2}, c);
    CHECK(a.k_star == 1);
    CHECK(a.rotation_trace == std::vector<int>{1});
    CHECK(a.rotation_sum == 1);
    CHECK(std::abs(a.phase - std::polar(1.0, c.alpha_tilde())) < 1e-15);
    CHECK(a.path == CollapsePath::KeyCylinder);

    const auto b = key_cylinder_collapse({4, 2}, c);
    CHECK(b.k_star == 0);
    CHECK(b.rotation_trace.empty());
    CHECK(b.phase == Complex(1.0, 0.0));

    const auto d = key_cylinder_collapse({26, 7}, c);
    CHECK(d.k_star == 6);
    CHECK(d.rotation_trace == std::vector<int>{1, -1, -1, 0, -1, 1});
    CHECK(d.rotation_sum == -1);
}

TEST_CASE("rotation sum is the Mertens value") {
    const OMConstants c;
    oracle::Gen g(32);
    std::vector<std::uint64_t> ks{1, 2, 3, 5, 10, 100, 1000, 10000};
    for (int i = 0; i < 40; ++i) ks.push_back(g.uint(1, 10000));
    for (const auto k : ks) {
        const auto out = key_cylinder_collapse({2 * k + g.uint(0, 1), 10001}, c);
        REQUIRE(out.k_star == k);
        CHECK(out.rotation_sum == oracle::mertens(k));
        CHECK(std::abs(std::abs(out.phase) - 1.0) < 1e-15);
    }
}

TEST_CASE("zeta-stretch path") {
    const OMConstants c;
    const auto two = zeta_stretch_collapse({4, 3}, c);
    REQUIRE(two.k_star == 2);
    REQUIRE(two.t_star.has_value());
    CHECK(*two.t_star == doctest::Approx(1.7286472389981836).epsilon(1e-10));
    CHECK(std::abs(zeta::zeta_real(*two.t_star) - 2.0) < 1e-10);
    CHECK(!two.convention);
    CHECK(two.path == CollapsePath::ZetaStretch);

    for (const std::uint64_t l1 : {0ULL, 1ULL, 2ULL, 3ULL}) {
        const auto conv = zeta_stretch_collapse({l1, 5}, c);
        CHECK(conv.convention);
        CHECK(!conv.t_star.has_value());
        CHECK(conv.k_star == l1 / 2);
    }
    CHECK(zeta_stretch_collapse({0, 5}, c).phase == Complex(1.0, 0.0));
    CHECK_THROWS_AS(zeta_stretch_collapse({4, 3}, c, 1e-30), std::runtime_error);
}

TEST_CASE("prime-power partial sum") {
    const OMConstants c;
    const numtheory::ArithmeticTable table(2000);
    const auto out = zeta_stretch_collapse({13, 9}, c, table);
    REQUIRE(out.k_star == 6);
    const double t = *out.t_star;
    double expected = 0.0;
    for (std::uint64_t q = 2; q <= 2000; ++q) {
        if (oracle::von_mangoldt(q) > 0.0) expected += std::pow(static_cast<double>(q), -t);
    }
    CHECK(*out.prime_power_sum == doctest::Approx(expected).epsilon(1e-13));
    CHECK(*out.prime_power_tail == doctest::Approx(std::pow(2000.0, 1.0 - t) / (t - 1.0)));
    // Prime powers are a strict subset of the integers >= 2.
    CHECK(*out.prime_power_sum < *out.stretched - 1.0);
}

TEST_CASE("both paths agree") {
    const OMConstants c;
    oracle::Gen g(33);
    for (int i = 0; i < 1000; ++i) {
        const OMScale s{g.uint(0, 1'000'000), g.uint(1, 64)};
        const auto a = key_cylinder_collapse(s, c);
        const auto b = zeta_stretch_collapse(s, c);
        REQUIRE(a.k_star == b.k_star);
        REQUIRE(a.phase == b.phase);
        REQUIRE(a.rotation_trace == b.rotation_trace);
        REQUIRE(a.rotation_sum == b.rotation_sum);
    }
}

TEST_CASE("collapse is periodic in 2n and deterministic") {
    const OMConstants c;
    oracle::Gen g(34);
    for (int i = 0; i < 300; ++i) {
        const auto n = g.uint(1, 64);
        const auto l1 = g.uint(0, 1'000'000);
        const auto a = key_cylinder_collapse({l1, n}, c);
        const auto b = key_cylinder_collapse({l1 + 2 * n, n}, c);
        CHECK(a.k_star == b.k_star);
        CHECK(a.phase == b.phase);
        const auto z1 = zeta_stretch_collapse({l1, n}, c);
        const auto z2 = zeta_stretch_collapse({l1, n}, c);
        CHECK(z1.t_star == z2.t_star);
        CHECK(z1.phase == z2.phase);
    }
}
