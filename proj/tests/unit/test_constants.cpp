#include "omqm/constants.hpp"
#include "support/oracles.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <doctest.h>

using namespace omqm;
using boost::multiprecision::cpp_dec_float_50;

TEST_CASE("A and B agree with a 50-digit evaluation") {
    const cpp_dec_float_50 pi = boost::math::constants::pi<cpp_dec_float_50>();
    const cpp_dec_float_50 a = pow(pi, 4) / 15;
    const cpp_dec_float_50 b = 2 * pow(pi, 6) / 189;
    CHECK(std::abs(OMConstants::A() - a.convert_to<double>()) / OMConstants::A() < 1e-12);
    CHECK(std::abs(OMConstants::B() - b.convert_to<double>()) / OMConstants::B() < 1e-12);
    CHECK(OMConstants::A() == doctest::Approx(6.4939394022668).epsilon(1e-13));
    CHECK(OMConstants::B() == doctest::Approx(10.1734306198445).epsilon(1e-13));
}

TEST_CASE("fixed constants") {
    CHECK(OMConstants::p0_tilde() == doctest::Approx(4 * kPi * kPi));
    CHECK(OMConstants::c_tilde() == Complex(0.0, -2.0 * kPi));
}

TEST_CASE("default alpha is the inverse of D exp(sqrt(pi delta))") {
    const OMConstants c;
    CHECK(c.s_tilde_sign() == 1);
    CHECK(1.0 / c.alpha_tilde() == doctest::Approx(137.000000395551).epsilon(1e-12));
    CHECK(fine_structure_inverse(1.0, kFeigenbaumDelta) == doctest::Approx(std::exp(std::sqrt(kPi * kFeigenbaumDelta))));
}

TEST_CASE("s tilde follows the sign and squares to -2i either way") {
    const Complex plus = OMConstants::with_sign(1).s_tilde();
    const Complex minus = OMConstants::with_sign(-1).s_tilde();
    CHECK(plus == Complex(-1.0, 1.0));
    CHECK(minus == Complex(1.0, -1.0));
    CHECK(std::abs(plus * plus - Complex(0.0, -2.0)) < 1e-15);
    CHECK(std::abs(minus * minus - Complex(0.0, -2.0)) < 1e-15);
}

TEST_CASE("constant validation") {
    CHECK_THROWS_AS(OMConstants(0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(OMConstants(2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(OMConstants(1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(OMConstants(1, std::nan("")), std::invalid_argument);
    CHECK_NOTHROW(OMConstants(-1, 1.0));
}

TEST_CASE("scale reduction examples") {
    CHECK(reduce_scale(7, 2) == 3);
    CHECK(collapse_index(7, 2) == 1);
    CHECK(collapse_index(4, 2) == 0);
    CHECK(collapse_index(26, 7) == 6);
    CHECK(collapse_index(0, 1) == 0);
    CHECK_THROWS_AS(reduce_scale(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(OMScale::make(5, 0), std::invalid_argument);
    CHECK(OMScale::make(5, 3) == OMScale{5, 3});
}

TEST_CASE("collapse index stays in range and is 2n-periodic") {
    oracle::Gen g(11);
    for (int i = 0; i < 5000; ++i) {
        const auto n = g.uint(1, 1000);
        const auto l1 = g.uint(0, 1'000'000'000);
        const auto k = collapse_index(l1, n);
        CHECK(k < n);
        CHECK(collapse_index(l1 + 2 * n, n) == k);
        // Every outcome is hit by exactly two residues.
        CHECK((2 * k == reduce_scale(l1, n) || 2 * k + 1 == reduce_scale(l1, n)));
    }
}
