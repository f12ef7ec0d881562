#include "omqm/elliptic.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace omqm;
using namespace omqm::elliptic;

namespace {

const Complex kRho = std::polar(1.0, kPi / 3.0);

// g2 of the lattice (1, i) in closed form: Gamma(1/4)^8 / (16 pi^2).
double square_g2() { return std::pow(std::tgamma(0.25), 8) / (16.0 * kPi * kPi); }

// p(z) summed directly over expanding squares of the basis (a, b) with one
// Richardson step against half the radius.
Complex direct_wp(Complex z, Complex a, Complex b, int radius) {
    auto partial = [&](int r_max) {
        Complex s = 1.0 / (z * z);
        for (int m = -r_max; m <= r_max; ++m) {
            for (int n = -r_max; n <= r_max; ++n) {
                if (m == 0 && n == 0) continue;
                const Complex l = static_cast<double>(m) * a + static_cast<double>(n) * b;
                s += 1.0 / ((z - l) * (z - l)) - 1.0 / (l * l);
            }
        }
        return s;
    };
    const Complex full = partial(radius);
    const Complex half = partial(radius / 2);
    return full + (full - half) / 3.0;
}

// 1 + c sum sigma_a(k) q^k with an independent divisor sum.
Complex eisenstein_q(Complex tau, unsigned a, double c) {
    const Complex q = std::exp(Complex(0.0, 2.0 * kPi) * tau);
    Complex s = 0.0;
    Complex qk = 1.0;
    for (std::uint64_t k = 1; k <= 80; ++k) {
        qk *= q;
        s += oracle::sigma(a, k).convert_to<double>() * qk;
    }
    return 1.0 + c * s;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("lattice construction and reduction") {
    CHECK_THROWS_AS(Lattice(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(Lattice(Complex(1, 1), Complex(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(Lattice(1.0, Complex(0, -1)), std::invalid_argument);
    CHECK_THROWS_AS(Lattice(0.0, Complex(0, 1)), std::invalid_argument);

    oracle::Gen g(21);
    for (int i = 0; i < 500; ++i) {
        const Complex tau{g.real(-5, 5), g.real(0.05, 4)};
        const Lattice l = Lattice::from_tau(tau);
        const Complex r = l.reduced_tau();
        CHECK(r.imag() > 0.0);
        CHECK(std::abs(r.real()) <= 0.5 + 1e-12);
        CHECK(std::abs(r) >= 1.0 - 1e-12);
        // Same covolume.
        CHECK(std::abs((l.reduced_omega2() * std::conj(l.reduced_omega1())).imag()) ==
              doctest::Approx(tau.imag()).epsilon(1e-9));
    }
}

TEST_CASE("nearest lattice point") {
    oracle::Gen g(22);
    for (const Lattice& l : {Lattice::square(), Lattice::hexagonal(), Lattice(Complex(0.3, 0.1), Complex(1.2, 2.9))}) {
        for (int i = 0; i < 200; ++i) {
            const Complex z = g.complex(-6, 6);
            const Complex p = l.nearest_point(z);
            double best = 1e300;
            for (int m = -40; m <= 40; ++m) {
                for (int n = -40; n <= 40; ++n) {
                    best = std::min(best, std::abs(z - (static_cast<double>(m) * l.omega1() +
                                                        static_cast<double>(n) * l.omega2())));
                }
            }
            CHECK(std::abs(z - p) == doctest::Approx(best).epsilon(1e-12));
        }
    }
}

TEST_CASE("Eisenstein lattice sums") {
    const auto sq6 = eisenstein_lattice_sum(Lattice::square(), 6);
    CHECK(std::abs(sq6.value) <= sq6.error_bound + 1e-12);
    const auto hex4 = eisenstein_lattice_sum(Lattice::hexagonal(), 4);
    CHECK(std::abs(hex4.value) <= hex4.error_bound);
    CHECK(std::abs(hex4.value) < 1e-5);

    const auto sq4 = eisenstein_lattice_sum(Lattice::square(), 4, 200);
    CHECK(rel(sq4.value, square_g2() / 60.0) < 1e-6);

    CHECK_THROWS_AS(eisenstein_lattice_sum(Lattice::square(), 5), std::invalid_argument);
    CHECK_THROWS_AS(eisenstein_lattice_sum(Lattice::square(), 2), std::invalid_argument);
    CHECK_THROWS_AS(eisenstein_lattice_sum(Lattice::square(), 4, 49), std::invalid_argument);
}

TEST_CASE("lattice sums and q-expansions agree") {
    for (const Complex tau : {Complex(0, 1), Complex(0, 2), kRho + Complex(0, 0.1)}) {
        const Lattice l = Lattice::from_tau(tau);
        const auto g4 = eisenstein_lattice_sum(l, 4);
        const auto g6 = eisenstein_lattice_sum(l, 6);
        const auto q = invariants_q_expansion(tau);
        CHECK(q.method == InvariantMethod::QExpansion);
        CHECK(rel(g4.value, q.g2 / 60.0) < 1e-6);
        // G6 vanishes for the square lattice, so compare on the G4 scale there.
        CHECK(std::abs(g6.value - q.g3 / 140.0) < 1e-6 * std::max(std::abs(g6.value), std::abs(g4.value)));
        const auto ls = invariants_lattice_sum(l);
        CHECK(ls.method == InvariantMethod::LatticeSum);
        CHECK(std::abs(ls.g2 - 60.0 * g4.value) < 1e-12 * std::abs(ls.g2));
    }
}

TEST_CASE("q-expansion invariants") {
    const auto sq = invariants_q_expansion(Complex(0, 1));
    CHECK(sq.g2.real() > 0.0);
    CHECK(std::abs(sq.g2.imag()) < 1e-12);
    CHECK(sq.g2.real() == doctest::Approx(square_g2()).epsilon(1e-12));
    CHECK(std::abs(sq.g3) < 1e-10);
    CHECK(sq.error_bound < 1e-12);

    const auto hex = invariants_q_expansion(kRho);
    CHECK(std::abs(hex.g2) < 1e-10);

    const auto a = invariants_q_expansion(Complex(0, 2), 20);
    const auto b = invariants_q_expansion(Complex(0, 2), 30);
    CHECK(std::abs(a.g2 - b.g2) < 1e-10);
    CHECK(std::abs(a.g3 - b.g3) < 1e-10);

    CHECK_THROWS_AS(invariants_q_expansion(Complex(0.1, 0.2)), std::domain_error);
    CHECK_THROWS_AS(invariants_q_expansion(Complex(0, 1), 19), std::invalid_argument);
}

TEST_CASE("invariants transform with the lattice") {
    const auto base = invariants_q_expansion(Lattice::square());
    const auto scaled = invariants_q_expansion(Lattice(2.0, Complex(0, 2)));
    CHECK(rel(scaled.g2, base.g2 / 16.0) < 1e-13);
    // Non-reduced basis of the same lattice.
    const auto same = invariants_q_expansion(Lattice(Complex(1, 0), Complex(3, 1)));
    CHECK(rel(same.g2, base.g2) < 1e-12);
    const Complex w{0.8, 0.6};
    const auto rot = invariants_q_expansion(Lattice(w, w * kRho));
    const auto hex = invariants_q_expansion(Lattice::hexagonal());
    CHECK(rel(rot.g3, hex.g3 / std::pow(w, 6)) < 1e-12);
}

TEST_CASE("p is doubly periodic and even") {
    oracle::Gen g(23);
    for (const Lattice& l : {Lattice::square(), Lattice::hexagonal()}) {
        const WeierstrassP wp(l);
        for (int i = 0; i < 100; ++i) {
            const Complex z = g.complex(-1, 1);
            const Complex p = wp.value(z).value;
            for (int m = -2; m <= 2; ++m) {
                for (int n = -2; n <= 2; ++n) {
                    const Complex shift = static_cast<double>(m) * l.omega1() + static_cast<double>(n) * l.omega2();
                    REQUIRE(std::abs(wp.value(z + shift).value - p) < 1e-8 * std::max(1.0, std::abs(p)));
                }
            }
            CHECK(std::abs(wp.value(-z).value - p) < 1e-12 * std::max(1.0, std::abs(p)));
            CHECK(std::abs(wp.derivative(-z).value + wp.derivative(z).value) <
                  1e-12 * std::max(1.0, std::abs(wp.derivative(z).value)));
        }
    }
}

TEST_CASE("standard differential equation") {
    oracle::Gen g(24);
    for (const Lattice& l : {Lattice::square(), Lattice::hexagonal(), Lattice::from_tau({0.3, 2.5})}) {
        const WeierstrassP wp(l);
        const Complex g2 = wp.invariants().g2;
        for (int i = 0; i < 100; ++i) {
            const Complex z = g.complex(-2, 2);
            CHECK(wp.ode_residual(z) < 1e-8);
            if (std::abs(z - l.nearest_point(z)) < 0.1) continue;
            // p'' = 6 p^2 - g2 / 2 by a fourth-order difference of p'.
            const double h = 1e-3;
            const auto dp = [&](double s) { return wp.derivative(z + s).value; };
            const Complex d2 = (8.0 * (dp(h) - dp(-h)) - (dp(2 * h) - dp(-2 * h))) / (12 * h);
            const Complex p = wp.value(z).value;
            const Complex rhs = 6.0 * p * p - g2 / 2.0;
            CHECK(std::abs(d2 - rhs) < 1e-6 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("p against a direct lattice sum") {
    struct Case {
        Lattice l;
        Complex z;
    };
    const Case cases[] = {
        {Lattice::square(), {0.31, 0.17}},
        {Lattice::square(), {0.5, 0.5}},
        {Lattice::hexagonal(), {0.2, -0.4}},
        // Elongated: z sits beyond the Laurent disk and takes the row sum.
        {Lattice::from_tau({0.3, 2.5}), {0.45, 1.2}},
        {Lattice(Complex(0.7, 0.2), Complex(-0.4, 1.9)), {0.1, 0.6}},
    };
    for (const auto& c : cases) {
        const WeierstrassP wp(c.l);
        const Complex expected = direct_wp(c.z, c.l.reduced_omega1(), c.l.reduced_omega2(), 300);
        // p(1/2 + i/2) vanishes on the square lattice, hence the mixed measure.
        const double scale = std::max(1.0, std::abs(expected));
        CHECK(std::abs(wp.value(c.z).value - expected) < 1e-7 * scale);
        CHECK(wp.value(c.z).error_bound < 1e-10 * scale);
    }
}

TEST_CASE("p derivative against central differences") {
    const WeierstrassP wp(Lattice::from_tau({0.3, 2.5}));
    for (const Complex z : {Complex(0.2, 0.1), Complex(0.45, 1.2), Complex(-0.3, -1.0)}) {
        const double h = 1e-5;
        const Complex fd = (wp.value(z + h).value - wp.value(z - h).value) / (2 * h);
        CHECK(rel(wp.derivative(z).value, fd) < 1e-7);
    }
}

TEST_CASE("poles are rejected") {
    const WeierstrassP wp(Lattice::square());
    CHECK_THROWS_AS(wp.value(0.0), std::domain_error);
    CHECK_THROWS_AS(wp.value(Complex(1.0, 1.0) + 1e-8), std::domain_error);
    CHECK_THROWS_AS(wp.derivative(Complex(0, 2)), std::domain_error);
    CHECK_NOTHROW(wp.value(Complex(1e-4, 0)));
    CHECK_THROWS_AS(wp_prime(Complex(3, 0), Lattice::hexagonal()), std::domain_error);
}

TEST_CASE("Laurent coefficients") {
    const WeierstrassP sq(Lattice::square());
    // z^2 coefficient 3 G4 = A E4(i); z^4 coefficient 5 G6 = B E6(i).
    CHECK(rel(sq.laurent_coefficient(1), OMConstants::A() * eisenstein_q({0, 1}, 3, 240.0)) < 1e-13);
    CHECK(std::abs(sq.laurent_coefficient(2) - OMConstants::B() * eisenstein_q({0, 1}, 5, -504.0)) < 1e-10);
    const WeierstrassP hex(Lattice::hexagonal());
    CHECK(rel(hex.laurent_coefficient(2), OMConstants::B() * eisenstein_q(kRho, 5, -504.0)) < 1e-13);
    // Recurrence against an independent G8 lattice sum: c = 7 G8.
    const auto g8 = eisenstein_lattice_sum(Lattice::square(), 8);
    CHECK(rel(sq.laurent_coefficient(3), 7.0 * g8.value) < 1e-9);
    CHECK_THROWS_AS(sq.laurent_coefficient(0), std::out_of_range);
}

TEST_CASE("free functions match the class") {
    const Complex z{0.3, 0.4};
    const WeierstrassP p(Lattice::hexagonal());
    CHECK(wp(z, Lattice::hexagonal()).value == p.value(z).value);
    CHECK(wp_prime(z, Lattice::hexagonal()).value == p.derivative(z).value);
}

TEST_CASE("mixed-state Fourier form") {
    const double ab = OMConstants::A() + OMConstants::B();
    const Complex z{0.3, 0.2};
    CHECK(std::abs(mixed_state_fourier(z, {7, 2}, 0) - (1.0 / (z * z) + ab)) < 1e-14);
    const Complex real = mixed_state_fourier(0.25, {8, 2}, 12);
    CHECK(real.imag() == 0.0);
    // The phase factors are 1 for every scale, so the value does not depend on it.
    CHECK(mixed_state_fourier(z, {7, 2}, 10) == mixed_state_fourier(z, {1000, 13}, 10));
    Complex manual = 1.0 / (z * z) + ab;
    Complex sum = 0.0;
    for (std::uint64_t k = 1; k <= 5; ++k) {
        sum += 240.0 * OMConstants::A() * oracle::sigma(3, k).convert_to<double>() -
               504.0 * z * z * OMConstants::B() * oracle::sigma(5, k).convert_to<double>();
    }
    manual += z * z * sum;
    CHECK(rel(mixed_state_fourier(z, {3, 4}, 5), manual) < 1e-14);
    CHECK_THROWS_AS(mixed_state_fourier(0.0, {3, 4}, 5), std::domain_error);
    CHECK_THROWS_AS(mixed_state_fourier(z, {3, 0}, 5), std::invalid_argument);
}

TEST_CASE("identity ledger") {
    const auto recs = identity_ledger();
    REQUIRE(recs.size() == 2);
    const auto& eq67 = recs[0];
    CHECK(eq67.id == "eq67");
    CHECK(eq67.computed.real() == doctest::Approx(1106.7727937745323).epsilon(1e-12));
    CHECK(eq67.reference->real() == 8.0);
    CHECK(eq67.status == ClaimStatus::Discrepant);

    const auto& eq66 = recs[1];
    CHECK(eq66.id == "eq66");
    CHECK(eq66.status == ClaimStatus::ReportOnly);
    CHECK(!eq66.reference.has_value());
    REQUIRE(eq66.series.size() == 12);
    CHECK(eq66.series[0] == doctest::Approx(-149.79403938447770).epsilon(1e-12));
    CHECK(eq66.series[1] == doctest::Approx(-443807.98966306508).epsilon(1e-11));
    CHECK(eq66.series[2] == doctest::Approx(-1764108.5375032790).epsilon(1e-11));
    CHECK(eq66.series[11] == doctest::Approx(-1319865071.5201826).epsilon(1e-11));
    CHECK(delta_identity_lhs(1) == eq66.series[0]);
    CHECK_THROWS_AS(delta_identity_lhs(0), std::invalid_argument);
}
