#pragma once

// Weierstrass p and Eisenstein-series numerics over a period lattice, the
// mixed-state Fourier form and its claimed identities.

#include "omqm/claim.hpp"
#include "omqm/constants.hpp"

#include <vector>

namespace omqm::elliptic {

template <typename T>
struct Bounded {
    T value;
    double error_bound;
};

/// Period lattice spanned by (omega1, omega2) with Im(omega2 / omega1) > 0.
///
/// A Lagrange-Gauss reduced basis of the same lattice is kept alongside the
/// user basis; all evaluation runs on the reduced one.
class Lattice {
public:
    /// Throws std::invalid_argument for collinear periods or Im(tau) <= 0.
    Lattice(Complex omega1, Complex omega2);

    static Lattice from_tau(Complex tau) { return Lattice(1.0, tau); }
    static Lattice square() { return Lattice(1.0, Complex(0.0, 1.0)); }
    static Lattice hexagonal() { return Lattice(1.0, std::polar(1.0, kPi / 3.0)); }

    Complex omega1() const { return omega1_; }
    Complex omega2() const { return omega2_; }
    Complex tau() const { return omega2_ / omega1_; }

    Complex reduced_omega1() const { return red1_; }
    Complex reduced_omega2() const { return red2_; }
    /// Reduced modulus: |Re| <= 1/2, |tau| >= 1, Im > 0.
    Complex reduced_tau() const { return red2_ / red1_; }

    /// Lattice point closest to z.
    Complex nearest_point(Complex z) const;
    /// Length of the shortest nonzero lattice vector.
    double min_norm() const { return std::abs(red1_); }

private:
    Complex omega1_, omega2_;
    Complex red1_, red2_;
};

enum class InvariantMethod { LatticeSum, QExpansion };

struct WeierstrassInvariants {
    Complex g2;
    Complex g3;
    InvariantMethod method;
    double error_bound;
};

/// G_k = sum over nonzero lattice points of lambda^{-k}, summed over
/// expanding squares of coefficient radius R in the reduced basis.
/// Richardson extrapolation against the radius R/2 removes the leading
/// O(R^{2-k}) tail; error_bound is the size of that correction.
/// k must be even and >= 4, R >= 50.
Bounded<Complex> eisenstein_lattice_sum(const Lattice& lattice, int k, int radius = 200);

/// g2 = 60 G4, g3 = 140 G6 from lattice sums.
WeierstrassInvariants invariants_lattice_sum(const Lattice& lattice, int radius = 200);

/// q-expansions for the lattice (1, tau), q = exp(2 pi i tau):
///   g2 = (4/3) pi^4 [1 + 240 sum sigma3(k) q^k]
///   g3 = (8/27) pi^6 [1 - 504 sum sigma5(k) q^k]
/// Requires Im tau > 0.2 (std::domain_error) and cutoff >= 20.
WeierstrassInvariants invariants_q_expansion(Complex tau, unsigned cutoff = 40);

/// Same, for a general lattice, evaluated on the reduced basis and scaled.
WeierstrassInvariants invariants_q_expansion(const Lattice& lattice, unsigned cutoff = 40);

/// Weierstrass p function of a fixed lattice.
///
/// z is first reduced modulo the lattice to the point nearest the origin.
/// Inside 0.8 of the shortest period the Laurent series
/// 1/z^2 + sum_{j>=1} (2j+1) G_{2j+2} z^{2j} is used, with coefficients from
/// the standard recurrence seeded by the q-expansion invariants. Further
/// out (elongated lattices only) the row sum
/// -pi^2 E2 / 3 + pi^2 sum_m csc^2(pi (z + m tau)) takes over.
class WeierstrassP {
public:
    explicit WeierstrassP(const Lattice& lattice);

    const Lattice& lattice() const { return lattice_; }
    const WeierstrassInvariants& invariants() const { return invariants_; }

    /// Throws std::domain_error within 1e-6 |omega1| of a lattice point.
    Bounded<Complex> value(Complex z) const;
    Bounded<Complex> derivative(Complex z) const;

    /// Coefficient of z^{2j} in the Laurent expansion, j >= 1, for the
    /// lattice itself (i.e. (2j+1) G_{2j+2}).
    Complex laurent_coefficient(unsigned j) const;

    /// |p'^2 - 4 p^3 + g2 p + g3| / (1 + |p|^3).
    double ode_residual(Complex z) const;

private:
    struct Normalized {
        Complex w;      // reduced argument in units of the shortest period
        Complex shift;  // lattice point removed
    };
    Normalized normalize(Complex z) const;
    Bounded<Complex> laurent(Complex w, bool derivative) const;
    Bounded<Complex> row_sum(Complex w, bool derivative) const;

    Lattice lattice_;
    WeierstrassInvariants invariants_;
    Complex scale_;      // reduced omega1
    Complex tau_;        // reduced tau
    Complex e2_;         // E2(tau)
    double abs_g4_;      // sum |lambda|^-4 over the normalized lattice
    std::vector<Complex> coeff_;  // normalized c_k, p = 1/w^2 + sum c_k w^{2k-2}
};

Bounded<Complex> wp(Complex z, const Lattice& lattice);
Bounded<Complex> wp_prime(Complex z, const Lattice& lattice);

/// sigma_a(k) for k = 0..cutoff as doubles via a divisor sieve.
std::vector<double> divisor_sigma_table(unsigned a, unsigned cutoff);

/// 1/z^2 + (A+B) + z^2 sum_{k=1..K} (240 A sigma3(k) - 504 z^2 B sigma5(k)) e^{2 k pi i (l1|n)}.
/// Throws std::domain_error at z = 0.
Complex mixed_state_fourier(Complex z, const OMScale& scale, unsigned cutoff);

/// Left side of the claimed delta identity:
/// 240 A sigma3(k) - 504 zeta(k)^2 B sigma5(k), with zeta(1) read as gamma.
double delta_identity_lhs(unsigned k);

/// Records "eq67" (960 A - 504 B against 8) and "eq66" (the delta-like
/// left side for k = 1..12, report only).
std::vector<ClaimRecord> identity_ledger();

}  // namespace omqm::elliptic
