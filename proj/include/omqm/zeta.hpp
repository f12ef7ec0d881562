#pragma once

// Riemann zeta machinery: Euler-Maclaurin evaluation, real inversion, the
// von Mangoldt series for zeta'/zeta, critical-line zeros via the
// Riemann-Siegel Z function, and the OM-energy evaluator.

#include "omqm/constants.hpp"
#include "omqm/numtheory.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace omqm::zeta {

/// A value together with a bound on its truncation error.
template <typename T>
struct Bounded {
    T value;
    double error_bound;
};

/// Euler-Maclaurin sum with N head terms. The error bound is the Backlund
/// estimate |s + 2M + 1| / (Re s + 2M + 1) * |T_{M+1}|. Requires Re s > 0
/// and s != 1.
Bounded<Complex> euler_maclaurin(Complex s, unsigned head_terms, double tolerance);

/// zeta(s) for real s > 1 + 1e-6, with the truncation bound below
/// tolerance * max(1, |zeta(s)|). Throws std::domain_error near the pole.
double zeta_real(double s, double tolerance = 1e-12);
Bounded<double> zeta_real_bounded(double s, double tolerance = 1e-12);

/// zeta on the half plane Re s > 0 away from s = 1; the head length grows
/// with |Im s|, good to heights of a few hundred.
Complex zeta_complex(Complex s, double tolerance = 1e-13);

/// Unique t > 1 with zeta(t) = y, to |zeta(t) - y| <= tolerance * y or the
/// resolution of t in double precision, whichever is larger. Throws
/// std::invalid_argument for y <= 1 and std::domain_error when y is too
/// large to bracket above 1 + 1e-6.
double zeta_inverse(double y, double tolerance = 1e-10);

/// -sum_{q <= cutoff} Lambda(q) / q^t. error_bound is the tail estimate
/// cutoff^{1-t} / (t - 1).
Bounded<double> log_derivative_series(double t, const numtheory::ArithmeticTable& table,
                                      std::uint64_t cutoff);
Bounded<double> log_derivative_series(double t, std::uint64_t cutoff);

/// d/dt ln zeta(t) by a five-point stencil on zeta_real.
double log_derivative_numeric(double t, double step = 1e-3);

/// Riemann-Siegel theta, Im lnGamma(1/4 + i t / 2) - (t / 2) ln pi, with
/// lnGamma from Stirling's series after an upward shift.
double riemann_siegel_theta(double t);

/// Z(t) = e^{i theta(t)} zeta(1/2 + i t), real for real t.
double riemann_siegel_z(double t);

/// Smooth Riemann-von Mangoldt counting estimate (T / 2pi) ln(T / 2pi e) + 7/8.
double zero_counting_estimate(double height);

/// Imaginary parts of critical-line zeros, each bracketed by a sign change
/// of Z no wider than precision.
class ZetaZeroTable {
public:
    ZetaZeroTable() = default;
    /// Validates the ordering invariants; throws std::invalid_argument.
    ZetaZeroTable(std::vector<double> zeros, double precision);

    const std::vector<double>& zeros() const { return zeros_; }
    std::size_t count() const { return zeros_.size(); }
    double precision() const { return precision_; }
    /// 1-based access; throws std::out_of_range.
    double zero(std::size_t j) const;

    /// Header "# omqm-zeros v1 precision=<p>" then one decimal per line.
    void write(std::ostream& os) const;
    static ZetaZeroTable read(std::istream& is);

    /// True when Z changes sign across [z - precision, z + precision] for
    /// every entry.
    bool verify_sign_changes() const;

private:
    std::vector<double> zeros_;
    double precision_ = 0.0;
};

inline constexpr double kMaxZeroHeight = 120.0;
inline constexpr double kMinZeroPrecision = 1e-8;

/// All zeros with imaginary part in (0, t_max]. Scans Z on a fixed grid
/// split into disjoint intervals evaluated concurrently, then bisects.
ZetaZeroTable find_zeros(double t_max, double precision);

/// m tilde(q) = s tilde * Lambda(q).
Complex om_mass(std::uint64_t q, const OMConstants& constants);

/// E^2 / (4 pi^2)^2 = s^2 sigma_j ln(q) q + m(q) + 2 m(q)^2 for one prime
/// power q paired with the j-th zero (1-based). q must be a prime power.
Complex om_energy_sq(std::uint64_t q, std::size_t zero_index, const ZetaZeroTable& zeros,
                     const OMConstants& constants);

}  // namespace omqm::zeta
