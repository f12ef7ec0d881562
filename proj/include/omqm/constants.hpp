#pragma once

// Shared constants, the measurement scale type and the scale-reduction
// convention used by every other module.

#include <complex>
#include <cstdint>
#include <numbers>

namespace omqm {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Dimension of the Rossler-like fractal entering the fine-structure formula.
inline constexpr double kRosslerDimension = 2.974283562752;

/// Feigenbaum period-doubling constant (reference digits).
inline constexpr double kFeigenbaumDelta = 4.669201609102990;

inline constexpr double kEulerGamma = std::numbers::egamma;

/// Inverse unit volume D * exp(sqrt(pi * delta)); its reciprocal is the
/// default alpha_tilde.
double fine_structure_inverse(double dimension, double delta);

/// Fixed constants of the calculus. Only the spin sign and alpha_tilde are
/// configurable; everything else is derived.
class OMConstants {
public:
    /// Default: s_tilde = +(i - 1), alpha_tilde from the fine-structure formula.
    OMConstants();
    OMConstants(int s_tilde_sign, double alpha_tilde);

    static OMConstants with_sign(int s_tilde_sign);

    /// P0 tilde = 4 pi^2.
    static constexpr double p0_tilde() { return 4.0 * kPi * kPi; }
    /// c tilde = -2 i pi.
    static Complex c_tilde() { return {0.0, -2.0 * kPi}; }
    /// A = 3*4*pi^4 / (3*60) = pi^4 / 15.
    static constexpr double A() { return 3.0 * 4.0 * kPi * kPi * kPi * kPi / (3.0 * 60.0); }
    /// B = 5*8*pi^6 / (27*140) = 2 pi^6 / 189.
    static constexpr double B() {
        return 5.0 * 8.0 * kPi * kPi * kPi * kPi * kPi * kPi / (27.0 * 140.0);
    }

    int s_tilde_sign() const { return sign_; }
    /// +-(i - 1) depending on the configured sign.
    Complex s_tilde() const { return Complex(-1.0, 1.0) * static_cast<double>(sign_); }
    double alpha_tilde() const { return alpha_; }

private:
    int sign_;
    double alpha_;
};

/// A measurement configuration: scale l1 in Planck-length units and the
/// size n of the base of states.
struct OMScale {
    std::uint64_t l1 = 0;
    std::uint64_t n = 1;

    /// Throws std::invalid_argument when n == 0.
    static OMScale make(std::uint64_t l1, std::uint64_t n);

    friend bool operator==(const OMScale&, const OMScale&) = default;
};

/// z = u + i t: u is the petal (scale) coordinate, t the state index coordinate.
struct ComplexPoint {
    double u = 0.0;
    double t = 0.0;

    Complex value() const { return {u, t}; }
};

/// l1|n, read as l1 mod 2n. floor(result / 2) always lies in [0, n).
/// n must be >= 1 (std::invalid_argument otherwise).
std::uint64_t reduce_scale(std::uint64_t l1, std::uint64_t n);

/// Deterministic collapse outcome k* = floor((l1|n) / 2), in [0, n).
std::uint64_t collapse_index(std::uint64_t l1, std::uint64_t n);

inline std::uint64_t collapse_index(const OMScale& scale) {
    return collapse_index(scale.l1, scale.n);
}

}  // namespace omqm
