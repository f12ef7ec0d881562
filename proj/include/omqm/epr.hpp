#pragma once

// Two-particle correlated collapse and the entanglement-volume ledger.

#include "omqm/constants.hpp"

#include <cstdint>

namespace omqm::epr {

struct EPRSetup {
    std::uint64_t l1_a = 0;
    std::uint64_t l1_b = 0;
    std::uint64_t b = 0;  // entanglement-box scale
    std::uint64_t n = 2;
    int crossing_parity = 1;

    /// Throws std::invalid_argument for b > min(l1_a, l1_b), n = 0 or a
    /// parity other than +-1.
    void validate() const;
    bool asymmetric() const { return l1_a != l1_b; }
};

struct EPROutcome {
    std::uint64_t k_a = 0;
    std::uint64_t k_b = 0;
    int orient_a = 1;
    int orient_b = -1;
    /// (k - (n - 1) / 2) * orient; for n = 2 this is +-1/2.
    double spin_a = 0.0;
    double spin_b = 0.0;
    bool asymmetric = false;
};

/// k_x = collapse_index(l1_x - b, n); orientations are exactly opposite.
EPROutcome epr_collapse(const EPRSetup& setup);

struct VolumeLedger {
    Complex vol_s1, vol_s2;  // petal volumes
    Complex vol_q1, vol_q2;  // loop volumes
    Complex phi_genus2;      // supplied genus-2 function value
    Complex vol_e;           // entanglement volume
    /// Imaginary part of the principal log of phi_genus2, in (-pi, pi].
    double branch_arg = 0.0;

    Complex component_sum() const { return vol_s1 + vol_s2 + vol_q1 + vol_q2; }
    /// |exp(vol_e + component_sum) - phi_genus2| / max(1, |phi_genus2|).
    double inversion_residual() const;
};

/// vol_e = Log(phi) - (vol_s1 + vol_s2 + vol_q1 + vol_q2) on the principal
/// branch. Throws std::invalid_argument for phi = 0 or non-finite input.
VolumeLedger entanglement_volume(Complex vol_s1, Complex vol_s2, Complex vol_q1, Complex vol_q2,
                                 Complex phi_genus2);

/// Ledger for a symmetric pair at scales l1 - b, volumes from
/// build_mixed_state, phi supplied by the caller.
VolumeLedger pair_volume_ledger(const EPRSetup& setup, const OMConstants& constants,
                                Complex phi_genus2);

}  // namespace omqm::epr
