#pragma once

// Deterministic collapse: mixed-state volume bookkeeping, the scale cut and
// two independent routes to the collapsed index.

#include "omqm/constants.hpp"
#include "omqm/numtheory.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace omqm::collapse {

/// Mixed state at a scale. vol_R = alpha ln l1 (curvature alpha/u from the
/// lower cutoff 1), vol_H = alpha * active_loops with one unit volume per
/// loop, active_loops = floor((l1 mod 2n) / 2).
struct OMMixedState {
    OMScale scale;
    double alpha = 0.0;
    double vol_r = 0.0;
    double vol_h = 0.0;
    std::uint64_t active_loops = 0;

    Complex value() const { return std::exp(Complex(vol_r, vol_h)); }
    bool operator==(const OMMixedState&) const = default;
};

/// Throws std::invalid_argument for l1 = 0.
OMMixedState build_mixed_state(const OMScale& scale, const OMConstants& constants);

/// Truncate to 1 <= l1_cut <= state.scale.l1; the tail beyond the cut carries
/// no volume. Throws std::invalid_argument for a cut outside that range.
OMMixedState scale_cut(const OMMixedState& state, std::uint64_t l1_cut);

/// One key-cylinder level: one crossing group per prime factor of j.
struct BraidLevel {
    std::uint64_t index = 1;
    std::vector<numtheory::PrimePower> crossing_profile;
    /// 0 when some crossing group repeats, else (-1)^groups.
    int rotation = 1;

    static BraidLevel make(std::uint64_t j);
};

enum class CollapsePath { KeyCylinder, ZetaStretch };

std::string_view to_string(CollapsePath path);

struct CollapseOutcome {
    std::uint64_t k_star = 0;
    std::vector<int> rotation_trace;
    std::int64_t rotation_sum = 0;
    Complex phase{1.0, 0.0};
    CollapsePath path = CollapsePath::KeyCylinder;

    // Zeta-stretch details; unset on the key-cylinder path.
    bool convention = false;               // k* in {0, 1}, no inversion possible
    std::optional<double> t_star;          // zeta(t*) = k*
    std::optional<double> stretched;       // zeta(t*) as evaluated
    std::optional<double> prime_power_sum; // sum over prime powers q <= Q of q^{-t*}
    std::optional<double> prime_power_tail;
};

/// Walks the levels, consuming two units of the reduced scale per level, and
/// takes each level's rotation from its braid.
CollapseOutcome key_cylinder_collapse(const OMScale& scale, const OMConstants& constants);

inline constexpr double kStretchTolerance = 1e-10;

/// Stretch route: t* = zeta^{-1}(k*), certify |alpha zeta(t*) - alpha k*| <
/// tolerance, then report the prime-power partial sum up to table.bound().
/// Throws std::runtime_error when certification fails.
CollapseOutcome zeta_stretch_collapse(const OMScale& scale, const OMConstants& constants,
                                      const numtheory::ArithmeticTable& table,
                                      double tolerance = kStretchTolerance);

/// Same with a shared table of bound 10^5.
CollapseOutcome zeta_stretch_collapse(const OMScale& scale, const OMConstants& constants,
                                      double tolerance = kStretchTolerance);

}  // namespace omqm::collapse
