#include "omqm/collapse.hpp"

#include "omqm/zeta.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace omqm::collapse {

OMMixedState build_mixed_state(const OMScale& scale, const OMConstants& constants) {
    if (scale.l1 == 0) {
        throw std::invalid_argument("build_mixed_state: l1 must be >= 1 (ln 0)");
    }
    OMMixedState s;
    s.scale = scale;
    s.alpha = constants.alpha_tilde();
    s.active_loops = collapse_index(scale);
    s.vol_r = s.alpha * std::log(static_cast<double>(scale.l1));
    s.vol_h = s.alpha * static_cast<double>(s.active_loops);
    return s;
}

OMMixedState scale_cut(const OMMixedState& state, std::uint64_t l1_cut) {
    if (l1_cut == 0 || l1_cut > state.scale.l1) {
        throw std::invalid_argument("scale_cut: cut must lie in [1, " +
                                    std::to_string(state.scale.l1) + "]");
    }
    OMMixedState s = state;
    s.scale.l1 = l1_cut;
    s.active_loops = collapse_index(s.scale);
    s.vol_r = s.alpha * std::log(static_cast<double>(l1_cut));
    s.vol_h = s.alpha * static_cast<double>(s.active_loops);
    return s;
}

BraidLevel BraidLevel::make(std::uint64_t j) {
    BraidLevel level;
    level.index = j;
    level.crossing_profile = numtheory::factorize(j);
    int sign = 1;
    for (const auto& group : level.crossing_profile) {
        if (group.exponent >= 2) {
            level.rotation = 0;
            return level;
        }
        sign = -sign;
    }
    level.rotation = sign;
    return level;
}

std::string_view to_string(CollapsePath path) {
    return path == CollapsePath::KeyCylinder ? "key-cylinder" : "zeta-stretch";
}

CollapseOutcome key_cylinder_collapse(const OMScale& scale, const OMConstants& constants) {
    CollapseOutcome out;
    out.path = CollapsePath::KeyCylinder;
    std::uint64_t remaining = reduce_scale(scale.l1, scale.n);
    std::uint64_t level = 0;
    while (remaining >= 2) {
        remaining -= 2;
        ++level;
        const int r = BraidLevel::make(level).rotation;
        out.rotation_trace.push_back(r);
        out.rotation_sum += r;
    }
    out.k_star = level;
    out.phase = std::polar(1.0, constants.alpha_tilde() * static_cast<double>(level));
    return out;
}

CollapseOutcome zeta_stretch_collapse(const OMScale& scale, const OMConstants& constants,
                                      const numtheory::ArithmeticTable& table, double tolerance) {
    CollapseOutcome out;
    out.path = CollapsePath::ZetaStretch;
    const std::uint64_t k = collapse_index(scale);
    const double alpha = constants.alpha_tilde();

    if (k <= 1) {
        out.convention = true;
        out.k_star = k;
    } else {
        const double target = static_cast<double>(k);
        const double t = zeta::zeta_inverse(target, 1e-13);
        const double stretched = zeta::zeta_real(t, 1e-14);
        if (!(std::abs(alpha * stretched - alpha * target) < tolerance)) {
            throw std::runtime_error("zeta_stretch_collapse: round trip zeta(t*) = " +
                                     std::to_string(stretched) + " misses " + std::to_string(k));
        }
        out.t_star = t;
        out.stretched = stretched;
        out.k_star = static_cast<std::uint64_t>(std::llround(stretched));

        const std::uint64_t cutoff = table.bound();
        double partial = 0.0;
        for (std::uint64_t q = cutoff; q >= 2; --q) {
            if (table.von_mangoldt(q) != 0.0) {
                partial += std::pow(static_cast<double>(q), -t);
            }
        }
        out.prime_power_sum = partial;
        out.prime_power_tail = std::pow(static_cast<double>(cutoff), 1.0 - t) / (t - 1.0);
    }

    for (std::uint64_t j = 1; j <= out.k_star; ++j) {
        const int mu = table.mobius(j);
        out.rotation_trace.push_back(mu);
    }
    out.rotation_sum = out.k_star == 0 ? 0 : table.mertens(out.k_star);
    out.phase = std::polar(1.0, alpha * static_cast<double>(out.k_star));
    return out;
}

CollapseOutcome zeta_stretch_collapse(const OMScale& scale, const OMConstants& constants,
                                      double tolerance) {
    static const numtheory::ArithmeticTable table(100000);
    return zeta_stretch_collapse(scale, constants, table, tolerance);
}

}  // namespace omqm::collapse
