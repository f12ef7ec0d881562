#include "omqm/epr.hpp"

#include "omqm/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omqm::epr {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void EPRSetup::validate() const {
    if (n == 0) {
        throw std::invalid_argument("epr: n must be >= 1");
    }
    if (b > std::min(l1_a, l1_b)) {
        throw std::invalid_argument("epr: box scale b exceeds a particle scale");
    }
    if (crossing_parity != 1 && crossing_parity != -1) {
        throw std::invalid_argument("epr: crossing parity must be +1 or -1");
    }
}

EPROutcome epr_collapse(const EPRSetup& setup) {
    setup.validate();
    EPROutcome out;
    out.k_a = collapse_index(setup.l1_a - setup.b, setup.n);
    out.k_b = collapse_index(setup.l1_b - setup.b, setup.n);
    out.orient_a = setup.crossing_parity;
    out.orient_b = -setup.crossing_parity;
    const double mid = (static_cast<double>(setup.n) - 1.0) / 2.0;
    out.spin_a = (static_cast<double>(out.k_a) - mid) * out.orient_a;
    out.spin_b = (static_cast<double>(out.k_b) - mid) * out.orient_b;
    out.asymmetric = setup.asymmetric();
    return out;
}

double VolumeLedger::inversion_residual() const {
    return std::abs(std::exp(vol_e + component_sum()) - phi_genus2) /
           std::max(1.0, std::abs(phi_genus2));
}

VolumeLedger entanglement_volume(Complex vol_s1, Complex vol_s2, Complex vol_q1, Complex vol_q2,
                                 Complex phi_genus2) {
    if (!finite(vol_s1) || !finite(vol_s2) || !finite(vol_q1) || !finite(vol_q2) ||
        !finite(phi_genus2)) {
        throw std::invalid_argument("entanglement_volume: inputs must be finite");
    }
    if (phi_genus2 == Complex(0.0, 0.0)) {
        throw std::invalid_argument("entanglement_volume: phi_genus2 must be nonzero");
    }
    VolumeLedger v{vol_s1, vol_s2, vol_q1, vol_q2, phi_genus2, {}, 0.0};
    const Complex log_phi = std::log(phi_genus2);
    v.branch_arg = log_phi.imag();
    v.vol_e = log_phi - v.component_sum();
    return v;
}

VolumeLedger pair_volume_ledger(const EPRSetup& setup, const OMConstants& constants,
                                Complex phi_genus2) {
    setup.validate();
    const auto a = collapse::build_mixed_state({setup.l1_a - setup.b, setup.n}, constants);
    const auto b = collapse::build_mixed_state({setup.l1_b - setup.b, setup.n}, constants);
    return entanglement_volume(a.vol_r, b.vol_r, a.vol_h, b.vol_h, phi_genus2);
}

}  // namespace omqm::epr
