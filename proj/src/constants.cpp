#include "omqm/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace omqm {

double fine_structure_inverse(double dimension, double delta) {
    return dimension * std::exp(std::sqrt(kPi * delta));
}

OMConstants::OMConstants()
    : OMConstants(+1, 1.0 / fine_structure_inverse(kRosslerDimension, kFeigenbaumDelta)) {}

OMConstants::OMConstants(int s_tilde_sign, double alpha_tilde)
    : sign_(s_tilde_sign), alpha_(alpha_tilde) {
    if (sign_ != 1 && sign_ != -1) {
        throw std::invalid_argument("s_tilde_sign must be +1 or -1, got " +
                                    std::to_string(s_tilde_sign));
    }
    if (!std::isfinite(alpha_) || alpha_ <= 0.0) {
        throw std::invalid_argument("alpha_tilde must be a positive finite number");
    }
}

OMConstants OMConstants::with_sign(int s_tilde_sign) {
    OMConstants c;
    return OMConstants(s_tilde_sign, c.alpha_tilde());
}

OMScale OMScale::make(std::uint64_t l1, std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("OMScale: base size n must be >= 1");
    }
    return OMScale{l1, n};
}

std::uint64_t reduce_scale(std::uint64_t l1, std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("reduce_scale: n must be >= 1");
    }
    // 2n overflows only for n > 2^63, which no caller can construct sensibly.
    if (n > (std::uint64_t{1} << 62)) {
        throw std::invalid_argument("reduce_scale: n too large");
    }
    return l1 % (2 * n);
}

std::uint64_t collapse_index(std::uint64_t l1, std::uint64_t n) {
    return reduce_scale(l1, n) / 2;
}

}  // namespace omqm
