#include "omqm/zeta.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

namespace omqm::zeta {

namespace {

constexpr unsigned kMaxCorrectionTerms = 60;

// B_{2j} / (2j)!, j = 1..kMaxCorrectionTerms+1.
const std::vector<double>& bernoulli_ratios() {
    static const std::vector<double> ratios = [] {
        std::vector<double> r(kMaxCorrectionTerms + 2, 0.0);
        for (unsigned j = 1; j < r.size(); ++j) {
            r[j] = boost::math::bernoulli_b2n<double>(static_cast<int>(j)) /
                   boost::math::factorial<double>(2 * j);
        }
        return r;
    }();
    return ratios;
}

// ln Gamma(z) for Re z > 0, continuous branch.
Complex log_gamma(Complex z) {
    constexpr int kShift = 12;
    Complex shift_sum = 0.0;
    for (int k = 0; k < kShift; ++k) {
        shift_sum += std::log(z + static_cast<double>(k));
    }
    const Complex w = z + static_cast<double>(kShift);
    Complex series = 0.0;
    const Complex w2 = w * w;
    Complex wpow = w;
    for (int j = 1; j <= 10; ++j) {
        const double b = boost::math::bernoulli_b2n<double>(j);
        series += b / (2.0 * j * (2.0 * j - 1.0)) / wpow;
        wpow *= w2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series - shift_sum;
}

}  // namespace

Bounded<Complex> euler_maclaurin(Complex s, unsigned head_terms, double tolerance) {
    if (s.real() <= 0.0) {
        throw std::domain_error("euler_maclaurin: requires Re s > 0");
    }
    if (std::abs(s - 1.0) < 1e-12) {
        throw std::domain_error("euler_maclaurin: pole at s = 1");
    }
    const unsigned n = std::max(head_terms, 2u);
    Complex head = 0.0;
    // Summing small terms first keeps the rounding error down.
    for (unsigned k = n - 1; k >= 1; --k) {
        head += std::exp(-s * std::log(static_cast<double>(k)));
    }
    const double dn = static_cast<double>(n);
    const Complex n_pow = std::exp(-s * std::log(dn));  // N^{-s}
    Complex total = head + n_pow * dn / (s - 1.0) + 0.5 * n_pow;

    const auto& ratios = bernoulli_ratios();
    // T_j = B_{2j}/(2j)! * s (s+1) ... (s+2j-2) * N^{-s-2j+1}
    Complex rising = s;            // s (s+1) ... (s+2j-2)
    Complex power = n_pow / dn;    // N^{-s-2j+1}
    const double scale = std::max(1.0, std::abs(total));
    double bound = std::numeric_limits<double>::infinity();
    double previous = std::numeric_limits<double>::infinity();
    for (unsigned j = 1; j <= kMaxCorrectionTerms + 1; ++j) {
        const Complex term = ratios[j] * rising * power;
        const double mag = std::abs(term);
        // Backlund: the remainder after j-1 correction terms is bounded by
        // |s + 2j - 1| / (Re s + 2j - 1) * |T_j|.
        const double factor = std::abs(s + (2.0 * j - 1.0)) / (s.real() + 2.0 * j - 1.0);
        bound = factor * mag;
        if (bound <= tolerance * scale * 1e-2 || mag > previous ||
            j == kMaxCorrectionTerms + 1) {
            break;
        }
        total += term;
        previous = mag;
        rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
        power /= dn * dn;
    }
    return {total, bound};
}

Bounded<double> zeta_real_bounded(double s, double tolerance) {
    if (!(s > 1.0 + 1e-6)) {
        throw std::domain_error("zeta_real: s must exceed 1 + 1e-6, got " + std::to_string(s));
    }
    for (unsigned head = 10; head <= 10240; head *= 2) {
        const auto r = euler_maclaurin(Complex(s, 0.0), head, tolerance);
        const double v = r.value.real();
        if (r.error_bound <= tolerance * std::max(1.0, std::abs(v))) {
            return {v, r.error_bound};
        }
    }
    throw std::runtime_error("zeta_real: truncation bound not met");
}

double zeta_real(double s, double tolerance) {
    return zeta_real_bounded(s, tolerance).value;
}

Complex zeta_complex(Complex s, double tolerance) {
    const double height = std::abs(s.imag());
    unsigned head = static_cast<unsigned>(std::ceil(height / kPi)) + 10;
    for (int attempt = 0; attempt < 6; ++attempt, head *= 2) {
        const auto r = euler_maclaurin(s, head, tolerance);
        if (r.error_bound <= tolerance * std::max(1.0, std::abs(r.value))) {
            return r.value;
        }
    }
    throw std::runtime_error("zeta_complex: truncation bound not met");
}

double zeta_inverse(double y, double tolerance) {
    if (!(y > 1.0) || !std::isfinite(y)) {
        throw std::invalid_argument("zeta_inverse: requires y > 1");
    }
    // zeta(1 + e) ~ 1/e + gamma, so 1 + 1/(y + 1) sits just below the root.
    double lo = 1.0 + 1.0 / (y + 1.0);
    if (lo <= 1.0 + 1e-6) {
        throw std::domain_error("zeta_inverse: y too large to bracket");
    }
    while (zeta_real(lo) < y) {
        lo = 1.0 + (lo - 1.0) * 0.5;
        if (lo <= 1.0 + 1e-6) {
            throw std::domain_error("zeta_inverse: y too large to bracket");
        }
    }
    double hi = 2.0;
    while (zeta_real(hi) > y) {
        hi *= 2.0;
        if (hi > 4096.0) {
            throw std::domain_error("zeta_inverse: could not bracket");
        }
    }
    const double eval_tol = std::clamp(0.01 * tolerance, 1e-15, 1e-12);
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 400; ++iter) {
        mid = 0.5 * (lo + hi);
        const double f = zeta_real(mid, eval_tol) - y;
        if (std::abs(f) <= 0.01 * tolerance * y || mid == lo || mid == hi) {
            break;
        }
        // zeta is decreasing on (1, inf).
        if (f > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Near the pole one ulp of t moves zeta by about eps t / (t - 1)^2.
    const double resolution =
        4.0 * std::numeric_limits<double>::epsilon() * mid * (1.0 + 1.0 / ((mid - 1.0) * (mid - 1.0)));
    if (std::abs(zeta_real(mid, 1e-15) - y) > std::max(tolerance * y, resolution)) {
        throw std::runtime_error("zeta_inverse: round trip tolerance not reached");
    }
    return mid;
}

Bounded<double> log_derivative_series(double t, const numtheory::ArithmeticTable& table,
                                      std::uint64_t cutoff) {
    if (!(t > 1.0)) {
        throw std::invalid_argument("log_derivative_series: requires t > 1");
    }
    if (cutoff == 0) {
        throw std::invalid_argument("log_derivative_series: cutoff must be >= 1");
    }
    // Accumulate from the small tail end up.
    double sum = 0.0;
    double comp = 0.0;
    for (std::uint64_t q = cutoff; q >= 2; --q) {
        const double l = table.von_mangoldt(q);
        if (l == 0.0) {
            continue;
        }
        const double x = l * std::exp(-t * std::log(static_cast<double>(q)));
        const double s = sum + x;
        comp += (sum - s) + x;
        sum = s;
    }
    const double tail = std::pow(static_cast<double>(std::max<std::uint64_t>(cutoff, 1)),
                                 1.0 - t) / (t - 1.0);
    return {-(sum + comp), tail};
}

Bounded<double> log_derivative_series(double t, std::uint64_t cutoff) {
    const numtheory::ArithmeticTable table(std::max<std::uint64_t>(cutoff, 1));
    return log_derivative_series(t, table, cutoff);
}

double log_derivative_numeric(double t, double step) {
    auto f = [](double x) { return std::log(zeta_real(x, 1e-15)); };
    return (-f(t + 2 * step) + 8 * f(t + step) - 8 * f(t - step) + f(t - 2 * step)) /
           (12.0 * step);
}

double riemann_siegel_theta(double t) {
    return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

double riemann_siegel_z(double t) {
    const Complex rotated =
        std::polar(1.0, riemann_siegel_theta(t)) * zeta_complex(Complex(0.5, t));
    return rotated.real();
}

double zero_counting_estimate(double height) {
    const double x = height / (2.0 * kPi);
    return x * std::log(x / std::exp(1.0)) + 7.0 / 8.0;
}

ZetaZeroTable::ZetaZeroTable(std::vector<double> zeros, double precision)
    : zeros_(std::move(zeros)), precision_(precision) {
    if (!(precision_ > 0.0)) {
        throw std::invalid_argument("ZetaZeroTable: precision must be positive");
    }
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
        if (!(zeros_[i] > 0.0) || !std::isfinite(zeros_[i])) {
            throw std::invalid_argument("ZetaZeroTable: zeros must be positive and finite");
        }
        if (i > 0 && !(zeros_[i] > zeros_[i - 1])) {
            throw std::invalid_argument("ZetaZeroTable: zeros must be strictly increasing");
        }
    }
    if (!zeros_.empty() && !(zeros_.front() > 14.0 && zeros_.front() < 15.0)) {
        throw std::invalid_argument("ZetaZeroTable: first zero must lie in (14, 15)");
    }
}

double ZetaZeroTable::zero(std::size_t j) const {
    if (j == 0 || j > zeros_.size()) {
        throw std::out_of_range("zero index " + std::to_string(j) + " outside table of " +
                                std::to_string(zeros_.size()));
    }
    return zeros_[j - 1];
}

void ZetaZeroTable::write(std::ostream& os) const {
    std::ostringstream p;
    p << std::setprecision(6) << precision_;
    os << "# omqm-zeros v1 precision=" << p.str() << '\n';
    os << std::fixed << std::setprecision(12);
    for (const double z : zeros_) {
        os << z << '\n';
    }
    os.unsetf(std::ios::floatfield);
}

ZetaZeroTable ZetaZeroTable::read(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) {
        throw std::runtime_error("zero table: missing header");
    }
    const std::string prefix = "# omqm-zeros v1 precision=";
    if (header.rfind(prefix, 0) != 0) {
        throw std::runtime_error("zero table: bad header '" + header + "'");
    }
    double precision = 0.0;
    try {
        precision = std::stod(header.substr(prefix.size()));
    } catch (const std::exception&) {
        throw std::runtime_error("zero table: unreadable precision");
    }
    std::vector<double> zeros;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(line, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("zero table: bad line '" + line + "'");
        }
        if (line.find_first_not_of(" \t\r", used) != std::string::npos) {
            throw std::runtime_error("zero table: bad line '" + line + "'");
        }
        zeros.push_back(v);
    }
    return ZetaZeroTable(std::move(zeros), precision);
}

bool ZetaZeroTable::verify_sign_changes() const {
    return std::all_of(zeros_.begin(), zeros_.end(), [&](double z) {
        const double a = riemann_siegel_z(z - precision_);
        const double b = riemann_siegel_z(z + precision_);
        return a * b <= 0.0;
    });
}

ZetaZeroTable find_zeros(double t_max, double precision) {
    if (!(t_max > 0.0) || t_max > kMaxZeroHeight) {
        throw std::domain_error("find_zeros: t_max must lie in (0, " +
                                std::to_string(kMaxZeroHeight) + "]");
    }
    if (!(precision >= kMinZeroPrecision) || precision > 0.1) {
        throw std::invalid_argument("find_zeros: precision must lie in [1e-8, 0.1]");
    }
    // Zeros below height 120 are separated by more than 0.5, so a 0.02 grid
    // cannot step over a pair.
    constexpr double kStep = 0.02;
    const auto steps = static_cast<std::size_t>(std::ceil(t_max / kStep));
    const unsigned workers = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
    const std::size_t chunk = (steps + workers - 1) / workers;

    auto grid = [&](std::size_t i) { return std::min(t_max, static_cast<double>(i) * kStep); };

    auto scan = [&](std::size_t first, std::size_t last) {
        std::vector<double> found;
        double a = grid(first);
        double za = riemann_siegel_z(a);
        for (std::size_t i = first + 1; i <= last; ++i) {
            const double b = grid(i);
            const double zb = riemann_siegel_z(b);
            if (za == 0.0 && a > 0.0) {
                found.push_back(a);
            } else if (za * zb < 0.0) {
                double lo = a;
                double hi = b;
                double zlo = za;
                while (hi - lo > precision) {
                    const double mid = 0.5 * (lo + hi);
                    const double zm = riemann_siegel_z(mid);
                    if (zm == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((zm < 0.0) == (zlo < 0.0)) {
                        lo = mid;
                        zlo = zm;
                    } else {
                        hi = mid;
                    }
                }
                found.push_back(0.5 * (lo + hi));
            }
            a = b;
            za = zb;
        }
        if (last == steps && za == 0.0) {
            found.push_back(a);
        }
        return found;
    };

    std::vector<std::future<std::vector<double>>> parts;
    for (std::size_t first = 0; first < steps; first += chunk) {
        const std::size_t last = std::min(steps, first + chunk);
        parts.push_back(std::async(std::launch::async, scan, first, last));
    }
    std::vector<double> zeros;
    for (auto& part : parts) {
        auto v = part.get();
        zeros.insert(zeros.end(), v.begin(), v.end());
    }
    std::sort(zeros.begin(), zeros.end());
    zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());
    return ZetaZeroTable(std::move(zeros), precision);
}

Complex om_mass(std::uint64_t q, const OMConstants& constants) {
    if (q == 0) {
        throw std::invalid_argument("om_mass: q must be >= 1");
    }
    return constants.s_tilde() * numtheory::von_mangoldt(q);
}

Complex om_energy_sq(std::uint64_t q, std::size_t zero_index, const ZetaZeroTable& zeros,
                     const OMConstants& constants) {
    if (!numtheory::is_prime_power(q)) {
        throw std::invalid_argument("om_energy_sq: " + std::to_string(q) +
                                    " is not a prime power");
    }
    const double sigma = zeros.zero(zero_index);
    const Complex s = constants.s_tilde();
    const double qd = static_cast<double>(q);
    const Complex m = om_mass(q, constants);
    return s * s * sigma * std::log(qd) * qd + m + 2.0 * m * m;
}

}  // namespace omqm::zeta
