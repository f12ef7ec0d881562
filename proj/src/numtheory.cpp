#include "omqm/numtheory.hpp"

#include <array>
#include <cstring>
#include <type_traits>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace omqm::numtheory {

namespace {

void require_positive(std::uint64_t k, const char* what) {
    if (k == 0) {
        throw std::invalid_argument(std::string(what) + ": argument must be >= 1");
    }
}

int mobius_from(const std::vector<PrimePower>& f) {
    for (const auto& pp : f) {
        if (pp.exponent > 1) {
            return 0;
        }
    }
    return (f.size() % 2 == 0) ? 1 : -1;
}

double lambda_from(const std::vector<PrimePower>& f) {
    return f.size() == 1 ? std::log(static_cast<double>(f.front().prime)) : 0.0;
}

// Neumaier summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

template <typename T>
void write_le(std::ostream& os, T value) {
    std::array<unsigned char, sizeof(T)> bytes{};
    std::uint64_t bits = 0;
    if constexpr (std::is_floating_point_v<T>) {
        static_assert(sizeof(T) == 8);
        std::memcpy(&bits, &value, 8);
    } else {
        bits = static_cast<std::uint64_t>(static_cast<std::make_unsigned_t<T>>(value));
    }
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bytes[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFFu);
    }
    os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
    std::array<unsigned char, sizeof(T)> bytes{};
    is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
    if (!is) {
        throw std::runtime_error("arithmetic table cache: truncated file");
    }
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    }
    if constexpr (std::is_floating_point_v<T>) {
        T value;
        std::memcpy(&value, &bits, 8);
        return value;
    } else {
        return static_cast<T>(static_cast<std::make_unsigned_t<T>>(bits));
    }
}

}  // namespace

std::vector<PrimePower> factorize(std::uint64_t k) {
    require_positive(k, "factorize");
    std::vector<PrimePower> out;
    auto strip = [&](std::uint64_t p) {
        unsigned e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        if (e > 0) {
            out.push_back({p, e});
        }
    };
    strip(2);
    strip(3);
    for (std::uint64_t p = 5; p <= k / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (k > 1) {
        out.push_back({k, 1});
    }
    return out;
}

ArithmeticTable::ArithmeticTable(std::uint64_t bound) : bound_(bound) {
    if (bound == 0 || bound > kMaxBound) {
        throw std::invalid_argument("ArithmeticTable: bound must be in [1, " +
                                    std::to_string(kMaxBound) + "]");
    }
    const std::size_t size = static_cast<std::size_t>(bound) + 1;
    lpf_.assign(size, 0);
    mu_.assign(size, 0);
    lambda_.assign(size, 0.0);
    std::vector<std::uint32_t> primes;

    mu_[1] = 1;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (lpf_[i] == 0) {
            lpf_[i] = static_cast<std::uint32_t>(i);
            mu_[i] = -1;
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t li = lpf_[i];
        for (const std::uint32_t p : primes) {
            const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
            if (p > li || m > bound) {
                break;
            }
            lpf_[m] = p;
            mu_[m] = (p == li) ? 0 : static_cast<std::int8_t>(-mu_[i]);
        }
    }
    // Lambda: mark every prime power p^r <= bound.
    for (const std::uint32_t p : primes) {
        const double lp = std::log(static_cast<double>(p));
        for (std::uint64_t q = p; q <= bound; q *= p) {
            lambda_[q] = lp;
            if (q > bound / p) {
                break;
            }
        }
    }
    fill_mertens();
}

void ArithmeticTable::fill_mertens() {
    mertens_.assign(mu_.size(), 0);
    std::int32_t running = 0;
    for (std::size_t k = 1; k < mu_.size(); ++k) {
        running += mu_[k];
        mertens_[k] = running;
    }
}

std::uint32_t ArithmeticTable::least_prime_factor(std::uint64_t k) const {
    require_positive(k, "least_prime_factor");
    if (k <= bound_) {
        return lpf_[k];
    }
    const auto f = numtheory::factorize(k);
    if (f.front().prime > 0xFFFFFFFFULL) {
        throw std::out_of_range("least_prime_factor: factor does not fit in 32 bits");
    }
    return static_cast<std::uint32_t>(f.front().prime);
}

int ArithmeticTable::mobius(std::uint64_t k) const {
    require_positive(k, "mobius");
    return k <= bound_ ? mu_[k] : numtheory::mobius(k);
}

std::int64_t ArithmeticTable::mertens(std::uint64_t k) const {
    require_positive(k, "mertens");
    if (k <= bound_) {
        return mertens_[k];
    }
    std::int64_t m = mertens_[bound_];
    for (std::uint64_t j = bound_ + 1; j <= k; ++j) {
        m += numtheory::mobius(j);
    }
    return m;
}

double ArithmeticTable::von_mangoldt(std::uint64_t k) const {
    require_positive(k, "von_mangoldt");
    return k <= bound_ ? lambda_[k] : numtheory::von_mangoldt(k);
}

double ArithmeticTable::chebyshev_psi(std::uint64_t n) const {
    require_positive(n, "chebyshev_psi");
    CompensatedSum s;
    for (std::uint64_t q = 2; q <= n; ++q) {
        const double l = q <= bound_ ? lambda_[q] : numtheory::von_mangoldt(q);
        if (l != 0.0) {
            s.add(l);
        }
    }
    return s.value();
}

std::vector<PrimePower> ArithmeticTable::factorize(std::uint64_t k) const {
    require_positive(k, "factorize");
    if (k > bound_) {
        return numtheory::factorize(k);
    }
    std::vector<PrimePower> out;
    while (k > 1) {
        const std::uint64_t p = lpf_[k];
        unsigned e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    return out;
}

void ArithmeticTable::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    os.write("OMNT", 4);
    write_le<std::uint32_t>(os, kCacheVersion);
    write_le<std::uint64_t>(os, bound_);
    for (std::uint64_t k = 1; k <= bound_; ++k) write_le<std::uint32_t>(os, lpf_[k]);
    for (std::uint64_t k = 1; k <= bound_; ++k) write_le<std::int8_t>(os, mu_[k]);
    for (std::uint64_t k = 1; k <= bound_; ++k) write_le<double>(os, lambda_[k]);
    if (!os) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

ArithmeticTable ArithmeticTable::load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::array<char, 4> magic{};
    is.read(magic.data(), 4);
    if (!is || std::string(magic.data(), 4) != "OMNT") {
        throw std::runtime_error("arithmetic table cache: bad magic");
    }
    const auto version = read_le<std::uint32_t>(is);
    if (version != kCacheVersion) {
        throw std::runtime_error("arithmetic table cache: unsupported version " +
                                 std::to_string(version));
    }
    ArithmeticTable t;
    t.bound_ = read_le<std::uint64_t>(is);
    if (t.bound_ == 0 || t.bound_ > kMaxBound) {
        throw std::runtime_error("arithmetic table cache: bound out of range");
    }
    const std::size_t size = static_cast<std::size_t>(t.bound_) + 1;
    t.lpf_.assign(size, 0);
    t.mu_.assign(size, 0);
    t.lambda_.assign(size, 0.0);
    for (std::uint64_t k = 1; k <= t.bound_; ++k) t.lpf_[k] = read_le<std::uint32_t>(is);
    for (std::uint64_t k = 1; k <= t.bound_; ++k) {
        t.mu_[k] = read_le<std::int8_t>(is);
        if (t.mu_[k] < -1 || t.mu_[k] > 1) {
            throw std::runtime_error("arithmetic table cache: corrupt mu entry");
        }
    }
    for (std::uint64_t k = 1; k <= t.bound_; ++k) t.lambda_[k] = read_le<double>(is);
    if (is.peek() != std::char_traits<char>::eof()) {
        throw std::runtime_error("arithmetic table cache: trailing bytes");
    }
    t.fill_mertens();
    return t;
}

int mobius(std::uint64_t k) {
    require_positive(k, "mobius");
    return mobius_from(factorize(k));
}

std::int64_t mertens(std::uint64_t k) {
    require_positive(k, "mertens");
    std::int64_t m = 0;
    for (std::uint64_t j = 1; j <= k; ++j) {
        m += mobius(j);
    }
    return m;
}

double von_mangoldt(std::uint64_t k) {
    require_positive(k, "von_mangoldt");
    return lambda_from(factorize(k));
}

double chebyshev_psi(std::uint64_t n) {
    require_positive(n, "chebyshev_psi");
    CompensatedSum s;
    for (std::uint64_t q = 2; q <= n; ++q) {
        s.add(von_mangoldt(q));
    }
    return s.value();
}

bool is_prime_power(std::uint64_t k) {
    return k >= 2 && factorize(k).size() == 1;
}

BigInt divisor_sigma(unsigned a, std::uint64_t k) {
    require_positive(k, "divisor_sigma");
    if (a > 8) {
        throw std::invalid_argument("divisor_sigma: exponent must be in [0, 8]");
    }
    // Multiplicative: sigma_a(p^e) = 1 + p^a + ... + p^{ea}.
    BigInt total = 1;
    for (const auto& [p, e] : factorize(k)) {
        BigInt pa = boost::multiprecision::pow(BigInt(p), a);
        BigInt term = 1;
        BigInt local = 1;
        for (unsigned i = 0; i < e; ++i) {
            term *= pa;
            local += term;
        }
        total *= local;
    }
    return total;
}

double divisor_sigma_real(unsigned a, std::uint64_t k) {
    return divisor_sigma(a, k).convert_to<double>();
}

}  // namespace omqm::numtheory
