#pragma once

// Arithmetic kernels: Moebius, Mertens, von Mangoldt, Chebyshev psi and
// divisor sums, backed by a linear sieve.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace omqm::numtheory {

using BigInt = boost::multiprecision::cpp_int;

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Factorization by trial division. k = 1 gives an empty list; k = 0 throws.
std::vector<PrimePower> factorize(std::uint64_t k);

/// Sieved mu, Lambda and least-prime-factor data for 1..bound.
///
/// Construction is a single-threaded linear sieve, O(bound). The table is
/// immutable afterwards and may be shared freely between threads. Queries
/// above the bound fall back to trial division.
class ArithmeticTable {
public:
    static constexpr std::uint64_t kMaxBound = 2'000'000'000ULL;

    explicit ArithmeticTable(std::uint64_t bound);

    std::uint64_t bound() const { return bound_; }

    std::uint32_t least_prime_factor(std::uint64_t k) const;
    int mobius(std::uint64_t k) const;
    std::int64_t mertens(std::uint64_t k) const;
    double von_mangoldt(std::uint64_t k) const;
    /// psi(N) = sum_{q <= N} Lambda(q), compensated summation.
    double chebyshev_psi(std::uint64_t n) const;
    std::vector<PrimePower> factorize(std::uint64_t k) const;

    // Raw views, index 0 is unused (k = 1..bound live at [k]).
    std::span<const std::uint32_t> least_prime_factors() const { return lpf_; }
    std::span<const std::int8_t> mu() const { return mu_; }
    std::span<const double> lambda_log() const { return lambda_; }

    /// Binary cache: "OMNT", u32 version, u64 bound, then lpf (u32), mu (i8)
    /// and lambda (f64) for k = 1..bound, all little-endian.
    void save(const std::filesystem::path& path) const;
    static ArithmeticTable load(const std::filesystem::path& path);

    static constexpr std::uint32_t kCacheVersion = 1;

private:
    ArithmeticTable() = default;
    void fill_mertens();

    std::uint64_t bound_ = 0;
    std::vector<std::uint32_t> lpf_;
    std::vector<std::int8_t> mu_;
    std::vector<double> lambda_;
    std::vector<std::int32_t> mertens_;
};

// Table-free versions using trial division. All reject k = 0 with
// std::invalid_argument.
int mobius(std::uint64_t k);
std::int64_t mertens(std::uint64_t k);
double von_mangoldt(std::uint64_t k);
double chebyshev_psi(std::uint64_t n);

/// True when k = p^r for a prime p and r >= 1.
bool is_prime_power(std::uint64_t k);

/// sigma_a(k) = sum_{d | k} d^a, exact. a must be in [0, 8].
BigInt divisor_sigma(unsigned a, std::uint64_t k);

/// sigma_a(k) rounded to double; convenient for series coefficients.
double divisor_sigma_real(unsigned a, std::uint64_t k);

}  // namespace omqm::numtheory
