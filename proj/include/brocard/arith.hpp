#pragma once

// Exact integer primitives: primality, factorization, valuations, radicals,
// integer roots, Kronecker symbols and prime sieving.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace brocard {

using BigInt = mpz_class;

inline constexpr std::size_t kDefaultDigitBound = 100000;
inline constexpr std::uint64_t kDefaultSieveBudget = 4'000'000'000ULL;

std::size_t decimal_digits(const BigInt& n);

/// Throws bound_exceeded when |n| has more than `bound` decimal digits.
void check_digit_bound(const BigInt& n, std::size_t bound, std::string_view what);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);
/// Deterministic below 2^64, probabilistic (fixed rounds) above.
bool is_prime(const BigInt& n);

/// Exponent of p in n (n != 0, p >= 2).
unsigned valuation(std::uint64_t n, std::uint64_t p);
unsigned valuation(std::int64_t n, std::uint64_t p);

struct FactorEffort {
    std::uint64_t trial_bound = 1U << 16;
    std::uint64_t rho_iterations = 2'000'000;
    std::size_t digit_bound = kDefaultDigitBound;
};

/// n = sign * prod p^e * prod residual. An empty residual list means the
/// factorization is complete.
class PrimeFactorization {
public:
    PrimeFactorization() = default;

    int sign() const { return sign_; }
    void set_sign(int s) { sign_ = s < 0 ? -1 : 1; }

    const std::map<BigInt, std::uint64_t>& factors() const { return factors_; }
    const std::vector<BigInt>& residual() const { return residual_; }
    bool complete() const { return residual_.empty(); }

    /// Adds e to the exponent of the prime p.
    void multiply(const BigInt& p, std::uint64_t e = 1);
    void add_residual(BigInt composite) { residual_.push_back(std::move(composite)); }

    std::uint64_t exponent(const BigInt& p) const;

    /// Reconstructs the integer; respects the digit bound.
    BigInt value(std::size_t digit_bound = kDefaultDigitBound) const;

    friend bool operator==(const PrimeFactorization& a, const PrimeFactorization& b) {
        return a.sign_ == b.sign_ && a.factors_ == b.factors_ && a.residual_ == b.residual_;
    }

private:
    int sign_ = 1;
    std::map<BigInt, std::uint64_t> factors_;
    std::vector<BigInt> residual_;
};

/// Trial division followed by Pollard-Brent splitting. When the effort budget
/// runs out the unsplit cofactors are kept in residual(); the result is never
/// silently wrong.
PrimeFactorization factorize(const BigInt& n, const FactorEffort& effort = {});

/// All positive divisors, ascending. Requires a complete factorization.
std::vector<BigInt> divisors(const PrimeFactorization& f);

/// Throws std::overflow_error when n does not fit.
std::int64_t to_int64(const BigInt& n);
std::uint64_t to_uint64(const BigInt& n);
BigInt to_big(std::int64_t v);
BigInt to_big(std::uint64_t v);

/// Product of the distinct primes. Throws incomplete_factorization when the
/// input still carries a residual composite.
BigInt radical(const PrimeFactorization& f);

/// Exponent of p in f; throws std::invalid_argument when p is not prime.
std::uint64_t p_valuation(const BigInt& p, const PrimeFactorization& f);

struct RootResult {
    BigInt root;
    bool exact = false;
};

/// floor(N^(1/k)) and whether it is exact.
RootResult integer_nth_root(const BigInt& n, unsigned k);

/// Kronecker symbol (d | n) for any n >= 1, using the (d | 2) convention on
/// d mod 8. For prime n this is the splitting character of Q(sqrt d).
int kronecker(std::int64_t d, std::uint64_t n);

/// Sieve of Eratosthenes over [0, limit], kept for repeated queries.
class PrimeSieve {
public:
    explicit PrimeSieve(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    bool is_prime(std::uint64_t n) const;
    const std::vector<std::uint64_t>& primes() const { return primes_; }

private:
    std::uint64_t limit_;
    std::vector<bool> composite_;
    std::vector<std::uint64_t> primes_;
};

struct Residue {
    std::uint64_t a = 0;
    std::uint64_t b = 1;
};

/// Primes in [lo, hi] (segmented sieve), optionally restricted to p = a mod b.
/// Rejects classes with gcd(a, b) > 1 unless a == b, and ranges wider than
/// the sieve budget.
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi,
                                     std::optional<Residue> residue = std::nullopt,
                                     std::uint64_t sieve_budget = kDefaultSieveBudget);

/// Smallest-prime-factor table for 0..limit.
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);

} // namespace brocard
