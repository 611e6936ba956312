#include "brocard/arith.hpp"

#include "brocard/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace brocard {

namespace {

bool fits_u64(const BigInt& n) {
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& n) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
    return out;
}

BigInt from_u64(std::uint64_t v) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return out;
}

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned r) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

const std::vector<std::uint64_t>& trial_primes(std::uint64_t bound) {
    static const PrimeSieve sieve(1U << 20);
    static thread_local std::vector<std::uint64_t> cache;
    static thread_local std::uint64_t cached_bound = 0;
    if (bound > sieve.limit()) bound = sieve.limit();
    if (cached_bound != bound) {
        cache.clear();
        for (auto p : sieve.primes()) {
            if (p > bound) break;
            cache.push_back(p);
        }
        cached_bound = bound;
    }
    return cache;
}

// Pollard-Brent on a 64-bit odd composite; returns a nontrivial factor or 0.
std::uint64_t brent_u64(std::uint64_t n, std::uint64_t budget) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1; c < 64; ++c) {
        std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
        std::uint64_t r = 1, spent = 0;
        const std::uint64_t m = 128;
        auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
                spent += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1 && spent < budget);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
        if (spent >= budget) return 0;
    }
    return 0;
}

BigInt brent_big(const BigInt& n, std::uint64_t budget) {
    for (unsigned long c = 1; c < 16; ++c) {
        BigInt y = 2, x = 2, q = 1, g = 1, ys = 2, diff;
        std::uint64_t r = 1, spent = 0;
        const std::uint64_t m = 128;
        auto step = [&](BigInt& v) {
            v = v * v + c;
            v %= n;
        };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) step(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    step(y);
                    diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                g = gcd(q, n);
                k += m;
                spent += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1 && spent < budget);
        if (g == n) {
            do {
                step(ys);
                diff = x - ys;
                g = gcd(BigInt(abs(diff)), n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
        if (spent >= budget) return 0;
    }
    return 0;
}

void split_into(PrimeFactorization& out, const BigInt& n, std::uint64_t mult,
                const FactorEffort& effort) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.multiply(n, mult);
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned k = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2)); k >= 2; --k) {
            auto rt = integer_nth_root(n, k);
            if (rt.exact) {
                split_into(out, rt.root, mult * k, effort);
                return;
            }
        }
    }
    BigInt d;
    if (fits_u64(n)) {
        d = from_u64(brent_u64(to_u64(n), effort.rho_iterations));
    } else {
        d = brent_big(n, effort.rho_iterations);
    }
    if (d == 0) {
        for (std::uint64_t i = 0; i < mult; ++i) out.add_residual(n);
        return;
    }
    BigInt other = n / d;
    split_into(out, d, mult, effort);
    split_into(out, other, mult, effort);
}

} // namespace

std::size_t decimal_digits(const BigInt& n) {
    if (n == 0) return 1;
    // mpz_sizeinbase may overshoot by one.
    const auto estimate = mpz_sizeinbase(n.get_mpz_t(), 10);
    BigInt low;
    mpz_ui_pow_ui(low.get_mpz_t(), 10, estimate - 1);
    return abs(n) < low ? estimate - 1 : estimate;
}

void check_digit_bound(const BigInt& n, std::size_t bound, std::string_view what) {
    if (decimal_digits(n) > bound) {
        throw bound_exceeded(std::string(what) + " exceeds the digit bound of " +
                             std::to_string(bound));
    }
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : small) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // These twelve bases are a proven witness set below 3.3e24.
    for (auto a : small) {
        if (!miller_rabin_round(n, a, d, r)) return false;
    }
    return true;
}

bool is_prime(const BigInt& n) {
    if (sgn(n) <= 0) return false;
    if (fits_u64(n)) return is_prime(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0 || p < 2) throw std::invalid_argument("valuation: need n != 0 and p >= 2");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

unsigned valuation(std::int64_t n, std::uint64_t p) {
    const auto mag = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    return valuation(mag, p);
}

void PrimeFactorization::multiply(const BigInt& p, std::uint64_t e) {
    if (e == 0) return;
    factors_[p] += e;
}

std::uint64_t PrimeFactorization::exponent(const BigInt& p) const {
    auto it = factors_.find(p);
    return it == factors_.end() ? 0 : it->second;
}

BigInt PrimeFactorization::value(std::size_t digit_bound) const {
    double log10_estimate = 0.0;
    for (const auto& [p, e] : factors_) {
        log10_estimate += static_cast<double>(e) * static_cast<double>(mpz_sizeinbase(p.get_mpz_t(), 10) - 1);
    }
    for (const auto& r : residual_) {
        log10_estimate += static_cast<double>(mpz_sizeinbase(r.get_mpz_t(), 10) - 1);
    }
    if (log10_estimate > static_cast<double>(digit_bound)) {
        throw bound_exceeded("factorization value exceeds the digit bound of " +
                             std::to_string(digit_bound));
    }
    BigInt out = 1, pw;
    for (const auto& [p, e] : factors_) {
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), e);
        out *= pw;
    }
    for (const auto& r : residual_) out *= r;
    check_digit_bound(out, digit_bound, "factorization value");
    return sign_ * out;
}

PrimeFactorization factorize(const BigInt& n, const FactorEffort& effort) {
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
    check_digit_bound(n, effort.digit_bound, "factorize input");
    PrimeFactorization out;
    out.set_sign(sgn(n));
    BigInt rest = abs(n);
    for (auto p : trial_primes(effort.trial_bound)) {
        if (rest == 1) break;
        if (BigInt(p) * p > rest) break;
        std::uint64_t e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e > 0) out.multiply(BigInt(static_cast<unsigned long>(p)), e);
    }
    split_into(out, rest, 1, effort);
    return out;
}

std::vector<BigInt> divisors(const PrimeFactorization& f) {
    if (!f.complete()) throw incomplete_factorization("divisors: factorization has an unsplit composite");
    std::vector<BigInt> out{1};
    for (const auto& [p, e] : f.factors()) {
        const auto count = out.size();
        BigInt pw = 1;
        for (std::uint64_t k = 1; k <= e; ++k) {
            pw *= p;
            for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t to_int64(const BigInt& n) {
    if (!mpz_fits_slong_p(n.get_mpz_t())) throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
    return mpz_get_si(n.get_mpz_t());
}

std::uint64_t to_uint64(const BigInt& n) {
    if (!fits_u64(n)) throw std::overflow_error("integer does not fit in unsigned 64 bits: " + n.get_str());
    return to_u64(n);
}

BigInt to_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

BigInt to_big(std::uint64_t v) { return from_u64(v); }

BigInt radical(const PrimeFactorization& f) {
    if (!f.complete()) throw incomplete_factorization("radical: factorization has an unsplit composite");
    BigInt out = 1;
    for (const auto& entry : f.factors()) out *= entry.first;
    return out;
}

std::uint64_t p_valuation(const BigInt& p, const PrimeFactorization& f) {
    if (!is_prime(p)) throw std::invalid_argument("p_valuation: " + p.get_str() + " is not prime");
    return f.exponent(p);
}

RootResult integer_nth_root(const BigInt& n, unsigned k) {
    if (sgn(n) < 0) throw std::invalid_argument("integer_nth_root: negative radicand");
    if (k == 0) throw std::invalid_argument("integer_nth_root: k must be positive");
    RootResult out;
    BigInt rem;
    mpz_rootrem(out.root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), k);
    out.exact = rem == 0;
    return out;
}

int kronecker(std::int64_t d, std::uint64_t n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int result = 1;
    if (n % 2 == 0) {
        if (d % 2 == 0) return 0;
        const auto v = valuation(n, 2);
        n >>= v;
        const auto r = ((d % 8) + 8) % 8;
        if ((r == 3 || r == 5) && (v % 2 == 1)) result = -result;
    }
    // Jacobi symbol for odd n.
    const auto wide_n = static_cast<__int128>(n);
    auto a = static_cast<std::uint64_t>(((static_cast<__int128>(d) % wide_n) + wide_n) % wide_n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const auto r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit), composite_(limit + 1, false) {
    composite_[0] = true;
    if (limit >= 1) composite_[1] = true;
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (composite_[i]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i) composite_[j] = true;
    }
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!composite_[i]) primes_.push_back(i);
    }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
    if (n > limit_) throw std::out_of_range("PrimeSieve::is_prime beyond sieve limit");
    return !composite_[n];
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi, std::optional<Residue> residue,
                                     std::uint64_t sieve_budget) {
    if (residue) {
        if (residue->b == 0) throw std::invalid_argument("primes_in: modulus must be positive");
        if (std::gcd(residue->a, residue->b) > 1 && residue->a != residue->b) {
            throw std::invalid_argument("primes_in: residue class " + std::to_string(residue->a) + " mod " +
                                        std::to_string(residue->b) + " contains no primes");
        }
    }
    if (lo < 2) lo = 2;
    std::vector<std::uint64_t> out;
    if (hi < lo) return out;
    if (hi > sieve_budget) throw bound_exceeded("primes_in: upper end exceeds the sieve budget");

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
    const PrimeSieve base(root);
    constexpr std::uint64_t segment = 1U << 22;
    std::vector<bool> composite;
    for (std::uint64_t start = lo; start <= hi; start += segment) {
        const auto end = std::min(hi, start + segment - 1);
        composite.assign(end - start + 1, false);
        for (auto p : base.primes()) {
            if (p * p > end) break;
            auto first = std::max(p * p, (start + p - 1) / p * p);
            for (auto j = first; j <= end; j += p) composite[j - start] = true;
        }
        for (auto n = start; n <= end; ++n) {
            if (composite[n - start]) continue;
            if (residue && n % residue->b != residue->a % residue->b) continue;
            out.push_back(n);
        }
        if (end == hi) break;
    }
    return out;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t j = i; j <= limit; j += i) {
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
        }
    }
    return spf;
}

} // namespace brocard
