#pragma once

// Exponent profiles of factorial-like numbers: l!, lcm(1..l), primorials,
// central multinomials, and Pi_K(l), the product of the norms of all ideals
// of norm <= l in a quadratic field (or a field given by a splitting table).

#include "brocard/arith.hpp"

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brocard {

inline constexpr std::uint64_t kDefaultHseqBound = 1'000'000;
inline constexpr std::uint64_t kDefaultPiKBound = 100'000;

/// Sparse prime -> exponent map; zero exponents are never stored.
class FactorizationVector {
public:
    FactorizationVector() = default;

    std::uint64_t exponent(std::uint64_t p) const;
    void add(std::uint64_t p, std::uint64_t e);
    const std::map<std::uint64_t, std::uint64_t>& entries() const { return exps_; }
    bool empty() const { return exps_.empty(); }

    /// Natural log of the value, for reporting only.
    double log_value() const;
    /// Materializes the product; throws bound_exceeded past the digit bound.
    BigInt value(std::size_t digit_bound = kDefaultDigitBound) const;
    PrimeFactorization to_factorization() const;
    static FactorizationVector from_factorization(const PrimeFactorization& f);

    FactorizationVector& operator+=(const FactorizationVector& other);
    friend bool operator==(const FactorizationVector&, const FactorizationVector&) = default;

private:
    std::map<std::uint64_t, std::uint64_t> exps_;
};

std::string to_string(const FactorizationVector& v);

struct HSeqKind {
    enum class Kind { Factorial, Lcm, Primorial, Multinomial };
    Kind kind = Kind::Factorial;
    unsigned a = 0; // Multinomial only, a >= 2

    static HSeqKind factorial() { return {Kind::Factorial, 0}; }
    static HSeqKind lcm() { return {Kind::Lcm, 0}; }
    static HSeqKind primorial() { return {Kind::Primorial, 0}; }
    static HSeqKind multinomial(unsigned a);

    friend bool operator==(const HSeqKind&, const HSeqKind&) = default;
};

/// "factorial", "lcm", "primorial", "multinomial:a".
HSeqKind parse_hseq_kind(std::string_view text);
std::string to_string(const HSeqKind& k);

/// Profile of H_l: l!, lcm(1..l), the product of the first l primes, or
/// (al)!/(l!)^a.
FactorizationVector hseq_profile(const HSeqKind& kind, std::uint64_t l, std::uint64_t bound = kDefaultHseqBound);

/// Frobenius data of a number field K at the primes: the cycle type at p,
/// whose part counts are G_p(i; K).
class SplittingProfile {
public:
    /// Q(sqrt(delta)) for a fundamental discriminant delta.
    static SplittingProfile quadratic(std::int64_t delta);
    /// Lines "p f_1,f_2,...,f_r", optionally followed by "ramified"; '#'
    /// starts a comment.
    static SplittingProfile from_table(std::istream& in);
    static SplittingProfile from_table_file(const std::string& path);

    /// [K : Q].
    unsigned degree() const { return degree_; }
    std::optional<std::int64_t> quadratic_discriminant() const { return delta_; }
    std::string description() const;

    /// G[i] = G_p(i; K) for i >= 1 (G[0] unused). Throws
    /// std::out_of_range for primes missing from a table.
    std::vector<std::uint64_t> counts(std::uint64_t p) const;
    bool ramified(std::uint64_t p) const;

    /// a(p^m), the number of ideals of norm p^m.
    std::uint64_t ideal_count_prime_power(std::uint64_t p, unsigned m) const;

private:
    unsigned degree_ = 1;
    std::optional<std::int64_t> delta_;
    std::map<std::uint64_t, std::pair<std::vector<unsigned>, bool>> table_;
};

/// sum over a_1 + 2 a_2 + ... + m a_m = m of prod_i C(G[i] + a_i - 1, a_i).
/// G is indexed from 1 (G[0] ignored).
std::uint64_t ideal_count_prime_power(const std::vector<std::uint64_t>& g, unsigned m);

/// a(n) = sum_{d | n} (delta | d) for a fundamental discriminant delta.
std::uint64_t ideal_count(std::int64_t delta, const BigInt& n);

/// v_p(Pi_K(l)) = sum_{n <= l} a(n) v_p(n).
FactorizationVector pi_K_profile(const SplittingProfile& field, std::uint64_t l,
                                 std::uint64_t bound = kDefaultPiKBound, unsigned workers = 1);
FactorizationVector pi_K_profile(std::int64_t delta, std::uint64_t l, std::uint64_t bound = kDefaultPiKBound,
                                 unsigned workers = 1);

/// Eligible prime with the smallest exponent (ties: smallest prime).
std::optional<std::pair<std::uint64_t, std::uint64_t>>
min_exponent_prime(const FactorizationVector& v, const std::function<bool(std::uint64_t)>& eligible);

} // namespace brocard
