#pragma once

// Which integers a binary quadratic form represents: necessary exponent
// conditions for arbitrary forms, the complete criterion for positive
// definite forms over class-number-one fields, a complete brute-force search
// for definite forms, and the three-squares test.

#include "brocard/arith.hpp"
#include "brocard/formclass.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brocard {

struct QuadForm {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    std::int64_t discriminant() const;
    std::int64_t content() const;
    bool positive_definite() const { return a > 0 && discriminant() < 0; }
    /// F(y, x).
    QuadForm swapped() const { return {c, b, a}; }
    BinaryForm to_binary() const;
    std::string to_string() const { return to_binary().to_string(); }

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

/// Accepts anything parse_form does, provided the degree is 2.
QuadForm parse_quadform(std::string_view text);

enum class SplitTag { Split, Inert, Ramified };

std::string_view to_string(SplitTag t);

/// Behaviour of the prime p in Q(sqrt(delta)).
SplitTag split_tag(std::int64_t delta, std::uint64_t p);

/// Throws std::invalid_argument unless delta is a nonzero discriminant
/// (0 or 1 mod 4).
bool is_fundamental(std::int64_t delta);

/// The nine imaginary quadratic fields with class number one.
bool has_class_number_one(std::int64_t delta);

struct ExponentCheck {
    bool blocked = false;
    BigInt prime;
    std::uint64_t exponent = 0;
    std::string rule;
};

/// True when q is good for F and F has no projective zero mod q, so that
/// q | F(x, y) forces q | x and q | y.
bool exponent_eligible(const BinaryForm& f, std::uint64_t q);

/// Every eligible prime dividing N/g to an exponent not divisible by deg F,
/// ascending. Primes above 2^64 are never eligible (they cannot be tested).
std::vector<std::pair<std::uint64_t, std::uint64_t>> eligible_blockers(const BinaryForm& f,
                                                                       const PrimeFactorization& n);

/// Necessary condition for N = F(x, y). Blocked carries the smallest
/// violating prime; rule "content" when g does not divide N.
ExponentCheck exponent_criterion(const BinaryForm& f, const PrimeFactorization& n);

/// Complete search for a definite form, up to |y| <= sqrt(4aN/|delta|).
/// Returns the solution of smallest |y|, then smallest |x|, non-negative
/// coordinates first. Throws bound_exceeded when the scan would exceed
/// max_steps values of y.
std::optional<std::pair<BigInt, BigInt>> representable_bruteforce(const QuadForm& f, const BigInt& n,
                                                                   std::uint64_t max_steps = 100'000'000);

struct CriterionResult {
    bool representable = false;
    std::string reason;
    std::optional<BigInt> prime;
    std::uint64_t exponent = 0;
};

/// Decides N = F(x, y) for positive definite F whose modified discriminant
/// is fundamental with class number one, and with a or c equal to 1 or a
/// prime. Throws unsupported_error outside that range.
CriterionResult representable_criterion(const QuadForm& f, const PrimeFactorization& n);

/// N >= 0 is not of the form 4^k (8m + 7).
bool is_sum_three_squares(const BigInt& n);

/// Norm form of the order Z[omega] of discriminant delta restricted to the
/// basis {1, omega}: x^2 - (delta/4) y^2 or x^2 + xy + ((1 - delta)/4) y^2.
QuadForm norm_form_restriction(std::int64_t delta);

} // namespace brocard
