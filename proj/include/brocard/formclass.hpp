#pragma once

// Binary forms F(x, y) = sum a_i x^i y^(n-i): discriminants, Frobenius cycle
// types at primes, membership in the "no root mod p" prime sets, empirical
// root densities, and factorization over Z for small degree.

#include "brocard/arith.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brocard {

class BinaryForm {
public:
    /// Coefficients listed a_n, ..., a_0 (the text order "a_n,...,a_0").
    /// Throws std::invalid_argument for fewer than two coefficients, the zero
    /// form, or a_n = a_0 = 0.
    static BinaryForm from_high_to_low(std::span<const std::int64_t> coeffs);

    unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    /// a_i, the coefficient of x^i y^(n-i).
    std::int64_t coeff(unsigned i) const { return coeffs_.at(i); }
    std::int64_t leading() const { return coeffs_.back(); }
    std::int64_t trailing() const { return coeffs_.front(); }
    /// Low-to-high: a_0, ..., a_n.
    const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

    std::int64_t content() const { return content_; }
    const BigInt& discriminant() const { return disc_; }
    const BigInt& modified_discriminant() const { return disc_mod_; }

    BigInt evaluate(const BigInt& x, const BigInt& y) const;
    bool is_squarefree() const { return disc_ != 0; }

    BinaryForm primitive_part() const;
    /// F(y, x).
    BinaryForm swapped() const;

    /// Polynomial syntax, e.g. "x^2+y^2".
    std::string to_string() const;
    /// Comma syntax, e.g. "1,0,1".
    std::string to_coefficient_string() const;

    friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator<(const BinaryForm& a, const BinaryForm& b);

private:
    explicit BinaryForm(std::vector<std::int64_t> low_to_high);

    std::vector<std::int64_t> coeffs_;
    std::int64_t content_ = 1;
    BigInt disc_;
    BigInt disc_mod_;
};

BinaryForm make_form(std::span<const std::int64_t> high_to_low);
BinaryForm make_form(std::initializer_list<std::int64_t> high_to_low);

/// Parses "a_n,...,a_0" or a homogeneous polynomial in x, y ("x^3-2y^3",
/// "x^2 + x*y + y^2").
BinaryForm parse_form(std::string_view text);

/// Discriminant of the degree-n binary form given low-to-high; invariant
/// under x <-> y.
BigInt form_discriminant(std::span<const std::int64_t> low_to_high);

struct CycleType {
    std::vector<unsigned> parts;

    unsigned min_part() const { return parts.empty() ? 0 : parts.front(); }
    friend bool operator==(const CycleType&, const CycleType&) = default;
};

std::string to_string(const CycleType& c);

struct PrimeStatus {
    std::uint64_t p = 0;
    bool good = false;
    bool divides_modified_discriminant = false;
    bool divides_leading = false;
    bool divides_trailing = false;
    std::optional<CycleType> cycle;

    /// Empty for good primes, otherwise the violated divisibility.
    std::string reason() const;
};

/// A prime is good when gcd(p, a_n D) = 1 or gcd(p, a_0 D) = 1 with D the
/// modified discriminant; good statuses carry the cycle type.
PrimeStatus prime_status(const BinaryForm& f, std::uint64_t p);

/// Degrees of the distinct irreducible factors of F mod p, from
/// distinct-degree factorization. When p | a_n the factorization of F(1, y)
/// is used (the point at infinity contributes a part 1). Throws
/// std::invalid_argument naming the violated divisibility at bad primes.
CycleType cycle_type(const BinaryForm& f, std::uint64_t p);

enum class PSetMembership { InPSet, NotInPSet, Bad };

std::string_view to_string(PSetMembership m);

/// InPSet iff p is good, p does not divide a_n, and F(x, 1) has no root mod p.
PSetMembership in_pset(const BinaryForm& f, std::uint64_t p);

struct DensityEstimate {
    std::uint64_t with_root = 0;
    std::uint64_t sample = 0;
    double value() const { return sample == 0 ? 0.0 : static_cast<double>(with_root) / static_cast<double>(sample); }
};

/// Fraction of good primes p <= prime_bound at which F has a projective root
/// mod p. prime_bound must be at least 100.
DensityEstimate root_density(const BinaryForm& f, std::uint64_t prime_bound, unsigned workers = 1);

struct FormFactorization {
    std::int64_t content = 1;
    std::vector<std::pair<BinaryForm, unsigned>> factors;
};

/// Irreducible factorization over Z for degree <= 4. Factors are primitive
/// with positive leading coefficient (or positive a_0 when a_n = 0), sorted by
/// degree then coefficients; `content` absorbs the sign. Throws
/// unsupported_error above degree 4.
FormFactorization factor_over_Z(const BinaryForm& f);

/// Checks a user-supplied factorization: the product must equal F and every
/// factor must be provably irreducible (exact test up to degree 4, otherwise
/// irreducibility modulo some good prime). Throws std::invalid_argument when
/// either check fails.
FormFactorization verify_factorization(const BinaryForm& f, std::int64_t content,
                                       const std::vector<std::pair<BinaryForm, unsigned>>& factors);

bool is_irreducible(const BinaryForm& f);

} // namespace brocard
