#pragma once

// Desk-scale searches: solutions of P(x) = l!, per-l certificates for
// N = F(x, y) with N drawn from a factorial-like sequence, the x^2 - y^2 = l!
// family, empirical prime-gap checks for residue classes and form prime
// sets, and the parity conditions on inert primes.

#include "brocard/arith.hpp"
#include "brocard/bhargava.hpp"
#include "brocard/formclass.hpp"
#include "brocard/genfact.hpp"
#include "brocard/quadrep.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace brocard {

/// Univariate integer polynomial, coefficients low to high, nonzero leading.
class IntPoly {
public:
    explicit IntPoly(std::vector<BigInt> low_to_high);

    unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    BigInt evaluate(const BigInt& x) const;
    std::uint64_t evaluate_mod(std::int64_t x, std::uint64_t m) const;
    /// P(x + 1) - P(x).
    IntPoly difference() const;
    std::string to_string() const;

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

private:
    std::vector<BigInt> coeffs_;
};

/// "x^2-1", "3x^3 + x - 7"; the only variable is x.
IntPoly parse_int_poly(std::string_view text);

/// All integer x with P(x) = N, ascending. |x| is bracketed by
/// max(2 S / |a_n|, (2 |N| / |a_n|)^(1/n)) + 1 with S the sum of the lower
/// |a_i|; inside the bracket roots are isolated exactly from the sign
/// pattern of P - N and its iterated differences on the integers.
std::vector<BigInt> integer_roots(const IntPoly& p, const BigInt& n);
/// Materializes N first; throws bound_exceeded past the digit bound.
std::vector<BigInt> integer_roots(const IntPoly& p, const FactorizationVector& n,
                                  std::size_t digit_bound = kDefaultDigitBound);

enum class Verdict { Blocked, Representable, Unknown };

std::string_view to_string(Verdict v);

struct Certificate {
    std::uint64_t l = 0;
    Verdict verdict = Verdict::Unknown;
    /// Blocking prime; absent for rules that do not name one.
    std::optional<std::uint64_t> prime;
    std::uint64_t exponent = 0;
    /// (x, y) for forms; every solution x for P(x) = l!.
    std::vector<BigInt> witness;
    /// The applied rule, or the reason for Unknown.
    std::string rule;
};

struct SearchReport {
    std::string equation;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::vector<Certificate> entries;
    double runtime_ms = 0;
    std::vector<std::string> truncation;
    std::vector<std::string> notes;

    std::size_t count(Verdict v) const;
    /// More Unknown entries than decided ones.
    bool unknown_dominated() const;
    /// Pretty-printed JSON; meta (timing, truncation, notes) only when asked.
    std::string to_json(bool include_meta = true) const;
};

inline constexpr std::uint64_t kMaxBrocardL = 2000;

struct BrocardOptions {
    /// Residue test of P(x) = l! modulo the primes <= 64 (then 4, 8, 9, ...)
    /// before any materialization. Switching it off gives the plain
    /// materialize-and-root method.
    bool modular_exclusion = true;
    std::size_t digit_bound = kDefaultDigitBound;
    unsigned workers = 1;
};

/// Every (x, l), 1 <= l <= l_max, with P(x) = l!. One entry per l:
/// Representable with the solutions as witness, Blocked by a modulus or by
/// exact root isolation, or Unknown past the digit bound.
SearchReport brocard_search(const IntPoly& p, std::uint64_t l_max, const BrocardOptions& opts = {});

/// Right-hand side N_l of a certificate search.
struct PiKSource {
    SplittingProfile field;
};
struct BhargavaSource {
    BhargavaSet set;
    std::uint64_t prime_bound = 50;
    unsigned window_multiplier = kDefaultWindowMultiplier;
};
using RhsSource = std::variant<HSeqKind, PiKSource, BhargavaSource>;

/// "factorial", "lcm", "primorial", "multinomial:a", "pik:D", "pik-table:path",
/// "bharg:<set>[@B]" with <set> as in parse_bhargava_set.
RhsSource parse_rhs(std::string_view text);
std::string describe(const RhsSource& rhs);

struct RhsProfile {
    FactorizationVector exponents;
    /// Primes above this bound may divide N_l but are unknown.
    std::optional<std::uint64_t> complete_below;
    /// Exponents that are only upper bounds.
    std::vector<std::uint64_t> unstable;

    bool complete() const { return !complete_below && unstable.empty(); }
};

RhsProfile rhs_profile(const RhsSource& rhs, std::uint64_t l, unsigned workers = 1);

struct CertificateOptions {
    /// Largest N (in digits) handed to the exhaustive definite search.
    std::size_t witness_digits = 24;
    std::uint64_t witness_steps = 20'000'000;
    unsigned workers = 1;
};

/// One certificate per l in [lo, hi]: Blocked by the content, by the
/// smallest eligible prime with exponent 1 in (l/2, l] (else the smallest
/// eligible violator), or by the quadratic criterion; Representable with a
/// witness, or on the criterion alone; otherwise Unknown.
SearchReport certificate_search(const BinaryForm& f, const RhsSource& rhs, std::uint64_t lo, std::uint64_t hi,
                                const CertificateOptions& opts = {});

/// Recomputes a certificate from the raw inputs by a separate route:
/// Legendre-type valuations, direct ideal counts, a projective point scan
/// for eligibility, Euler's criterion for inertness, and F(witness) = N.
bool verify_certificate(const BinaryForm& f, const RhsSource& rhs, const Certificate& c);

struct FamilyRow {
    std::uint64_t a = 0;
    BigInt x;
    BigInt y;
    bool holds = false;
};

/// (a!/4 + 1)^2 - (a!/4 - 1)^2 = a! for each a in [lo, hi], a >= 4.
std::vector<FamilyRow> family_check(std::uint64_t lo, std::uint64_t hi,
                                    std::size_t digit_bound = kDefaultDigitBound);

using PrimeSource = std::variant<Residue, BinaryForm>;

struct GapViolation {
    std::uint64_t p = 0;
    /// Next eligible prime, when one exists below the scanned limit.
    std::optional<std::uint64_t> next;
};

/// Eligible primes p in [lo, hi] with no eligible prime in (p, A p).
/// Eligible means p = a mod b, or p in the no-root prime set of the form.
std::vector<GapViolation> bertrand_gap_check(const PrimeSource& source, std::uint64_t lo, std::uint64_t hi,
                                             double ratio = 2.0, std::uint64_t sieve_budget = kDefaultSieveBudget);

struct ParityRow {
    std::uint64_t l = 0;
    bool pass = true;
    std::optional<std::uint64_t> prime;
    std::uint64_t exponent = 0;
    std::string condition;
};

/// For N_l from `rhs`: fails when 2 is inert in Q(sqrt delta) and v_2(N_l)
/// is odd, or when an odd inert prime has odd exponent (smallest such).
std::vector<ParityRow> parity_blocker(std::int64_t delta, const RhsSource& rhs, std::uint64_t lo, std::uint64_t hi);

} // namespace brocard
