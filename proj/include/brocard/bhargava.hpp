#pragma once

// Bhargava's generalized factorials l!_S for subsets S of Z: greedy
// p-orderings over a finite window with a stability check, closed forms for
// Z and arithmetic progressions, the valuation table for quadratic images,
// and radical-growth tables.

#include "brocard/genfact.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace brocard {

class BhargavaSet {
public:
    enum class Kind { Integers, Progression, PolyImage, Window };

    static BhargavaSet integers();
    /// {a n + b : n in Z}, a != 0.
    static BhargavaSet progression(std::int64_t a, std::int64_t b);
    /// f(Z) for f given high-to-low, degree 1..3. Degree 1 images become
    /// progressions.
    static BhargavaSet poly_image(std::vector<std::int64_t> high_to_low);
    /// A finite set given explicitly; greedy minima over it are exact.
    static BhargavaSet window(std::vector<std::int64_t> elements);

    Kind kind() const { return kind_; }
    std::int64_t step() const { return a_; }
    std::int64_t offset() const { return b_; }
    /// Low-to-high coefficients of the image polynomial.
    const std::vector<std::int64_t>& poly() const { return poly_; }
    std::string description() const;

    /// `count` distinct elements, ordered by |x| with positive first. For a
    /// window set this is the whole set and `count` is ignored.
    std::vector<std::int64_t> elements(std::size_t count) const;

private:
    Kind kind_ = Kind::Integers;
    std::int64_t a_ = 1;
    std::int64_t b_ = 0;
    std::vector<std::int64_t> poly_;
    std::vector<std::int64_t> window_;
};

/// "Z", "AP a b", "POLY c_d ... c_0" (degree <= 3), "WINDOW path".
BhargavaSet parse_bhargava_set(std::string_view text);

struct PSequence {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> values;     // v_p(0;S), ..., v_p(L;S)
    std::vector<std::int64_t> ordering;    // a_0, ..., a_L
    std::vector<bool> stable;              // values[n] confirmed by the doubled window
    bool all_stable() const;
};

inline constexpr unsigned kDefaultWindowMultiplier = 8;

/// Greedy p-ordering of length L + 1 over W = max(64, m (L+1) p) elements,
/// repeated over 2W; index n is stable when both runs give the same value.
/// Ties go to the smallest |x|, positive first. `start` fixes a_0.
PSequence p_ordering(const BhargavaSet& s, std::uint64_t p, std::size_t length,
                     std::optional<std::int64_t> start = std::nullopt,
                     unsigned window_multiplier = kDefaultWindowMultiplier);

struct BhargavaProfile {
    FactorizationVector exponents;
    bool closed_form = false;
    std::uint64_t prime_bound = 0;
    /// Primes above prime_bound may divide l!_S but are not reported.
    bool truncated = false;
    /// Primes whose exponent is only an upper bound.
    std::vector<std::uint64_t> unstable;
};

/// l!_S over primes <= B: closed forms for Z (l!) and progressions
/// (a^l l!), greedy p-orderings otherwise.
BhargavaProfile bhargava_profile(const BhargavaSet& s, std::uint64_t l, std::uint64_t prime_bound,
                                 unsigned window_multiplier = kDefaultWindowMultiplier, unsigned workers = 1);

/// v_p(l!_S) for S = f(Z), f = a x^2 + b x + c, odd p not dividing a,
/// 0 <= l <= p. Throws unsupported_error for l > p.
unsigned quad_image_valuation(std::uint64_t p, std::uint64_t l, std::int64_t a, std::int64_t b, std::int64_t c);

/// Number of cubes mod p.
std::uint64_t cube_image_count(std::uint64_t p);

struct RadicalGrowthRow {
    std::uint64_t l = 0;
    double log_radical = 0;
    double log_value = 0;
    bool truncated = false;

    double ratio() const { return log_value == 0 ? 1.0 : log_radical / log_value; }
};

std::vector<RadicalGrowthRow> radical_growth_report(const BhargavaSet& s, std::uint64_t lo, std::uint64_t hi,
                                                    std::uint64_t prime_bound,
                                                    unsigned window_multiplier = kDefaultWindowMultiplier);

} // namespace brocard
