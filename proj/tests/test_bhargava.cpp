#include "doctest.h"

#include "brocard/bhargava.hpp"
#include "brocard/errors.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace brocard;

namespace {

using Profile = std::map<std::uint64_t, std::uint64_t>;

// v_p(a^l * l!) straight from the integer.
std::uint64_t closed_form_valuation(std::int64_t a, unsigned l, std::uint64_t p) {
    BigInt v;
    mpz_fac_ui(v.get_mpz_t(), l);
    BigInt al;
    mpz_ui_pow_ui(al.get_mpz_t(), static_cast<unsigned long>(a), l);
    v *= al;
    return mpz_remove(v.get_mpz_t(), v.get_mpz_t(), BigInt(static_cast<unsigned long>(p)).get_mpz_t());
}

// v_p(prod_{k<n} (a_n - a_k)) recomputed from a stored ordering.
std::uint64_t ordering_valuation(const std::vector<std::int64_t>& ord, std::size_t n, std::uint64_t p) {
    std::uint64_t s = 0;
    for (std::size_t k = 0; k < n; ++k) {
        auto d = ord[n] - ord[k];
        if (d < 0) d = -d;
        while (d % static_cast<std::int64_t>(p) == 0) {
            d /= static_cast<std::int64_t>(p);
            ++s;
        }
    }
    return s;
}

std::vector<BhargavaSet> corpus() {
    return {BhargavaSet::integers(),          BhargavaSet::progression(2, 1),        BhargavaSet::progression(3, 0),
            BhargavaSet::progression(6, 5),   BhargavaSet::poly_image({1, 0, 0}),    BhargavaSet::poly_image({1, 1, 0}),
            BhargavaSet::poly_image({2, 0, 1}), BhargavaSet::poly_image({1, 0, 0, 0}), BhargavaSet::poly_image({1, 0, 1, 0})};
}

} // namespace

TEST_CASE("p_ordering examples") {
    const auto z = p_ordering(BhargavaSet::integers(), 2, 3);
    CHECK(z.values == std::vector<std::uint64_t>{0, 0, 1, 1});
    CHECK(z.all_stable());
    CHECK(z.ordering.front() == 0);
    // Starting from the natural ordering's first element gives the same values.
    const auto squares = p_ordering(BhargavaSet::poly_image({1, 0, 0}), 5, 5);
    CHECK(squares.values == std::vector<std::uint64_t>{0, 0, 0, 1, 1, 2});
    CHECK(squares.all_stable());
    const auto ap = p_ordering(BhargavaSet::progression(2, 1), 3, 3);
    CHECK(ap.values.back() == 1);
    CHECK_THROWS_AS(p_ordering(BhargavaSet::integers(), 4, 3), std::invalid_argument);
}

TEST_CASE("stored orderings reproduce their p-sequences") {
    for (const auto& s : corpus()) {
        for (std::uint64_t p : {2, 3, 5, 7}) {
            const auto seq = p_ordering(s, p, 10);
            for (std::size_t n = 0; n <= 10; ++n) REQUIRE(seq.values[n] == ordering_valuation(seq.ordering, n, p));
        }
    }
}

TEST_CASE("p-sequences do not depend on the starting element") {
    for (const auto& s : corpus()) {
        const auto elems = s.elements(64);
        for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
            const auto a = p_ordering(s, p, 12);
            const auto b = p_ordering(s, p, 12, elems[7]);
            const auto c = p_ordering(s, p, 12, elems[31]);
            for (std::size_t n = 0; n <= 12; ++n) {
                if (a.stable[n] && b.stable[n]) REQUIRE(a.values[n] == b.values[n]);
                if (a.stable[n] && c.stable[n]) REQUIRE(a.values[n] == c.values[n]);
            }
        }
    }
}

TEST_CASE("greedy orderings of progressions match a^l l!") {
    for (std::int64_t a : {2, 3}) {
        for (std::int64_t b : {0, 1}) {
            const auto s = BhargavaSet::progression(a, b);
            for (std::uint64_t p : {2, 3, 5, 7, 11}) {
                const auto seq = p_ordering(s, p, 10);
                for (unsigned l = 0; l <= 10; ++l) {
                    REQUIRE(seq.stable[l]);
                    REQUIRE(seq.values[l] == closed_form_valuation(a, l, p));
                }
            }
        }
    }
}

TEST_CASE("greedy orderings of squares match the quadratic-image table") {
    const auto s = BhargavaSet::poly_image({1, 0, 0});
    for (std::uint64_t p = 3; p <= 31; ++p) {
        if (!oracle::slow_is_prime(p)) continue;
        const auto seq = p_ordering(s, p, p);
        for (std::uint64_t l = 0; l <= p; ++l) {
            REQUIRE(seq.stable[l]);
            REQUIRE(seq.values[l] == quad_image_valuation(p, l, 1, 0, 0));
        }
    }
    // Same table for another quadratic with p not dividing a.
    const auto t = BhargavaSet::poly_image({2, 3, 1});
    for (std::uint64_t p : {5, 7, 11, 13}) {
        const auto seq = p_ordering(t, p, p);
        for (std::uint64_t l = 0; l <= p; ++l) REQUIRE(seq.values[l] == quad_image_valuation(p, l, 2, 3, 1));
    }
}

TEST_CASE("quad_image_valuation examples and errors") {
    CHECK(quad_image_valuation(5, 2, 1, 0, 0) == 0);
    CHECK(quad_image_valuation(5, 3, 1, 0, 0) == 1);
    CHECK(quad_image_valuation(5, 5, 1, 0, 0) == 2);
    CHECK_THROWS_AS(quad_image_valuation(5, 6, 1, 0, 0), unsupported_error);
    CHECK_THROWS_AS(quad_image_valuation(2, 1, 1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(quad_image_valuation(5, 1, 10, 0, 0), std::invalid_argument);
}

TEST_CASE("cube_image_count") {
    CHECK(cube_image_count(7) == 3);
    CHECK(cube_image_count(5) == 5);
    CHECK(cube_image_count(3) == 3);
    for (std::uint64_t p = 2; p < 300; ++p) {
        if (!oracle::slow_is_prime(p)) continue;
        std::set<std::uint64_t> cubes;
        for (std::uint64_t n = 0; n < p; ++n) cubes.insert(n * n % p * n % p);
        REQUIRE(cube_image_count(p) == cubes.size());
    }
    CHECK_THROWS_AS(cube_image_count(9), std::invalid_argument);
}

TEST_CASE("bhargava_profile examples") {
    const auto z = bhargava_profile(BhargavaSet::integers(), 6, 7);
    CHECK(z.exponents.value() == 720);
    CHECK(z.closed_form);
    CHECK_FALSE(z.truncated);
    const auto ap = bhargava_profile(BhargavaSet::progression(2, 1), 3, 5);
    CHECK(ap.exponents.entries() == Profile{{2, 4}, {3, 1}});
    const auto sq = bhargava_profile(BhargavaSet::poly_image({1, 0, 0}), 5, 5);
    CHECK(sq.exponents.exponent(5) == 2);
    CHECK(sq.truncated);
    CHECK(sq.unstable.empty());
    CHECK(bhargava_profile(BhargavaSet::integers(), 10, 5).truncated);
}

TEST_CASE("l! divides l!_S") {
    for (const auto& s : corpus()) {
        for (std::uint64_t l = 1; l <= 12; ++l) {
            const auto fact = hseq_profile(HSeqKind::factorial(), l);
            const auto prof = bhargava_profile(s, l, 13);
            for (const auto& [p, e] : fact.entries()) {
                if (std::find(prof.unstable.begin(), prof.unstable.end(), p) != prof.unstable.end()) continue;
                REQUIRE(e <= prof.exponents.exponent(p));
            }
        }
    }
}

TEST_CASE("explicit windows are exact") {
    const auto w = BhargavaSet::window({0, 1, 2, 3, 4, 5, 6, 7});
    const auto seq = p_ordering(w, 2, 7);
    CHECK(seq.all_stable());
    CHECK(seq.values == std::vector<std::uint64_t>{0, 0, 1, 1, 3, 3, 4, 4});
    CHECK_THROWS_AS(p_ordering(w, 2, 8), std::invalid_argument);
    CHECK_THROWS_AS(BhargavaSet::window({1, 1}), std::invalid_argument);
}

TEST_CASE("set descriptors") {
    CHECK(parse_bhargava_set("Z").kind() == BhargavaSet::Kind::Integers);
    const auto ap = parse_bhargava_set("AP 2 1");
    CHECK(ap.kind() == BhargavaSet::Kind::Progression);
    CHECK(ap.step() == 2);
    CHECK(parse_bhargava_set("POLY 1 0 0").kind() == BhargavaSet::Kind::PolyImage);
    CHECK(parse_bhargava_set("POLY 0 3 1").kind() == BhargavaSet::Kind::Progression);
    CHECK_THROWS_AS(parse_bhargava_set("POLY 0 0 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bhargava_set("AP 0 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bhargava_set("Q"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bhargava_set("WINDOW /nonexistent/file"), std::invalid_argument);
}

TEST_CASE("radical_growth_report") {
    const auto rows = radical_growth_report(BhargavaSet::integers(), 10, 20, 23);
    for (const auto& r : rows) {
        CHECK(r.ratio() < 0.7);
        BigInt fact;
        mpz_fac_ui(fact.get_mpz_t(), r.l);
        CHECK(r.log_value == doctest::Approx(std::log(fact.get_d())).epsilon(1e-9));
    }
    const auto two = radical_growth_report(BhargavaSet::integers(), 2, 2, 23);
    CHECK(two.front().ratio() == doctest::Approx(1.0));
    const auto shifted = radical_growth_report(BhargavaSet::progression(2, 1), 10, 20, 23);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(shifted[i].log_value == doctest::Approx(rows[i].log_value + static_cast<double>(rows[i].l) * std::log(2.0)));
        CHECK(shifted[i].log_radical == doctest::Approx(rows[i].log_radical));
    }
}
