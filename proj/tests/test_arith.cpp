#include "doctest.h"

#include "brocard/arith.hpp"
#include "brocard/errors.hpp"
#include "oracles.hpp"

#include <random>

using namespace brocard;

namespace {

std::map<std::uint64_t, std::uint64_t> small_view(const PrimeFactorization& f) {
    std::map<std::uint64_t, std::uint64_t> out;
    for (const auto& [p, e] : f.factors()) out[to_uint64(p)] = e;
    return out;
}

BigInt factorial(unsigned l) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), l);
    return out;
}

} // namespace

TEST_CASE("factorize small examples") {
    CHECK(small_view(factorize(360)) == std::map<std::uint64_t, std::uint64_t>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(small_view(factorize(5040)) == oracle::trial_factor(5040));
    CHECK(small_view(factorize(5040)) == std::map<std::uint64_t, std::uint64_t>{{2, 4}, {3, 2}, {5, 1}, {7, 1}});

    const auto unit = factorize(-1);
    CHECK(unit.factors().empty());
    CHECK(unit.sign() == -1);
    CHECK(unit.complete());

    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reconstructs and splits semiprimes") {
    const BigInt p("1000000007"), q("998244353"), r("18446744073709551557");
    const auto f = factorize(p * p * q * r);
    CHECK(f.complete());
    CHECK(f.exponent(p) == 2);
    CHECK(f.exponent(q) == 1);
    CHECK(f.exponent(r) == 1);
    CHECK(f.value() == p * p * q * r);
}

TEST_CASE("factorize flags budget exhaustion instead of guessing") {
    const BigInt p("170141183460469231731687303715884105727"); // 2^127 - 1
    const BigInt q("618970019642690137449562111");             // 2^89 - 1
    FactorEffort tiny;
    tiny.rho_iterations = 256;
    const auto f = factorize(p * q, tiny);
    CHECK_FALSE(f.complete());
    CHECK(f.value() == p * q);
    CHECK_THROWS_AS(radical(f), incomplete_factorization);
}

TEST_CASE("factorize respects the digit bound") {
    FactorEffort effort;
    effort.digit_bound = 10;
    CHECK_THROWS_AS(factorize(BigInt("123456789012"), effort), bound_exceeded);
}

TEST_CASE("factorize is additive over products") {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::uint64_t> dist(1, 1'000'000'000);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = dist(rng), n = dist(rng);
        auto expected = oracle::trial_factor(m);
        for (const auto& [p, e] : oracle::trial_factor(n)) expected[p] += e;
        CHECK(small_view(factorize(to_big(m) * to_big(n))) == expected);
    }
}

TEST_CASE("radical") {
    CHECK(radical(factorize(360)) == 30);
    CHECK(radical(factorize(1)) == 1);
    CHECK(radical(factorize(-1)) == 1);
    CHECK(radical(factorize(5040)) == 210);
}

TEST_CASE("p_valuation") {
    const auto f = factorize(72);
    CHECK(p_valuation(2, f) == 3);
    CHECK(p_valuation(7, f) == 0);
    CHECK(p_valuation(2, factorize(factorial(10))) == 8);
    CHECK_THROWS_AS(p_valuation(4, f), std::invalid_argument);
}

TEST_CASE("p_valuation of l! matches the Legendre sum") {
    for (unsigned l = 2; l <= 200; ++l) {
        const auto f = factorize(factorial(l));
        for (std::uint64_t p = 2; p <= l; ++p) {
            if (!oracle::slow_is_prime(p)) continue;
            REQUIRE(p_valuation(to_big(p), f) == oracle::legendre(l, p));
        }
    }
}

TEST_CASE("integer_nth_root") {
    auto r = integer_nth_root(25, 2);
    CHECK(r.root == 5);
    CHECK(r.exact);
    r = integer_nth_root(26, 2);
    CHECK(r.root == 5);
    CHECK_FALSE(r.exact);
    r = integer_nth_root(5041, 2);
    CHECK(r.root == 71);
    CHECK(r.exact);
    CHECK(integer_nth_root(0, 3).root == 0);
    CHECK_THROWS_AS(integer_nth_root(-1, 2), std::invalid_argument);
}

TEST_CASE("integer_nth_root brackets the radicand") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        BigInt n;
        mpz_ui_pow_ui(n.get_mpz_t(), 10, 1 + rng() % 60);
        n += rng() % 1000000;
        const unsigned k = 1 + rng() % 7;
        const auto r = integer_nth_root(n, k);
        BigInt lo, hi;
        mpz_pow_ui(lo.get_mpz_t(), r.root.get_mpz_t(), k);
        BigInt next = r.root + 1;
        mpz_pow_ui(hi.get_mpz_t(), next.get_mpz_t(), k);
        CHECK(lo <= n);
        CHECK(n < hi);
        CHECK(r.exact == (lo == n));
    }
}

TEST_CASE("kronecker examples") {
    CHECK(kronecker(-4, 5) == 1);
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(17, 2) == 1);
}

TEST_CASE("kronecker agrees with exhaustive square search") {
    for (std::int64_t d = -50; d <= 50; ++d) {
        if (d == 0) continue;
        for (std::int64_t p = 3; p <= 200; ++p) {
            if (!oracle::slow_is_prime(static_cast<std::uint64_t>(p))) continue;
            REQUIRE(kronecker(d, static_cast<std::uint64_t>(p)) == oracle::square_class(d, p));
        }
    }
}

TEST_CASE("kronecker is multiplicative in the lower argument") {
    for (std::int64_t d : {-4, -3, -7, -8, 5, 12, -15}) {
        for (std::uint64_t m = 1; m < 60; ++m) {
            for (std::uint64_t n = 1; n < 60; ++n) {
                REQUIRE(kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n));
            }
        }
    }
}

TEST_CASE("is_prime") {
    for (std::uint64_t n = 0; n < 5000; ++n) REQUIRE(is_prime(n) == oracle::slow_is_prime(n));
    CHECK(is_prime(std::uint64_t{18446744073709551557ULL}));
    CHECK_FALSE(is_prime(std::uint64_t{3215031751ULL})); // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(is_prime(BigInt("170141183460469231731687303715884105727")));
}

TEST_CASE("primes_in") {
    CHECK(primes_in(10, 30) == std::vector<std::uint64_t>{11, 13, 17, 19, 23, 29});
    CHECK(primes_in(10, 30, Residue{3, 4}) == std::vector<std::uint64_t>{11, 19, 23});
    CHECK(primes_in(1, 10, Residue{1, 4}) == std::vector<std::uint64_t>{5});
    CHECK(primes_in(3, 3, Residue{3, 3}) == std::vector<std::uint64_t>{3});
    CHECK_THROWS_AS(primes_in(1, 100, Residue{2, 4}), std::invalid_argument);
    CHECK_THROWS_AS(primes_in(1, 100, std::nullopt, 50), bound_exceeded);
}

TEST_CASE("primes_in agrees with a plain sieve across segment boundaries") {
    const auto ps = primes_in(1000, 4'200'000);
    const PrimeSieve sieve(4'200'000);
    std::vector<std::uint64_t> expected;
    for (auto p : sieve.primes()) {
        if (p >= 1000) expected.push_back(p);
    }
    CHECK(ps == expected);
    for (std::uint64_t n = 4'190'000; n <= 4'200'000; ++n) REQUIRE(sieve.is_prime(n) == oracle::slow_is_prime(n));
}
