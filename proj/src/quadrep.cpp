#include "brocard/quadrep.hpp"

#include "brocard/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace brocard {

namespace {

std::int64_t checked_disc(std::int64_t a, std::int64_t b, std::int64_t c) {
    const __int128 d = static_cast<__int128>(b) * b - static_cast<__int128>(4) * a * c;
    if (d > INT64_MAX || d < INT64_MIN) throw std::overflow_error("quadratic form discriminant overflows");
    return static_cast<std::int64_t>(d);
}

// Copy, so range-for never iterates a member of a destroyed temporary.
std::map<BigInt, std::uint64_t> factors_of(std::int64_t m) { return factorize(to_big(m)).factors(); }

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

bool is_squarefree(std::int64_t m) {
    if (m == 0) return false;
    for (const auto& [p, e] : factors_of(m)) {
        if (e > 1) return false;
    }
    return true;
}

bool is_one_or_prime(std::int64_t v) { return v == 1 || (v > 1 && is_prime(static_cast<std::uint64_t>(v))); }

// Exponents of the positive integer a * N / g, keyed by prime.
std::map<BigInt, std::uint64_t> scaled_exponents(std::int64_t a, std::int64_t g, const PrimeFactorization& n) {
    std::map<BigInt, std::uint64_t> out = n.factors();
    for (const auto& [p, e] : factors_of(a)) out[p] += e;
    for (const auto& [p, e] : factors_of(g)) {
        out[p] -= e; // caller has checked g | N
        if (out[p] == 0) out.erase(p);
    }
    return out;
}

} // namespace

std::int64_t QuadForm::discriminant() const { return checked_disc(a, b, c); }

std::int64_t QuadForm::content() const { return std::gcd(std::gcd(a, b), c); }

BinaryForm QuadForm::to_binary() const { return make_form({a, b, c}); }

QuadForm parse_quadform(std::string_view text) {
    const auto f = parse_form(text);
    if (f.degree() != 2) throw std::invalid_argument("expected a quadratic form, got degree " + std::to_string(f.degree()));
    return {f.coeff(2), f.coeff(1), f.coeff(0)};
}

std::string_view to_string(SplitTag t) {
    switch (t) {
    case SplitTag::Split:
        return "split";
    case SplitTag::Inert:
        return "inert";
    case SplitTag::Ramified:
        return "ramified";
    }
    return "ramified";
}

SplitTag split_tag(std::int64_t delta, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("split_tag: " + std::to_string(p) + " is not prime");
    switch (kronecker(delta, p)) {
    case 1:
        return SplitTag::Split;
    case -1:
        return SplitTag::Inert;
    default:
        return SplitTag::Ramified;
    }
}

bool is_fundamental(std::int64_t delta) {
    const auto r = mod(delta, 4);
    if (delta == 0 || r == 2 || r == 3) {
        throw std::invalid_argument("is_fundamental: " + std::to_string(delta) + " is not a discriminant");
    }
    if (r == 1) return delta != 1 && is_squarefree(delta);
    const auto m = delta / 4;
    const auto m4 = mod(m, 4);
    return (m4 == 2 || m4 == 3) && is_squarefree(m);
}

bool has_class_number_one(std::int64_t delta) {
    static constexpr std::array<std::int64_t, 9> kTable{-3, -4, -7, -8, -11, -19, -43, -67, -163};
    return std::find(kTable.begin(), kTable.end(), delta) != kTable.end();
}

bool exponent_eligible(const BinaryForm& f, std::uint64_t q) {
    const auto status = prime_status(f, q);
    return status.good && status.cycle->min_part() >= 2;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> eligible_blockers(const BinaryForm& f,
                                                                       const PrimeFactorization& n) {
    if (!n.complete()) throw incomplete_factorization("eligible_blockers: N is not completely factored");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& [p, e] : n.factors()) {
        if (!p.fits_ulong_p()) continue;
        const auto q = to_uint64(p);
        if (e % f.degree() == 0) continue;
        // q dividing the content makes q bad, so e is also the exponent in N/g.
        if (exponent_eligible(f, q)) out.emplace_back(q, e);
    }
    return out;
}

ExponentCheck exponent_criterion(const BinaryForm& f, const PrimeFactorization& n) {
    if (!n.complete()) throw incomplete_factorization("exponent_criterion: N is not completely factored");
    for (const auto& [p, e] : factors_of(f.content())) {
        const auto have = n.exponent(p);
        if (have < e) return {true, p, have, "content"};
    }
    const auto blockers = eligible_blockers(f, n);
    if (blockers.empty()) return {false, 0, 0, "exponent criterion"};
    return {true, to_big(blockers.front().first), blockers.front().second, "exponent criterion"};
}

std::optional<std::pair<BigInt, BigInt>> representable_bruteforce(const QuadForm& f, const BigInt& n,
                                                                   std::uint64_t max_steps) {
    if (!f.positive_definite()) throw std::invalid_argument("representable_bruteforce: form is not positive definite");
    if (n < 1) throw std::invalid_argument("representable_bruteforce: N must be positive");
    const BigInt a = to_big(f.a), b = to_big(f.b), c = to_big(f.c);
    const BigInt disc = to_big(f.discriminant());
    // 4aN = (2ax + by)^2 - disc y^2, so y^2 <= 4aN / |disc|.
    const BigInt four_an = 4 * a * n;
    BigInt ymax_sq = four_an / (-disc);
    const BigInt ymax = integer_nth_root(ymax_sq, 2).root;
    if (ymax >= to_big(max_steps)) throw bound_exceeded("representable_bruteforce: search range exceeds step budget");

    using Point = std::pair<BigInt, BigInt>;
    auto better = [](const Point& u, const Point& v) {
        const auto key = [](const Point& w) {
            return std::tuple{BigInt(abs(w.second)), BigInt(abs(w.first)), w.first < 0, w.second < 0};
        };
        return key(u) < key(v);
    };
    for (BigInt y = 0; y <= ymax; ++y) {
        std::optional<Point> best;
        for (const BigInt& ys : {BigInt(y), BigInt(-y)}) {
            const BigInt rest = four_an + disc * ys * ys;
            if (rest < 0) continue;
            const auto s = integer_nth_root(rest, 2);
            if (!s.exact) continue;
            for (const BigInt& t : {s.root, BigInt(-s.root)}) {
                const BigInt num = t - b * ys;
                if (!mpz_divisible_p(num.get_mpz_t(), BigInt(2 * a).get_mpz_t())) continue;
                Point cand{num / (2 * a), ys};
                if (!best || better(cand, *best)) best = cand;
            }
            if (y == 0) break;
        }
        if (best) return best;
    }
    return std::nullopt;
}

CriterionResult representable_criterion(const QuadForm& f, const PrimeFactorization& n) {
    if (!f.positive_definite()) throw unsupported_error("representable_criterion: form is not positive definite");
    if (!n.complete()) throw incomplete_factorization("representable_criterion: N is not completely factored");
    if (n.sign() < 0) throw std::invalid_argument("representable_criterion: N must be positive");
    const auto g = f.content();
    const auto delta = f.discriminant() / (g * g);
    if (!is_fundamental(delta)) {
        throw unsupported_error("representable_criterion: modified discriminant " + std::to_string(delta) +
                                " is not fundamental");
    }
    if (!has_class_number_one(delta)) {
        throw unsupported_error("representable_criterion: class number of Q(sqrt(" + std::to_string(delta) +
                                ")) is not one");
    }
    // The statement needs a to be 1 or prime; by symmetry c will do.
    std::int64_t lead = 0;
    if (is_one_or_prime(f.a)) {
        lead = f.a;
    } else if (is_one_or_prime(f.c)) {
        lead = f.c;
    } else {
        throw unsupported_error("representable_criterion: neither a nor c is 1 or a prime");
    }

    for (const auto& [p, e] : factors_of(g)) {
        if (n.exponent(p) < e) return {false, "content " + std::to_string(g) + " does not divide N", p, n.exponent(p)};
    }
    const auto exps = scaled_exponents(lead, g, n);
    auto exponent_of = [&](const BigInt& p) {
        const auto it = exps.find(p);
        return it == exps.end() ? std::uint64_t{0} : it->second;
    };

    if (mod(delta, 8) == 5) {
        const auto l = exponent_of(2);
        if (l % 2 == 1) return {false, "condition 1: 2 is inert and v_2(aN/g) is odd", BigInt(2), l};
    }
    for (const auto& [p, e] : exps) {
        if (p == 2 || e % 2 == 0) continue;
        // n -> (delta | n) is periodic mod |delta| for a discriminant, which
        // covers primes too large for the word-sized symbol.
        const int chi = p.fits_ulong_p()
                            ? kronecker(delta, to_uint64(p))
                            : kronecker(delta, mpz_fdiv_ui(p.get_mpz_t(), static_cast<unsigned long>(-delta)));
        if (chi == -1) return {false, "condition 2: inert prime with odd exponent", p, e};
    }
    return {true, "conditions 1-3 hold (class number one)", std::nullopt, 0};
}

bool is_sum_three_squares(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("is_sum_three_squares: N must be non-negative");
    if (n == 0) return true;
    BigInt m = n;
    while (mpz_divisible_ui_p(m.get_mpz_t(), 4)) m /= 4;
    return mpz_fdiv_ui(m.get_mpz_t(), 8) != 7;
}

QuadForm norm_form_restriction(std::int64_t delta) {
    const auto r = mod(delta, 4);
    if (delta == 0 || r == 2 || r == 3) {
        throw std::invalid_argument("norm_form_restriction: " + std::to_string(delta) + " is not a discriminant");
    }
    if (r == 0) return {1, 0, -delta / 4};
    return {1, 1, (1 - delta) / 4};
}

} // namespace brocard
