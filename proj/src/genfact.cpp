#include "brocard/genfact.hpp"

#include "brocard/errors.hpp"
#include "brocard/parallel.hpp"
#include "brocard/quadrep.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace brocard {

namespace {

void check_bound(std::uint64_t l, std::uint64_t bound, const char* who) {
    if (l > bound) {
        throw bound_exceeded(std::string(who) + ": l = " + std::to_string(l) + " exceeds bound " +
                             std::to_string(bound));
    }
}

std::uint64_t legendre_sum(std::uint64_t l, std::uint64_t p) {
    std::uint64_t s = 0;
    for (std::uint64_t q = l / p; q > 0; q /= p) s += q;
    return s;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("ideal count overflows 64 bits");
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("ideal count overflows 64 bits");
    return out;
}

// C(n + k - 1, k): multisets of size k from n kinds.
std::uint64_t multichoose(std::uint64_t n, std::uint64_t k) {
    if (k == 0) return 1;
    if (n == 0) return 0;
    BigInt c;
    mpz_bin_uiui(c.get_mpz_t(), n + k - 1, k);
    return to_uint64(c);
}

} // namespace

std::uint64_t FactorizationVector::exponent(std::uint64_t p) const {
    const auto it = exps_.find(p);
    return it == exps_.end() ? 0 : it->second;
}

void FactorizationVector::add(std::uint64_t p, std::uint64_t e) {
    if (e == 0) return;
    exps_[p] += e;
}

double FactorizationVector::log_value() const {
    double s = 0;
    for (const auto& [p, e] : exps_) s += static_cast<double>(e) * std::log(static_cast<double>(p));
    return s;
}

BigInt FactorizationVector::value(std::size_t digit_bound) const {
    // Cheap estimate first so nothing huge is ever built.
    if (log_value() / std::log(10.0) > static_cast<double>(digit_bound) + 1) {
        throw bound_exceeded("profile value exceeds " + std::to_string(digit_bound) + " digits");
    }
    BigInt out = 1;
    for (const auto& [p, e] : exps_) {
        BigInt pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
        out *= pe;
    }
    check_digit_bound(out, digit_bound, "profile value");
    return out;
}

PrimeFactorization FactorizationVector::to_factorization() const {
    PrimeFactorization out;
    for (const auto& [p, e] : exps_) out.multiply(to_big(p), e);
    return out;
}

FactorizationVector FactorizationVector::from_factorization(const PrimeFactorization& f) {
    if (!f.complete()) throw incomplete_factorization("profile from an incomplete factorization");
    FactorizationVector out;
    for (const auto& [p, e] : f.factors()) out.add(to_uint64(p), e);
    return out;
}

FactorizationVector& FactorizationVector::operator+=(const FactorizationVector& other) {
    for (const auto& [p, e] : other.exps_) add(p, e);
    return *this;
}

std::string to_string(const FactorizationVector& v) {
    if (v.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, e] : v.entries()) {
        if (!first) out << " * ";
        first = false;
        out << p;
        if (e > 1) out << '^' << e;
    }
    return out.str();
}

HSeqKind HSeqKind::multinomial(unsigned a) {
    if (a < 2) throw std::invalid_argument("multinomial sequence needs a >= 2");
    return {Kind::Multinomial, a};
}

HSeqKind parse_hseq_kind(std::string_view text) {
    if (text == "factorial") return HSeqKind::factorial();
    if (text == "lcm") return HSeqKind::lcm();
    if (text == "primorial") return HSeqKind::primorial();
    constexpr std::string_view prefix = "multinomial:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string rest(text.substr(prefix.size()));
        std::size_t used = 0;
        unsigned long a = 0;
        try {
            a = std::stoul(rest, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != rest.size()) throw std::invalid_argument("bad multinomial parameter: " + rest);
        return HSeqKind::multinomial(static_cast<unsigned>(a));
    }
    throw std::invalid_argument("unknown sequence kind: " + std::string(text));
}

std::string to_string(const HSeqKind& k) {
    switch (k.kind) {
    case HSeqKind::Kind::Factorial:
        return "factorial";
    case HSeqKind::Kind::Lcm:
        return "lcm";
    case HSeqKind::Kind::Primorial:
        return "primorial";
    case HSeqKind::Kind::Multinomial:
        return "multinomial:" + std::to_string(k.a);
    }
    return "factorial";
}

FactorizationVector hseq_profile(const HSeqKind& kind, std::uint64_t l, std::uint64_t bound) {
    if (l < 1) throw std::invalid_argument("hseq_profile: l must be positive");
    check_bound(l, bound, "hseq_profile");
    FactorizationVector out;
    switch (kind.kind) {
    case HSeqKind::Kind::Factorial:
        for (auto p : primes_in(2, l)) out.add(p, legendre_sum(l, p));
        break;
    case HSeqKind::Kind::Lcm:
        for (auto p : primes_in(2, l)) {
            std::uint64_t e = 0;
            for (std::uint64_t q = p; q <= l; q *= p) {
                ++e;
                if (q > l / p) break;
            }
            out.add(p, e);
        }
        break;
    case HSeqKind::Kind::Primorial: {
        // The l-th prime is below l (ln l + ln ln l) for l >= 6.
        const double x = static_cast<double>(std::max<std::uint64_t>(l, 6));
        const auto limit = static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 16;
        const auto primes = primes_in(2, limit);
        for (std::uint64_t i = 0; i < l; ++i) out.add(primes.at(i), 1);
        break;
    }
    case HSeqKind::Kind::Multinomial: {
        const auto al = l * kind.a;
        for (auto p : primes_in(2, al)) out.add(p, legendre_sum(al, p) - kind.a * legendre_sum(l, p));
        break;
    }
    }
    return out;
}

SplittingProfile SplittingProfile::quadratic(std::int64_t delta) {
    if (!is_fundamental(delta)) {
        throw std::invalid_argument("quadratic field needs a fundamental discriminant, got " + std::to_string(delta));
    }
    SplittingProfile out;
    out.degree_ = 2;
    out.delta_ = delta;
    return out;
}

SplittingProfile SplittingProfile::from_table(std::istream& in) {
    SplittingProfile out;
    std::string line;
    std::size_t line_no = 0;
    std::optional<unsigned> degree;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string p_text, parts_text, flag;
        if (!(fields >> p_text)) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("splitting table line " + std::to_string(line_no) + ": " + why);
        };
        if (!(fields >> parts_text)) fail("missing cycle type");
        fields >> flag;
        if (!flag.empty() && flag != "ramified") fail("unexpected token '" + flag + "'");
        std::uint64_t p = 0;
        try {
            std::size_t used = 0;
            p = std::stoull(p_text, &used);
            if (used != p_text.size()) fail("bad prime '" + p_text + "'");
        } catch (const std::logic_error&) {
            fail("bad prime '" + p_text + "'");
        }
        if (!is_prime(p)) fail(p_text + " is not prime");
        std::vector<unsigned> parts;
        std::istringstream parts_in(parts_text);
        std::string part;
        unsigned total = 0;
        while (std::getline(parts_in, part, ',')) {
            try {
                const auto v = std::stoul(part);
                if (v == 0) fail("zero part");
                parts.push_back(static_cast<unsigned>(v));
                total += static_cast<unsigned>(v);
            } catch (const std::logic_error&) {
                fail("bad cycle part '" + part + "'");
            }
        }
        if (parts.empty()) fail("empty cycle type");
        if (degree && *degree != total && flag.empty()) fail("cycle type does not sum to the field degree");
        if (flag.empty()) degree = total;
        std::sort(parts.begin(), parts.end());
        out.table_[p] = {parts, !flag.empty()};
    }
    if (out.table_.empty()) throw std::invalid_argument("splitting table is empty");
    if (!degree) throw std::invalid_argument("splitting table has no unramified prime");
    out.degree_ = *degree;
    return out;
}

SplittingProfile SplittingProfile::from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open splitting table " + path);
    return from_table(in);
}

std::string SplittingProfile::description() const {
    if (delta_) return "Q(sqrt(" + std::to_string(*delta_) + "))";
    return "table field of degree " + std::to_string(degree_);
}

std::vector<std::uint64_t> SplittingProfile::counts(std::uint64_t p) const {
    if (delta_) {
        switch (kronecker(*delta_, p)) {
        case 1:
            return {0, 2};
        case -1:
            return {0, 0, 1};
        default:
            return {0, 1}; // one prime of degree 1 above a ramified p
        }
    }
    const auto it = table_.find(p);
    if (it == table_.end()) throw std::out_of_range("splitting table has no entry for p = " + std::to_string(p));
    std::vector<std::uint64_t> g(it->second.first.back() + 1, 0);
    for (auto f : it->second.first) ++g[f];
    return g;
}

bool SplittingProfile::ramified(std::uint64_t p) const {
    if (delta_) return kronecker(*delta_, p) == 0;
    const auto it = table_.find(p);
    if (it == table_.end()) throw std::out_of_range("splitting table has no entry for p = " + std::to_string(p));
    return it->second.second;
}

std::uint64_t SplittingProfile::ideal_count_prime_power(std::uint64_t p, unsigned m) const {
    if (!delta_ && ramified(p)) {
        throw unsupported_error("ideal counts at the ramified prime " + std::to_string(p) +
                                " need ramification indices the table does not give");
    }
    return brocard::ideal_count_prime_power(counts(p), m);
}

std::uint64_t ideal_count_prime_power(const std::vector<std::uint64_t>& g, unsigned m) {
    // Coefficient of t^m in prod_i (1 - t^i)^(-G[i]); multiplying in one
    // factor at a time enumerates exactly the tuples (a_1, ..., a_m).
    std::vector<std::uint64_t> series(m + 1, 0);
    series[0] = 1;
    for (unsigned i = 1; i <= m && i < g.size(); ++i) {
        if (g[i] == 0) continue;
        std::vector<std::uint64_t> next(m + 1, 0);
        for (unsigned have = 0; have <= m; ++have) {
            if (series[have] == 0) continue;
            for (unsigned a = 0; have + a * i <= m; ++a) {
                next[have + a * i] = checked_add(next[have + a * i], checked_mul(series[have], multichoose(g[i], a)));
            }
        }
        series = std::move(next);
    }
    return series[m];
}

std::uint64_t ideal_count(std::int64_t delta, const BigInt& n) {
    if (!is_fundamental(delta)) throw std::invalid_argument("ideal_count: discriminant must be fundamental");
    if (n < 1) throw std::invalid_argument("ideal_count: n must be positive");
    const auto f = factorize(n);
    if (!f.complete()) throw incomplete_factorization("ideal_count: could not factor n");
    std::int64_t sum = 0;
    for (const auto& d : divisors(f)) sum += kronecker(delta, to_uint64(d));
    return static_cast<std::uint64_t>(sum);
}

FactorizationVector pi_K_profile(const SplittingProfile& field, std::uint64_t l, std::uint64_t bound,
                                 unsigned workers) {
    if (l < 1) throw std::invalid_argument("pi_K_profile: l must be positive");
    check_bound(l, bound, "pi_K_profile");
    const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(l));
    // a(p^e) depends only on (p, e); cache per prime.
    std::map<std::uint64_t, std::vector<std::uint64_t>> local_counts;
    for (std::uint64_t p = 2; p <= l; ++p) {
        if (spf[p] != p) continue;
        std::vector<std::uint64_t> row{1};
        for (std::uint64_t q = p; q <= l; q *= p) {
            row.push_back(field.ideal_count_prime_power(p, static_cast<unsigned>(row.size())));
            if (q > l / p) break;
        }
        local_counts.emplace(p, std::move(row));
    }
    auto parts = parallel_blocks(l - 1, workers, [&](std::size_t lo, std::size_t hi) {
        std::map<std::uint64_t, std::uint64_t> acc;
        std::vector<std::pair<std::uint64_t, unsigned>> fac;
        for (auto idx = lo; idx < hi; ++idx) {
            std::uint64_t n = idx + 2;
            fac.clear();
            std::uint64_t a = 1;
            while (n > 1) {
                const std::uint64_t p = spf[n];
                unsigned e = 0;
                while (n % p == 0) {
                    n /= p;
                    ++e;
                }
                fac.emplace_back(p, e);
                a *= local_counts.at(p)[e];
                if (a == 0) break;
            }
            if (a == 0) continue;
            for (const auto& [p, e] : fac) acc[p] += a * e;
        }
        return acc;
    });
    FactorizationVector out;
    for (const auto& part : parts) {
        for (const auto& [p, e] : part) out.add(p, e);
    }
    return out;
}

FactorizationVector pi_K_profile(std::int64_t delta, std::uint64_t l, std::uint64_t bound, unsigned workers) {
    return pi_K_profile(SplittingProfile::quadratic(delta), l, bound, workers);
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
min_exponent_prime(const FactorizationVector& v, const std::function<bool(std::uint64_t)>& eligible) {
    std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
    for (const auto& [p, e] : v.entries()) {
        if (!eligible(p)) continue;
        if (!best || e < best->second) best = std::pair{p, e};
    }
    return best;
}

} // namespace brocard
