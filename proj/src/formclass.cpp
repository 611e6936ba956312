#include "brocard/formclass.hpp"

#include "brocard/errors.hpp"
#include "brocard/parallel.hpp"
#include "poly_mod.hpp"
#include "poly_parse.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace brocard {

namespace {

using BigPoly = std::vector<BigInt>; // low to high

BigPoly to_big_poly(const std::vector<std::int64_t>& c) {
    BigPoly out;
    out.reserve(c.size());
    for (auto v : c) out.push_back(to_big(v));
    return out;
}

// Fraction-free Gaussian elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const auto n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Exact division of a by b over Z; nullopt when b does not divide a.
std::optional<BigPoly> exact_divide(BigPoly a, const BigPoly& b) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (b.empty() || b.back() == 0) throw std::domain_error("exact_divide: zero divisor");
    if (a.empty()) return BigPoly{};
    if (a.size() < b.size()) return std::nullopt;
    BigPoly q(a.size() - b.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        const auto& top = a[k + b.size() - 1];
        if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        q[k] = top / b.back();
        for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= q[k] * b[i];
    }
    for (const auto& r : a) {
        if (r != 0) return std::nullopt;
    }
    return q;
}

BigPoly multiply(const BigPoly& a, const BigPoly& b) {
    BigPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<std::int64_t> to_small(const BigPoly& p) {
    std::vector<std::int64_t> out;
    out.reserve(p.size());
    for (const auto& v : p) out.push_back(to_int64(v));
    return out;
}

BigInt evaluate_poly(const BigPoly& p, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Normalizes so the highest nonzero coefficient is positive; returns the sign flipped.
int normalize_sign(std::vector<std::int64_t>& c) {
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        if (*it == 0) continue;
        if (*it > 0) return 1;
        for (auto& v : c) v = -v;
        return -1;
    }
    return 1;
}

std::vector<BigInt> signed_divisors(const BigInt& n) {
    std::vector<BigInt> out;
    for (const auto& d : divisors(factorize(n))) {
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

struct Flags {
    bool d_div = false;
    bool lead_div = false;
    bool trail_div = false;
    bool good() const { return !d_div && !(lead_div && trail_div); }
};

std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
    const auto wide = static_cast<__int128>(v) % static_cast<__int128>(p);
    return static_cast<std::uint64_t>(wide < 0 ? wide + p : wide);
}

Flags classify(const BinaryForm& f, std::uint64_t p) {
    Flags out;
    out.d_div = mpz_divisible_ui_p(f.modified_discriminant().get_mpz_t(), p) != 0;
    out.lead_div = reduce(f.leading(), p) == 0;
    out.trail_div = reduce(f.trailing(), p) == 0;
    return out;
}

// F(x, 1) mod p when p does not divide a_n, otherwise F(1, y) mod p.
detail::PolyModP reduced_affine(const BinaryForm& f, std::uint64_t p, bool use_reverse) {
    const auto& c = f.coefficients();
    detail::PolyModP out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        out[i] = reduce(use_reverse ? c[c.size() - 1 - i] : c[i], p);
    }
    detail::PrimeFieldPoly::trim(out);
    return out;
}

PSetMembership membership_unchecked(const BinaryForm& f, std::uint64_t p) {
    const auto flags = classify(f, p);
    if (!flags.good()) return PSetMembership::Bad;
    if (flags.lead_div) return PSetMembership::NotInPSet;
    const detail::PrimeFieldPoly field(p);
    return field.has_root(reduced_affine(f, p, false)) ? PSetMembership::NotInPSet : PSetMembership::InPSet;
}

void require_prime(std::uint64_t p, const char* who) {
    if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not prime");
}

BinaryForm from_low(std::vector<std::int64_t> low) {
    std::vector<std::int64_t> high(low.rbegin(), low.rend());
    return BinaryForm::from_high_to_low(high);
}

// Integer roots [r : s] of a primitive form with a_n != 0 and a_0 != 0, as linear factors s x - r y.
std::optional<BigPoly> find_linear_factor(const BigPoly& f) {
    const BigInt& lead = f.back();
    const BigInt& trail = f.front();
    for (const auto& s : divisors(factorize(abs(lead)))) {
        for (const auto& r : signed_divisors(trail)) {
            if (gcd(r, s) != 1) continue;
            // F(r, s) = sum a_i r^i s^(n-i)
            BigInt acc = 0, rp = 1;
            std::vector<BigInt> spow(f.size(), 1);
            for (std::size_t i = 1; i < f.size(); ++i) spow[i] = spow[i - 1] * s;
            for (std::size_t i = 0; i < f.size(); ++i) {
                acc += f[i] * rp * spow[f.size() - 1 - i];
                rp *= r;
            }
            if (acc == 0) return BigPoly{-r, s};
        }
    }
    return std::nullopt;
}

bool quartic_pattern_proves_irreducible(const BinaryForm& g) {
    // Over Z a reducible quartic without linear factors splits as 2+2, which
    // is incompatible with the patterns [4] and [1,3] at a good prime.
    unsigned tried = 0;
    for (std::uint64_t p = 3; p < 400 && tried < 12; p += 2) {
        if (!is_prime(p)) continue;
        const auto flags = classify(g, p);
        if (!flags.good() || flags.lead_div) continue;
        ++tried;
        const auto ct = cycle_type(g, p);
        if (ct.parts == std::vector<unsigned>{4} || ct.parts == std::vector<unsigned>{1, 3}) return true;
    }
    return false;
}

std::optional<BigPoly> find_quadratic_factor(const BigPoly& g) {
    const auto v0 = evaluate_poly(g, 0);
    const auto v1 = evaluate_poly(g, 1);
    const auto vm = evaluate_poly(g, -1);
    if (v0 == 0 || v1 == 0 || vm == 0) return std::nullopt;
    const auto d0s = signed_divisors(v0);
    const auto d1s = signed_divisors(v1);
    const auto dms = signed_divisors(vm);
    for (const auto& d0 : d0s) {
        for (const auto& d1 : d1s) {
            for (const auto& dm : dms) {
                BigInt sum = d1 + dm, diff = d1 - dm;
                if (mpz_odd_p(sum.get_mpz_t())) continue;
                BigInt alpha = sum / 2 - d0;
                if (alpha <= 0) continue;
                if (!mpz_divisible_p(g.back().get_mpz_t(), alpha.get_mpz_t())) continue;
                BigPoly q{d0, diff / 2, alpha};
                if (exact_divide(g, q)) return q;
            }
        }
    }
    return std::nullopt;
}

} // namespace

BinaryForm::BinaryForm(std::vector<std::int64_t> low_to_high) : coeffs_(std::move(low_to_high)) {
    if (coeffs_.size() < 2) throw std::invalid_argument("binary form needs at least two coefficients (degree >= 1)");
    if (std::all_of(coeffs_.begin(), coeffs_.end(), [](auto v) { return v == 0; })) {
        throw std::invalid_argument("binary form is identically zero");
    }
    if (coeffs_.front() == 0 && coeffs_.back() == 0) {
        throw std::invalid_argument("binary form with a_n = a_0 = 0 is not supported");
    }
    std::uint64_t g = 0;
    for (auto v : coeffs_) g = std::gcd(g, static_cast<std::uint64_t>(v < 0 ? -(v + 1) + 1ULL : v));
    content_ = static_cast<std::int64_t>(g);
    disc_ = form_discriminant(coeffs_);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), g, 2 * degree() - 2);
    if (!mpz_divisible_p(disc_.get_mpz_t(), scale.get_mpz_t())) {
        throw std::logic_error("discriminant not divisible by content^(2n-2)");
    }
    disc_mod_ = disc_ / scale;
}

BinaryForm BinaryForm::from_high_to_low(std::span<const std::int64_t> coeffs) {
    return BinaryForm(std::vector<std::int64_t>(coeffs.rbegin(), coeffs.rend()));
}

BigInt BinaryForm::evaluate(const BigInt& x, const BigInt& y) const {
    const auto n = coeffs_.size() - 1;
    std::vector<BigInt> xp(n + 1, 1), yp(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) {
        xp[i] = xp[i - 1] * x;
        yp[i] = yp[i - 1] * y;
    }
    BigInt acc = 0;
    for (std::size_t i = 0; i <= n; ++i) acc += to_big(coeffs_[i]) * xp[i] * yp[n - i];
    return acc;
}

BinaryForm BinaryForm::primitive_part() const {
    auto c = coeffs_;
    for (auto& v : c) v /= content_;
    return BinaryForm(std::move(c));
}

BinaryForm BinaryForm::swapped() const {
    return BinaryForm(std::vector<std::int64_t>(coeffs_.rbegin(), coeffs_.rend()));
}

std::string BinaryForm::to_string() const {
    std::ostringstream out;
    bool first = true;
    const auto n = degree();
    for (unsigned i = n + 1; i-- > 0;) {
        const auto a = coeffs_[i];
        if (a == 0) continue;
        const auto mag = a < 0 ? -static_cast<__int128>(a) : static_cast<__int128>(a);
        if (a < 0) {
            out << '-';
        } else if (!first) {
            out << '+';
        }
        const bool has_var = n > 0;
        if (mag != 1 || !has_var) out << static_cast<std::uint64_t>(mag);
        if (i > 0) out << 'x' << (i > 1 ? "^" + std::to_string(i) : "");
        if (n - i > 0) out << 'y' << (n - i > 1 ? "^" + std::to_string(n - i) : "");
        first = false;
    }
    return out.str();
}

std::string BinaryForm::to_coefficient_string() const {
    std::ostringstream out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        out << coeffs_[i];
        if (i > 0) out << ',';
    }
    return out.str();
}

bool operator<(const BinaryForm& a, const BinaryForm& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs_.rbegin(), a.coeffs_.rend(), b.coeffs_.rbegin(), b.coeffs_.rend());
}

BinaryForm make_form(std::span<const std::int64_t> high_to_low) { return BinaryForm::from_high_to_low(high_to_low); }

BinaryForm make_form(std::initializer_list<std::int64_t> high_to_low) {
    return BinaryForm::from_high_to_low(std::span<const std::int64_t>(high_to_low.begin(), high_to_low.size()));
}

BinaryForm parse_form(std::string_view text) {
    if (text.find(',') != std::string_view::npos) {
        std::vector<std::int64_t> coeffs;
        std::string item;
        std::istringstream in{std::string(text)};
        while (std::getline(in, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b == std::string::npos) throw std::invalid_argument("empty coefficient in \"" + std::string(text) + "\"");
            item = item.substr(b, e - b + 1);
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != item.size()) throw std::invalid_argument("bad coefficient \"" + item + "\"");
            coeffs.push_back(v);
        }
        return make_form(coeffs);
    }
    const auto monomials = detail::parse_monomials(text);
    if (monomials.empty()) throw std::invalid_argument("binary form is identically zero");
    const auto degree = monomials.begin()->first.first + monomials.begin()->first.second;
    std::vector<std::int64_t> low(degree + 1, 0);
    for (const auto& [exps, c] : monomials) {
        if (exps.first + exps.second != degree) {
            throw std::invalid_argument("form \"" + std::string(text) + "\" is not homogeneous");
        }
        low[exps.first] = c;
    }
    return from_low(std::move(low));
}

BigInt form_discriminant(std::span<const std::int64_t> low_to_high) {
    if (low_to_high.size() < 2) throw std::invalid_argument("discriminant needs degree >= 1");
    std::vector<std::int64_t> c(low_to_high.begin(), low_to_high.end());
    if (c.back() == 0) {
        if (c.front() == 0) throw std::invalid_argument("discriminant: a_n = a_0 = 0");
        std::reverse(c.begin(), c.end());
    }
    const auto n = c.size() - 1;
    if (n == 1) return 1;
    const auto f = to_big_poly(c);
    BigPoly df(n);
    for (std::size_t i = 1; i <= n; ++i) df[i - 1] = f[i] * static_cast<unsigned long>(i);
    const auto size = 2 * n - 1;
    std::vector<std::vector<BigInt>> m(size, std::vector<BigInt>(size, 0));
    // Rows of shifted f (n - 1 of them), then shifted f' (n of them); high-order first.
    for (std::size_t r = 0; r + 1 < n; ++r) {
        for (std::size_t k = 0; k <= n; ++k) m[r][r + k] = f[n - k];
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) m[n - 1 + r][r + k] = df[n - 1 - k];
    }
    const auto res = bareiss_determinant(std::move(m));
    BigInt disc = res / f[n];
    if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
    return disc;
}

std::string to_string(const CycleType& c) {
    std::string out = "[";
    for (std::size_t i = 0; i < c.parts.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(c.parts[i]);
    }
    return out + "]";
}

std::string PrimeStatus::reason() const {
    if (good) return {};
    if (divides_modified_discriminant) return "p divides the modified discriminant";
    return "p divides both a_n and a_0";
}

PrimeStatus prime_status(const BinaryForm& f, std::uint64_t p) {
    require_prime(p, "prime_status");
    const auto flags = classify(f, p);
    PrimeStatus out;
    out.p = p;
    out.good = flags.good();
    out.divides_modified_discriminant = flags.d_div;
    out.divides_leading = flags.lead_div;
    out.divides_trailing = flags.trail_div;
    if (out.good) {
        const detail::PrimeFieldPoly field(p);
        out.cycle = CycleType{field.distinct_degree_parts(reduced_affine(f, p, flags.lead_div))};
    }
    return out;
}

CycleType cycle_type(const BinaryForm& f, std::uint64_t p) {
    auto status = prime_status(f, p);
    if (!status.good) {
        throw std::invalid_argument("cycle_type: bad prime " + std::to_string(p) + " (" + status.reason() + ")");
    }
    return *status.cycle;
}

std::string_view to_string(PSetMembership m) {
    switch (m) {
    case PSetMembership::InPSet:
        return "in_pset";
    case PSetMembership::NotInPSet:
        return "not_in_pset";
    case PSetMembership::Bad:
        return "bad";
    }
    return "bad";
}

PSetMembership in_pset(const BinaryForm& f, std::uint64_t p) {
    require_prime(p, "in_pset");
    return membership_unchecked(f, p);
}

DensityEstimate root_density(const BinaryForm& f, std::uint64_t prime_bound, unsigned workers) {
    if (prime_bound < 100) throw std::invalid_argument("root_density: prime bound must be at least 100");
    const auto primes = primes_in(2, prime_bound);
    auto partials = parallel_blocks(primes.size(), workers, [&](std::size_t lo, std::size_t hi) {
        DensityEstimate part;
        for (auto i = lo; i < hi; ++i) {
            const auto m = membership_unchecked(f, primes[i]);
            if (m == PSetMembership::Bad) continue;
            ++part.sample;
            if (m == PSetMembership::NotInPSet) ++part.with_root;
        }
        return part;
    });
    DensityEstimate total;
    for (const auto& part : partials) {
        total.sample += part.sample;
        total.with_root += part.with_root;
    }
    return total;
}

FormFactorization factor_over_Z(const BinaryForm& f) {
    if (f.degree() > 4) {
        throw unsupported_error("factor_over_Z: degree " + std::to_string(f.degree()) +
                                " needs a user-supplied factorization");
    }
    std::map<std::vector<std::int64_t>, unsigned> found; // low-to-high, normalized
    auto record = [&](std::vector<std::int64_t> c) {
        normalize_sign(c);
        ++found[c];
    };

    auto rest = to_big_poly(f.primitive_part().coefficients());
    // Powers of y (a_n = 0) and of x (a_0 = 0).
    while (rest.size() > 1 && rest.back() == 0) {
        rest.pop_back();
        record({1, 0});
    }
    while (rest.size() > 1 && rest.front() == 0) {
        rest.erase(rest.begin());
        record({0, 1});
    }
    while (rest.size() > 2) {
        auto lin = find_linear_factor(rest);
        if (!lin) break;
        rest = *exact_divide(rest, *lin);
        record(to_small(*lin));
    }
    if (rest.size() == 2) {
        record(to_small(rest));
        rest = {1};
    } else if (rest.size() == 5) {
        const auto quartic = from_low(to_small(rest));
        std::optional<BigPoly> q;
        if (!quartic_pattern_proves_irreducible(quartic)) q = find_quadratic_factor(rest);
        if (q) {
            auto other = *exact_divide(rest, *q);
            record(to_small(*q));
            record(to_small(other));
            rest = {1};
        }
    }
    if (rest.size() >= 3) {
        record(to_small(rest));
        rest = {1};
    }

    FormFactorization out;
    for (const auto& [c, mult] : found) out.factors.emplace_back(from_low(c), mult);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    BigPoly product{1};
    for (const auto& [form, mult] : out.factors) {
        for (unsigned k = 0; k < mult; ++k) product = multiply(product, to_big_poly(form.coefficients()));
    }
    const auto original = to_big_poly(f.coefficients());
    for (std::size_t i = original.size(); i-- > 0;) {
        if (product[i] != 0) {
            out.content = to_int64(original[i] / product[i]);
            break;
        }
    }
    return out;
}

FormFactorization verify_factorization(const BinaryForm& f, std::int64_t content,
                                       const std::vector<std::pair<BinaryForm, unsigned>>& factors) {
    BigPoly product{to_big(content)};
    for (const auto& [form, mult] : factors) {
        if (mult == 0) throw std::invalid_argument("verify_factorization: zero multiplicity");
        for (unsigned k = 0; k < mult; ++k) product = multiply(product, to_big_poly(form.coefficients()));
    }
    if (product != to_big_poly(f.coefficients())) {
        throw std::invalid_argument("verify_factorization: product of the factors differs from " + f.to_string());
    }
    for (const auto& [form, mult] : factors) {
        if (!is_irreducible(form)) {
            throw std::invalid_argument("verify_factorization: cannot certify " + form.to_string() + " irreducible");
        }
    }
    return FormFactorization{content, factors};
}

bool is_irreducible(const BinaryForm& f) {
    if (f.content() != 1) return false;
    if (f.degree() <= 4) {
        const auto fac = factor_over_Z(f);
        return fac.factors.size() == 1 && fac.factors.front().second == 1;
    }
    unsigned tried = 0;
    for (std::uint64_t p = 2; p < 2000 && tried < 64; ++p) {
        if (!is_prime(p)) continue;
        const auto flags = classify(f, p);
        if (!flags.good() || flags.lead_div) continue;
        ++tried;
        if (cycle_type(f, p).parts == std::vector<unsigned>{f.degree()}) return true;
    }
    throw unsupported_error("is_irreducible: no prime certifies irreducibility of " + f.to_string());
}

} // namespace brocard
