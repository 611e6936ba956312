#include "poly_mod.hpp"

#include "brocard/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace brocard::detail {

void PrimeFieldPoly::trim(PolyModP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t PrimeFieldPoly::inverse(std::uint64_t a) const {
    if (a % p_ == 0) throw std::domain_error("PrimeFieldPoly: inverse of zero");
    return brocard::pow_mod(a, p_ - 2, p_);
}

PolyModP PrimeFieldPoly::monic(PolyModP f) const {
    trim(f);
    if (f.empty()) return f;
    const auto inv = inverse(f.back());
    for (auto& c : f) c = mul_mod(c, inv, p_);
    return f;
}

PolyModP PrimeFieldPoly::sub(const PolyModP& a, const PolyModP& b) const {
    PolyModP out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto x = i < a.size() ? a[i] : 0;
        const auto y = i < b.size() ? b[i] : 0;
        out[i] = x >= y ? x - y : p_ - (y - x);
    }
    trim(out);
    return out;
}

PolyModP PrimeFieldPoly::mul(const PolyModP& a, const PolyModP& b) const {
    if (a.empty() || b.empty()) return {};
    PolyModP out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = (out[i + j] + mul_mod(a[i], b[j], p_)) % p_;
        }
    }
    trim(out);
    return out;
}

PolyModP PrimeFieldPoly::rem(PolyModP a, const PolyModP& m) const {
    trim(a);
    if (m.empty()) throw std::domain_error("PrimeFieldPoly: division by zero polynomial");
    const auto inv = inverse(m.back());
    const auto dm = m.size() - 1;
    while (a.size() > dm) {
        const auto factor = mul_mod(a.back(), inv, p_);
        const auto shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            const auto t = mul_mod(factor, m[i], p_);
            auto& c = a[shift + i];
            c = c >= t ? c - t : p_ - (t - c);
        }
        trim(a);
    }
    return a;
}

PolyModP PrimeFieldPoly::quo(PolyModP a, const PolyModP& m) const {
    trim(a);
    if (m.empty()) throw std::domain_error("PrimeFieldPoly: division by zero polynomial");
    if (a.size() < m.size()) return {};
    const auto inv = inverse(m.back());
    const auto dm = m.size() - 1;
    PolyModP q(a.size() - dm, 0);
    while (a.size() > dm) {
        const auto factor = mul_mod(a.back(), inv, p_);
        const auto shift = a.size() - 1 - dm;
        q[shift] = factor;
        for (std::size_t i = 0; i <= dm; ++i) {
            const auto t = mul_mod(factor, m[i], p_);
            auto& c = a[shift + i];
            c = c >= t ? c - t : p_ - (t - c);
        }
        a.pop_back();
        while (a.size() > dm && a.back() == 0) {
            a.pop_back();
        }
    }
    trim(q);
    return q;
}

PolyModP PrimeFieldPoly::gcd(PolyModP a, PolyModP b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

PolyModP PrimeFieldPoly::pow_mod(PolyModP base, std::uint64_t e, const PolyModP& m) const {
    PolyModP result{1};
    result = rem(result, m);
    base = rem(base, m);
    while (e > 0) {
        if (e & 1) result = rem(mul(result, base), m);
        e >>= 1;
        if (e > 0) base = rem(mul(base, base), m);
    }
    return result;
}

std::vector<unsigned> PrimeFieldPoly::distinct_degree_parts(PolyModP f) const {
    f = monic(std::move(f));
    std::vector<unsigned> parts;
    if (degree(f) < 1) return parts;
    const PolyModP x{0, 1};
    PolyModP h = rem(x, f);
    unsigned d = 0;
    while (degree(f) >= 2 * static_cast<int>(d + 1)) {
        ++d;
        h = pow_mod(h, p_, f);
        auto g = gcd(f, sub(h, x));
        const int dg = degree(g);
        if (dg > 0) {
            for (int k = 0; k < dg / static_cast<int>(d); ++k) parts.push_back(d);
            f = quo(f, g);
            h = rem(h, f);
        }
    }
    if (degree(f) > 0) parts.push_back(static_cast<unsigned>(degree(f)));
    std::sort(parts.begin(), parts.end());
    return parts;
}

bool PrimeFieldPoly::has_root(const PolyModP& f_in) const {
    auto f = monic(f_in);
    if (degree(f) < 1) return false;
    if (degree(f) == 1) return true;
    const PolyModP x{0, 1};
    auto h = pow_mod(x, p_, f);
    return degree(gcd(f, sub(h, x))) > 0;
}

} // namespace brocard::detail
