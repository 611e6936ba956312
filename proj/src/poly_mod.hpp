#pragma once

// Dense univariate polynomials over F_p, coefficients stored low to high.
// Only what cycle-type extraction needs: remainder, gcd, modular powering of x
// and distinct-degree splitting.

#include <cstdint>
#include <vector>

namespace brocard::detail {

using PolyModP = std::vector<std::uint64_t>;

class PrimeFieldPoly {
public:
    explicit PrimeFieldPoly(std::uint64_t p) : p_(p) {}

    std::uint64_t modulus() const { return p_; }

    static void trim(PolyModP& f);
    static int degree(const PolyModP& f) { return static_cast<int>(f.size()) - 1; }

    std::uint64_t inverse(std::uint64_t a) const;
    PolyModP monic(PolyModP f) const;
    PolyModP sub(const PolyModP& a, const PolyModP& b) const;
    PolyModP mul(const PolyModP& a, const PolyModP& b) const;
    PolyModP rem(PolyModP a, const PolyModP& m) const;
    PolyModP quo(PolyModP a, const PolyModP& m) const;
    PolyModP gcd(PolyModP a, PolyModP b) const;
    /// base^e mod m.
    PolyModP pow_mod(PolyModP base, std::uint64_t e, const PolyModP& m) const;

    /// f must be monic and squarefree; returns the ascending factor degrees.
    std::vector<unsigned> distinct_degree_parts(PolyModP f) const;
    /// True when f has a root in F_p (degree-1 factor), via gcd(x^p - x, f).
    bool has_root(const PolyModP& f) const;

private:
    std::uint64_t p_;
};

} // namespace brocard::detail
