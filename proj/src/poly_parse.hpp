#pragma once

// Shared reader for the polynomial text syntax: integer coefficients,
// variables x and y with optional ^k, optional '*', implicit products
// ("3x^2y", "x*y").

#include <cstdint>
#include <map>
#include <string_view>
#include <utility>

namespace brocard::detail {

/// (deg_x, deg_y) -> coefficient, zero terms dropped.
using Monomials = std::map<std::pair<unsigned, unsigned>, std::int64_t>;

/// Throws std::invalid_argument with the offending position on bad input.
Monomials parse_monomials(std::string_view text);

} // namespace brocard::detail
