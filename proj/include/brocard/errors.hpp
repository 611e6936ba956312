#pragma once

#include <stdexcept>
#include <string>

namespace brocard {

/// Input is well-formed but outside what the library can decide.
class unsupported_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured size limit (digits, sieve range, l bound) would be exceeded.
class bound_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A factorization that still carries an unsplit composite was passed where
/// a complete one is required.
class incomplete_factorization : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace brocard
