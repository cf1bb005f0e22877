#pragma once

#include <gmpxx.h>

#include <string>

namespace celeste {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator); everything downstream relies on that.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

// Parses "p" or "p/q". Returns false on malformed input or zero denominator.
bool parse_rational(const std::string& text, Rational& out);

} // namespace celeste
