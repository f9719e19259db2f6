#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace embgc {

// Exact rationals, always in lowest terms with positive denominator.
// GMP's mpq keeps values canonical through arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "num" or "num/den".
inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("rational: zero denominator");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

inline bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

}  // namespace embgc
