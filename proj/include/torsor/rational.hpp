#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace torsor {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator), which is exactly the invariant we need.
using Rational = mpq_class;

// Parses "p", "-p/q" or "p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    v.canonicalize();
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return v;
}

inline std::string format_rational(const Rational& r) {
    return r.get_str();
}

inline int sign(const Rational& r) { return sgn(r); }

} // namespace torsor
