// Exact rational numbers (GMP mpq) plus small parsing/printing helpers.
#pragma once

#include <gmpxx.h>

#include <string>

#include "koszul/errors.hpp"

namespace koszul {

using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational rational_from_string(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw ParseError("bad rational literal '" + text + "'", 0);
    q.canonicalize();
    if (sgn(q.get_den()) <= 0)
        throw ParseError("bad rational literal '" + text + "'", 0);
    return q;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace koszul
