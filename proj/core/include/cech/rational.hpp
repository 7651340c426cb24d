#pragma once

#include <gmpxx.h>

#include <string>

#include "cech/errors.hpp"

namespace cech {

// All coefficients in the library are exact rationals.
using Rat = mpq_class;

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Parses "num", "-num" or "num/den". Throws ParseError on malformed input.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
            throw ParseError("bad rational literal: " + s);
    }
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + s);
    }
}

}  // namespace cech
