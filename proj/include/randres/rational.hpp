#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <string>

#include "randres/errors.hpp"

namespace randres {

// Exact rational arithmetic. All probability and measure comparisons in this
// library are decided over rationals; square roots are compared by squaring,
// never through floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den) {
    if (den == 0) throw ParamError("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

/// Renders a rational as "a/b" in lowest terms (denominator always present,
/// e.g. "0/1", "1/2").
inline std::string rational_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "a/b" or a bare integer "a".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw ParamError("rational with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw FormatError("malformed rational: '" + s + "'");
    }
}

/// Decides x <= sqrt(y) exactly (y >= 0 required).
inline bool le_sqrt(const Rational& x, const Rational& y) {
    if (y < 0) throw ParamError("le_sqrt: negative radicand");
    if (x <= 0) return true;
    return x * x <= y;
}

/// Decides sqrt(y) <= x exactly (y >= 0 required).
inline bool sqrt_le(const Rational& y, const Rational& x) {
    if (y < 0) throw ParamError("sqrt_le: negative radicand");
    if (x < 0) return false;
    return y <= x * x;
}

/// Decides x < sqrt(y) exactly.
inline bool lt_sqrt(const Rational& x, const Rational& y) {
    if (y < 0) throw ParamError("lt_sqrt: negative radicand");
    if (x < 0) return true;
    return x * x < y;
}

/// Fixed "%.6g" decimal rendering for report output. Never used in verdicts.
inline std::string decimal_string(const Rational& r) {
    double d = r.convert_to<double>();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", d);
    return buf;
}

} // namespace randres
