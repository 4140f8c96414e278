#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lvic {

// Exact arithmetic everywhere a rate, bound or time-share shows up.
// mpq_rational keeps values canonical: denominator > 0, gcd(num, den) = 1.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Integer rat_num(const Rational& q) { return numerator(q); }
inline Integer rat_den(const Rational& q) { return denominator(q); }

/// Floor of an exact rational.
inline Integer rat_floor(const Rational& q) {
    Integer n = numerator(q), d = denominator(q);
    Integer quo = n / d;
    if (n % d != 0 && n < 0) --quo;
    return quo;
}

/// Ceiling of an exact rational.
inline Integer rat_ceil(const Rational& q) { return -rat_floor(-q); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }

/// (x)^+ clamp used throughout the deterministic-channel formulas.
inline Rational rat_pos(const Rational& q) { return q < 0 ? Rational(0) : q; }
inline long long ipos(long long v) { return v < 0 ? 0 : v; }

/// Parse "p/q", "p", or a plain integer with optional sign. Throws on junk.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

/// Canonical string form: "p" when the denominator is 1, else "p/q".
inline std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

inline double rat_double(const Rational& q) { return q.convert_to<double>(); }

/// Exact rational from an IEEE double (doubles are dyadic rationals).
inline Rational rat_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
    Rational r;
    mpq_set_d(r.backend().data(), v);
    return r;
}

}  // namespace lvic
