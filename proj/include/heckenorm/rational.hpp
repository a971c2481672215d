#pragma once

// Exact integer/rational layer shared by every module.  All algebraic data is
// kept in arbitrary-precision rationals; floating point (long double, 64-bit
// significand on x86-64) only enters through the explicit conversions below,
// each of which keeps a relative error of a few units in 2^-63.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <tuple>

#include "errors.hpp"

namespace heckenorm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Real = long double;
using Cplx = std::complex<Real>;

inline int sign_of(const Int& a) { return a.sign(); }
inline int sign_of(const Rat& a) { return a.sign(); }

// Floor division and the matching remainder in [0, |b|).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

inline Int floor_rat(const Rat& r) { return floor_div(numerator(r), denominator(r)); }

// b reduced into [0, d) by multiples of d > 0.
inline Rat mod_rat(const Rat& b, const Rat& d) { return b - Rat(floor_rat(b / d)) * d; }

// g = gcd(a, b) >= 0 together with s, t such that s*a + t*b = g.
inline std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
    Int s0 = 1, t0 = 0, s1 = 0, t1 = 1;
    while (b != 0) {
        Int q = a / b; // truncated is fine: invariants hold over Z
        Int r = a - q * b;
        a = b;
        b = r;
        Int s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = s1;
        t0 = t1;
        s1 = s2;
        t1 = t2;
    }
    if (a < 0) { a = -a; s0 = -s0; t0 = -t0; }
    return {a, s0, t0};
}

// Largest u with u^3 <= n (n >= 0).
inline Int icbrt(const Int& n) {
    if (n <= 0) return 0;
    Int x = Int(1) << (unsigned(msb(n)) / 3 + 1);
    for (;;) { // Newton, monotone from above
        Int y = (2 * x + n / (x * x)) / 3;
        if (y >= x) break;
        x = y;
    }
    while (x * x * x > n) --x;
    return x;
}

// n as long double via the top 63 bits; safe for any magnitude the exponent
// range (~1e4932) can hold.
inline Real to_real(const Int& n) {
    if (n == 0) return 0.0L;
    Int a = abs(n);
    unsigned bits = msb(a) + 1;
    if (bits <= 63) {
        Real v = static_cast<Real>(a.convert_to<std::int64_t>());
        return n < 0 ? -v : v;
    }
    unsigned shift = bits - 63;
    Int top = a >> shift;
    Real v = std::ldexp(static_cast<Real>(top.convert_to<std::int64_t>()), int(shift));
    return n < 0 ? -v : v;
}

inline Real to_real(const Rat& r) { return to_real(numerator(r)) / to_real(denominator(r)); }

// log|n| without overflow, via msb scaling.
inline Real log_int(const Int& n) {
    Int a = abs(n);
    if (a == 0) fail(errc::internal, "log of zero");
    unsigned bits = msb(a) + 1;
    if (bits <= 63) return std::log(static_cast<Real>(a.convert_to<std::int64_t>()));
    unsigned shift = bits - 63;
    Int top = a >> shift;
    return std::log(static_cast<Real>(top.convert_to<std::int64_t>())) +
           static_cast<Real>(shift) * 0.693147180559945309417232121458176568L;
}

inline Real log_rat(const Rat& r) {
    if (r <= 0) fail(errc::internal, "log of non-positive rational");
    return log_int(numerator(r)) - log_int(denominator(r));
}

// Two-argument Rat construction must come through here: the rational backend
// in this Boost release rejects negative denominators outright.
inline Rat make_rat(Int num, Int den) {
    if (den == 0) fail(errc::singular, "zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rat(std::move(num), std::move(den));
}

// "p/q" (or plain "p" for integers).
inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parse "p" or "p/q"; on failure reports the offset of the offending char.
inline Rat parse_rat(const std::string& s, std::size_t base_offset = 0) {
    std::size_t pos = 0;
    auto bad = [&](std::size_t at) { fail(errc::parse_error, "bad rational at position " + std::to_string(base_offset + at) + " in '" + s + "'"); };
    auto read_int = [&]() -> Int {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) bad(start);
        return Int(s.substr(start, pos - start));
    };
    Int p = read_int();
    if (pos == s.size()) return Rat(p);
    if (s[pos] != '/') bad(pos);
    ++pos;
    Int q = read_int();
    if (pos != s.size()) bad(pos);
    if (q == 0) bad(s.find('/') + 1);
    return make_rat(p, q);
}

} // namespace heckenorm
