#pragma once

// Dedekind sums and the Rademacher symbol Psi on SL2(Z).
//
//   s(h, k) = sum_{mu mod k} ((mu/k)) ((mu h/k)),   ((x)) the sawtooth,
//
//   Psi(g)  = b/d                                           if c = 0,
//             (a+d)/c - 12 sgn(c) s(a, |c|) - 3 sgn(c(a+d)) if c != 0,
//
// for g = [[a, b], [c, d]] with det 1.  Psi is integer-valued; a non-integer
// result can only come from a broken invariant and raises INTERNAL.
//
// Two Dedekind-sum paths: the O(k) defining sum (all terms share denominator
// 4k^2, so it accumulates in integers), and an O(log k) Euclidean descent via
// the reciprocity law  s(h,k) + s(k,h) = -1/4 + (h^2 + k^2 + 1)/(12hk)  for
// coprime h, k > 0, together with s(h + k, k) = s(h, k), s(-h, k) = -s(h, k)
// and s(mh, mk) = s(h, k).  Both are exact; psi uses the fast path.

#include "rational.hpp"

namespace heckenorm {

struct IntMatrix2 {
    Int a, b, c, d;
    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
};

inline bool operator==(const IntMatrix2& m, const IntMatrix2& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
}

inline IntMatrix2 operator*(const IntMatrix2& m, const IntMatrix2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

// Inverse in GL2(Z) (det +-1 only).
inline IntMatrix2 unimodular_inverse(const IntMatrix2& m) {
    Int det = m.det();
    if (det != 1 && det != -1) fail(errc::not_unimodular, "matrix is not in GL2(Z)");
    return {det * m.d, det * -m.b, det * -m.c, det * m.a};
}

// ((x)) = x - floor(x) - 1/2 for x not an integer, 0 otherwise.
inline Rat sawtooth(const Rat& x) {
    if (denominator(x) == 1) return Rat(0);
    return x - Rat(floor_rat(x)) - Rat(1, 2);
}

// Defining sum, O(k).  With r = mu*h mod k the nonzero terms are
// (2mu - k)(2r - k)/(4k^2), so the numerators accumulate in Int.
inline Rat dedekind_sum(const Int& h, const Int& k) {
    if (k <= 0) fail(errc::internal, "dedekind_sum needs k > 0");
    if (k == 1) return Rat(0);
    Int hr = mod_floor(h, k);
    if (k <= (Int(1) << 31)) {
        // terms fit in int64 ((2mu-k)(2r-k) <= k^2 < 2^62), sum in 128 bits
        long long kk = k.convert_to<long long>(), hh = hr.convert_to<long long>();
        __int128 acc = 0;
        long long r = 0;
        for (long long mu = 1; mu < kk; ++mu) {
            r += hh;
            if (r >= kk) r -= kk;
            if (r != 0) acc += static_cast<__int128>(2 * mu - kk) * (2 * r - kk);
        }
        bool neg = acc < 0;
        unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(acc) : acc;
        Int num = (Int(static_cast<std::uint64_t>(mag >> 64)) << 64) |
                  Int(static_cast<std::uint64_t>(mag));
        if (neg) num = -num;
        return Rat(num, 4 * k * k);
    }
    Int acc = 0, r = 0;
    for (Int mu = 1; mu < k; ++mu) {
        r += hr;
        if (r >= k) r -= k;
        if (r != 0) acc += (2 * mu - k) * (2 * r - k);
    }
    return Rat(acc, 4 * k * k);
}

// Reciprocity descent, O(log k) exact rational steps.
inline Rat dedekind_sum_fast(const Int& h, const Int& k) {
    if (k <= 0) fail(errc::internal, "dedekind_sum needs k > 0");
    Int hh = mod_floor(h, k), kk = k;
    Int g = gcd(hh, kk);
    if (g > 1) { hh /= g; kk /= g; }
    Rat s(0);
    int sign = 1;
    while (hh != 0) {
        s += sign * (Rat(-1, 4) + Rat(hh * hh + kk * kk + 1, 12 * hh * kk));
        Int next = mod_floor(kk, hh);
        kk = hh;
        hh = next;
        sign = -sign;
    }
    return s;
}

struct PsiBreakdown {
    Rat tracePart;   // (a+d)/c, or b/d when c = 0
    Rat dedekindPart; // -12 sgn(c) s(a, |c|)
    Rat signPart;    // -3 sgn(c(a+d))
    Int value;
};

inline PsiBreakdown psi_detailed(const IntMatrix2& g) {
    if (g.det() != 1) fail(errc::not_unimodular, "psi needs det = 1");
    PsiBreakdown out;
    if (g.c == 0) {
        // det 1 and c = 0 force a = d = +-1
        out.tracePart = make_rat(g.b, g.d);
        out.dedekindPart = 0;
        out.signPart = 0;
    } else {
        int sc = sign_of(g.c);
        Int tr = g.a + g.d;
        out.tracePart = make_rat(tr, g.c);
        out.dedekindPart = Rat(-12 * sc) * dedekind_sum_fast(g.a, abs(g.c));
        out.signPart = Rat(-3 * sc * sign_of(tr));
    }
    Rat total = out.tracePart + out.dedekindPart + out.signPart;
    if (denominator(total) != 1) fail(errc::internal, "psi produced a non-integer");
    out.value = numerator(total);
    return out;
}

inline Int psi(const IntMatrix2& g) { return psi_detailed(g).value; }

inline bool is_hyperbolic(const IntMatrix2& g) { return abs(g.trace()) > 2; }

// Invariant geodesic of a hyperbolic element: the semicircle
// |z - center|^2 = radiusSq with both data exact.
struct GeodesicCircle {
    Rat center;   // (a - d) / (2c)
    Rat radiusSq; // ((a + d)^2 - 4) / (4c^2)
};

inline GeodesicCircle geodesic(const IntMatrix2& g) {
    if (!is_hyperbolic(g)) fail(errc::not_hyperbolic, "|trace| <= 2");
    if (g.c == 0) fail(errc::parabolic_axis, "axis is a vertical line");
    Int tr = g.a + g.d;
    return {make_rat(g.a - g.d, 2 * g.c), Rat(tr * tr - 4, 4 * g.c * g.c)};
}

} // namespace heckenorm
