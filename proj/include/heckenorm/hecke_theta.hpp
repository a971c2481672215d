#pragma once
// Hecke's weight-one theta form attached to an integral ideal a and a level
// divisor kappa.  The lattice is L = a with quadratic form Nm/N, N = Nm(a)/kappa;
// its dual is the fractional ideal L^v = (kappa*d)^{-1} a.  The form is
//
//   theta_L = sum over <eps_kappa>-orbits of lambda in L^v with Nm(lambda) > 0
//             of sgn(lambda) q^{Nm(lambda)/N} on the coset [lambda] of L^v/L.
//
// Orbits of totally negative elements are the negatives of totally positive
// ones, so we enumerate totally positive representatives lambda cut out by
// the exact window  lambda/lambda' in [1, eps_kappa^2)  and record +1 on
// [lambda], -1 on [-lambda].  The window is decomposed into powers of the
// fundamental totally positive unit so the search box stays proportional to
// eps_tp rather than eps_kappa.

#include <heckenorm/quadfield.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace heckenorm {

// First real embedding, advisory precision only; all decisions stay exact.
inline Real embed_real(const QuadNum& q) {
    return to_real(q.x) + to_real(q.y) * std::sqrt(static_cast<Real>(q.D));
}

struct HeckeLattice {
    FieldContext ctx;
    QuadLattice ideal;   // the integral ideal a
    long long kappa = 1;
    Rat N;               // Nm(a)/kappa; the form is Nm/N
    QuadLattice dual;    // (kappa*d)^{-1} a
    UnitRecord epsKappa; // generator of the orbit group
    QuadNum epsTp;       // fundamental totally positive unit
    Int windowPower;     // epsKappa = epsTp^windowPower
};

inline HeckeLattice make_hecke_lattice(const FieldContext& ctx, const QuadLattice& ideal,
                                       long long kappa, long long unit_search_cap = 1'000'000) {
    if (kappa <= 0) fail(errc::internal, "kappa must be positive");
    if (!is_integral_ideal(ctx, ideal))
        fail(errc::not_integral_ideal, "lattice is not an integral ideal");
    HeckeLattice H;
    H.ctx = ctx;
    H.ideal = ideal;
    H.kappa = kappa;
    H.N = ideal_norm(ideal) / kappa;
    // (kappa*d)^{-1} = (1/(kappa*sqrt(D))), and 1/sqrt(D) = sqrt(D)/D
    Int kD = Int(kappa) * ctx.D;
    H.dual = lattice_scale(ideal, QuadNum{ctx.D, 0, Rat(1, kD)});
    H.epsKappa = epsilon_kappa(ctx, kappa, unit_search_cap);
    UnitRecord fund = fundamental_unit(ctx);
    H.epsTp = fund.totallyPositive ? fund.value : fund.value * fund.value;
    H.windowPower = fund.totallyPositive ? H.epsKappa.powerIndex : H.epsKappa.powerIndex / 2;
    assert(pow(H.epsTp, H.windowPower) == H.epsKappa.value);
    return H;
}

// Coordinates of x in the basis {a*sqrt(D)+b, d} of lat; x must be a
// Z-combination of the two generators.
inline std::pair<Int, Int> lattice_coords(const QuadLattice& lat, const QuadNum& x) {
    check_same_field(lat.D, x.D);
    Rat m = x.y / lat.a;
    Rat n = (x.x - m * lat.b) / lat.d;
    if (denominator(m) != 1 || denominator(n) != 1)
        fail(errc::integrality_violation, "element is not in the lattice");
    return {numerator(m), numerator(n)};
}

// L^v/L described in the coordinates of the dual basis: the sublattice L is
// Z*(M, shear) + Z*(0, stride), and coset (m, n) has index m*stride + n.
struct DiscriminantGroup {
    QuadLattice dual;
    Int M, shear, stride;
    std::vector<QuadNum> reps;          // lex in (m, n)
    std::vector<std::size_t> negIndex;  // index of [-rep]
};

inline std::size_t reduce_index(const DiscriminantGroup& G, Int m, Int n) {
    Int k = floor_div(m, G.M);
    m -= k * G.M;
    n = mod_floor(n - k * G.shear, G.stride);
    Int idx = m * G.stride + n;
    return idx.convert_to<std::size_t>();
}

inline std::size_t coset_index(const DiscriminantGroup& G, const QuadNum& x) {
    auto [m, n] = lattice_coords(G.dual, x);
    return reduce_index(G, m, n);
}

inline DiscriminantGroup discriminant_group(const HeckeLattice& H) {
    DiscriminantGroup G;
    G.dual = H.dual;
    auto [m1, n1] = lattice_coords(H.dual, lattice_gen1(H.ideal));
    auto [m2, n2] = lattice_coords(H.dual, lattice_gen2(H.ideal));
    auto [g, s, t] = ext_gcd(m1, m2);
    assert(g > 0); // the ideal spans the plane
    G.M = g;
    G.stride = abs(m1 * n2 - m2 * n1) / g;
    G.shear = mod_floor(s * n1 + t * n2, G.stride);
    Int size = G.M * G.stride;
    assert(size == Int(H.kappa) * H.kappa * H.ctx.D); // |L^v/L| = kappa^2 D
    std::size_t sz = size.convert_to<std::size_t>();
    G.reps.reserve(sz);
    QuadNum w1 = lattice_gen1(H.dual), w2 = lattice_gen2(H.dual);
    for (Int m = 0; m < G.M; ++m)
        for (Int n = 0; n < G.stride; ++n)
            G.reps.push_back(Rat(m) * w1 + Rat(n) * w2);
    G.negIndex.resize(sz);
    std::size_t i = 0;
    for (Int m = 0; m < G.M; ++m)
        for (Int n = 0; n < G.stride; ++n)
            G.negIndex[i++] = reduce_index(G, -m, -n);
    return G;
}

namespace detail {

// Totally positive lambda in the dual with Nm(lambda) <= B and ratio
// lambda/lambda' in [1, epsTp^2), found by scanning the coordinate box that
// covers 0 < lambda' <= sqrt(B), 0 < lambda <= epsTp*sqrt(B).  The box is
// advisory (long double, padded); membership is decided exactly.
inline std::vector<QuadNum> base_window(const HeckeLattice& H, const Rat& B, Real padFactor) {
    std::vector<QuadNum> out;
    if (B <= 0) return out;
    const QuadLattice& L = H.dual;
    Real a = to_real(L.a), b = to_real(L.b), d = to_real(L.d);
    Real sD = std::sqrt(static_cast<Real>(L.D));
    Real sqB = std::sqrt(to_real(B)) * padFactor;
    Real e1max = embed_real(H.epsTp) * sqB;
    Real sLow = -sqB / (2 * a * sD), sHigh = e1max / (2 * a * sD);
    // per-s t-range is at most min(e1max, sqB)/d = sqB/d
    Real cells = (sHigh - sLow + 5) * (sqB / d + 5);
    if (!std::isfinite(cells) || cells > 5e7)
        fail(errc::search_cap, "orbit window box exceeds the iteration cap");
    QuadNum eps2 = H.epsTp * H.epsTp;
    QuadNum w1 = lattice_gen1(L), w2 = lattice_gen2(L);
    long long s0 = static_cast<long long>(std::floor(sLow)) - 2;
    long long s1 = static_cast<long long>(std::ceil(sHigh)) + 2;
    for (long long si = s0; si <= s1; ++si) {
        Real off1 = si * (b + a * sD), off2 = si * (b - a * sD);
        // 0 < e1 <= e1max and 0 < e2 <= sqB pinned to the t-interval
        Real tLow = std::max(-off1, -off2) / d;
        Real tHigh = std::min(e1max - off1, sqB - off2) / d;
        if (tHigh < tLow) continue;
        long long t0 = static_cast<long long>(std::floor(tLow)) - 2;
        long long t1 = static_cast<long long>(std::ceil(tHigh)) + 2;
        for (long long ti = t0; ti <= t1; ++ti) {
            QuadNum lam = Rat(si) * w1 + Rat(ti) * w2;
            if (lam.y < 0) continue;                   // ratio >= 1
            if (lam.x <= 0) continue;
            Rat nm = norm(lam);
            if (nm <= 0 || nm > B) continue;
            if (sign_embed(eps2 * conj(lam) - lam) <= 0) continue; // ratio < epsTp^2
            out.push_back(lam);
        }
    }
    return out;
}

inline std::vector<QuadNum> orbit_scan(const HeckeLattice& H, const Rat& X, Real padFactor) {
    Rat B = X * H.N;
    std::vector<QuadNum> base = base_window(H, B, padFactor);
    std::vector<QuadNum> out;
    out.reserve(base.size() * H.windowPower.convert_to<std::size_t>());
    for (const QuadNum& lam : base) {
        QuadNum cur = lam;
        for (Int j = 0; j < H.windowPower; ++j) {
            out.push_back(cur);
            cur = cur * H.epsTp;
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadNum& p, const QuadNum& q) {
        Rat np = norm(p), nq = norm(q);
        if (np != nq) return np < nq;
        if (p.x != q.x) return p.x < q.x;
        return p.y < q.y;
    });
    return out;
}

} // namespace detail

// One representative per <eps_kappa>-orbit of totally positive dual elements
// with Nm(lambda)/N <= X, sorted by (norm, x, y).
inline std::vector<QuadNum> orbit_representatives(const HeckeLattice& H, const Rat& X) {
    return detail::orbit_scan(H, X, 1.0L);
}

struct ThetaTerm {
    Rat exponent; // Nm(lambda)/N
    Int coefficient;
};

struct ThetaCoset {
    std::size_t index = 0;
    QuadNum rep;
    std::vector<ThetaTerm> terms; // sorted by exponent, zero coefficients dropped
};

struct ThetaExpansion {
    Rat precision; // exponents kept up to this bound
    DiscriminantGroup group;
    std::vector<ThetaCoset> cosets; // all |L^v/L| cosets in index order
};

inline ThetaExpansion theta_expansion(const HeckeLattice& H, const Rat& X) {
    ThetaExpansion th;
    th.precision = X;
    th.group = discriminant_group(H);
    std::size_t sz = th.group.reps.size();
    std::vector<std::map<Rat, Int>> acc(sz);
    for (const QuadNum& lam : orbit_representatives(H, X)) {
        Rat e = norm(lam) / H.N;
        std::size_t i = coset_index(th.group, lam);
        acc[i][e] += 1;
        acc[th.group.negIndex[i]][e] -= 1;
    }
    th.cosets.resize(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        th.cosets[i].index = i;
        th.cosets[i].rep = th.group.reps[i];
        for (auto& [e, c] : acc[i])
            if (c != 0) th.cosets[i].terms.push_back({e, c});
    }
    return th;
}

inline std::size_t nonzero_coset_count(const ThetaExpansion& th) {
    std::size_t n = 0;
    for (const auto& c : th.cosets)
        if (!c.terms.empty()) ++n;
    return n;
}

// Coefficients of prod_{n>=1} (1 - q^n)^2 through q^{count-1}.
inline std::vector<Int> eta_squared_coeffs(std::size_t count) {
    std::vector<Int> c(count, Int(0));
    if (count == 0) return c;
    c[0] = 1;
    for (std::size_t n = 1; n < count; ++n)
        for (int rep = 0; rep < 2; ++rep)
            for (std::size_t i = count; i-- > n;)
                c[i] -= c[i - n];
    return c;
}

} // namespace heckenorm
