#pragma once

// Exact arithmetic in a real quadratic field F = Q(sqrt(D)), D a fundamental
// discriminant.  Elements are x + y*sqrt(D) with rational x, y.  Full-rank
// Z-lattices in F are kept in Hermite normal form as triples (a, b, d),
// meaning the lattice Z*(a*sqrt(D) + b) + Z*d with a > 0, d > 0, 0 <= b < d.
// On that convention the ring of integers O_F is (1/2, 0, 1) for even D and
// (1/2, 1/2, 1) for odd D, and ideal-norm(a, b, d) = 2*a*d.
//
// Everything here is exact; the only floating value is the advisory sqrt(D)
// stored in FieldContext.

#include <vector>

#include "rational.hpp"

namespace heckenorm {

// ---------------------------------------------------------------- elements

struct QuadNum {
    long long D = 0;
    Rat x, y; // x + y*sqrt(D)

    QuadNum() = default;
    QuadNum(long long D_, Rat x_, Rat y_) : D(D_), x(std::move(x_)), y(std::move(y_)) {}

    bool is_zero() const { return x == 0 && y == 0; }
    bool is_rational() const { return y == 0; }
};

inline void check_same_field(long long D1, long long D2) {
    if (D1 != D2) fail(errc::internal, "mixed field contexts");
}

inline bool operator==(const QuadNum& p, const QuadNum& q) {
    return p.D == q.D && p.x == q.x && p.y == q.y;
}
inline bool operator!=(const QuadNum& p, const QuadNum& q) { return !(p == q); }

inline QuadNum operator+(const QuadNum& p, const QuadNum& q) {
    check_same_field(p.D, q.D);
    return {p.D, p.x + q.x, p.y + q.y};
}
inline QuadNum operator-(const QuadNum& p, const QuadNum& q) {
    check_same_field(p.D, q.D);
    return {p.D, p.x - q.x, p.y - q.y};
}
inline QuadNum operator-(const QuadNum& p) { return {p.D, -p.x, -p.y}; }
inline QuadNum operator*(const QuadNum& p, const QuadNum& q) {
    check_same_field(p.D, q.D);
    return {p.D, p.x * q.x + Rat(p.D) * p.y * q.y, p.x * q.y + p.y * q.x};
}
inline QuadNum operator*(const Rat& c, const QuadNum& q) { return {q.D, c * q.x, c * q.y}; }

inline QuadNum conj(const QuadNum& q) { return {q.D, q.x, -q.y}; }
inline Rat norm(const QuadNum& q) { return q.x * q.x - Rat(q.D) * q.y * q.y; }
inline Rat trace(const QuadNum& q) { return 2 * q.x; }

inline QuadNum inverse(const QuadNum& q) {
    if (q.is_zero()) fail(errc::zero_scalar, "inverse of 0");
    Rat n = norm(q);
    return {q.D, q.x / n, -q.y / n};
}

inline QuadNum pow(QuadNum base, Int e) {
    if (e < 0) fail(errc::internal, "negative exponent");
    QuadNum acc(base.D, 1, 0);
    while (e > 0) {
        if (bit_test(e, 0)) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// Sign of x + y*sqrt(D) under the embedding sqrt(D) > 0, decided exactly.
inline int sign_embed(const QuadNum& q) {
    int sx = sign_of(q.x), sy = sign_of(q.y);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    Rat lhs = q.x * q.x, rhs = Rat(q.D) * q.y * q.y;
    if (lhs == rhs) fail(errc::internal, "sqrt(D) rational"); // impossible for fundamental D
    return lhs > rhs ? sx : sy;
}

inline bool is_totally_positive(const QuadNum& q) {
    // both embeddings positive <=> trace > 0 and norm > 0
    return q.x > 0 && norm(q) > 0;
}

// ---------------------------------------------------------------- lattices

struct QuadLattice {
    long long D = 0;
    Rat a, b, d; // basis { a*sqrt(D) + b, d }
};

inline bool operator==(const QuadLattice& L, const QuadLattice& M) {
    return L.D == M.D && L.a == M.a && L.b == M.b && L.d == M.d;
}
inline bool operator!=(const QuadLattice& L, const QuadLattice& M) { return !(L == M); }

inline QuadNum lattice_gen1(const QuadLattice& L) { return {L.D, L.b, L.a}; }
inline QuadNum lattice_gen2(const QuadLattice& L) { return {L.D, L.d, 0}; }

inline Rat ideal_norm(const QuadLattice& L) { return 2 * L.a * L.d; }

// Validated canonical triple from raw entries.
inline QuadLattice canonical_lattice(long long D, const Rat& a, const Rat& b, const Rat& d) {
    if (a <= 0 || d <= 0) fail(errc::not_a_lattice, "need a > 0 and d > 0");
    return {D, a, mod_rat(b, d), d};
}

// HNF of the Z-span of the given generators; throws RANK_DEFICIENT unless
// they span a full rank-2 lattice.
inline QuadLattice lattice_from_generators(const std::vector<QuadNum>& gens) {
    if (gens.empty()) fail(errc::rank_deficient, "no generators");
    long long D = gens.front().D;
    Int M = 1; // common denominator
    for (const auto& g : gens) {
        check_same_field(D, g.D);
        M = lcm(M, lcm(denominator(g.x), denominator(g.y)));
    }
    struct V { Int u, v; }; // u*sqrt(D) + v, scaled by M
    std::vector<V> vs;
    vs.reserve(gens.size());
    for (const auto& g : gens) {
        Rat yu = g.y * M, xv = g.x * M;
        vs.push_back(V{numerator(yu), numerator(xv)});
    }

    Int A = 0, B0 = 0; // running gcd of sqrt-parts with tracked combination
    for (const auto& w : vs) {
        auto [g, s, t] = ext_gcd(A, w.u);
        B0 = s * B0 + t * w.v;
        A = g;
    }
    Int dd = 0;
    for (const auto& w : vs) {
        Int resid = (A == 0) ? w.v : w.v - (w.u / A) * B0;
        dd = gcd(dd, resid);
    }
    if (A == 0 || dd == 0) fail(errc::rank_deficient, "generators span rank < 2");
    Int B = mod_floor(B0, dd);
    return {D, Rat(A, M), Rat(B, M), Rat(dd, M)};
}

// lambda = m*(a*sqrt(D)+b) + n*d with m, n in Z?
inline bool member(const QuadLattice& L, const QuadNum& lam) {
    check_same_field(L.D, lam.D);
    Rat m = lam.y / L.a;
    if (denominator(m) != 1) return false;
    Rat n = (lam.x - m * L.b) / L.d;
    return denominator(n) == 1;
}

inline bool lattice_contains(const QuadLattice& outer, const QuadLattice& inner) {
    return member(outer, lattice_gen1(inner)) && member(outer, lattice_gen2(inner));
}

// Dual w.r.t. the trace form (p, q) -> Tr(p*q).  For the basis above the dual
// is spanned by  sqrt(D)/(2aD)  and  1/(2d) - b/(2aDd)*sqrt(D).
inline QuadLattice trace_dual(const QuadLattice& L) {
    Rat twoAD = 2 * L.a * Rat(L.D);
    QuadNum w1{L.D, 0, 1 / twoAD};
    QuadNum w2{L.D, 1 / (2 * L.d), -L.b / (twoAD * L.d)};
    return lattice_from_generators({w1, w2});
}

inline QuadLattice lattice_sum(const QuadLattice& L, const QuadLattice& M) {
    check_same_field(L.D, M.D);
    return lattice_from_generators(
        {lattice_gen1(L), lattice_gen2(L), lattice_gen1(M), lattice_gen2(M)});
}

// L cap M = dual(dual(L) + dual(M)).
inline QuadLattice lattice_intersect(const QuadLattice& L, const QuadLattice& M) {
    return trace_dual(lattice_sum(trace_dual(L), trace_dual(M)));
}

inline QuadLattice lattice_scale(const QuadLattice& L, const QuadNum& mu) {
    check_same_field(L.D, mu.D);
    if (mu.is_zero()) fail(errc::zero_scalar, "lattice scaled by 0");
    return lattice_from_generators({mu * lattice_gen1(L), mu * lattice_gen2(L)});
}

inline QuadLattice lattice_mul(const QuadLattice& L, const QuadLattice& M) {
    check_same_field(L.D, M.D);
    return lattice_from_generators({lattice_gen1(L) * lattice_gen1(M),
                                    lattice_gen1(L) * lattice_gen2(M),
                                    lattice_gen2(L) * lattice_gen1(M),
                                    lattice_gen2(L) * lattice_gen2(M)});
}

// ---------------------------------------------------------------- context

struct FieldContext {
    long long D = 0;
    Real sqrtD = 0; // advisory approximation; all decisions are exact
    QuadLattice ring;
    QuadLattice different;
};

inline bool is_squarefree(long long n) {
    if (n <= 0) return false;
    for (long long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

inline bool is_fundamental_discriminant(long long D) {
    if (D <= 1) return false;
    long long r = D % 4;
    if (r == 1) return is_squarefree(D);
    if (r == 0) {
        long long m = D / 4;
        return is_squarefree(m) && (m % 4 == 2 || m % 4 == 3);
    }
    return false;
}

inline FieldContext make_context(long long D) {
    if (!is_fundamental_discriminant(D))
        fail(errc::not_fundamental, "D = " + std::to_string(D) + " is not a fundamental discriminant > 1");
    FieldContext ctx;
    ctx.D = D;
    ctx.sqrtD = std::sqrt(static_cast<Real>(D));
    Rat half(1, 2);
    ctx.ring = QuadLattice{D, half, (D % 2 != 0) ? half : Rat(0), Rat(1)};
    ctx.different = lattice_scale(ctx.ring, QuadNum{D, 0, 1});
    return ctx;
}

// O_F-submodule of O_F?
inline bool is_integral_ideal(const FieldContext& ctx, const QuadLattice& L) {
    check_same_field(ctx.D, L.D);
    if (!lattice_contains(ctx.ring, L)) return false;
    QuadNum omega = lattice_gen1(ctx.ring); // (sqrt(D) + (D mod 2)) / 2
    return member(L, omega * lattice_gen1(L)) && member(L, omega * lattice_gen2(L));
}

inline QuadLattice lattice_inverse_of_principal(const FieldContext& ctx, const QuadNum& mu) {
    return lattice_scale(ctx.ring, inverse(mu));
}

// ---------------------------------------------------------------- units

struct UnitRecord {
    QuadNum value;
    int normSign = 0;           // +1 or -1
    bool totallyPositive = false;
    Int powerIndex = 0;         // exponent w.r.t. the fundamental unit
};

namespace detail {

// Continued fraction of sqrt(n) (n > 1 nonsquare): returns the convergent
// (p, q) at the end of the first period, the fundamental unit p + q*sqrt(n)
// of Z[sqrt(n)], of norm (-1)^(period length).
inline std::pair<Int, Int> pell_unit(long long n) {
    Int a0 = sqrt(Int(n));
    if (a0 * a0 == n) fail(errc::internal, "square radicand");
    Int P = 0, Q = 1, a = a0;
    Int p_prev = 1, p_cur = a0, q_prev = 0, q_cur = 1;
    for (;;) {
        P = a * Q - P;
        Int Qn = (Int(n) - P * P) / Q;
        if (Qn == 1) break;
        Q = Qn;
        a = (a0 + P) / Q;
        Int p_new = a * p_cur + p_prev, q_new = a * q_cur + q_prev;
        p_prev = p_cur; p_cur = p_new;
        q_prev = q_cur; q_cur = q_new;
    }
    Int nrm = p_cur * p_cur - Int(n) * q_cur * q_cur;
    if (nrm != 1 && nrm != -1) fail(errc::internal, "pell convergent is not a unit");
    return {p_cur, q_cur};
}

} // namespace detail

// Fundamental unit of O_F, > 1, exact.  For even D this is the Z[sqrt(D/4)]
// unit; for odd D the Z[sqrt(D)] unit admits a cube root in O_F exactly when
// the unit index is 3 (possible only for D = 5 mod 8), detected by solving
// u^3 - 3*norm*u = 2x over Z and verifying the cube exactly.
inline UnitRecord fundamental_unit(const FieldContext& ctx) {
    long long D = ctx.D;
    long long radicand = (D % 2 == 0) ? D / 4 : D;
    auto [p, q] = detail::pell_unit(radicand);
    QuadNum eps1 = (D % 2 == 0) ? QuadNum{D, Rat(p), Rat(q, 2)} : QuadNum{D, Rat(p), Rat(q)};
    Rat n1 = norm(eps1);
    QuadNum eps = eps1;
    Rat ns = n1;
    if (D % 8 == 5) {
        Int nhat = numerator(n1); // +-1
        Int u0 = icbrt(2 * abs(p));
        for (Int u = u0 - 2; u <= u0 + 3; ++u) {
            if (u <= 0) continue;
            if (u * u * u - 3 * nhat * u != 2 * p) continue;
            Int vden = u * u - nhat;
            if (vden == 0 || (2 * q) % vden != 0) continue;
            Int v = 2 * q / vden;
            if (mod_floor(u - v, 2) != 0) continue;
            QuadNum cand{D, Rat(u, 2), Rat(v, 2)};
            if (norm(cand) != Rat(nhat)) continue;
            if (pow(cand, 3) == eps1) {
                eps = cand;
                ns = Rat(nhat);
                break;
            }
        }
    }
    UnitRecord rec;
    rec.value = eps;
    rec.normSign = (ns == 1) ? 1 : -1;
    rec.totallyPositive = (rec.normSign == 1);
    rec.powerIndex = 1;
    return rec;
}

// Smallest totally positive unit eps > 1 with eps - 1 in kappa*d (d the
// different).  Totally positive units > 1 are exactly the positive powers of
// the fundamental unit (norm +1) or of its square (norm -1), so a linear scan
// of those powers finds the minimum.
inline UnitRecord epsilon_kappa(const FieldContext& ctx, long long kappa,
                                long long search_cap = 1'000'000) {
    if (kappa <= 0) fail(errc::internal, "kappa must be positive");
    UnitRecord fund = fundamental_unit(ctx);
    QuadNum eps_tp = fund.totallyPositive ? fund.value : fund.value * fund.value;
    QuadLattice kd = lattice_scale(ctx.ring, QuadNum{ctx.D, 0, Rat(kappa)});
    QuadNum one{ctx.D, 1, 0};
    QuadNum power = eps_tp;
    for (long long k = 1; k <= search_cap; ++k) {
        if (member(kd, power - one)) {
            UnitRecord rec;
            rec.value = power;
            rec.normSign = 1;
            rec.totallyPositive = true;
            rec.powerIndex = Int(k) * (fund.totallyPositive ? 1 : 2);
            return rec;
        }
        power = power * eps_tp;
    }
    fail(errc::search_cap, "no unit congruent to 1 mod kappa*different within cap");
}

} // namespace heckenorm
