#pragma once
// Closed-form Petersson norm of the weight-one theta form:
//
//   ||theta||^2 = -(1/12) (Psi(gamma0) + Psi(gamma1)) log eps_kappa,
//
// where, writing eps_kappa = alpha + beta sqrt(D),
//
//   gammaDk = [[alpha, D beta], [beta, alpha]]   (half-integral when D is odd),
//   gamma0  = gKappa gammaDk gKappa^{-1},        gKappa fixed by the parity of D*kappa,
//   gamma1  = gL gammaDk gL^{-1},                gL = [[a, b], [0, d]] from the
//                                                HNF basis {a sqrt(D) + b, d} of a cap 2L^v.
//
// Both conjugates are integral with determinant one; that is a theorem, and
// the engine refuses to continue if a computed conjugate falls outside SL2(Z).

#include <heckenorm/hecke_theta.hpp>
#include <heckenorm/rademacher.hpp>

#include <cmath>

namespace heckenorm {

struct RatMatrix2 {
    Rat a, b, c, d;
    Rat det() const { return a * d - b * c; }
    Rat trace() const { return a + d; }
};

inline bool operator==(const RatMatrix2& p, const RatMatrix2& q) {
    return p.a == q.a && p.b == q.b && p.c == q.c && p.d == q.d;
}
inline bool operator!=(const RatMatrix2& p, const RatMatrix2& q) { return !(p == q); }

inline RatMatrix2 operator*(const RatMatrix2& p, const RatMatrix2& q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d,
            p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}

inline RatMatrix2 rat_inverse(const RatMatrix2& m) {
    Rat dt = m.det();
    if (dt == 0) fail(errc::singular, "matrix is not invertible");
    return {m.d / dt, -m.b / dt, -m.c / dt, m.a / dt};
}

inline RatMatrix2 conjugate_by(const RatMatrix2& g, const RatMatrix2& m) {
    return g * m * rat_inverse(g);
}

inline RatMatrix2 to_rat_matrix(const IntMatrix2& m) {
    return {Rat(m.a), Rat(m.b), Rat(m.c), Rat(m.d)};
}

inline bool is_integral(const RatMatrix2& m) {
    return denominator(m.a) == 1 && denominator(m.b) == 1 &&
           denominator(m.c) == 1 && denominator(m.d) == 1;
}

inline IntMatrix2 to_int_matrix(const RatMatrix2& m) {
    if (!is_integral(m)) fail(errc::not_integral_matrix, "matrix has non-integer entries");
    return {numerator(m.a), numerator(m.b), numerator(m.c), numerator(m.d)};
}

inline RatMatrix2 gamma_Dkappa(const HeckeLattice& H) {
    const QuadNum& eps = H.epsKappa.value;
    return {eps.x, Rat(eps.D) * eps.y, eps.y, eps.x};
}

inline RatMatrix2 g_kappa_matrix(long long D, long long kappa) {
    Int Dk = Int(D) * kappa;
    if (Dk % 2 == 0) return {make_rat(2, Dk), 0, 0, 1};
    return {make_rat(1, Dk), 1, 0, 2};
}

// gL = [[a, b], [0, d]] from the HNF basis of a cap 2 L^v.
inline RatMatrix2 g_L_matrix(const HeckeLattice& H) {
    QuadLattice m = lattice_intersect(H.ideal, lattice_scale(H.dual, QuadNum{H.ctx.D, 2, 0}));
    return {m.a, m.b, 0, m.d};
}

struct NormReport {
    long long D = 0;
    long long kappa = 1;
    QuadLattice ideal, dual;
    UnitRecord epsKappa;
    Rat N;
    bool gammaDkIntegral = false; // whether gammaDk itself already lies in SL2(Z)
    RatMatrix2 gammaDk, gKappa, gL;
    IntMatrix2 gamma0, gamma1;
    Int psi0, psi1;
    Rat coefficient;      // -(psi0 + psi1)/12
    Real logEps = 0;      // log eps_kappa
    Real normValue = 0;   // coefficient * logEps
    Real normValueError = 0;
};

// Overflow-safe log of a unit eps = x + y sqrt(D) > 1 with x, y > 0.
inline Real log_unit(const QuadNum& eps) {
    assert(eps.x > 0 && eps.y >= 0);
    if (eps.y == 0) return log_rat(eps.x);
    Real ratio = to_real(eps.y / eps.x) * std::sqrt(static_cast<Real>(eps.D));
    return log_rat(eps.x) + std::log1p(ratio);
}

inline NormReport closed_form_norm(const HeckeLattice& H) {
    NormReport r;
    r.D = H.ctx.D;
    r.kappa = H.kappa;
    r.ideal = H.ideal;
    r.dual = H.dual;
    r.epsKappa = H.epsKappa;
    r.N = H.N;
    r.gammaDk = gamma_Dkappa(H);
    r.gKappa = g_kappa_matrix(H.ctx.D, H.kappa);
    r.gL = g_L_matrix(H);
    r.gammaDkIntegral = is_integral(r.gammaDk);

    RatMatrix2 c0 = conjugate_by(r.gKappa, r.gammaDk);
    if (!is_integral(c0)) fail(errc::integrality_violation, "gamma0 is not integral");
    RatMatrix2 c1 = conjugate_by(r.gL, r.gammaDk);
    if (!is_integral(c1)) fail(errc::integrality_violation, "gamma1 is not integral");
    r.gamma0 = to_int_matrix(c0);
    r.gamma1 = to_int_matrix(c1);

    r.psi0 = psi(r.gamma0); // also certifies det = 1
    r.psi1 = psi(r.gamma1);
    r.coefficient = make_rat(-(r.psi0 + r.psi1), 12);

    r.logEps = log_unit(H.epsKappa.value);
    r.normValue = to_real(r.coefficient) * r.logEps;
    // exact coefficient, log good to ~1 ulp: generous rounding envelope
    r.normValueError = std::abs(r.normValue) * 1e-16L + 1e-19L;
    return r;
}

} // namespace heckenorm
