#pragma once
// Numerical cross-checks for the closed-form norm, sharing one knob struct:
//
//  * E2*(tau) = 1 - 3/(pi v) - 24 sum_{n>=1} n q^n/(1-q^n), the weight-two
//    quasi-modular Eisenstein series completed to an equivariant function.
//    Evaluated by reducing tau into the standard fundamental domain (where
//    |q| <= e^{-pi sqrt(3)}) and unwinding the weight-two cocycle.
//  * cycle_integral: int_{z0}^{gamma z0} E2*(z) dz along the invariant
//    geodesic of a hyperbolic gamma; by Meyer's theorem it equals Psi(gamma)
//    independently of z0.
//  * petersson_numeric: int over the standard fundamental domain of
//    v |theta|^2 du dv / v^2, computed from a truncated q-expansion with
//    explicit tail and truncation bounds folded into the error bar.

#include <heckenorm/hecke_theta.hpp>
#include <heckenorm/norm_engine.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace heckenorm {

struct QuadratureConfig {
    int gaussNodes = 64;      // nodes per cycle-integral segment
    int cycleSegments = 8;    // geodesic arc subdivisions
    int seriesTerms = 64;     // Lambert series length for E2*
    int uNodes = 64;          // Petersson grid, horizontal
    int vNodes = 48;          // Petersson grid, vertical (log substitution)
    Real vMax = 40;           // vertical cutoff of the truncated domain
    Rat thetaX = 6;           // q-expansion precision fed to the quadrature
    Real cycleTolerance = 1e-4;
    Real normTolerance = 5e-3;
    int threads = 1;
};

inline constexpr Real kPi = std::numbers::pi_v<Real>;

struct QuadratureRule {
    std::vector<Real> nodes, weights; // on [-1, 1]
};

// Gauss-Legendre by Newton iteration on P_n; nodes accurate to ~1 ulp.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 2) fail(errc::precision_too_low, "need at least two quadrature nodes");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real x = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
        Real pp = 0;
        for (int iter = 0; iter < 64; ++iter) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        Real w = 2 / ((1 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

namespace detail {

// Map tau into the standard fundamental domain, returning the reduced point
// and the (c, d) row of the matrix that got it there.
struct Reduced {
    Cplx tau;
    Int c, d;
};

inline Reduced reduce_to_fundamental(Cplx tau) {
    Int a = 1, b = 0, c = 0, d = 1;
    for (int iter = 0; iter < 100000; ++iter) {
        Real re = tau.real();
        if (std::abs(re) > 0.5L + 1e-18L) {
            Real kf = std::floor(re + 0.5L);
            Int k = Int(static_cast<long long>(kf));
            tau -= Cplx(kf, 0);
            a -= k * c;
            b -= k * d;
            continue;
        }
        if (std::norm(tau) < 1.0L - 1e-18L) {
            tau = -1.0L / tau;
            Int na = -c, nb = -d;
            c = a;
            d = b;
            a = na;
            b = nb;
            continue;
        }
        return {tau, c, d};
    }
    fail(errc::internal, "fundamental domain reduction did not terminate");
}

// E2* on the fundamental domain itself: |q| <= e^{-pi sqrt(3)} makes the
// Lambert series converge geometrically.
inline Cplx e2_star_reduced(Cplx tau, int seriesTerms) {
    Cplx q = std::exp(Cplx(0, 2 * kPi) * tau);
    Cplx qn = 1, sum = 0;
    for (int n = 1; n <= seriesTerms; ++n) {
        qn *= q;
        sum += static_cast<Real>(n) * qn / (1.0L - qn);
    }
    return 1.0L - 24.0L * sum - 3.0L / (kPi * tau.imag());
}

} // namespace detail

inline Cplx e2_star(Cplx tau, int seriesTerms = 64) {
    if (!(tau.imag() > 0)) fail(errc::not_upper_half_plane, "E2* needs Im(tau) > 0");
    detail::Reduced r = detail::reduce_to_fundamental(tau);
    Cplx j = to_real(Rat(r.c)) * tau + to_real(Rat(r.d));
    return detail::e2_star_reduced(r.tau, seriesTerms) / (j * j);
}

inline Cplx e2_star(Cplx tau, const QuadratureConfig& cfg) {
    return e2_star(tau, cfg.seriesTerms);
}

inline Cplx moebius(const IntMatrix2& g, Cplx z) {
    Cplx a(to_real(Rat(g.a))), b(to_real(Rat(g.b)));
    Cplx c(to_real(Rat(g.c))), d(to_real(Rat(g.d)));
    return (a * z + b) / (c * z + d);
}

// int_{z0}^{gamma z0} E2*(z) dz with z0 = the geodesic point at angle theta0.
// The arc is parametrized by hyperbolic arclength, z(s) = rho + r (tanh s +
// i sech s): the endpoint angles pile up near the real axis for long
// translation lengths, and in s the integrand stays analytic in a strip of
// width pi/2, so Gauss-Legendre converges at a rate independent of the unit.
inline Cplx cycle_integral_from(const IntMatrix2& g, Real theta0,
                                const QuadratureConfig& cfg = {}) {
    GeodesicCircle circle = geodesic(g); // also rejects non-hyperbolic input
    Real rho = to_real(circle.center);
    Real rad = std::sqrt(to_real(circle.radiusSq));
    Cplx z0(rho + rad * std::cos(theta0), rad * std::sin(theta0));
    Cplx z1 = moebius(g, z0);
    Real theta1 = std::atan2(z1.imag(), z1.real() - rho);
    Real s0 = std::atanh(std::cos(theta0));
    Real s1 = std::atanh(std::cos(theta1));
    QuadratureRule rule = gauss_legendre(cfg.gaussNodes);
    Cplx total = 0;
    for (int seg = 0; seg < cfg.cycleSegments; ++seg) {
        Real lo = s0 + (s1 - s0) * seg / cfg.cycleSegments;
        Real hi = s0 + (s1 - s0) * (seg + 1) / cfg.cycleSegments;
        Real mid = (lo + hi) / 2, half = (hi - lo) / 2;
        Cplx acc = 0;
        for (int i = 0; i < cfg.gaussNodes; ++i) {
            Real s = mid + half * rule.nodes[i];
            Real sech = 1 / std::cosh(s), tanh = std::tanh(s);
            Cplx z(rho + rad * tanh, rad * sech);
            Cplx dz(rad * sech * sech, -rad * sech * tanh);
            acc += rule.weights[i] * e2_star(z, cfg.seriesTerms) * dz;
        }
        total += acc * half;
    }
    return total;
}

// The integral is a real number (an integer, by Meyer); the imaginary part of
// the quadrature is pure noise, so the default entry point drops it.
inline Real cycle_integral(const IntMatrix2& g, const QuadratureConfig& cfg = {}) {
    return cycle_integral_from(g, kPi / 2, cfg).real();
}

struct PeterssonResult {
    Real value = 0;      // quadrature over the truncated fundamental domain
    Real errorBound = 0; // grid + tail + truncation, added in absolute value
    Real gridDelta = 0;  // |full grid - half grid|
    Real tail = 0;       // bound on the part above vMax
    Real truncation = 0; // bound on the effect of dropping exponents > X
};

namespace detail {

struct FlatTheta {
    // per coset: (exponent, coefficient) as machine reals
    std::vector<std::vector<std::pair<Real, Real>>> cosets;
    Real minExponent = 0; // smallest exponent present anywhere
    Real gap = 0;         // exponent granularity 1/denominator(X-grid)
    Real coeffCap = 0;    // largest |coefficient|
    Real X = 0;
};

inline FlatTheta flatten(const ThetaExpansion& th) {
    FlatTheta f;
    f.X = to_real(th.precision);
    Int den = 1;
    bool any = false;
    for (const ThetaCoset& c : th.cosets) {
        std::vector<std::pair<Real, Real>> v;
        v.reserve(c.terms.size());
        for (const ThetaTerm& t : c.terms) {
            v.push_back({to_real(t.exponent), to_real(Rat(t.coefficient))});
            den = lcm(den, denominator(t.exponent));
            Real ac = std::abs(v.back().second);
            f.coeffCap = std::max(f.coeffCap, ac);
            if (!any || v.back().first < f.minExponent) {
                f.minExponent = v.back().first;
                any = true;
            }
        }
        if (!v.empty()) f.cosets.push_back(std::move(v));
    }
    f.gap = 1.0L / to_real(Rat(den));
    return f;
}

// sum_mu |theta_mu(u + iv)|^2
inline Real theta_square(const FlatTheta& f, Real u, Real v) {
    Real total = 0;
    for (const auto& coset : f.cosets) {
        Real re = 0, im = 0;
        for (const auto& [e, c] : coset) {
            Real mag = c * std::exp(-2 * kPi * e * v);
            Real ang = 2 * kPi * e * u;
            re += mag * std::cos(ang);
            im += mag * std::sin(ang);
        }
        total += re * re + im * im;
    }
    return total;
}

// One full pass of the double quadrature at the given grid size.
inline Real petersson_grid(const FlatTheta& f, int uN, int vN, Real vMax, int threads) {
    QuadratureRule uRule = gauss_legendre(uN), vRule = gauss_legendre(vN);
    std::vector<Real> perU(uN, 0.0L);
    auto work = [&](int from, int to) {
        for (int i = from; i < to; ++i) {
            Real u = uRule.nodes[i] / 2; // [-1/2, 1/2]
            Real vLow = std::sqrt(1 - u * u);
            Real sHi = std::log(vMax / vLow); // v = vLow e^s, dv/v = ds
            Real acc = 0;
            for (int j = 0; j < vN; ++j) {
                Real s = (vRule.nodes[j] + 1) / 2 * sHi;
                Real v = vLow * std::exp(s);
                acc += vRule.weights[j] * theta_square(f, u, v);
            }
            perU[i] = acc * (sHi / 2);
        }
    };
    if (threads <= 1) {
        work(0, uN);
    } else {
        std::vector<std::thread> pool;
        int chunk = (uN + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int from = t * chunk, to = std::min(uN, from + chunk);
            if (from < to) pool.emplace_back(work, from, to);
        }
        for (auto& th : pool) th.join();
    }
    Real total = 0;
    for (int i = 0; i < uN; ++i) total += uRule.weights[i] / 2 * perU[i];
    return total;
}

} // namespace detail

inline PeterssonResult petersson_numeric(const ThetaExpansion& th,
                                         const QuadratureConfig& cfg = {}) {
    if (cfg.vMax < 1.5L) fail(errc::precision_too_low, "vMax must sit above the domain floor");
    if (cfg.uNodes < 4 || cfg.vNodes < 4)
        fail(errc::precision_too_low, "Petersson grid needs at least 4x4 nodes");
    PeterssonResult out;
    detail::FlatTheta f = detail::flatten(th);
    if (f.cosets.empty()) return out; // the zero form: exact zero, no error

    // dropped exponents start above X and sit on the 1/den grid; with the
    // observed coefficient size (plus slack) the missing part of each theta
    // is below M e^{-2 pi X v} / (1 - e^{-2 pi gap v}) on v >= sqrt(3)/2
    Real vFloor = std::sqrt(3.0L) / 2;
    Real M = 4 * (f.coeffCap + 1);
    Real miss = M * std::exp(-2 * kPi * f.X * vFloor) /
                (1 - std::exp(-2 * kPi * f.gap * vFloor));
    Real sMax = 0;
    for (const auto& coset : f.cosets) {
        Real s = 0;
        for (const auto& [e, c] : coset) s += std::abs(c) * std::exp(-2 * kPi * e * vFloor);
        sMax = std::max(sMax, s);
    }
    out.truncation = static_cast<Real>(f.cosets.size()) * miss * (2 * sMax + miss) *
                     (2 * std::log(cfg.vMax / vFloor));
    if (!(out.truncation < cfg.normTolerance))
        fail(errc::precision_too_low,
             "expansion cutoff X leaves a truncation bound above the tolerance");

    // tail above vMax: |theta_mu| <= S_mu(vMax) e^{-2 pi e0 (v - vMax)}, so
    // int_vMax^inf |theta|^2 dv/v <= sum S_mu(vMax)^2 / (4 pi e0 vMax)
    Real e0 = f.minExponent;
    Real tailSq = 0;
    for (const auto& coset : f.cosets) {
        Real s = 0;
        for (const auto& [e, c] : coset) s += std::abs(c) * std::exp(-2 * kPi * e * cfg.vMax);
        tailSq += s * s;
    }
    out.tail = tailSq / (4 * kPi * e0 * cfg.vMax);

    out.value = detail::petersson_grid(f, cfg.uNodes, cfg.vNodes, cfg.vMax, cfg.threads);
    Real half = detail::petersson_grid(f, cfg.uNodes / 2, cfg.vNodes / 2, cfg.vMax, cfg.threads);
    out.gridDelta = std::abs(out.value - half);

    out.errorBound = 2 * out.gridDelta + out.tail + out.truncation;
    return out;
}

struct VerifyReport {
    NormReport closedForm;
    Rat thetaPrecision;
    Real cycleTolerance = 0, normTolerance = 0;
    Real cycle0 = 0, cycle1 = 0;
    Real cycleResidual0 = 0, cycleResidual1 = 0;
    PeterssonResult quadrature;
    Real normResidual = 0;
    bool cyclesPass = false, quadraturePass = false, pass = false;
};

// Both oracles against the closed form: Meyer cycle integrals for each Psi,
// and the Petersson quadrature for the norm itself.
inline VerifyReport verify(const HeckeLattice& H, const QuadratureConfig& cfg = {}) {
    VerifyReport v;
    v.closedForm = closed_form_norm(H);
    v.thetaPrecision = cfg.thetaX;
    v.cycleTolerance = cfg.cycleTolerance;
    v.normTolerance = cfg.normTolerance;

    v.cycle0 = cycle_integral(v.closedForm.gamma0, cfg);
    v.cycle1 = cycle_integral(v.closedForm.gamma1, cfg);
    v.cycleResidual0 = std::abs(v.cycle0 - to_real(Rat(v.closedForm.psi0)));
    v.cycleResidual1 = std::abs(v.cycle1 - to_real(Rat(v.closedForm.psi1)));
    v.cyclesPass = v.cycleResidual0 < cfg.cycleTolerance && v.cycleResidual1 < cfg.cycleTolerance;

    ThetaExpansion th = theta_expansion(H, cfg.thetaX);
    v.quadrature = petersson_numeric(th, cfg);
    v.normResidual = std::abs(v.quadrature.value - v.closedForm.normValue);
    v.quadraturePass = v.normResidual < cfg.normTolerance + v.quadrature.errorBound;

    v.pass = v.cyclesPass && v.quadraturePass;
    return v;
}

} // namespace heckenorm
