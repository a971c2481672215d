// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failures.  Every exact claim is checked with exact arithmetic; the stated
// runtime budgets are enforced with a monotonic clock.

#include <heckenorm/io.hpp>
#include <heckenorm/oracles.hpp>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace heckenorm;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int failures = 0;

void line(int n, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s — %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++failures;
}

IntMatrix2 im(long long a, long long b, long long c, long long d) {
    return {Int(a), Int(b), Int(c), Int(d)};
}

IntMatrix2 random_sl2(std::mt19937_64& rng, int len = 14) {
    const IntMatrix2 S = im(0, -1, 1, 0), T = im(1, 1, 0, 1), Tinv = im(1, -1, 0, 1);
    std::uniform_int_distribution<int> pick(0, 2);
    IntMatrix2 g = im(1, 0, 0, 1);
    for (int i = 0; i < len; ++i) {
        switch (pick(rng)) {
        case 0: g = g * S; break;
        case 1: g = g * T; break;
        default: g = g * Tinv; break;
        }
    }
    return g;
}

QuadNum random_tot_pos(std::mt19937_64& rng, const FieldContext& ctx) {
    std::uniform_int_distribution<long long> ci(-4, 4), cj(-8, 8);
    for (;;) {
        QuadNum mu = Rat(ci(rng)) * lattice_gen1(ctx.ring) + Rat(cj(rng)) * lattice_gen2(ctx.ring);
        if (mu.is_zero()) continue;
        if (is_totally_positive(mu)) return mu;
        if (is_totally_positive(-mu)) return -mu;
        return mu * mu;
    }
}

struct Instance {
    FieldContext ctx;
    QuadLattice ideal;
    long long kappa;
};

Instance random_instance(std::mt19937_64& rng, long long maxD) {
    std::vector<long long> Ds = fundamental_discriminants(maxD);
    std::uniform_int_distribution<std::size_t> di(0, Ds.size() - 1);
    std::uniform_int_distribution<int> ki(1, 3), coin(0, 1);
    FieldContext ctx = make_context(Ds[di(rng)]);
    QuadLattice a = lattice_scale(ctx.ring, random_tot_pos(rng, ctx));
    if (coin(rng)) a = lattice_mul(a, ctx.different);
    return {ctx, a, ki(rng)};
}

std::string fmt(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

// --- criteria ---------------------------------------------------------------

void criterion_1() {
    auto t0 = Clock::now();
    Int p0 = psi(im(7, 4, 12, 7));
    Int p1 = psi(im(7, 12, 4, 7));
    double elapsed = ms_since(t0);
    bool ok = p0 == -2 && p1 == 2 && elapsed < 1.0;
    line(1, ok,
         "psi values " + p0.str() + ", " + p1.str() + " (want -2, 2) in " +
             fmt("%.3f ms", elapsed));
}

void criterion_2() {
    FieldContext ctx = make_context(12);
    NormReport r = closed_form_norm(make_hecke_lattice(ctx, ctx.different, 1));
    Real reference = (2.0L / 3.0L) * std::log(2.0L + std::sqrt(3.0L));
    Real err = std::abs(r.normValue - reference);
    bool ok = r.coefficient == Rat(1, 3) && err < 1e-9L;
    line(2, ok,
         "coefficient " + rat_to_string(r.coefficient) + " (want 1/3), |norm - (2/3)log(2+sqrt 3)| = " +
             fmt("%.2e", static_cast<double>(err)));
}

void criterion_3() {
    FieldContext ctx = make_context(12);
    HeckeLattice H = make_hecke_lattice(ctx, ctx.ring, 1);
    NormReport r = closed_form_norm(H);
    ThetaExpansion th = theta_expansion(H, Rat(20));
    bool ok = r.coefficient == 0 && nonzero_coset_count(th) == 0;
    line(3, ok,
         "coefficient " + rat_to_string(r.coefficient) + " (want 0), nonzero cosets to X=20: " +
             std::to_string(nonzero_coset_count(th)) + " (want 0)");
}

void criterion_4() {
    auto t0 = Clock::now();
    const long long evens[] = {8, 12, 24, 28, 40, 44, 56, 60};
    bool ok = true;
    std::string offender;
    for (long long D : evens) {
        FieldContext ctx = make_context(D);
        NormReport r = closed_form_norm(make_hecke_lattice(ctx, ctx.ring, 1));
        if (r.coefficient != 0) {
            ok = false;
            offender = "D=" + std::to_string(D) + " gave " + rat_to_string(r.coefficient);
        }
    }
    double elapsed = ms_since(t0);
    ok = ok && elapsed < 1000.0;
    line(4, ok,
         (offender.empty() ? std::string("all eight even-D ring coefficients are 0") : offender) +
             fmt(" in %.1f ms", elapsed));
}

void criterion_5() {
    FieldContext ctx = make_context(12);
    HeckeLattice H = make_hecke_lattice(ctx, ctx.different, 1);
    ThetaExpansion th = theta_expansion(H, Rat(10));
    std::size_t nonzero = nonzero_coset_count(th);
    bool ok = nonzero == 4;

    // expected nonzero eta^2 terms with exponent n + 1/12 <= 10
    std::vector<Int> eta = eta_squared_coeffs(10);
    std::vector<std::pair<Rat, Int>> expect;
    for (std::size_t n = 0; n < eta.size(); ++n)
        if (eta[n] != 0) expect.push_back({Rat(Int(n)) + Rat(1, 12), eta[n]});

    for (const ThetaCoset& c : th.cosets) {
        if (c.terms.empty()) continue;
        if (c.terms.size() != expect.size()) {
            ok = false;
            break;
        }
        Int sign = c.terms[0].coefficient > 0 ? 1 : -1;
        for (std::size_t k = 0; k < expect.size(); ++k)
            if (c.terms[k].exponent != expect[k].first ||
                c.terms[k].coefficient != sign * expect[k].second)
                ok = false;
    }
    line(5, ok,
         std::to_string(nonzero) + " nonzero cosets (want 4), each matching +/- eta^2 through exponent 10");
}

void criterion_6() {
    const IntMatrix2 mats[] = {im(7, 4, 12, 7), im(7, 12, 4, 7), im(2, 3, 1, 2),
                               im(5, 3, 3, 2), im(11, -3, 15, -4)};
    bool ok = true;
    Real worst = 0;
    double slowest = 0;
    for (const IntMatrix2& g : mats) {
        auto t0 = Clock::now();
        Real I = cycle_integral(g);
        double elapsed = ms_since(t0);
        Real resid = std::abs(I - to_real(Rat(psi(g))));
        worst = std::max(worst, resid);
        slowest = std::max(slowest, elapsed);
        if (resid >= 1e-4L || elapsed >= 10'000.0) ok = false;
    }
    line(6, ok,
         "worst |integral - psi| = " + fmt("%.2e", static_cast<double>(worst)) +
             fmt(", slowest integral %.1f ms", slowest));
}

void criterion_7() {
    FieldContext ctx = make_context(12);
    HeckeLattice H = make_hecke_lattice(ctx, ctx.different, 1);
    auto t0 = Clock::now();
    ThetaExpansion th = theta_expansion(H, Rat(6));
    PeterssonResult r = petersson_numeric(th);
    double elapsed = ms_since(t0);
    Real resid = std::abs(r.value - 0.8779718L);
    bool ok = resid < 5e-3L && elapsed < 60'000.0;
    line(7, ok,
         "|quadrature - 0.8779718| = " + fmt("%.2e", static_cast<double>(resid)) +
             fmt(" in %.1f ms", elapsed));
}

bool psi_identities(std::mt19937_64& rng) {
    const IntMatrix2 J = im(1, 0, 0, -1);
    for (int i = 0; i < 500; ++i) {
        IntMatrix2 g = random_sl2(rng);
        IntMatrix2 neg = im(-1, 0, 0, -1) * g;
        if (psi(neg) != psi(g)) return false;
        if (psi(unimodular_inverse(g)) != -psi(g)) return false;
        IntMatrix2 h = random_sl2(rng, 8);
        bool flip = i % 2 == 1;
        if (flip) h = h * J; // det -1 half the time
        IntMatrix2 conj = h * g * unimodular_inverse(h);
        Int want = flip ? -psi(g) : psi(g);
        if (psi(conj) != want) return false;
    }
    return true;
}

bool dedekind_reciprocity() {
    for (long long k = 1; k <= 200; ++k)
        for (long long h = 1; h < k; ++h) {
            if (std::gcd(h, k) != 1) continue;
            Rat lhs = dedekind_sum(Int(h), Int(k)) + dedekind_sum(Int(k), Int(h));
            Rat rhs = Rat(-1, 4) + Rat(h, k) / 12 + Rat(k, h) / 12 + Rat(1, 12 * h * k);
            if (lhs != rhs) return false;
        }
    return true;
}

bool theta_properties(std::mt19937_64& rng) {
    for (int i = 0; i < 10; ++i) {
        Instance ins = random_instance(rng, 60);
        HeckeLattice H = make_hecke_lattice(ins.ctx, ins.ideal, ins.kappa);
        ThetaExpansion th = theta_expansion(H, Rat(2));

        for (std::size_t a = 0; a < th.cosets.size(); ++a) {
            const auto& ta = th.cosets[a].terms;
            const auto& tb = th.cosets[th.group.negIndex[a]].terms;
            if (ta.size() != tb.size()) return false;
            for (std::size_t k = 0; k < ta.size(); ++k)
                if (ta[k].exponent != tb[k].exponent || ta[k].coefficient != -tb[k].coefficient)
                    return false;
        }

        QuadNum mu = random_tot_pos(rng, ins.ctx);
        HeckeLattice H2 = make_hecke_lattice(ins.ctx, lattice_scale(ins.ideal, mu), ins.kappa);
        ThetaExpansion th2 = theta_expansion(H2, Rat(2));
        if (th.cosets.size() != th2.cosets.size()) return false;
        for (std::size_t a = 0; a < th.cosets.size(); ++a) {
            std::size_t b = coset_index(th2.group, mu * th.group.reps[a]);
            const auto& ta = th.cosets[a].terms;
            const auto& tb = th2.cosets[b].terms;
            if (ta.size() != tb.size()) return false;
            for (std::size_t k = 0; k < ta.size(); ++k)
                if (ta[k].exponent != tb[k].exponent || ta[k].coefficient != tb[k].coefficient)
                    return false;
        }
    }
    return true;
}

bool coefficient_positivity() {
    for (long long D : fundamental_discriminants(100)) {
        FieldContext ctx = make_context(D);
        for (long long kappa = 1; kappa <= 3; ++kappa)
            for (const QuadLattice& a : {ctx.ring, ctx.different}) {
                NormReport r = closed_form_norm(make_hecke_lattice(ctx, a, kappa));
                if (r.coefficient < 0) return false;
            }
    }
    return true;
}

void criterion_8() {
    auto t0 = Clock::now();
    auto rng = std::mt19937_64(20260822);
    bool a = psi_identities(rng);
    bool b = dedekind_reciprocity();
    bool c = theta_properties(rng);
    bool d = coefficient_positivity();
    double elapsed = ms_since(t0);
    bool ok = a && b && c && d && elapsed < 300'000.0;
    line(8, ok,
         std::string("psi identities ") + (a ? "ok" : "FAILED") + ", reciprocity " +
             (b ? "ok" : "FAILED") + ", theta properties " + (c ? "ok" : "FAILED") +
             ", positivity " + (d ? "ok" : "FAILED") + fmt(" in %.0f ms", elapsed));
}

void criterion_9() {
    struct Probe {
        long long D;
        bool useDifferent;
    };
    std::vector<Probe> probes = {{12, true}, {12, false}, {5, false}};
    for (long long D : {8, 24, 28, 40, 44, 56, 60}) probes.push_back({D, false});

    bool ok = true;
    std::string offender;
    for (const Probe& p : probes) {
        FieldContext ctx = make_context(p.D);
        HeckeLattice H = make_hecke_lattice(ctx, p.useDifferent ? ctx.different : ctx.ring, 1);
        VerifyReport v = verify(H);
        if (!v.pass) {
            ok = false;
            offender = "D=" + std::to_string(p.D) + (p.useDifferent ? " different" : " ring");
        }
        if (p.D == 5 && (v.closedForm.psi0 != 0 || v.closedForm.psi1 != 0)) {
            ok = false;
            offender = "(5, ring, 1) psi values not both zero";
        }
    }
    line(9, ok,
         ok ? "verify PASS on all " + std::to_string(probes.size()) + " reference instances"
            : "verify FAIL on " + offender);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0)
        std::printf("acceptance: all 9 criteria PASS\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return failures;
}
