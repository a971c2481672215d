#pragma once
// Text frontends: parsing of ideals and matrices from command-line syntax,
// JSON serialization of reports (exact data as "p/q" strings so nothing is
// rounded; floating-point summaries as plain numbers), and the batch CSV.

#include <heckenorm/oracles.hpp>

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace heckenorm {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = s.find(sep, start);
        if (at == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, at - start));
        start = at + 1;
    }
}

inline Int parse_int(const std::string& s) {
    Rat r = parse_rat(trim(s));
    if (denominator(r) != 1) fail(errc::parse_error, "expected an integer, got '" + s + "'");
    return numerator(r);
}

// shortest decimal that still identifies the long double
inline std::string real_to_string(Real x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15Lg", x);
    return buf;
}

} // namespace detail

// "ring" | "different" | "a,b,d" for the basis { a*sqrt(D) + b, d }.
inline QuadLattice parse_ideal(const FieldContext& ctx, const std::string& text) {
    std::string t = detail::trim(text);
    if (t == "ring") return ctx.ring;
    if (t == "different") return ctx.different;
    std::vector<std::string> parts = detail::split(t, ',');
    if (parts.size() != 3)
        fail(errc::parse_error, "ideal must be 'ring', 'different', or 'a,b,d', got '" + text + "'");
    Rat a = parse_rat(detail::trim(parts[0]));
    Rat b = parse_rat(detail::trim(parts[1]));
    Rat d = parse_rat(detail::trim(parts[2]));
    return canonical_lattice(ctx.D, a, b, d);
}

// "a,b;c,d" with integer entries.
inline IntMatrix2 parse_matrix(const std::string& text) {
    std::vector<std::string> rows = detail::split(detail::trim(text), ';');
    if (rows.size() != 2) fail(errc::parse_error, "matrix must be 'a,b;c,d', got '" + text + "'");
    std::vector<std::string> top = detail::split(rows[0], ','), bot = detail::split(rows[1], ',');
    if (top.size() != 2 || bot.size() != 2)
        fail(errc::parse_error, "matrix must be 'a,b;c,d', got '" + text + "'");
    return {detail::parse_int(top[0]), detail::parse_int(top[1]),
            detail::parse_int(bot[0]), detail::parse_int(bot[1])};
}

inline std::string quadnum_to_string(const QuadNum& q) {
    if (q.y == 0) return rat_to_string(q.x);
    Rat ay = abs(q.y);
    std::string root = "sqrt(" + std::to_string(q.D) + ")";
    std::string yterm = ay == 1 ? root : rat_to_string(ay) + "*" + root;
    if (q.x == 0) return (q.y < 0 ? "-" : "") + yterm;
    return rat_to_string(q.x) + (q.y < 0 ? " - " : " + ") + yterm;
}

inline Json matrix_to_json(const IntMatrix2& m) {
    return Json::array({Json::array({m.a.str(), m.b.str()}),
                        Json::array({m.c.str(), m.d.str()})});
}

inline Json matrix_to_json(const RatMatrix2& m) {
    return Json::array({Json::array({rat_to_string(m.a), rat_to_string(m.b)}),
                        Json::array({rat_to_string(m.c), rat_to_string(m.d)})});
}

inline Json lattice_to_json(const QuadLattice& L) {
    return Json::array({rat_to_string(L.a), rat_to_string(L.b), rat_to_string(L.d)});
}

inline Json theta_to_json(const ThetaExpansion& th) {
    Json j;
    j["precision"] = rat_to_string(th.precision);
    j["groupOrder"] = th.group.reps.size();
    Json cosets = Json::array();
    for (const ThetaCoset& c : th.cosets) {
        if (c.terms.empty()) continue; // only the cosets that actually appear
        Json jc;
        jc["index"] = c.index;
        jc["rep"] = quadnum_to_string(c.rep);
        Json terms = Json::array();
        for (const ThetaTerm& t : c.terms)
            terms.push_back(Json::array({rat_to_string(t.exponent), t.coefficient.str()}));
        jc["terms"] = std::move(terms);
        cosets.push_back(std::move(jc));
    }
    j["cosets"] = std::move(cosets);
    return j;
}

inline Json unit_to_json(const UnitRecord& u) {
    Json j;
    j["value"] = quadnum_to_string(u.value);
    j["x"] = rat_to_string(u.value.x);
    j["y"] = rat_to_string(u.value.y);
    j["normSign"] = u.normSign;
    j["totallyPositive"] = u.totallyPositive;
    j["powerIndex"] = u.powerIndex.str();
    return j;
}

inline Json report_to_json(const NormReport& r) {
    Json j;
    j["D"] = r.D;
    j["kappa"] = r.kappa;
    j["ideal"] = lattice_to_json(r.ideal);
    j["dual"] = lattice_to_json(r.dual);
    j["level"] = rat_to_string(r.N);
    j["epsilon"] = unit_to_json(r.epsKappa);
    j["gammaDkIntegral"] = r.gammaDkIntegral;
    j["gammaDk"] = matrix_to_json(r.gammaDk);
    j["gKappa"] = matrix_to_json(r.gKappa);
    j["gL"] = matrix_to_json(r.gL);
    j["gamma0"] = matrix_to_json(r.gamma0);
    j["gamma1"] = matrix_to_json(r.gamma1);
    j["psi0"] = r.psi0.str();
    j["psi1"] = r.psi1.str();
    j["coefficient"] = rat_to_string(r.coefficient);
    j["logEps"] = static_cast<double>(r.logEps);
    j["normValue"] = static_cast<double>(r.normValue);
    j["normValueError"] = static_cast<double>(r.normValueError);
    return j;
}

inline Json petersson_to_json(const PeterssonResult& p) {
    Json j;
    j["value"] = static_cast<double>(p.value);
    j["errorBound"] = static_cast<double>(p.errorBound);
    j["gridDelta"] = static_cast<double>(p.gridDelta);
    j["tail"] = static_cast<double>(p.tail);
    j["truncation"] = static_cast<double>(p.truncation);
    return j;
}

inline Json verify_to_json(const VerifyReport& v) {
    Json j;
    j["closedForm"] = report_to_json(v.closedForm);
    j["thetaPrecision"] = rat_to_string(v.thetaPrecision);
    j["cycleTolerance"] = static_cast<double>(v.cycleTolerance);
    j["normTolerance"] = static_cast<double>(v.normTolerance);
    j["cycle0"] = static_cast<double>(v.cycle0);
    j["cycle1"] = static_cast<double>(v.cycle1);
    j["cycleResidual0"] = static_cast<double>(v.cycleResidual0);
    j["cycleResidual1"] = static_cast<double>(v.cycleResidual1);
    j["quadrature"] = petersson_to_json(v.quadrature);
    j["normResidual"] = static_cast<double>(v.normResidual);
    j["cyclesPass"] = v.cyclesPass;
    j["quadraturePass"] = v.quadraturePass;
    j["pass"] = v.pass;
    return j;
}

inline std::vector<long long> fundamental_discriminants(long long maxD) {
    std::vector<long long> out;
    for (long long D = 5; D <= maxD; ++D)
        if (is_fundamental_discriminant(D)) out.push_back(D);
    return out;
}

struct BatchOptions {
    long long maxD = 100;
    long long maxKappa = 3;
    bool includeRing = true;
    bool includeDifferent = true;
    long long unitSearchCap = 1'000'000;
};

struct BatchRow {
    std::string idealLabel;
    NormReport report;
    bool verified = false;
};

// Exact internal cross-checks on one closed-form result: positivity of the
// coefficient, gamma0 depending only on (D, kappa), and agreement between a
// zero coefficient and an identically vanishing q-expansion.
inline bool batch_verify(const FieldContext& ctx, const HeckeLattice& H, const NormReport& r) {
    if (r.coefficient < 0) return false;
    NormReport ringSide = closed_form_norm(make_hecke_lattice(ctx, ctx.ring, r.kappa));
    if (!(ringSide.gamma0 == r.gamma0)) return false;
    if (r.coefficient == 0) {
        ThetaExpansion th = theta_expansion(H, Rat(2));
        if (nonzero_coset_count(th) != 0) return false;
    }
    return true;
}

inline std::vector<BatchRow> batch_norms(const BatchOptions& opt) {
    std::vector<BatchRow> rows;
    for (long long D : fundamental_discriminants(opt.maxD)) {
        FieldContext ctx = make_context(D);
        for (long long kappa = 1; kappa <= opt.maxKappa; ++kappa) {
            auto push = [&](const char* label, const QuadLattice& ideal) {
                HeckeLattice H = make_hecke_lattice(ctx, ideal, kappa, opt.unitSearchCap);
                NormReport r = closed_form_norm(H);
                rows.push_back({label, r, batch_verify(ctx, H, r)});
            };
            if (opt.includeRing) push("ring", ctx.ring);
            if (opt.includeDifferent) push("different", ctx.different);
        }
    }
    return rows;
}

inline std::string batch_csv(const std::vector<BatchRow>& rows) {
    std::string out = "D,ideal,kappa,epsilon,psi0,psi1,coefficient,normValue,verified\n";
    for (const BatchRow& row : rows) {
        const NormReport& r = row.report;
        out += std::to_string(r.D) + "," + row.idealLabel + "," + std::to_string(r.kappa) + "," +
               quadnum_to_string(r.epsKappa.value) + "," + r.psi0.str() + "," + r.psi1.str() +
               "," + rat_to_string(r.coefficient) + "," + detail::real_to_string(r.normValue) +
               "," + (row.verified ? "1" : "0") + "\n";
    }
    return out;
}

} // namespace heckenorm
