// Command-line frontend.  Subcommands:
//
//   psi     Rademacher function of a hyperbolic SL2(Z) matrix
//   unit    fundamental unit and the kappa-congruence power
//   theta   q-expansion of the weight-one theta form per discriminant coset
//   norm    closed-form Petersson norm from exact data
//   verify  closed form against both numerical oracles
//   batch   CSV sweep over fundamental discriminants
//
// Exit codes: 0 on success (including a verified PASS), 2 when verify says
// FAIL (so CI can tell a false theorem from a typo), 1 on any usage or
// computation error.  HECKENORM_PREC overrides the default q-expansion
// precision.

#include <heckenorm/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace heckenorm;

namespace {

Rat default_precision() {
    if (const char* env = std::getenv("HECKENORM_PREC")) return parse_rat(env);
    return Rat(6);
}

std::string term_string(const ThetaTerm& t) {
    Int c = abs(t.coefficient);
    std::string out = t.coefficient < 0 ? "- " : "+ ";
    if (c != 1) out += c.str() + "*";
    return out + "q^(" + rat_to_string(t.exponent) + ")";
}

void print_theta(const ThetaExpansion& th) {
    std::cout << "precision X = " << rat_to_string(th.precision) << "\n";
    std::cout << "discriminant group order = " << th.group.reps.size() << "\n";
    std::size_t shown = 0;
    for (const ThetaCoset& c : th.cosets) {
        if (c.terms.empty()) continue;
        ++shown;
        std::cout << "coset [" << quadnum_to_string(c.rep) << "]:";
        for (const ThetaTerm& t : c.terms) std::cout << " " << term_string(t);
        std::cout << "\n";
    }
    if (shown == 0) std::cout << "theta is identically zero up to X\n";
}

void print_report(const NormReport& r) {
    std::cout << "D                : " << r.D << "\n"
              << "kappa            : " << r.kappa << "\n"
              << "ideal basis      : {" << quadnum_to_string(lattice_gen1(r.ideal)) << ", "
              << quadnum_to_string(lattice_gen2(r.ideal)) << "}\n"
              << "level N          : " << rat_to_string(r.N) << "\n"
              << "epsilon_kappa    : " << quadnum_to_string(r.epsKappa.value) << "\n"
              << "Psi(gamma0)      : " << r.psi0.str() << "\n"
              << "Psi(gamma1)      : " << r.psi1.str() << "\n"
              << "coefficient      : " << rat_to_string(r.coefficient) << "\n"
              << "log epsilon_kappa: " << detail::real_to_string(r.logEps) << "\n"
              << "norm             : " << detail::real_to_string(r.normValue) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Petersson norms of weight-one theta forms for real quadratic fields"};
    app.require_subcommand(1);

    std::string matrixText, idealText = "different", outPath;
    long long D = 0, kappa = 1, maxD = 100, maxKappa = 3;
    std::string precisionText;
    bool asJson = false;
    QuadratureConfig qcfg;

    auto addJson = [&](CLI::App* cmd) { cmd->add_flag("--json", asJson, "emit JSON"); };
    auto addInstance = [&](CLI::App* cmd) {
        cmd->add_option("--disc,--D,-D", D, "fundamental discriminant > 1")->required();
        cmd->add_option("--ideal,-a", idealText, "'ring', 'different', or 'a,b,d'");
        cmd->add_option("--kappa,-k", kappa, "congruence level kappa >= 1");
    };

    CLI::App* psiCmd = app.add_subcommand("psi", "Rademacher Psi of a hyperbolic matrix");
    psiCmd->add_option("--matrix,-m", matrixText, "entries as 'a,b;c,d'")->required();
    addJson(psiCmd);

    CLI::App* unitCmd = app.add_subcommand("unit", "fundamental and kappa-congruence units");
    unitCmd->add_option("--disc,--D,-D", D, "fundamental discriminant > 1")->required();
    unitCmd->add_option("--kappa,-k", kappa, "congruence level kappa >= 1");
    addJson(unitCmd);

    CLI::App* thetaCmd = app.add_subcommand("theta", "q-expansion of the theta form");
    addInstance(thetaCmd);
    thetaCmd->add_option("--prec,--precision,-X", precisionText, "expansion cutoff X (default 6)");
    addJson(thetaCmd);

    CLI::App* normCmd = app.add_subcommand("norm", "closed-form Petersson norm");
    addInstance(normCmd);
    addJson(normCmd);

    CLI::App* verifyCmd = app.add_subcommand("verify", "cross-check the closed form");
    addInstance(verifyCmd);
    verifyCmd->add_option("--prec,--precision,-X", precisionText, "quadrature expansion cutoff");
    verifyCmd->add_option("--tol", qcfg.normTolerance, "norm comparison tolerance");
    verifyCmd->add_option("--threads", qcfg.threads, "quadrature worker threads");
    verifyCmd->add_option("--v-max", qcfg.vMax, "vertical cutoff of the truncated domain");
    verifyCmd->add_option("--nodes", qcfg.gaussNodes, "cycle integral nodes per segment");
    addJson(verifyCmd);

    CLI::App* batchCmd = app.add_subcommand("batch", "CSV sweep over discriminants");
    batchCmd->add_option("--dmax,--max-D", maxD, "largest discriminant to include");
    batchCmd->add_option("--kmax,--max-kappa", maxKappa, "largest kappa to include (default 3)");
    batchCmd->add_option("--out,-o", outPath, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*psiCmd) {
            IntMatrix2 g = parse_matrix(matrixText);
            PsiBreakdown b = psi_detailed(g);
            if (asJson) {
                Json j;
                j["matrix"] = matrix_to_json(g);
                j["psi"] = b.value.str();
                j["tracePart"] = rat_to_string(b.tracePart);
                j["dedekindPart"] = rat_to_string(b.dedekindPart);
                j["signPart"] = rat_to_string(b.signPart);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "Psi = " << b.value.str() << "\n"
                          << "  trace part    : " << rat_to_string(b.tracePart) << "\n"
                          << "  Dedekind part : " << rat_to_string(b.dedekindPart) << "\n"
                          << "  sign part     : " << rat_to_string(b.signPart) << "\n";
            }
            return 0;
        }

        if (*unitCmd) {
            FieldContext ctx = make_context(D);
            UnitRecord fund = fundamental_unit(ctx);
            UnitRecord eps = epsilon_kappa(ctx, kappa);
            if (asJson) {
                Json j;
                j["D"] = D;
                j["kappa"] = kappa;
                j["fundamental"] = unit_to_json(fund);
                j["epsilonKappa"] = unit_to_json(eps);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "fundamental unit : " << quadnum_to_string(fund.value)
                          << "  (norm " << fund.normSign << ")\n"
                          << "epsilon_kappa    : " << quadnum_to_string(eps.value)
                          << "  (power index " << eps.powerIndex.str() << ")\n";
            }
            return 0;
        }

        FieldContext ctx = *batchCmd ? FieldContext{} : make_context(D);

        if (*thetaCmd) {
            Rat X = precisionText.empty() ? default_precision() : parse_rat(precisionText);
            HeckeLattice H = make_hecke_lattice(ctx, parse_ideal(ctx, idealText), kappa);
            ThetaExpansion th = theta_expansion(H, X);
            if (asJson)
                std::cout << theta_to_json(th).dump(2) << "\n";
            else
                print_theta(th);
            return 0;
        }

        if (*normCmd) {
            NormReport r = closed_form_norm(make_hecke_lattice(ctx, parse_ideal(ctx, idealText), kappa));
            if (asJson)
                std::cout << report_to_json(r).dump(2) << "\n";
            else
                print_report(r);
            return 0;
        }

        if (*verifyCmd) {
            if (!precisionText.empty()) qcfg.thetaX = parse_rat(precisionText);
            else qcfg.thetaX = default_precision();
            HeckeLattice H = make_hecke_lattice(ctx, parse_ideal(ctx, idealText), kappa);
            VerifyReport v = verify(H, qcfg);
            if (asJson) {
                std::cout << verify_to_json(v).dump(2) << "\n";
            } else {
                print_report(v.closedForm);
                std::cout << "cycle residuals  : " << detail::real_to_string(v.cycleResidual0)
                          << ", " << detail::real_to_string(v.cycleResidual1) << "\n"
                          << "quadrature       : " << detail::real_to_string(v.quadrature.value)
                          << " +/- " << detail::real_to_string(v.quadrature.errorBound) << "\n"
                          << "norm residual    : " << detail::real_to_string(v.normResidual) << "\n"
                          << "verdict          : " << (v.pass ? "PASS" : "FAIL") << "\n";
            }
            return v.pass ? 0 : 2;
        }

        // batch
        BatchOptions opt;
        opt.maxD = maxD;
        opt.maxKappa = maxKappa;
        std::string csv = batch_csv(batch_norms(opt));
        if (outPath.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(outPath);
            if (!out) fail(errc::parse_error, "cannot open '" + outPath + "' for writing");
            out << csv;
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
