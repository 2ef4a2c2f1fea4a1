// Batch driver: verification suites, homology tables, cocycle conversion.
//
// Exit codes: 0 = all selected identities hold, 1 = an identity failed,
// 2 = usage or input error.

#include "paracyc/builders.hpp"
#include "paracyc/comparison.hpp"
#include "paracyc/errors.hpp"
#include "paracyc/homology.hpp"
#include "paracyc/io.hpp"
#include "paracyc/zoo.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace paracyc;

namespace {

struct RunConfig {
    std::string example;
    std::string structure_path;
    int max_degree = 8;
    std::string suite = "all";
    std::string theory = "cyclic";
    std::string input;
    std::string output;
    std::string format = "text";
};

CyclicStructure load_structure(const RunConfig& cfg) {
    if (!cfg.structure_path.empty()) {
        CyclicStructure cs = read_structure_json(cfg.structure_path);
        if (cs.C.window != cfg.max_degree && cfg.max_degree != 8)
            std::cerr << "note: structure file fixes the degree window to "
                      << cs.C.window << "\n";
        return cs;
    }
    return zoo(cfg.example, cfg.max_degree);
}

void emit(const RunConfig& cfg, const std::string& text, const std::string& json,
          const std::string& csv) {
    const std::string& body =
        cfg.format == "json" ? json : (cfg.format == "csv" ? csv : text);
    if (cfg.output.empty()) {
        std::cout << body;
        if (!body.empty() && body.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(cfg.output);
        if (!out) throw IoError("cannot write '" + cfg.output + "'");
        out << body;
    }
}

ValidationReport run_suites(const CyclicStructure& cs, const std::string& suite) {
    ValidationReport all(cs.name);
    bool everything = suite == "all";

    if (everything || suite == "axioms") {
        all.merge(validate(cs));
        DerivedOps ops = derive_operators(cs);
        all.merge(check_derived_identities(cs, ops));
    }
    if (everything || suite == "para-s") {
        NaturalComplex nat = build_natural(cs);
        all.merge(nat.cert);
        DoubleNaturalComplex nn = build_double_natural(cs);
        all.merge(nn.cert);
        DerivedOps ops = derive_operators(cs);
        if (ops.sprime) {
            HomotopyChangeIso iso = homotopy_change_iso(cs, *ops.sprime);
            all.merge(iso.cert);
        }
        int r = cyclic_order_of_T(ops.T);
        if (r > 0) {
            QuasiSplitting sp = quasi_split(ops.T, averaging_polynomial(r));
            all.merge(sp.cert);
            QuasiMixedPack qp = quasi_mixed_pack(cs, ops, sp, nat, nn);
            all.merge(qp.cert);
        }
    }
    if (everything || suite == "perturbation" || suite == "retracts" ||
        suite == "periodicity" || suite == "cocycle") {
        ComparisonContext ctx = make_context(cs);
        IJhPack ijh = build_IJh(ctx);
        if (everything || suite == "perturbation") all.merge(ijh.cert);
        NuNNPack nunn = build_nu_nn(ctx);
        if (everything || suite == "perturbation") all.merge(nunn.cert);
        NuNPack nun = build_nu_n(ctx, ijh, nunn);
        std::optional<QuasiSplitting> split;
        std::optional<QuasiMixedPack> pack;
        int r = cyclic_order_of_T(ctx.ops.T);
        if (r > 0) {
            split = quasi_split(ctx.ops.T, averaging_polynomial(r));
            pack = quasi_mixed_pack(ctx.cs, ctx.ops, *split, ctx.nat, ctx.nn);
        }
        LambdaRetracts lr = build_lambda_retracts(ctx, ijh, nunn, nun, split, pack);
        if (everything || suite == "retracts") {
            all.merge(nun.cert);
            all.merge(lr.cert);
        }
        if (everything || suite == "periodicity") {
            PeriodicityPack per = periodicity_S(ctx, ijh, nunn, nun, lr);
            all.merge(per.cert);
            all.merge(check_quotient_face_identity(ctx));
            // certificate for a degree-2 cycle
            SparseMat ker = kernel_basis(ctx.ops.b.block(2));
            if (ker.rows() > 0) {
                BSCertificate bs =
                    connes_BS_check(ctx, lr, per, 2, dense_row(ker, 0));
                all.merge(bs.cert);
            }
        }
        if (everything || suite == "cocycle") {
            // deterministic cocycle from the kernel of the coboundary
            int m = 2;
            const GradedMap& d = lr.ctxT.nat.psm.d;
            SparseMat ker = kernel_basis(d.block(m + 1).transpose());
            if (ker.rows() > 0) {
                Vec w = dense_row(ker, 0);
                Cochain phi;
                phi.degree = m;
                const SlotModule& Sn = lr.ctxT.nat.slots;
                for (int jj = 0; 2 * jj <= m; ++jj) {
                    long off = Sn.offset(m, jj);
                    Vec comp(lr.sq.sub.C.rank(m - 2 * jj));
                    for (size_t i = 0; i < comp.size(); ++i) comp[i] = w[off + i];
                    phi.comps.push_back(std::move(comp));
                }
                CocycleConversion cc = convert_cocycle(ctx, lr, phi);
                all.merge(cc.cert);
            }
        }
    }
    return all;
}

int cmd_verify(const RunConfig& cfg) {
    CyclicStructure cs = load_structure(cfg);
    ValidationReport rep = run_suites(cs, cfg.suite);
    emit(cfg, rep.to_text(), report_to_json(rep), report_to_csv(rep));
    return rep.all_ok() ? 0 : 1;
}

int cmd_homology(const RunConfig& cfg) {
    // one extra window degree so the ranks reach max_degree itself
    RunConfig wide = cfg;
    wide.max_degree = cfg.max_degree + 1;
    CyclicStructure cs = load_structure(wide);
    DerivedOps ops = derive_operators(cs);
    StructureQuotient sq = build_quotient_T(cs, ops);

    std::optional<ComplexHandle> handle;
    if (cfg.theory == "hochschild") {
        DerivedOps qops = derive_operators(sq.sub);
        handle.emplace("hochschild", qops.b);
    } else if (cfg.theory == "cyclic") {
        handle.emplace("cyclic", build_natural(sq.sub).psm.d);
    } else if (cfg.theory == "lambda") {
        handle.emplace("lambda", build_lambda(cs).b);
    } else if (cfg.theory == "cc") {
        handle.emplace("cc", build_double_natural(sq.sub).psm.d);
    } else {
        throw UnknownExample("unknown theory '" + cfg.theory + "'");
    }

    std::vector<ComplexHandle> handles;
    handles.push_back(std::move(*handle));
    AgreementReport ar = agreement_report(handles, cfg.max_degree);
    emit(cfg, ar.to_text(), agreement_to_json(ar), agreement_to_csv(ar));
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    CyclicStructure cs = load_structure(cfg);
    DerivedOps ops = derive_operators(cs);
    StructureQuotient sq = build_quotient_T(cs, ops);
    std::vector<ComplexHandle> handles;
    handles.emplace_back("lambda", build_lambda(cs).b);
    handles.emplace_back("cyclic-type", build_natural(sq.sub).psm.d);
    handles.emplace_back("bicomplex-type", build_double_natural(sq.sub).psm.d);
    AgreementReport ar = agreement_report(handles, cs.C.window - 2);
    emit(cfg, ar.to_text(), agreement_to_json(ar), agreement_to_csv(ar));
    return ar.all_equal ? 0 : 1;
}

int cmd_convert_cocycle(const RunConfig& cfg) {
    if (cfg.input.empty()) throw IoError("convert-cocycle needs --input");
    Cochain phi = read_cocycle_json(cfg.input);
    CyclicStructure cs = load_structure(cfg);
    ComparisonContext ctx = make_context(cs);
    IJhPack ijh = build_IJh(ctx);
    NuNNPack nunn = build_nu_nn(ctx);
    NuNPack nun = build_nu_n(ctx, ijh, nunn);
    std::optional<QuasiSplitting> split;
    std::optional<QuasiMixedPack> pack;
    int r = cyclic_order_of_T(ctx.ops.T);
    if (r > 0) {
        split = quasi_split(ctx.ops.T, averaging_polynomial(r));
        pack = quasi_mixed_pack(ctx.cs, ctx.ops, *split, ctx.nat, ctx.nn);
    }
    LambdaRetracts lr = build_lambda_retracts(ctx, ijh, nunn, nun, split, pack);
    CocycleConversion cc = convert_cocycle(ctx, lr, phi);
    std::string json = conversion_to_json(phi, cc);
    std::ostringstream text;
    text << "cyclic cocycle:";
    for (const Rat& v : cc.cyclic) text << " " << rat_str(v);
    text << "\n" << cc.cert.to_text();
    emit(cfg, text.str(), json, json);
    return cc.cert.all_ok() ? 0 : 1;
}

int cmd_perturb_demo(const RunConfig& cfg) {
    CyclicStructure cs = load_structure(cfg);
    ComparisonContext ctx = make_context(cs);
    IJhPack ijh = build_IJh(ctx);
    std::ostringstream text;
    text << "perturbing the column contraction of the bicomplex-type object\n"
         << "onto the cyclic-type object switches on the degree +1 operator:\n"
         << ijh.cert.to_text();
    emit(cfg, text.str(), report_to_json(ijh.cert), report_to_csv(ijh.cert));
    return ijh.cert.all_ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification suite for cyclic-type operator calculus"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("PARACYC_MAX_DEGREE")) cfg.max_degree = std::atoi(env);

    auto add_common = [&](CLI::App* cmd, bool with_suite) {
        cmd->add_option("--example", cfg.example, "zoo structure name");
        cmd->add_option("--structure", cfg.structure_path, "structure JSON file");
        cmd->add_option("--max-degree", cfg.max_degree, "degree window (>= 2)");
        cmd->add_option("--format", cfg.format, "text | json | csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--output", cfg.output, "write the report to a file");
        if (with_suite)
            cmd->add_option("--suite", cfg.suite,
                            "axioms | para-s | perturbation | retracts | "
                            "periodicity | cocycle | all")
                ->check(CLI::IsMember({"axioms", "para-s", "perturbation",
                                       "retracts", "periodicity", "cocycle",
                                       "all"}));
    };

    CLI::App* verify = app.add_subcommand("verify", "run identity suites");
    add_common(verify, true);
    CLI::App* homology = app.add_subcommand("homology", "exact homology ranks");
    add_common(homology, false);
    homology->add_option("--theory", cfg.theory, "hochschild | cyclic | lambda | cc")
        ->check(CLI::IsMember({"hochschild", "cyclic", "lambda", "cc"}));
    CLI::App* compare =
        app.add_subcommand("compare", "rank agreement across the three theories");
    add_common(compare, false);
    CLI::App* convert =
        app.add_subcommand("convert-cocycle", "turn a cocycle into a cyclic one");
    add_common(convert, false);
    convert->add_option("--input", cfg.input, "cocycle JSON file");
    CLI::App* demo = app.add_subcommand("perturb-demo",
                                        "closed forms of the perturbed column "
                                        "contraction");
    add_common(demo, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (cfg.example.empty() && cfg.structure_path.empty())
            throw UnknownExample("pass --example or --structure");
        if (!cfg.example.empty() && !cfg.structure_path.empty())
            throw UnknownExample("--example and --structure are exclusive");
        if (cfg.max_degree < 2)
            throw PreconditionFailed("--max-degree must be at least 2");

        if (verify->parsed()) return cmd_verify(cfg);
        if (homology->parsed()) return cmd_homology(cfg);
        if (compare->parsed()) return cmd_compare(cfg);
        if (convert->parsed()) return cmd_convert_cocycle(cfg);
        if (demo->parsed()) return cmd_perturb_demo(cfg);
    } catch (const UnknownExample& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
