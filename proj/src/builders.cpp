#include "paracyc/builders.hpp"

#include "paracyc/errors.hpp"
#include "paracyc/zoo.hpp"

#include <cassert>

namespace paracyc {

namespace {

void place(SparseMat& M, long roff, long coff, const SparseMat& blk) {
    for (int i = 0; i < blk.rows(); ++i)
        for (const auto& [j, v] : blk.row(i))
            M.set(static_cast<int>(roff) + i, static_cast<int>(coff) + j, v);
}

} // namespace

NaturalComplex build_natural(const GradedModule& C, const GradedMap& b, const GradedMap& B,
                             const std::optional<GradedMap>& T, const std::string& name) {
    NaturalComplex nc;
    nc.cert = ValidationReport(name);
    nc.b = b;
    nc.B = B;

    // parachain axioms
    {
        ValidationReport ax("parachain axioms");
        ax.check_zero("b^2 = 0", b * b);
        ax.check_zero("B^2 = 0", B * B);
        GradedMap Tcomputed = GradedMap::identity(C).restricted(0, C.window - 1) -
                              anticommutator(b, B);
        if (T) {
            ax.check_equal("T = 1 - (bB + Bb)", *T, Tcomputed);
            nc.T_base = *T;
        } else {
            nc.T_base = Tcomputed;
        }
        bool invertible = true;
        for (int m = nc.T_base.lo(); m <= nc.T_base.hi(); ++m)
            invertible = invertible && rank(nc.T_base.block(m)) == C.rank(m);
        ax.check_true("T invertible", invertible);
        if (!ax.all_ok())
            throw NotParachain(name + ": parachain axioms failed:\n" + ax.to_text());
        nc.cert.merge(ax);
    }
    nc.Tinv_base = gm_inverse(nc.T_base);

    nc.slots = SlotModule::make(C, 2);
    const SlotModule& S = nc.slots;
    GradedMap d = GradedMap::build(S.total, S.total, -1, 0, C.window, [&](int m) {
        SparseMat blk(static_cast<int>(S.total.rank(m - 1)),
                      static_cast<int>(S.total.rank(m)));
        for (int p = 0; p <= m / 2; ++p) {
            int q = S.qof(m, p);
            if (q >= 1) place(blk, S.offset(m - 1, p), S.offset(m, p), b.block(q));
            if (p >= 1) place(blk, S.offset(m - 1, p - 1), S.offset(m, p), B.block(q));
        }
        return blk;
    });

    nc.psm.name = name;
    nc.psm.C = S.total;
    nc.psm.d = d;
    nc.psm.S = S.u_inv(1);
    nc.psm.T = S.lift(nc.T_base);
    nc.psm.Tinv = S.lift(nc.Tinv_base);
    nc.cert.merge(check_para_s(nc.psm));
    return nc;
}

NaturalComplex build_natural(const CyclicStructure& cs) {
    DerivedOps ops = derive_operators(cs);
    if (!ops.B)
        throw MissingHomotopy(cs.name +
                              ": the total object needs degeneracies or a contracting homotopy");
    return build_natural(cs.C, ops.b, *ops.B, ops.T, cs.name + "-natural");
}

DoubleNaturalComplex build_double_natural(const CyclicStructure& cs) {
    DerivedOps ops = derive_operators(cs);
    DoubleNaturalComplex dn;
    dn.cert = ValidationReport(cs.name + "-double");
    dn.slots = SlotModule::make(cs.C, 1);
    dn.tau = ops.tau;
    dn.Nop = ops.Nop;
    const SlotModule& S = dn.slots;
    const GradedModule& C = cs.C;
    GradedMap one = GradedMap::identity(C);
    GradedMap oneMinusTau = one - ops.tau;

    dn.dl = GradedMap::build(S.total, S.total, -1, 0, C.window, [&](int m) {
        SparseMat blk(static_cast<int>(S.total.rank(m - 1)),
                      static_cast<int>(S.total.rank(m)));
        for (int p = 1; p <= m; ++p) {
            int q = S.qof(m, p);
            const GradedMap& f = (p % 2 == 1) ? oneMinusTau : ops.Nop;
            place(blk, S.offset(m - 1, p - 1), S.offset(m, p), f.block(q));
        }
        return blk;
    });
    dn.delta = GradedMap::build(S.total, S.total, -1, 0, C.window, [&](int m) {
        SparseMat blk(static_cast<int>(S.total.rank(m - 1)),
                      static_cast<int>(S.total.rank(m)));
        for (int p = 0; p <= m; ++p) {
            int q = S.qof(m, p);
            if (q < 1) continue;
            if (p % 2 == 0)
                place(blk, S.offset(m - 1, p), S.offset(m, p), ops.b.block(q));
            else
                place(blk, S.offset(m - 1, p), S.offset(m, p), -ops.bp.block(q));
        }
        return blk;
    });

    GradedMap u2 = S.u_inv(2);
    GradedMap Tlift = S.lift(ops.T);
    dn.cert.check_equal("dl^2 = (1 - T) u^{-2}", dn.dl * dn.dl,
                        (GradedMap::identity(S.total) - Tlift) * u2);
    dn.cert.check_zero("delta^2 = 0", dn.delta * dn.delta);
    dn.cert.check_zero("dl delta + delta dl = 0", anticommutator(dn.dl, dn.delta));

    dn.psm.name = cs.name + "-double";
    dn.psm.C = S.total;
    dn.psm.d = dn.dl + dn.delta;
    dn.psm.S = u2;
    dn.psm.T = Tlift;
    dn.psm.Tinv = S.lift(ops.Tinv);
    dn.cert.merge(check_para_s(dn.psm));
    return dn;
}

LambdaComplex build_lambda(const CyclicStructure& cs) {
    DerivedOps ops = derive_operators(cs);
    LambdaComplex lc;
    lc.cert = ValidationReport(cs.name + "-lambda");
    const GradedModule& C = cs.C;
    GradedMap oneMinusTau = GradedMap::identity(C) - ops.tau;

    lc.quot.resize(C.window + 1);
    lc.ran_tau.resize(C.window + 1);
    lc.L.window = C.window;
    lc.L.ranks.assign(C.window + 1, 0);
    for (int m = 0; m <= C.window; ++m) {
        lc.ran_tau[m] =
            Subspace(static_cast<int>(C.rank(m)), image_basis(oneMinusTau.block(m)));
        lc.quot[m] = quotient_by(lc.ran_tau[m]);
        lc.L.ranks[m] = lc.quot[m].dim();
    }
    lc.pi = GradedMap::build(C, lc.L, 0, [&](int m) { return lc.quot[m].proj; });
    lc.incl = GradedMap::build(lc.L, C, 0, [&](int m) { return lc.quot[m].incl; });
    lc.b = lc.pi * ops.b * lc.incl;
    lc.cert.check_equal("b descends to the quotient", lc.pi * ops.b, lc.b * lc.pi);
    lc.cert.check_zero("b^2 = 0 on the quotient", lc.b * lc.b);
    return lc;
}

StructureQuotient build_quotient_T(const CyclicStructure& cs, const DerivedOps& ops) {
    StructureQuotient sq;
    sq.cert = ValidationReport(cs.name + "-T-quotient");
    const GradedModule& C = cs.C;
    GradedMap oneMinusT = GradedMap::identity(C) - ops.T;

    sq.quot.resize(C.window + 1);
    sq.ranT.resize(C.window + 1);
    GradedModule CT;
    CT.window = C.window;
    CT.ranks.assign(C.window + 1, 0);
    for (int m = 0; m <= C.window; ++m) {
        sq.ranT[m] =
            Subspace(static_cast<int>(C.rank(m)), image_basis(oneMinusT.block(m)));
        sq.quot[m] = quotient_by(sq.ranT[m]);
        CT.ranks[m] = sq.quot[m].dim();
    }
    sq.pi = GradedMap::build(C, CT, 0, [&](int m) { return sq.quot[m].proj; });
    sq.incl = GradedMap::build(CT, C, 0, [&](int m) { return sq.quot[m].incl; });

    auto descend_block = [&](const SparseMat& A, int msrc, int mtgt,
                             const std::string& nm) {
        // certificate: A maps ran(1-T)_msrc into ran(1-T)_mtgt
        const SparseMat& basis = sq.ranT[msrc].basis();
        for (int i = 0; i < basis.rows(); ++i) {
            Vec v = A.apply(dense_row(basis, i));
            if (!sq.ranT[mtgt].contains(v)) {
                sq.cert.check_true(nm + " descends", false,
                                   "degree " + std::to_string(msrc));
                throw DescentObstruction(nm + " does not preserve ran(1-T) at degree " +
                                         std::to_string(msrc));
            }
        }
        return sq.quot[mtgt].proj * A * sq.quot[msrc].incl;
    };

    sq.sub.name = cs.name + "_T";
    sq.sub.C = CT;
    sq.sub.faces.resize(C.window + 1);
    sq.sub.t.resize(C.window + 1);
    for (int m = 0; m <= C.window; ++m) {
        sq.sub.faces[m].reserve(m + 1);
        for (int i = 0; i <= m; ++i) {
            if (m == 0)
                sq.sub.faces[m].push_back(SparseMat(0, static_cast<int>(CT.rank(0))));
            else
                sq.sub.faces[m].push_back(descend_block(cs.faces[m][i], m, m - 1, "d_i"));
        }
        sq.sub.t[m] = descend_block(cs.t[m], m, m, "t");
    }
    if (cs.degens) {
        sq.sub.degens.emplace(C.window);
        for (int m = 0; m + 1 <= C.window; ++m) {
            (*sq.sub.degens)[m].reserve(m + 1);
            for (int j = 0; j <= m; ++j)
                (*sq.sub.degens)[m].push_back(
                    descend_block((*cs.degens)[m][j], m, m + 1, "s_j"));
        }
    }
    if (cs.homotopy_s) {
        sq.sub.homotopy_s.emplace(C.window);
        for (int m = 0; m + 1 <= C.window; ++m)
            (*sq.sub.homotopy_s)[m] = descend_block((*cs.homotopy_s)[m], m, m + 1, "s");
    }
    sq.cert.check_true("all structural operators descend", true);
    return sq;
}

StructureRestriction build_invariants_T(const CyclicStructure& cs, const DerivedOps& ops) {
    StructureRestriction sr;
    sr.cert = ValidationReport(cs.name + "-T-invariants");
    const GradedModule& C = cs.C;
    GradedMap oneMinusT = GradedMap::identity(C) - ops.T;

    sr.kerT.resize(C.window + 1);
    GradedModule K;
    K.window = C.window;
    K.ranks.assign(C.window + 1, 0);
    for (int m = 0; m <= C.window; ++m) {
        sr.kerT[m] =
            Subspace(static_cast<int>(C.rank(m)), kernel_basis(oneMinusT.block(m)));
        K.ranks[m] = sr.kerT[m].dim();
    }
    sr.incl = GradedMap::build(K, C, 0,
                               [&](int m) { return sr.kerT[m].basis().transpose(); });

    auto restrict_block = [&](const SparseMat& A, int msrc, int mtgt,
                              const std::string& nm) {
        const SparseMat src_basis = sr.kerT[msrc].basis();
        SparseMat out(static_cast<int>(K.rank(mtgt)), static_cast<int>(K.rank(msrc)));
        for (int i = 0; i < src_basis.rows(); ++i) {
            Vec v = A.apply(dense_row(src_basis, i));
            auto coords = sr.kerT[mtgt].coordinates(v);
            if (!coords)
                throw DescentObstruction(nm + " does not preserve ker(1-T) at degree " +
                                         std::to_string(msrc));
            for (int k = 0; k < out.rows(); ++k) out.set(k, i, (*coords)[k]);
        }
        return out;
    };

    sr.sub.name = cs.name + "^T";
    sr.sub.C = K;
    sr.sub.faces.resize(C.window + 1);
    sr.sub.t.resize(C.window + 1);
    for (int m = 0; m <= C.window; ++m) {
        for (int i = 0; i <= m; ++i) {
            if (m == 0)
                sr.sub.faces[m].push_back(SparseMat(0, static_cast<int>(K.rank(0))));
            else
                sr.sub.faces[m].push_back(restrict_block(cs.faces[m][i], m, m - 1, "d_i"));
        }
        sr.sub.t[m] = restrict_block(cs.t[m], m, m, "t");
    }
    if (cs.degens) {
        sr.sub.degens.emplace(C.window);
        for (int m = 0; m + 1 <= C.window; ++m)
            for (int j = 0; j <= m; ++j)
                (*sr.sub.degens)[m].push_back(
                    restrict_block((*cs.degens)[m][j], m, m + 1, "s_j"));
    }
    if (cs.homotopy_s) {
        sr.sub.homotopy_s.emplace(C.window);
        for (int m = 0; m + 1 <= C.window; ++m)
            (*sr.sub.homotopy_s)[m] = restrict_block((*cs.homotopy_s)[m], m, m + 1, "s");
    }
    sr.cert.check_true("all structural operators restrict", true);
    return sr;
}

QuasiMixedPack quasi_mixed_pack(const CyclicStructure& cs, const DerivedOps& ops,
                                const QuasiSplitting& split, const NaturalComplex& nat,
                                const DoubleNaturalComplex& nn) {
    if (!ops.B) throw MissingHomotopy(cs.name + ": no B operator");
    QuasiMixedPack qp;
    qp.cert = ValidationReport(cs.name + " quasi pack");
    const GradedModule& C = cs.C;
    const GradedMap& B = *ops.B;
    GradedMap one = GradedMap::identity(C);

    qp.beta = split.G * B;
    qp.cert.check_equal("beta = B (1-T)^{-1} = (1-T)^{-1} B", qp.beta, B * split.G);
    qp.cert.check_equal("b beta + beta b = 1 on ran(1-T)",
                        anticommutator(ops.b, qp.beta) * split.inclR,
                        split.inclR.restricted(0, C.window - 1));
    qp.cert.check_zero("B beta = 0", B * qp.beta);
    qp.cert.check_zero("beta B = 0", qp.beta * B);

    qp.h = -(qp.beta * (one - split.piT));
    qp.cert.check_equal("h = -beta (1 - piT) = -beta", qp.h, -qp.beta);
    qp.cert.check_zero("h^2 = 0", qp.h * qp.h);
    qp.cert.check_zero("piT h = 0", split.piT * qp.h);
    qp.cert.check_zero("h piT = 0", qp.h * split.piT);

    qp.Btilde = split.piT * B;
    qp.cert.check_equal("piT B = B piT", split.piT * B, B * split.piT);
    qp.cert.check_zero("b Btilde + Btilde b = 0", anticommutator(ops.b, qp.Btilde));
    qp.cert.check_zero("Btilde^2 = 0", qp.Btilde * qp.Btilde);

    // the two total-object differentials are intertwined by piT, with the
    // same homotopy h on both sides
    {
        const SlotModule& S = nat.slots;
        GradedMap piT_nat = S.lift(split.piT);
        GradedMap h_nat = S.lift(qp.h);
        NaturalComplex tilde = build_natural(C, ops.b, qp.Btilde, std::nullopt,
                                             cs.name + "-natural-tilde");
        qp.cert.check_equal("piT intertwines b + B u^{-1} and b + Btilde u^{-1}",
                            tilde.psm.d * piT_nat, piT_nat * nat.psm.d);
        GradedMap oneTot = GradedMap::identity(S.total);
        qp.cert.check_equal("piT = 1 + (b + Bu^{-1}) h + h (b + Bu^{-1})", piT_nat,
                            oneTot + anticommutator(nat.psm.d, h_nat));
        qp.cert.check_equal("piT = 1 + (b + Btilde u^{-1}) h + h (b + Btilde u^{-1})",
                            piT_nat, oneTot + anticommutator(tilde.psm.d, h_nat));
        qp.cert.check_zero("B h = 0", B * qp.h);
        qp.cert.check_zero("h B = 0", qp.h * B);
    }

    // bicomplex with the averaged N-operator
    qp.Ntilde = ops.Nop * split.piT;
    qp.cert.check_equal("N piT = piT N", ops.Nop * split.piT, split.piT * ops.Nop);
    {
        const SlotModule& S = nn.slots;
        GradedMap oneMinusTau = one - ops.tau;
        qp.dl_tilde =
            GradedMap::build(S.total, S.total, -1, 0, C.window, [&](int m) {
                SparseMat blk(static_cast<int>(S.total.rank(m - 1)),
                              static_cast<int>(S.total.rank(m)));
                for (int p = 1; p <= m; ++p) {
                    int q = S.qof(m, p);
                    const GradedMap& f = (p % 2 == 1) ? oneMinusTau : qp.Ntilde;
                    place(blk, S.offset(m - 1, p - 1), S.offset(m, p), f.block(q));
                }
                return blk;
            });
        qp.cert.check_zero("dl-tilde^2 = 0", qp.dl_tilde * qp.dl_tilde);
        qp.cert.check_zero("dl-tilde delta + delta dl-tilde = 0",
                           anticommutator(qp.dl_tilde, nn.delta));
        GradedMap dtot = qp.dl_tilde + nn.delta;
        qp.cert.check_zero("(dl-tilde + delta)^2 = 0", dtot * dtot);

        // r-cyclic input: r Ntilde is the full averaged cyclic sum
        int r = cyclic_order_of_T(ops.T);
        if (r > 0) {
            GradedMap sum = GradedMap::build(C, C, 0, [&](int m) {
                SparseMat acc(static_cast<int>(C.rank(m)), static_cast<int>(C.rank(m)));
                SparseMat pw = SparseMat::identity(static_cast<int>(C.rank(m)));
                for (int j = 0; j < r * (m + 1); ++j) {
                    acc = acc + pw;
                    pw = ops.tau.block(m) * pw;
                }
                return acc;
            });
            qp.cert.check_equal("r Ntilde = sum_{j<r(m+1)} tau^j", Rat(r) * qp.Ntilde,
                                sum);
        }

        // contracting homotopy of the range factor on the bicomplex level
        GradedMap NG = ops.Nop * split.G;
        qp.beta_nn = GradedMap::build(S.total, S.total, 1, 0, C.window - 1, [&](int m) {
            SparseMat blk(static_cast<int>(S.total.rank(m + 1)),
                          static_cast<int>(S.total.rank(m)));
            for (int p = 0; p <= m; p += 2) {
                int q = S.qof(m, p);
                place(blk, S.offset(m + 1, p + 1), S.offset(m, p), NG.block(q));
            }
            return blk;
        });
        qp.h_nn = -qp.beta_nn;
        SlotModule RTnn = SlotModule::make(split.RT, 1);
        GradedMap inclRnn = slot_lift(RTnn, S, split.inclR);
        GradedMap dlq = nn.dl;
        qp.cert.check_equal("dl beta + beta dl = 1 on the range factor",
                            anticommutator(dlq, qp.beta_nn) * inclRnn,
                            inclRnn.restricted(0, C.window - 1));
        qp.cert.check_zero("delta beta + beta delta = 0 on the range factor",
                           anticommutator(nn.delta, qp.beta_nn) * inclRnn);
        GradedMap piT_nn = S.lift(split.piT);
        qp.cert.check_equal("piT = 1 + (dl + delta) h + h (dl + delta)", piT_nn,
                            GradedMap::identity(S.total) +
                                anticommutator(nn.psm.d, qp.h_nn));
        qp.cert.check_zero("h^2 = 0 (bicomplex level)", qp.h_nn * qp.h_nn);
        qp.cert.check_zero("piT h = 0 (bicomplex level)", piT_nn * qp.h_nn);
        qp.cert.check_zero("h piT = 0 (bicomplex level)", qp.h_nn * piT_nn);
        // range containment: h lands in the odd-column range factor
        GradedMap even_proj = GradedMap::build(S.total, S.total, 0, [&](int m) {
            SparseMat blk(static_cast<int>(S.total.rank(m)),
                          static_cast<int>(S.total.rank(m)));
            for (int p = 0; p <= m; p += 2) {
                int q = S.qof(m, p);
                for (int j = 0; j < C.rank(q); ++j) {
                    long off = S.offset(m, p);
                    blk.set(static_cast<int>(off) + j, static_cast<int>(off) + j, Rat(1));
                }
            }
            return blk;
        });
        qp.cert.check_zero("range of h avoids even columns", even_proj * qp.h_nn);
        qp.cert.check_zero("range of h lies in the range factor", piT_nn * qp.h_nn);
    }
    return qp;
}

HomotopyChangeIso homotopy_change_iso(const CyclicStructure& cs, const GradedMap& s_alt) {
    DerivedOps ops = derive_operators(cs);
    if (!ops.sprime) throw MissingHomotopy(cs.name + ": no contracting homotopy");
    const GradedModule& C = cs.C;
    GradedMap one = GradedMap::identity(C);

    if (!equals(anticommutator(ops.bp, s_alt), one.restricted(0, C.window - 1)))
        throw HypothesisFailed("b' s_alt + s_alt b' != 1");
    if (!(s_alt * (one - ops.T) * s_alt).is_zero())
        throw HypothesisFailed("s_alt (1 - T) s_alt != 0");
    if (!commutator(ops.T, s_alt).is_zero())
        throw HypothesisFailed("[T, s_alt] != 0");

    HomotopyChangeIso iso;
    iso.cert = ValidationReport(cs.name + " homotopy change");

    GradedMap Bhat = GradedMap::build(C, C, 1, 0, C.window - 1, [&](int m) {
        return (SparseMat::identity(static_cast<int>(C.rank(m + 1))) -
                ops.tau.block(m + 1)) *
               s_alt.block(m) * ops.Nop.block(m);
    });
    NaturalComplex nat = build_natural(C, ops.b, *ops.B, ops.T, cs.name + "-natural");
    NaturalComplex nat_hat =
        build_natural(C, ops.b, Bhat, ops.T, cs.name + "-natural-hat");

    // K = (1-tau) s_alt s' N applied with one u-power drop; base degree +2
    GradedMap comp = GradedMap::build(C, C, 2, 0, C.window - 2, [&](int m) {
        return (SparseMat::identity(static_cast<int>(C.rank(m + 2))) -
                ops.tau.block(m + 2)) *
               s_alt.block(m + 1) * ops.sprime->block(m) * ops.Nop.block(m);
    });
    const SlotModule& S = nat.slots;
    GradedMap K = GradedMap::build(S.total, S.total, 0, 0, C.window, [&](int m) {
        SparseMat blk(static_cast<int>(S.total.rank(m)),
                      static_cast<int>(S.total.rank(m)));
        for (int p = 1; p <= m / 2; ++p) {
            int q = S.qof(m, p);
            place(blk, S.offset(m, p - 1), S.offset(m, p), comp.block(q));
        }
        return blk;
    });
    iso.f = GradedMap::identity(S.total) + K;
    // geometric series: K strictly lowers the u-filtration, so it is
    // nilpotent degreewise
    GradedMap acc = GradedMap::identity(S.total);
    GradedMap pw = acc;
    for (int j = 1; j <= C.window / 2 + 1; ++j) {
        pw = -(K * pw);
        acc = acc + pw;
    }
    iso.f_inv = acc;

    iso.cert.check_equal("f (b + B u^{-1}) = (b + Bhat u^{-1}) f", iso.f * nat.psm.d,
                         nat_hat.psm.d * iso.f);
    iso.cert.check_equal("f f^{-1} = 1", iso.f * iso.f_inv,
                         GradedMap::identity(S.total));
    iso.cert.check_equal("f^{-1} f = 1", iso.f_inv * iso.f,
                         GradedMap::identity(S.total));
    iso.cert.check_zero("[f, u^{-1}] = 0", commutator(iso.f, nat.psm.S));
    iso.cert.check_zero("[f, T] = 0", commutator(iso.f, nat.psm.T));
    return iso;
}

} // namespace paracyc
