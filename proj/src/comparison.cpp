#include "paracyc/comparison.hpp"

#include "paracyc/errors.hpp"

#include <cassert>

namespace paracyc {

namespace {

void place(SparseMat& M, long roff, long coff, const SparseMat& blk) {
    for (int i = 0; i < blk.rows(); ++i)
        for (const auto& [j, v] : blk.row(i))
            M.set(static_cast<int>(roff) + i, static_cast<int>(coff) + j, v);
}

// polynomial helpers over Rat, coefficients ascending
using Poly = std::vector<Rat>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

bool poly_eq(Poly a, Poly b) {
    size_t n = std::max(a.size(), b.size());
    a.resize(n, Rat(0));
    b.resize(n, Rat(0));
    return a == b;
}

} // namespace

HatOps build_hat_ops(const CyclicStructure& cs, const DerivedOps& ops) {
    const GradedModule& C = cs.C;
    HatOps h;
    h.cert = ValidationReport(cs.name + " averaged operators");

    h.hat = GradedMap::build(C, C, 0, [&](int m) {
        return frac(1, m + 1) * SparseMat::identity(static_cast<int>(C.rank(m)));
    });
    h.Nhat = ops.Nop * h.hat;
    h.Dhat = GradedMap::build(C, C, 0, [&](int m) {
        // D_m(tau) / (m+1) with D_m(X) = sum_{j<=m} (m-j) X^j
        SparseMat acc(static_cast<int>(C.rank(m)), static_cast<int>(C.rank(m)));
        SparseMat pw = SparseMat::identity(static_cast<int>(C.rank(m)));
        for (int j = 0; j <= m; ++j) {
            if (m - j != 0) acc = acc + Rat(m - j) * pw;
            if (j < m) pw = ops.tau.block(m) * pw;
        }
        return frac(1, m + 1) * acc;
    });
    h.bphat = GradedMap::build(C, C, -1, [&](int m) {
        if (m == 0) return SparseMat(0, static_cast<int>(C.rank(0)));
        return frac(1, m) * ops.bp.block(m);
    });
    h.xi = -(h.bphat * h.Dhat * ops.b);
    h.eta = -(h.Dhat * ops.b);

    GradedMap one = GradedMap::identity(C);
    h.cert.check_equal("Nhat + (1 - tau) Dhat = 1", h.Nhat + (one - ops.tau) * h.Dhat,
                       one);
    // polynomial identity N_m(X) - (m+1) = (X - 1) D_m(X)
    bool poly_ok = true;
    for (int m = 0; m <= C.window; ++m) {
        Poly Nm(m + 1, Rat(1));
        Poly Dm(std::max(m, 1), Rat(0));
        for (int j = 0; j < m; ++j) Dm[j] = Rat(m - j);
        Poly lhs = Nm;
        lhs[0] -= Rat(m + 1);
        poly_ok = poly_ok && poly_eq(lhs, poly_mul({Rat(-1), Rat(1)}, Dm));
    }
    h.cert.check_true("N_m(X) - (m+1) = (X-1) D_m(X) as polynomials", poly_ok);
    return h;
}

ComparisonContext make_context(const CyclicStructure& cs) {
    ComparisonContext ctx;
    ctx.cs = cs;
    ctx.ops = derive_operators(cs);
    ctx.nat = build_natural(cs);
    ctx.nn = build_double_natural(cs);
    ctx.lam = build_lambda(cs);
    ctx.hat = build_hat_ops(cs, ctx.ops);
    return ctx;
}

IJhPack build_IJh(const ComparisonContext& ctx) {
    const SlotModule& Sn = ctx.nat.slots;   // step 2
    const SlotModule& Snn = ctx.nn.slots;   // step 1
    const GradedModule& C = ctx.cs.C;
    const DerivedOps& ops = ctx.ops;
    const int M = C.window;
    if (!ops.sprime) throw MissingHomotopy(ctx.cs.name + ": no contracting homotopy");
    const GradedMap& sp = *ops.sprime;

    IJhPack p;
    p.cert = ValidationReport(ctx.cs.name + " I/J/h");

    p.I0 = GradedMap::build(Sn.total, Snn.total, 0, 0, M, [&](int m) {
        SparseMat blk(static_cast<int>(Snn.total.rank(m)),
                      static_cast<int>(Sn.total.rank(m)));
        for (int pp = 0; pp <= m / 2; ++pp)
            place(blk, Snn.offset(m, 2 * pp), Sn.offset(m, pp),
                  SparseMat::identity(static_cast<int>(C.rank(m - 2 * pp))));
        return blk;
    });
    p.J0 = GradedMap::build(Snn.total, Sn.total, 0, 0, M, [&](int m) {
        SparseMat blk(static_cast<int>(Sn.total.rank(m)),
                      static_cast<int>(Snn.total.rank(m)));
        for (int pp = 0; 2 * pp <= m; ++pp)
            place(blk, Sn.offset(m, pp), Snn.offset(m, 2 * pp),
                  SparseMat::identity(static_cast<int>(C.rank(m - 2 * pp))));
        return blk;
    });
    p.h = GradedMap::build(Snn.total, Snn.total, 1, 0, M - 1, [&](int m) {
        SparseMat blk(static_cast<int>(Snn.total.rank(m + 1)),
                      static_cast<int>(Snn.total.rank(m)));
        for (int pp = 1; pp <= m; pp += 2) {
            int q = m - pp;
            place(blk, Snn.offset(m + 1, pp), Snn.offset(m, pp), sp.block(q));
        }
        return blk;
    });

    // closed forms
    p.I = p.I0 + GradedMap::build(Sn.total, Snn.total, 0, 0, M, [&](int m) {
              SparseMat blk(static_cast<int>(Snn.total.rank(m)),
                            static_cast<int>(Sn.total.rank(m)));
              GradedMap spN = sp * ops.Nop;
              for (int pp = 1; pp <= m / 2; ++pp) {
                  int q = m - 2 * pp;
                  place(blk, Snn.offset(m, 2 * pp - 1), Sn.offset(m, pp), spN.block(q));
              }
              return blk;
          });
    GradedMap oneMinusTau = GradedMap::identity(C) - ops.tau;
    p.J = p.J0 + GradedMap::build(Snn.total, Sn.total, 0, 0, M, [&](int m) {
              SparseMat blk(static_cast<int>(Sn.total.rank(m)),
                            static_cast<int>(Snn.total.rank(m)));
              GradedMap ts = oneMinusTau * sp;
              for (int pp = 1; pp <= m; pp += 2) {
                  int q = m - pp;
                  place(blk, Sn.offset(m, (pp - 1) / 2), Snn.offset(m, pp), ts.block(q));
              }
              return blk;
          });

    // perturbation: contract the odd columns of the bicomplex object onto
    // the cyclic-type object, then switch on the cyclic part of the
    // differential
    ParaTwinComplex src{"bicomplex total", Snn.total, ctx.nn.delta, ctx.nn.dl};
    ParaTwinComplex tgt{"cyclic total", Sn.total, Sn.lift(ops.b),
                        slot_lift_drop(Sn, Sn, *ops.B, 1)};
    p.td = make_transference(src, tgt, p.J0, p.I0, p.h, M + 2);
    p.pd = perturb(p.td);
    p.cert.merge(verify_lemma_special(p.td, p.pd));
    // J0 I0 = 1 and J0 commutes with the Delta-operators, so the defect of
    // the transferred perturbation is the target Delta itself
    p.cert.check_equal("f Delta g = Delta on the target (one-sided inverse case)",
                       p.J0 * p.td.source.Delta() * p.I0, tgt.Delta());
    p.cert.check_equal("perturbed homotopy equals h", p.pd.phi_t, p.h);
    p.cert.check_equal("perturbed projection equals the closed form J", p.pd.f_t, p.J);
    p.cert.check_equal("perturbed embedding equals the closed form I", p.pd.g_t, p.I);
    p.cert.check_equal("transferred perturbation equals B u^{-1}", p.pd.delta_t,
                       tgt.delta);

    // the deformation retract and S-map properties
    GradedMap d_nn = ctx.nn.psm.d;
    p.cert.check_equal("J I = 1", p.J * p.I, GradedMap::identity(Sn.total));
    p.cert.check_equal("I J = 1 + (dl + delta) h + h (dl + delta)", p.I * p.J,
                       GradedMap::identity(Snn.total) + anticommutator(d_nn, p.h));
    p.cert.check_equal("I u^{-1} = u^{-2} I", p.I * ctx.nat.psm.S, ctx.nn.psm.S * p.I);
    p.cert.check_equal("J u^{-2} = u^{-1} J", p.J * ctx.nn.psm.S, ctx.nat.psm.S * p.J);
    p.cert.check_zero("[T, I] = 0", p.I * ctx.nat.psm.T - ctx.nn.psm.T * p.I);
    p.cert.check_zero("[T, J] = 0", p.J * ctx.nn.psm.T - ctx.nat.psm.T * p.J);
    p.cert.check_equal("I is a chain map", p.I * ctx.nat.psm.d, d_nn * p.I);
    p.cert.check_equal("J is a chain map", p.J * d_nn, ctx.nat.psm.d * p.J);
    p.cert.check_zero("J h = 0", p.J * p.h);
    p.cert.check_zero("h I = 0", p.h * p.I);
    p.cert.check_zero("h^2 = 0", p.h * p.h);
    p.cert.check_zero("[u^{-2}, h] = 0", commutator(ctx.nn.psm.S, p.h));
    p.cert.check_zero("[T, h] = 0", commutator(ctx.nn.psm.T, p.h));
    return p;
}

NuNNPack build_nu_nn(const ComparisonContext& ctx) {
    const SlotModule& Snn = ctx.nn.slots;
    const GradedModule& C = ctx.cs.C;
    const DerivedOps& ops = ctx.ops;
    const HatOps& hat = ctx.hat;
    const int M = C.window;

    NuNNPack p;
    p.cert = ValidationReport(ctx.cs.name + " bicomplex almost-inverse");

    p.nu = Snn.emb0() * hat.Nhat;
    p.phi9 = GradedMap::build(Snn.total, Snn.total, 1, 0, M - 1, [&](int m) {
        SparseMat blk(static_cast<int>(Snn.total.rank(m + 1)),
                      static_cast<int>(Snn.total.rank(m)));
        for (int pp = 0; pp <= m; ++pp) {
            int q = m - pp;
            if (pp % 2 == 0)
                place(blk, Snn.offset(m + 1, pp + 1), Snn.offset(m, pp),
                      -hat.Dhat.block(q));
            else
                place(blk, Snn.offset(m + 1, pp + 1), Snn.offset(m, pp),
                      -hat.hat.block(q));
        }
        return blk;
    });

    // starting data: nu contracts the cyclic part of the differential
    p.cert.check_zero("dl nu = 0", ctx.nn.dl * p.nu);
    p.cert.check_equal("pi0 nu = Nhat", ctx.pi0_nn() * p.nu, hat.Nhat);
    p.cert.check_equal("nu pi0 = 1 + dl phi + phi dl", p.nu * ctx.pi0_nn(),
                       GradedMap::identity(Snn.total) +
                           anticommutator(ctx.nn.dl, p.phi9));

    // how the slot-zero projections interact with the operators
    {
        GradedMap one_base = GradedMap::identity(ctx.cs.C);
        p.cert.check_equal("pi0 dl = (1 - tau) pi0 u^{-1}", ctx.pi0_nn() * ctx.nn.dl,
                           (one_base - ctx.ops.tau) * ctx.pi0_nn() *
                               Snn.u_inv(1));
        p.cert.check_equal("pi0 delta = b pi0", ctx.pi0_nn() * ctx.nn.delta,
                           ctx.ops.b * ctx.pi0_nn());
        p.cert.check_zero("pi dl = 0 on the quotient", ctx.pi_nn() * ctx.nn.dl);
        p.cert.check_equal("pi delta = b pi on the quotient",
                           ctx.pi_nn() * ctx.nn.delta, ctx.lam.b * ctx.pi_nn());
    }

    GradedModule Cm = C;
    ParaTwinComplex src{"bicomplex total", Snn.total, ctx.nn.dl, ctx.nn.delta};
    ParaTwinComplex tgt{"base", Cm, GradedMap::zero(Cm, Cm, -1), ops.b};
    p.td = make_transference(src, tgt, ctx.pi0_nn(), p.nu, p.phi9, M + 2);
    p.pd = perturb(p.td);
    p.cert.merge(verify_lemma_delta_zero(p.td, p.pd));

    p.nu0 = p.pd.g_t;
    p.phi_nn = p.pd.phi_t;
    {
        GradedMap one_base = GradedMap::identity(ctx.cs.C);
        p.cert.check_equal("transferred operator is b - (1 - tau) b' Dhat",
                           p.pd.delta_t,
                           ops.b - (one_base - ops.tau) * ops.bp * hat.Dhat);
    }
    p.mu = (GradedMap::identity(Snn.total) + p.phi_nn * ctx.nn.delta) * Snn.emb0() *
           hat.hat;

    GradedMap one = GradedMap::identity(C);
    GradedMap oneMinusTau = one - ops.tau;
    GradedMap oneMinusT_tot = GradedMap::identity(Snn.total) - ctx.nn.psm.T;
    GradedMap d_nn = ctx.nn.psm.d;

    p.cert.check_equal("nu0 = mu N", p.nu0, p.mu * ops.Nop);
    p.cert.check_equal("(dl + delta) nu0 = nu0 b - (1-T) mu b' Dhat", d_nn * p.nu0,
                       p.nu0 * ops.b - oneMinusT_tot * p.mu * ops.bp * hat.Dhat);
    p.cert.check_equal("pi0 nu0 = 1 - (1 - tau) Dhat", ctx.pi0_nn() * p.nu0,
                       one - oneMinusTau * hat.Dhat);
    p.cert.check_equal("nu0 pi0 = 1 + (dl + delta) phi + phi (dl + delta)",
                       p.nu0 * ctx.pi0_nn(),
                       GradedMap::identity(Snn.total) + anticommutator(d_nn, p.phi_nn));
    p.cert.check_equal("nu0 (1 - tau) = (1 - T) mu", p.nu0 * oneMinusTau,
                       oneMinusT_tot * p.mu);
    p.cert.check_zero("pi0 phi = 0", ctx.pi0_nn() * p.phi_nn);

    // closed forms: nu0 as the alternating staircase sum
    {
        GradedMap bdb = hat.bphat * hat.Dhat * ops.b;  // shift -2
        GradedMap term = hat.Nhat;                     // (bphat Dhat b)^j Nhat
        GradedMap closed = GradedMap::zero(C, Snn.total, 0);
        for (int j = 0; 2 * j <= M; ++j) {
            Rat sign = (j % 2 == 0) ? Rat(1) : Rat(-1);
            GradedMap upper = hat.Dhat * ops.b * term;  // shift -(2j+1)
            closed = closed + GradedMap::build(C, Snn.total, 0, 0, M, [&](int m) {
                         SparseMat blk(static_cast<int>(Snn.total.rank(m)),
                                       static_cast<int>(C.rank(m)));
                         if (m - 2 * j >= 0)
                             place(blk, Snn.offset(m, 2 * j), 0,
                                   sign * term.block(m));
                         if (m - 2 * j - 1 >= 0)
                             place(blk, Snn.offset(m, 2 * j + 1), 0,
                                   -sign * upper.block(m));
                         return blk;
                     });
            if (2 * (j + 1) > M) break;
            term = bdb * term;
        }
        p.cert.check_equal("nu0 matches the closed staircase form", p.nu0, closed);
    }

    // closed forms of the perturbed homotopy on both column parities
    {
        GradedMap dbb = hat.Dhat * ops.b * hat.bphat;  // shift -2
        GradedMap bdb = hat.bphat * hat.Dhat * ops.b;
        GradedMap even_term = hat.Dhat;  // (Dhat b bphat)^j Dhat
        GradedMap odd_term = hat.hat;    // (bphat Dhat b)^j hat
        GradedMap closed = GradedMap::zero(Snn.total, Snn.total, 1).restricted(0, M - 1);
        for (int j = 0; 2 * j <= M; ++j) {
            Rat sign = (j % 2 == 0) ? Rat(-1) : Rat(1);
            GradedMap even_upper = hat.bphat * even_term;   // shift -(2j+1)
            GradedMap odd_upper = hat.Dhat * ops.b * odd_term;
            closed = closed +
                     GradedMap::build(Snn.total, Snn.total, 1, 0, M - 1, [&](int m) {
                         SparseMat blk(static_cast<int>(Snn.total.rank(m + 1)),
                                       static_cast<int>(Snn.total.rank(m)));
                         for (int pp = 0; pp <= m; ++pp) {
                             int q = m - pp;
                             if (pp % 2 == 0) {
                                 if (q - 2 * j >= 0 && pp + 2 * j + 1 <= m + 1)
                                     place(blk, Snn.offset(m + 1, pp + 2 * j + 1),
                                           Snn.offset(m, pp),
                                           sign * even_term.block(q));
                                 if (q - 2 * j - 1 >= 0 && pp + 2 * j + 2 <= m + 1)
                                     place(blk, Snn.offset(m + 1, pp + 2 * j + 2),
                                           Snn.offset(m, pp),
                                           sign * even_upper.block(q));
                             } else {
                                 if (q - 2 * j >= 0 && pp + 2 * j + 1 <= m + 1)
                                     place(blk, Snn.offset(m + 1, pp + 2 * j + 1),
                                           Snn.offset(m, pp),
                                           sign * odd_term.block(q));
                                 if (q - 2 * j - 1 >= 0 && pp + 2 * j + 2 <= m + 1)
                                     place(blk, Snn.offset(m + 1, pp + 2 * j + 2),
                                           Snn.offset(m, pp),
                                           -sign * odd_upper.block(q));
                             }
                         }
                         return blk;
                     });
            if (2 * (j + 1) > M) break;
            even_term = dbb * even_term;
            odd_term = bdb * odd_term;
        }
        p.cert.check_equal("phi matches the closed staircase forms", p.phi_nn, closed);
    }
    return p;
}

NuNPack build_nu_n(const ComparisonContext& ctx, const IJhPack& ijh, const NuNNPack& nn) {
    const GradedModule& C = ctx.cs.C;
    const DerivedOps& ops = ctx.ops;
    const HatOps& hat = ctx.hat;
    const SlotModule& Sn = ctx.nat.slots;
    const int M = C.window;

    NuNPack p;
    p.cert = ValidationReport(ctx.cs.name + " cyclic-type almost-inverse");
    p.nu0 = ijh.J * nn.nu0;
    p.phi_n = ijh.J * nn.phi_nn * ijh.I;
    p.mu = ijh.J * nn.mu;

    GradedMap one = GradedMap::identity(C);
    GradedMap oneMinusTau = one - ops.tau;
    GradedMap oneMinusT_tot = GradedMap::identity(Sn.total) - ctx.nat.psm.T;
    const GradedMap& sp = *ops.sprime;
    GradedMap d_nat = ctx.nat.psm.d;

    p.cert.check_equal("(b + Bu^{-1}) nu0 = nu0 b - (1-T) mu b' Dhat", d_nat * p.nu0,
                       p.nu0 * ops.b - oneMinusT_tot * p.mu * ops.bp * hat.Dhat);
    p.cert.check_equal("pi0 nu0 = 1 - (1 - tau)[Dhat + s' Dhat b Nhat]",
                       ctx.pi0_nat() * p.nu0,
                       one - oneMinusTau *
                                 (hat.Dhat + sp * hat.Dhat * ops.b * hat.Nhat));
    p.cert.check_equal("nu0 pi0 = 1 + (b + Bu^{-1}) phi + phi (b + Bu^{-1})",
                       p.nu0 * ctx.pi0_nat(),
                       GradedMap::identity(Sn.total) + anticommutator(d_nat, p.phi_n));
    p.cert.check_equal("nu0 (1 - tau) = (1 - T) mu", p.nu0 * oneMinusTau,
                       oneMinusT_tot * p.mu);
    p.cert.check_equal("pi0 phi = -(1 - tau) s' Dhat pi0", ctx.pi0_nat() * p.phi_n,
                       -(oneMinusTau * sp * hat.Dhat * ctx.pi0_nat()));
    p.cert.check_equal("pi0 J = pi0 + (1 - tau) s' pi0 u^{-1}",
                       ctx.pi0_nat() * ijh.J,
                       ctx.pi0_nn() + oneMinusTau * sp * ctx.pi0_nn() *
                                          ctx.nn.slots.u_inv(1));
    p.cert.check_equal("pi0 (b + Bu^{-1}) has no correction on b",
                       ctx.pi0_nat() * d_nat,
                       ops.b * ctx.pi0_nat() + (*ops.B) * ctx.pi0_nat() *
                                                   ctx.nat.slots.u_inv(1));
    p.cert.check_equal("pi b = b pi on the quotient", ctx.pi_nat() * d_nat,
                       ctx.lam.b * ctx.pi_nat());

    // closed form: nu0(x) = sum_j (-1)^j [1 - (1-tau) s' Dhat b](bphat Dhat b)^j
    //                        Nhat x u^j
    {
        GradedMap head = one - oneMinusTau * sp * hat.Dhat * ops.b;
        GradedMap bdb = hat.bphat * hat.Dhat * ops.b;
        GradedMap term = hat.Nhat;
        GradedMap closed = GradedMap::zero(C, Sn.total, 0);
        for (int j = 0; 2 * j <= M; ++j) {
            Rat sign = (j % 2 == 0) ? Rat(1) : Rat(-1);
            GradedMap piece = head * term;  // shift -2j
            closed = closed + GradedMap::build(C, Sn.total, 0, 0, M, [&](int m) {
                         SparseMat blk(static_cast<int>(Sn.total.rank(m)),
                                       static_cast<int>(C.rank(m)));
                         if (m - 2 * j >= 0)
                             place(blk, Sn.offset(m, j), 0, sign * piece.block(m));
                         return blk;
                     });
            if (2 * (j + 1) > M) break;
            term = bdb * term;
        }
        p.cert.check_equal("nu0 matches the closed staircase form", p.nu0, closed);
    }
    return p;
}

LambdaRetracts build_lambda_retracts(const ComparisonContext& ctx, const IJhPack& ijh,
                                     const NuNNPack& nunn, const NuNPack& nun,
                                     const std::optional<QuasiSplitting>& split,
                                     const std::optional<QuasiMixedPack>& pack) {
    LambdaRetracts lr;
    lr.cert = ValidationReport(ctx.cs.name + " quotient retracts");
    lr.sq = build_quotient_T(ctx.cs, ctx.ops);
    lr.ctxT = make_context(lr.sq.sub);

    const SlotModule& SnnC = ctx.nn.slots;
    const SlotModule& SnnT = lr.ctxT.nn.slots;
    const SlotModule& SnC = ctx.nat.slots;
    const SlotModule& SnT = lr.ctxT.nat.slots;

    lr.piT_nn = slot_lift(SnnC, SnnT, lr.sq.pi);
    lr.inclT_nn = slot_lift(SnnT, SnnC, lr.sq.incl);
    lr.piT_nat = slot_lift(SnC, SnT, lr.sq.pi);
    lr.inclT_nat = slot_lift(SnT, SnC, lr.sq.incl);

    const LambdaComplex& lam = ctx.lam;

    // descent obstruction check: nu0 maps ran(1 - tau) into the range factor
    {
        GradedMap obst = lr.piT_nn * nunn.nu0 *
                         (GradedMap::identity(ctx.cs.C) - ctx.ops.tau);
        for (int m = obst.lo(); m <= obst.hi(); ++m)
            for (int j = 0; j < obst.block(m).cols(); ++j) {
                Vec col(obst.block(m).rows(), Rat(0));
                bool nonzero = false;
                for (int i = 0; i < obst.block(m).rows(); ++i) {
                    col[i] = obst.block(m).get(i, j);
                    nonzero = nonzero || col[i] != 0;
                }
                if (nonzero)
                    throw DescentObstruction(
                        ctx.cs.name + ": nu0 does not descend at degree " +
                        std::to_string(m) + ", witness generator " +
                        std::to_string(j));
            }
        lr.cert.check_zero("pi_T nu0 (1 - tau) = 0", obst);
    }

    lr.nu_bar_nn = lr.piT_nn * nunn.nu0 * lam.incl;
    lr.pi_bar_nn = lam.pi * lr.sq.incl * lr.ctxT.pi0_nn();
    lr.phi_bar_nn = lr.piT_nn * nunn.phi_nn * lr.inclT_nn;
    lr.cert.check_equal("phi descends", lr.piT_nn * nunn.phi_nn,
                        lr.phi_bar_nn * lr.piT_nn);
    lr.cert.check_equal("pi-bar restricts the slot-zero projection",
                        lr.pi_bar_nn * lr.piT_nn, ctx.pi_nn());

    GradedMap d_nnT = lr.ctxT.nn.psm.d;
    lr.cert.check_equal("nu-bar is a chain map", d_nnT * lr.nu_bar_nn,
                        lr.nu_bar_nn * lam.b);
    lr.cert.check_equal("pi-bar nu-bar = 1", lr.pi_bar_nn * lr.nu_bar_nn,
                        GradedMap::identity(lam.L));
    lr.cert.check_equal("nu-bar pi-bar = 1 + d phi-bar + phi-bar d",
                        lr.nu_bar_nn * lr.pi_bar_nn,
                        GradedMap::identity(SnnT.total) +
                            anticommutator(d_nnT, lr.phi_bar_nn));
    lr.cert.check_zero("pi-bar phi-bar = 0", lr.pi_bar_nn * lr.phi_bar_nn);

    // cyclic-type side through J
    IJhPack ijhT = build_IJh(lr.ctxT);
    lr.cert.check_true("quotient I/J/h certificates", ijhT.cert.all_ok());
    lr.cert.check_equal("J descends", lr.piT_nat * ijh.J, ijhT.J * lr.piT_nn);
    lr.nu_bar_nat = ijhT.J * lr.nu_bar_nn;
    lr.pi_bar_nat = lam.pi * lr.sq.incl * lr.ctxT.pi0_nat();
    lr.phi_bar_nat = ijhT.J * lr.phi_bar_nn * ijhT.I;
    lr.cert.check_equal("nu-bar (cyclic side) agrees with the descended route",
                        lr.nu_bar_nat, lr.piT_nat * nun.nu0 * lam.incl);

    GradedMap d_natT = lr.ctxT.nat.psm.d;
    lr.cert.check_equal("nu-bar is a chain map (cyclic side)", d_natT * lr.nu_bar_nat,
                        lr.nu_bar_nat * lam.b);
    lr.cert.check_equal("pi-bar nu-bar = 1 (cyclic side)",
                        lr.pi_bar_nat * lr.nu_bar_nat, GradedMap::identity(lam.L));
    lr.cert.check_equal(
        "nu-bar pi-bar = 1 + d phi-bar + phi-bar d (cyclic side)",
        lr.nu_bar_nat * lr.pi_bar_nat,
        GradedMap::identity(SnT.total) + anticommutator(d_natT, lr.phi_bar_nat));
    lr.cert.check_zero("pi-bar phi-bar = 0 (cyclic side)",
                       lr.pi_bar_nat * lr.phi_bar_nat);

    // quasi-splitting variants: retract into the objects themselves
    if (split && pack) {
        GradedMap piT_diag_nn = SnnC.lift(split->piT);
        GradedMap piT_diag_nat = SnC.lift(split->piT);
        GradedMap obst = piT_diag_nn * nunn.nu0 *
                         (GradedMap::identity(ctx.cs.C) - ctx.ops.tau);
        lr.cert.check_zero("piT nu0 (1 - tau) = 0", obst);

        lr.nuT_nn = piT_diag_nn * nunn.nu0 * lam.incl;
        lr.phiT_nn = pack->h_nn + nunn.phi_nn * piT_diag_nn;
        GradedMap d_nn = ctx.nn.psm.d;
        lr.cert.check_equal("nuT is a chain map", d_nn * *lr.nuT_nn,
                            *lr.nuT_nn * lam.b);
        lr.cert.check_equal("pi nuT = 1", ctx.pi_nn() * *lr.nuT_nn,
                            GradedMap::identity(lam.L));
        lr.cert.check_equal("nuT pi = 1 + d phiT + phiT d",
                            *lr.nuT_nn * ctx.pi_nn(),
                            GradedMap::identity(SnnC.total) +
                                anticommutator(d_nn, *lr.phiT_nn));
        lr.cert.check_zero("pi phiT = 0", ctx.pi_nn() * *lr.phiT_nn);

        lr.nuT_nat = piT_diag_nat * nun.nu0 * lam.incl;
        lr.phiT_nat = SnC.lift(pack->h) + nun.phi_n * piT_diag_nat;
        GradedMap d_nat = ctx.nat.psm.d;
        lr.cert.check_equal("nuT is a chain map (cyclic side)", d_nat * *lr.nuT_nat,
                            *lr.nuT_nat * lam.b);
        lr.cert.check_equal("pi nuT = 1 (cyclic side)", ctx.pi_nat() * *lr.nuT_nat,
                            GradedMap::identity(lam.L));
        lr.cert.check_equal("nuT pi = 1 + d phiT + phiT d (cyclic side)",
                            *lr.nuT_nat * ctx.pi_nat(),
                            GradedMap::identity(SnC.total) +
                                anticommutator(d_nat, *lr.phiT_nat));
        lr.cert.check_zero("pi phiT = 0 (cyclic side)", ctx.pi_nat() * *lr.phiT_nat);
    }

    // honest case: no quotient needed at all, and the quotient-side maps
    // coincide with the plain ones
    if (equals(ctx.ops.T, GradedMap::identity(ctx.cs.C))) {
        lr.nu_pre_nn = nunn.nu0 * lam.incl;
        lr.nu_pre_nat = nun.nu0 * lam.incl;
        lr.cert.check_equal("pi nu = 1 (precyclic, bicomplex side)",
                            ctx.pi_nn() * *lr.nu_pre_nn, GradedMap::identity(lam.L));
        lr.cert.check_equal("pi nu = 1 (precyclic, cyclic side)",
                            ctx.pi_nat() * *lr.nu_pre_nat, GradedMap::identity(lam.L));
        lr.cert.check_equal("T = 1: nu-bar is nu under the identity quotient",
                            lr.piT_nn * *lr.nu_pre_nn, lr.nu_bar_nn);
    }
    return lr;
}

PeriodicityPack periodicity_S(const ComparisonContext& ctx, const IJhPack& ijh,
                              const NuNNPack& nunn, const NuNPack& nun,
                              const LambdaRetracts& lr) {
    const GradedModule& C = ctx.cs.C;
    const DerivedOps& ops = ctx.ops;
    const HatOps& hat = ctx.hat;
    const LambdaComplex& lam = ctx.lam;
    const int M = C.window;
    if (M < 2) throw DegreeTooLow("periodicity needs window >= 2");

    PeriodicityPack p;
    p.cert = ValidationReport(ctx.cs.name + " periodicity operator");

    p.S0 = ctx.pi0_nn() * ctx.nn.psm.S * nunn.nu0;
    p.cert.check_equal("S0 = xi Nhat", p.S0, hat.xi * hat.Nhat);
    GradedMap one = GradedMap::identity(C);
    p.cert.check_equal("S0 (1 - tau) = (1 - T) xi hat", p.S0 * (one - ops.tau),
                       (one - ops.T) * hat.xi * hat.hat);

    p.S = lam.pi * p.S0 * lam.incl;
    p.cert.check_equal("S0 descends", lam.pi * p.S0, p.S * lam.pi);
    p.cert.check_equal("S b = b S on the quotient complex", p.S * lam.b, lam.b * p.S);

    // route 2: the double end-face formula
    GradedMap route2 = GradedMap::build(lam.L, lam.L, -2, 2, M, [&](int m) {
        SparseMat op = ctx.cs.faces[m - 1][m - 1] * hat.Dhat.block(m - 1) *
                       ctx.cs.faces[m][m] * hat.Nhat.block(m);
        return frac(-1, m - 1) * (lam.quot[m - 2].proj * op * lam.quot[m].incl);
    });
    // route 3: the pure double-face expansion from the rotation relations
    GradedMap route3 = GradedMap::build(lam.L, lam.L, -2, 2, M, [&](int m) {
        SparseMat acc(static_cast<int>(C.rank(m - 2)), static_cast<int>(C.rank(m)));
        for (int k = 0; k <= m - 1; ++k)
            for (int l = 0; l <= m; ++l) {
                int a = k + l, r = a % m;
                long sgn = (((m - 1) * a + (m - 2) * r + l) % 2 == 0) ? 1 : -1;
                SparseMat dd = ctx.cs.faces[m - 1][m - 1 - r] * ctx.cs.faces[m][m - l];
                acc = acc + Rat(sgn * (m - 1 - k)) * dd;
            }
        return frac(-1, static_cast<long>(m - 1) * m * (m + 1)) *
               (lam.quot[m - 2].proj * acc * lam.quot[m].incl);
    });
    // route 4: through the cyclic-type object
    GradedMap route4 =
        (lam.pi * ctx.pi0_nat() * ctx.nat.psm.S * nun.nu0 * lam.incl).restricted(2, M);

    GradedMap S_win = p.S.restricted(2, M);
    p.cert.check_equal("route 1 = route 2 (double end-face formula)", S_win, route2);
    p.cert.check_equal("route 2 = route 3 (double-face expansion)", route2, route3);
    p.cert.check_equal("route 1 = route 4 (cyclic-type almost-inverse)", S_win, route4);

    // the weighted (-1)^{i+j} double-face sum is recorded separately: it
    // agrees in low degrees but deviates from the other routes afterwards
    p.display_claims = ValidationReport(ctx.cs.name + " textbook-shape claims");
    {
        GradedMap naive = GradedMap::build(lam.L, lam.L, -2, 2, M, [&](int m) {
            SparseMat acc(static_cast<int>(C.rank(m - 2)),
                          static_cast<int>(C.rank(m)));
            for (int j = 1; j <= m; ++j)
                for (int i = 0; i < j; ++i) {
                    SparseMat dd = ctx.cs.faces[m - 1][i] * ctx.cs.faces[m][j];
                    acc = ((i + j) % 2 == 0) ? acc + dd : acc - dd;
                }
            return frac(1, static_cast<long>(m - 1) * m) *
                   (lam.quot[m - 2].proj * acc * lam.quot[m].incl);
        });
        p.display_claims.check_equal(
            "S = (1/((m-1)m)) sum_{i<j} (-1)^{i+j} d_i d_j on the quotient", S_win,
            naive);
    }

    // uniqueness: nu-bar is injective degreewise, so the S-relation pins S
    {
        bool inj = true;
        long maxdim = 0;
        for (int m = 0; m + 2 <= M; ++m) {
            long k = kernel_basis(lr.nu_bar_nn.block(m)).rows();
            maxdim = std::max(maxdim, k);
            inj = inj && k == 0;
        }
        p.cert.check_true("solution space of the S-relation has dimension <= 1",
                          inj && maxdim <= 1,
                          "kernel dimension " + std::to_string(maxdim));
    }
    // The embeddings intertwine S with the slot shift up to an explicit
    // homotopy Theta = phi u nu + nu psi nu, assembled from the certified
    // retract and projection-homotopy identities; the on-the-nose claims go
    // to display_claims below.
    auto smap_up_to_homotopy = [&](const std::string& nm, const GradedMap& nu,
                                   const GradedMap& phi_h, const GradedMap& psi_h,
                                   const GradedMap& u_shift, const GradedMap& d_tot) {
        GradedMap theta = phi_h * u_shift * nu + nu * psi_h * nu;
        p.cert.check_equal(nm + ": nu S - u nu = d Theta + Theta b",
                           nu * p.S - u_shift * nu,
                           d_tot * theta + theta * lam.b);
        p.display_claims.check_equal(nm + ": nu S = u nu on the nose", nu * p.S,
                                     u_shift * nu);
    };

    // homotopies making the projections S-maps
    const SlotModule& Snn = ctx.nn.slots;
    p.psi0_nn = ctx.pi0_nn() * ctx.nn.psm.S * nunn.phi_nn;
    {
        GradedMap direct = GradedMap::build(Snn.total, C, -1, 0, M, [&](int m) {
            SparseMat blk(static_cast<int>(C.rank(m - 1)),
                          static_cast<int>(Snn.total.rank(m)));
            GradedMap bd = hat.bphat * hat.Dhat;  // shift -1
            place(blk, 0, Snn.offset(m, 0), -bd.block(m));
            if (m >= 1) place(blk, 0, Snn.offset(m, 1), -hat.hat.block(m - 1));
            return blk;
        });
        p.cert.check_equal("psi0 slot formula", p.psi0_nn, direct.restricted(
                                                               p.psi0_nn.lo(),
                                                               p.psi0_nn.hi()));
    }
    p.cert.check_equal(
        "S0 pi0 - pi0 u^{-2} = b psi0 + psi0 (dl + delta) + (1-tau) pi0 u^{-3} phi",
        p.S0 * ctx.pi0_nn() - ctx.pi0_nn() * ctx.nn.psm.S,
        ops.b * p.psi0_nn + p.psi0_nn * ctx.nn.psm.d +
            (one - ops.tau) * ctx.pi0_nn() * Snn.u_inv(3) * nunn.phi_nn);

    p.psi_nn = lam.pi * p.psi0_nn;
    p.cert.check_equal("S pi - pi u^{-2} = b psi + psi (dl + delta)",
                       p.S * ctx.pi_nn() - ctx.pi_nn() * ctx.nn.psm.S,
                       lam.b * p.psi_nn + p.psi_nn * ctx.nn.psm.d);
    {
        GradedMap psi_bar = p.psi_nn * lr.inclT_nn;
        p.cert.check_equal("psi descends", psi_bar * lr.piT_nn, p.psi_nn);
        p.cert.check_equal("S pi-bar - pi-bar u^{-2} = b psi-bar + psi-bar d",
                           p.S * lr.pi_bar_nn - lr.pi_bar_nn * lr.ctxT.nn.psm.S,
                           lam.b * psi_bar + psi_bar * lr.ctxT.nn.psm.d);
    }

    p.psi0_nat = p.psi0_nn * ijh.I;
    {
        const SlotModule& Sn = ctx.nat.slots;
        GradedMap direct = GradedMap::build(Sn.total, C, -1, 0, M, [&](int m) {
            SparseMat blk(static_cast<int>(C.rank(m - 1)),
                          static_cast<int>(Sn.total.rank(m)));
            GradedMap bd = hat.bphat * hat.Dhat;
            place(blk, 0, Sn.offset(m, 0), -bd.block(m));
            if (m >= 2) {
                GradedMap corr = hat.hat * (*ops.sprime) * ops.Nop;  // shift +1
                place(blk, 0, Sn.offset(m, 1), -corr.block(m - 2));
            }
            return blk;
        });
        p.cert.check_equal("psi0 slot formula (cyclic side)", p.psi0_nat,
                           direct.restricted(p.psi0_nat.lo(), p.psi0_nat.hi()));
    }
    p.psi_nat = lam.pi * p.psi0_nat;
    p.cert.check_equal("S pi - pi u^{-1} = b psi + psi (b + Bu^{-1})",
                       p.S * ctx.pi_nat() - ctx.pi_nat() * ctx.nat.psm.S,
                       lam.b * p.psi_nat + p.psi_nat * ctx.nat.psm.d);
    GradedMap psi_bar_nat = p.psi_nat * lr.inclT_nat;
    p.cert.check_equal("psi descends (cyclic side)", psi_bar_nat * lr.piT_nat,
                       p.psi_nat);
    p.cert.check_equal(
        "S pi-bar - pi-bar u^{-1} = b psi-bar + psi-bar d (cyclic side)",
        p.S * lr.pi_bar_nat - lr.pi_bar_nat * lr.ctxT.nat.psm.S,
        lam.b * psi_bar_nat + psi_bar_nat * lr.ctxT.nat.psm.d);

    // S-map properties of all the embeddings, each with its explicit homotopy
    {
        GradedMap psi_bar_nn = p.psi_nn * lr.inclT_nn;
        smap_up_to_homotopy("nu-bar (bicomplex side)", lr.nu_bar_nn, lr.phi_bar_nn,
                            psi_bar_nn, lr.ctxT.nn.psm.S, lr.ctxT.nn.psm.d);
        smap_up_to_homotopy("nu-bar (cyclic side)", lr.nu_bar_nat, lr.phi_bar_nat,
                            psi_bar_nat, lr.ctxT.nat.psm.S, lr.ctxT.nat.psm.d);
        if (lr.nuT_nn)
            smap_up_to_homotopy("nuT (bicomplex side)", *lr.nuT_nn, *lr.phiT_nn,
                                p.psi_nn, ctx.nn.psm.S, ctx.nn.psm.d);
        if (lr.nuT_nat)
            smap_up_to_homotopy("nuT (cyclic side)", *lr.nuT_nat, *lr.phiT_nat,
                                p.psi_nat, ctx.nat.psm.S, ctx.nat.psm.d);
        if (lr.nu_pre_nn)
            smap_up_to_homotopy("nu (honest, bicomplex side)", *lr.nu_pre_nn,
                                nunn.phi_nn, p.psi_nn, ctx.nn.psm.S, ctx.nn.psm.d);
        if (lr.nu_pre_nat)
            smap_up_to_homotopy("nu (honest, cyclic side)", *lr.nu_pre_nat, nun.phi_n,
                                p.psi_nat, ctx.nat.psm.S, ctx.nat.psm.d);
    }
    return p;
}

ValidationReport check_quotient_face_identity(const ComparisonContext& ctx) {
    ValidationReport rep(ctx.cs.name + " quotient face identity");
    const GradedModule& C = ctx.cs.C;
    GradedMap lhs = ctx.lam.pi * ctx.ops.bp * ctx.hat.Dhat * ctx.ops.b * ctx.ops.Nop;
    GradedMap rhs = GradedMap::build(C, ctx.lam.L, -2, 2, C.window, [&](int m) {
        SparseMat op = ctx.cs.faces[m - 1][m - 1] * ctx.hat.Dhat.block(m - 1) *
                       ctx.cs.faces[m][m] * ctx.ops.Nop.block(m);
        return ctx.lam.quot[m - 2].proj * op;
    });
    rep.check_equal("pi^lambda b' Dhat b N = pi^lambda d Dhat d N",
                    lhs.restricted(2, C.window), rhs);
    return rep;
}

BSCertificate connes_BS_check(const ComparisonContext& ctx, const LambdaRetracts& lr,
                              const PeriodicityPack& per, int m, const Vec& x) {
    if (m < 2) throw DegreeTooLow("the periodicity operator needs degree >= 2");
    const GradedModule& C = ctx.cs.C;
    assert(static_cast<int>(x.size()) == C.rank(m));

    BSCertificate bs;
    bs.degree = m;
    bs.x = x;
    bs.cert = ValidationReport(ctx.cs.name + " B S certificate");

    GradedMap one = GradedMap::identity(C);
    GradedMap oneMinusTau = one - ctx.ops.tau;
    Vec bx = ctx.ops.b.block(m).apply(x);
    if (!solve(oneMinusTau.block(m - 1), bx))
        throw NotACycleModTau("b x is not in ran(1 - tau)");
    bs.cert.check_true("b x lies in ran(1 - tau)", true);

    // B descends to a map from the quotient complex into C_T
    const GradedMap& B = *ctx.ops.B;
    GradedMap B_desc = lr.sq.pi * B * ctx.lam.incl;
    bs.cert.check_equal("B descends through the tau-quotient", lr.sq.pi * B,
                        B_desc * ctx.lam.pi);

    Vec x_lam = ctx.lam.pi.block(m).apply(x);
    Vec Sx = per.S.block(m).apply(x_lam);
    Vec BSx = B_desc.block(m - 2).apply(Sx);
    Vec bxbar = (lr.sq.pi.block(m - 1) * ctx.ops.b.block(m)).apply(x);
    Vec z(BSx.size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = BSx[i] + bxbar[i];

    SparseMat reach = lr.sq.pi.block(m - 1) * ctx.ops.b.block(m) *
                      oneMinusTau.block(m);
    auto y = solve(reach, z);
    if (!y)
        throw NotACycleModTau("B S(x) + b x-bar is not in ran[b (1 - tau)]");
    bs.preimage = *y;
    Vec check = reach.apply(*y);
    bs.cert.check_true("B S(x) + b x-bar = b (1 - tau) y in C_T", check == z);
    return bs;
}

namespace {

Vec row_times(const Vec& w, const SparseMat& A) {
    return A.apply_transposed(w);
}

} // namespace

CocycleConversion convert_cocycle(const ComparisonContext& ctx, const LambdaRetracts& lr,
                                  const Cochain& phi) {
    const SlotModule& SnT = lr.ctxT.nat.slots;
    const GradedModule& CT = lr.sq.sub.C;
    const int m = phi.degree;
    if (m < 0 || m > CT.window) throw PreconditionFailed("cochain degree out of window");

    CocycleConversion cc;
    cc.cert = ValidationReport(ctx.cs.name + " cocycle conversion");

    // assemble the functional on the degree-m total object
    Vec w(SnT.total.rank(m), Rat(0));
    if (static_cast<int>(phi.comps.size()) != m / 2 + 1)
        throw PreconditionFailed("expected " + std::to_string(m / 2 + 1) +
                                 " cochain components");
    for (int j = 0; 2 * j <= m; ++j) {
        const Vec& comp = phi.comps[j];
        if (static_cast<int>(comp.size()) != CT.rank(m - 2 * j))
            throw PreconditionFailed("component " + std::to_string(j) +
                                     " has the wrong length");
        long off = SnT.offset(m, j);
        for (size_t i = 0; i < comp.size(); ++i) w[off + i] = comp[i];
    }

    // cocycle test: w composed with the incoming differential vanishes
    if (m + 1 <= CT.window) {
        Vec wd = row_times(w, lr.ctxT.nat.psm.d.block(m + 1));
        for (int j = 0; 2 * j <= m + 1; ++j) {
            long off = SnT.offset(m + 1, j);
            for (long i = 0; i < CT.rank(m + 1 - 2 * j); ++i)
                if (wd[off + i] != 0)
                    throw NotACocycle("component " + std::to_string(j) +
                                      " of the coboundary is nonzero");
        }
        cc.cert.check_true("input is a cocycle", true);
    }

    // transport along the retract
    cc.cyclic = row_times(w, lr.nu_bar_nat.block(m));
    cc.lifted = row_times(cc.cyclic, ctx.lam.pi.block(m));

    // direct formula: sum_j (-1)^j phi_{m-2j} pi_T [1 - (1-tau) s' Dhat b]
    //                  (bphat Dhat b)^j Nhat
    {
        const HatOps& hat = ctx.hat;
        const DerivedOps& ops = ctx.ops;
        GradedMap one = GradedMap::identity(ctx.cs.C);
        GradedMap head = one - (one - ops.tau) * (*ops.sprime) * hat.Dhat * ops.b;
        GradedMap bdb = hat.bphat * hat.Dhat * ops.b;
        GradedMap term = hat.Nhat;
        Vec direct(ctx.cs.C.rank(m), Rat(0));
        for (int j = 0; 2 * j <= m; ++j) {
            SparseMat op = lr.sq.pi.block(m - 2 * j) * (head * term).block(m);
            Vec part = row_times(phi.comps[j], op);
            for (size_t i = 0; i < direct.size(); ++i)
                direct[i] += ((j % 2 == 0) ? part[i] : -part[i]);
            if (2 * (j + 1) <= m) term = bdb * term;
        }
        cc.cert.check_true("transport matches the alternating closed formula",
                           cc.lifted == direct);
    }

    // the output is a cyclic cocycle
    {
        Vec shifted = row_times(cc.lifted, ctx.ops.tau.block(m));
        cc.cert.check_true("output is tau-invariant", shifted == cc.lifted);
        if (m + 1 <= ctx.lam.L.window) {
            Vec wb = row_times(cc.cyclic, ctx.lam.b.block(m + 1));
            bool zero = true;
            for (const Rat& v : wb) zero = zero && v == 0;
            cc.cert.check_true("output is closed under the quotient differential",
                               zero);
        }
    }

    // coboundary certificate: iota(nu(phi)) - phi = chi d with chi = w phi-bar
    if (m >= 1) {
        Vec chi = row_times(w, lr.phi_bar_nat.block(m - 1));
        Vec iota_nu = row_times(cc.cyclic, lr.pi_bar_nat.block(m));
        Vec chid = row_times(chi, lr.ctxT.nat.psm.d.block(m));
        bool ok = true;
        for (size_t i = 0; i < w.size(); ++i)
            ok = ok && iota_nu[i] - w[i] == chid[i];
        cc.cert.check_true("coboundary certificate verifies", ok);
        cc.coboundary.degree = m - 1;
        for (int j = 0; 2 * j <= m - 1; ++j) {
            long off = SnT.offset(m - 1, j);
            Vec comp(CT.rank(m - 1 - 2 * j));
            for (size_t i = 0; i < comp.size(); ++i) comp[i] = chi[off + i];
            cc.coboundary.comps.push_back(std::move(comp));
        }
    } else {
        Vec iota_nu = row_times(cc.cyclic, lr.pi_bar_nat.block(m));
        bool ok = iota_nu == w;
        cc.cert.check_true("degree-0 conversion is the identity", ok);
        cc.coboundary.degree = -1;
    }

    // left inverse on cyclic cochains: nu after iota is the identity
    {
        Vec cyc = row_times(cc.cyclic, lr.pi_bar_nat.block(m));
        Vec back = row_times(cyc, lr.nu_bar_nat.block(m));
        cc.cert.check_true("conversion after inclusion is the identity",
                           back == cc.cyclic);
    }
    return cc;
}

CochainStabilization periodic_cochain_stabilize(const ComparisonContext& ctx,
                                                const LambdaRetracts& lr,
                                                const GradedMap& per_S) {
    const GradedModule& CT_total = lr.ctxT.nat.psm.C;
    const GradedMap& d = lr.ctxT.nat.psm.d;
    const int M = CT_total.window;

    CochainStabilization st;
    st.cert = ValidationReport(ctx.cs.name + " periodic cochain ranks");

    // dual complexes: transpose blocks, degree raising
    GradedMap d_dual = GradedMap::build(CT_total, CT_total, 1, 0, M - 1, [&](int n) {
        return d.block(n + 1).transpose();
    });
    ComplexHandle cochain("cochain total", d_dual, 1);
    GradedMap iota = GradedMap::build(CT_total, CT_total, 2, 0, M - 2, [&](int n) {
        return lr.ctxT.nat.psm.S.block(n + 2).transpose();
    });

    int top = cochain.max_degree();
    for (int n = 0; n <= top; ++n) st.hc_ranks.push_back(cochain.homology_rank(n));
    for (int n = 0; n + 2 <= top; ++n)
        st.S_matrices.push_back(induced_map_on_homology(cochain, cochain, iota, n));

    auto stabilize = [&](int parity) {
        StabilizationReport sr;
        sr.parity = parity;
        int topn = top - ((top - parity) % 2 + 2) % 2;
        for (int n = parity; n <= topn; n += 2)
            sr.space_dims.push_back(st.hc_ranks[n]);
        for (int n = parity; n <= topn; n += 2) {
            if (n == topn) {
                sr.composite_ranks.push_back(st.hc_ranks[n]);
                continue;
            }
            SparseMat comp = st.S_matrices[n];
            for (int k = n + 2; k + 2 <= topn; k += 2) comp = st.S_matrices[k] * comp;
            sr.composite_ranks.push_back(rank(comp));
        }
        // stabilized when the composite ranks are eventually constant
        int idx = static_cast<int>(sr.composite_ranks.size()) - 1;
        while (idx > 0 && sr.composite_ranks[idx - 1] == sr.composite_ranks.back())
            --idx;
        if (static_cast<int>(sr.composite_ranks.size()) - idx >= 2 || idx == 0) {
            sr.stabilized = true;
            sr.stable_rank = sr.composite_ranks.back();
            sr.stable_index = idx;
        }
        return sr;
    };
    st.even = stabilize(0);
    st.odd = stabilize(1);

    // the cochain transport to the Connes side is an isomorphism on
    // cohomology, compatible with the periodicity operators
    GradedMap bl_dual = GradedMap::build(ctx.lam.L, ctx.lam.L, 1, 0, M - 1, [&](int n) {
        return ctx.lam.b.block(n + 1).transpose();
    });
    ComplexHandle lam_cochain("lambda cochain", bl_dual, 1);
    GradedMap nu_dual = GradedMap::build(CT_total, ctx.lam.L, 0, lr.nu_bar_nat.lo(),
                                         lr.nu_bar_nat.hi(), [&](int n) {
                                             return lr.nu_bar_nat.block(n).transpose();
                                         });
    bool isos = true;
    for (int n = 0; n <= top; ++n) {
        SparseMat mat = induced_map_on_homology(cochain, lam_cochain, nu_dual, n);
        isos = isos && mat.rows() == mat.cols() && rank(mat) == mat.rows();
        st.nu_action.push_back(std::move(mat));
    }
    st.cert.check_true("cochain transport induces isomorphisms", isos);
    // the transport intertwines the periodicity operators on cohomology
    // (at the cochain level it does so only up to a homotopy)
    GradedMap Slam_dual = GradedMap::build(ctx.lam.L, ctx.lam.L, 2, 0, M - 2,
                                           [&](int n) {
                                               return per_S.block(n + 2).transpose();
                                           });
    bool intertwines = true;
    for (int n = 0; n + 2 <= top; ++n) {
        SparseMat S_lam_star =
            induced_map_on_homology(lam_cochain, lam_cochain, Slam_dual, n);
        intertwines =
            intertwines && st.nu_action[n + 2] * st.S_matrices[n] ==
                               S_lam_star * st.nu_action[n];
    }
    st.cert.check_true(
        "the transport intertwines the induced periodicity maps on cohomology",
        intertwines);
    return st;
}

} // namespace paracyc
