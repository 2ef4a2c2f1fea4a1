#include "paracyc/para_s.hpp"

#include "paracyc/errors.hpp"

#include <cassert>

namespace paracyc {

ValidationReport check_para_s(const ParaSModule& psm) {
    ValidationReport rep(psm.name);
    GradedMap one = GradedMap::identity(psm.C);
    rep.check_equal("d^2 = S (1 - T)", psm.d * psm.d, psm.S * (one - psm.T));
    rep.check_zero("[d, S] = 0", commutator(psm.d, psm.S));
    rep.check_zero("[d, T] = 0", commutator(psm.d, psm.T));
    rep.check_zero("[S, T] = 0", commutator(psm.S, psm.T));
    rep.check_equal("T T^{-1} = 1", psm.T * psm.Tinv,
                    one.restricted(psm.T.lo(), psm.T.hi()));
    return rep;
}

SMapCheck check_s_map(const ParaSModule& src, const ParaSModule& tgt, const GradedMap& f) {
    SMapCheck c;
    c.chain_map = equals(f * src.d, tgt.d * f);
    c.commutes_with_S = equals(f * src.S, tgt.S * f);
    c.commutes_with_T = equals(f * src.T, tgt.T * f);
    return c;
}

QuasiSplitting quasi_split(const GradedMap& T, const std::optional<std::vector<Rat>>& Q) {
    const GradedModule& C = T.src();
    QuasiSplitting sp;
    sp.cert = ValidationReport("quasi splitting");
    GradedMap one = GradedMap::identity(C).restricted(T.lo(), T.hi());
    GradedMap oneMinusT = one - T;

    sp.ker.resize(C.window + 1);
    sp.ran.resize(C.window + 1);
    sp.RT.window = C.window;
    sp.RT.ranks.assign(C.window + 1, 0);
    for (int m = T.lo(); m <= T.hi(); ++m) {
        const SparseMat& omt = oneMinusT.block(m);
        sp.ker[m] = Subspace(static_cast<int>(C.rank(m)), kernel_basis(omt));
        sp.ran[m] = Subspace(static_cast<int>(C.rank(m)), image_basis(omt));
        sp.RT.ranks[m] = sp.ran[m].dim();
        if (sp.ker[m].dim() + sp.ran[m].dim() != C.rank(m))
            throw NotQuasi("degree " + std::to_string(m) +
                           ": dim ker(1-T) + dim ran(1-T) != dim C");
        if (!direct_sum_spans(sp.ker[m], sp.ran[m]))
            throw NotQuasi("degree " + std::to_string(m) +
                           ": ker(1-T) and ran(1-T) are not transverse");
    }
    sp.inclR = GradedMap::build(sp.RT, C, 0, T.lo(), T.hi(), [&](int m) {
        return sp.ran[m].basis().transpose();
    });

    if (Q) {
        Rat q1(0);
        for (const Rat& c : *Q) q1 += c;
        if (q1 != 1)
            throw NotQuasi("Q(1) != 1");
        GradedMap QT = gm_poly(*Q, T);
        GradedMap rel = QT * (T - one);
        if (!rel.is_zero())
            throw NotQuasi("Q(T)(T - 1) != 0");
        sp.piT = QT;
        sp.cert.check_true("Q(1) = 1", true);
        sp.cert.check_zero("Q(T)(T - 1) = 0", rel);
    } else {
        // Projector onto ker along ran: columns solved against the stacked
        // basis [K; R].
        sp.piT = GradedMap::build(C, C, 0, T.lo(), T.hi(), [&](int m) {
            int n = static_cast<int>(C.rank(m));
            const SparseMat& K = sp.ker[m].basis();
            const SparseMat& R = sp.ran[m].basis();
            SparseMat Bt = K.vstack(R).transpose();  // n x n, columns = basis
            SparseMat Binv = inverse(Bt);
            // keep the kernel-coordinate rows, then map back through K^t
            SparseMat sel(K.rows(), n);
            for (int i = 0; i < K.rows(); ++i) sel.set(i, i, Rat(1));
            return K.transpose() * (sel * Binv);
        });
    }

    // pi^T is the idempotent with range ker(1-T) annihilating ran(1-T).
    sp.cert.check_equal("piT^2 = piT", sp.piT * sp.piT, sp.piT);
    sp.cert.check_zero("piT (1-T) = 0", sp.piT * oneMinusT);
    sp.cert.check_zero("(1-T) piT = 0", oneMinusT * sp.piT);

    // G = (1-T)^{-1} on the range factor, 0 on the kernel factor.
    sp.G = GradedMap::build(C, C, 0, T.lo(), T.hi(), [&](int m) {
        int n = static_cast<int>(C.rank(m));
        const SparseMat& R = sp.ran[m].basis();
        int r = R.rows();
        if (r == 0) return SparseMat(n, n);
        // matrix of 1-T in ran coordinates
        SparseMat omtR = oneMinusT.block(m) * R.transpose();  // n x r
        SparseMat coords(r, r);
        for (int j = 0; j < r; ++j) {
            Vec col(n);
            for (int i = 0; i < n; ++i) col[i] = omtR.get(i, j);
            auto c = sp.ran[m].coordinates(col);
            if (!c) throw NotQuasi("1-T does not preserve its range");
            for (int i = 0; i < r; ++i) coords.set(i, j, (*c)[i]);
        }
        SparseMat inv_coords = inverse(coords);
        // ambient -> ran coords: reduce against the kernel-along-range split
        // using  x - piT x in ran, coordinates via the RREF of the basis.
        SparseMat toR(r, n);
        SparseMat rem = SparseMat::identity(n) - sp.piT.block(m);
        for (int j = 0; j < n; ++j) {
            Vec col(n);
            for (int i = 0; i < n; ++i) col[i] = rem.get(i, j);
            auto c = sp.ran[m].coordinates(col);
            if (!c) throw NotQuasi("1 - piT does not land in ran(1-T)");
            for (int i = 0; i < r; ++i) toR.set(i, j, (*c)[i]);
        }
        return R.transpose() * (inv_coords * toR);
    });
    GradedMap oneMinusPiT = one - sp.piT;
    sp.cert.check_equal("(1-T) G = 1 - piT", oneMinusT * sp.G, oneMinusPiT);
    sp.cert.check_equal("G (1-T) = 1 - piT", sp.G * oneMinusT, oneMinusPiT);
    if (!sp.cert.all_ok())
        throw NotQuasi("splitting certificate failed:\n" + sp.cert.to_text());
    return sp;
}

RetractRecord quasi_retract(const ParaSModule& psm, const QuasiSplitting& split,
                            const GradedMap& beta) {
    const GradedModule& C = psm.C;
    RetractRecord rr;
    rr.cert = ValidationReport(psm.name + " quasi retract");
    GradedMap one = GradedMap::identity(C);

    // beta must contract ran(1-T): d beta + beta d = 1 there, and be
    // (S,T)-compatible and supported on the range factor.
    GradedMap contract = anticommutator(psm.d, beta) * split.inclR - split.inclR;
    if (!contract.is_zero())
        throw HomotopyNotContracting("d beta + beta d != 1 on ran(1-T)");
    rr.cert.check_zero("(d beta + beta d - 1) | ran(1-T) = 0", contract);
    rr.cert.check_zero("[S, beta] = 0", commutator(psm.S, beta));
    rr.cert.check_zero("[T, beta] = 0", commutator(psm.T, beta));
    rr.cert.check_zero("beta piT = 0", beta * split.piT);

    rr.quot.resize(C.window + 1);
    rr.CT.window = C.window;
    rr.CT.ranks.assign(C.window + 1, 0);
    for (int m = 0; m <= C.window; ++m) {
        rr.quot[m] = quotient_by(split.ran[m]);
        rr.CT.ranks[m] = rr.quot[m].dim();
    }
    rr.pi_T = GradedMap::build(C, rr.CT, 0, [&](int m) { return rr.quot[m].proj; });
    rr.iota_T = GradedMap::build(rr.CT, C, 0, [&](int m) {
        return split.piT.block(m) * rr.quot[m].incl;
    });
    rr.h = -(beta * (one - split.piT));

    rr.cert.check_equal("pi_T iota_T = 1", rr.pi_T * rr.iota_T,
                        GradedMap::identity(rr.CT));
    rr.cert.check_equal("iota_T pi_T = piT", rr.iota_T * rr.pi_T, split.piT);
    rr.cert.check_equal("piT = 1 + d h + h d", split.piT,
                        one + anticommutator(psm.d, rr.h));
    rr.cert.check_zero("pi_T h = 0", rr.pi_T * rr.h);
    rr.cert.check_zero("h iota_T = 0", rr.h * rr.iota_T);
    rr.cert.check_zero("[S, h] = 0", commutator(psm.S, rr.h));
    rr.cert.check_zero("[T, h] = 0", commutator(psm.T, rr.h));

    // structure descends to CT; T becomes the identity there
    auto descend = [&](const GradedMap& f, const std::string& nm) {
        GradedMap fbar = rr.pi_T * f * rr.iota_T;
        rr.cert.check_equal(nm + " descends", rr.pi_T * f, fbar * rr.pi_T);
        return fbar;
    };
    rr.quotient_psm.name = psm.name + "_T";
    rr.quotient_psm.C = rr.CT;
    rr.quotient_psm.d = descend(psm.d, "d");
    rr.quotient_psm.S = descend(psm.S, "S");
    rr.quotient_psm.T = descend(psm.T, "T");
    rr.quotient_psm.Tinv = descend(psm.Tinv, "T^{-1}");
    rr.cert.check_equal("T = 1 on C_T", rr.quotient_psm.T,
                        GradedMap::identity(rr.CT).restricted(
                            rr.quotient_psm.T.lo(), rr.quotient_psm.T.hi()));
    rr.cert.merge(check_para_s(rr.quotient_psm));
    return rr;
}

Z2ParaComplex periodic_truncation(const ParaSModule& psm, int Qmax) {
    const GradedModule& C = psm.C;
    Z2ParaComplex z;
    z.Q = Qmax;
    z.cert = ValidationReport(psm.name + " periodic truncation");
    assert(2 * Qmax + 1 <= C.window);

    auto offsets = [&](int parity, int top) {
        std::vector<long> off;
        long acc = 0;
        for (int q = 0; q <= top; ++q) {
            off.push_back(acc);
            acc += C.rank(2 * q + parity);
        }
        off.push_back(acc);
        return off;
    };
    z.even_offset = offsets(0, Qmax);
    z.odd_offset = offsets(1, Qmax);
    long even_dim = z.even_offset.back();
    long odd_dim = z.odd_offset.back();
    long odd_dim_trunc = z.odd_offset[Qmax];  // slots 0..Q-1

    auto place = [&](SparseMat& M, long roff, long coff, const SparseMat& blk) {
        for (int i = 0; i < blk.rows(); ++i)
            for (const auto& [j, v] : blk.row(i))
                M.set(static_cast<int>(roff) + i, static_cast<int>(coff) + j, v);
    };

    // even -> odd carries the wraparound slot shift: slot q receives
    // d(x_{2q+2})
    z.d_eo = SparseMat(static_cast<int>(odd_dim_trunc), static_cast<int>(even_dim));
    for (int q = 0; q + 1 <= Qmax; ++q)
        place(z.d_eo, z.odd_offset[q], z.even_offset[q + 1], psm.d.block(2 * q + 2));
    // odd -> even is componentwise
    z.d_oe = SparseMat(static_cast<int>(even_dim), static_cast<int>(odd_dim));
    for (int q = 0; q <= Qmax; ++q)
        place(z.d_oe, z.even_offset[q], z.odd_offset[q], psm.d.block(2 * q + 1));

    auto diag = [&](int parity, int top, const GradedMap& f) {
        long dim = (parity == 0 ? z.even_offset[top + 1] : z.odd_offset[top + 1]);
        SparseMat M(static_cast<int>(dim), static_cast<int>(dim));
        for (int q = 0; q <= top; ++q)
            place(M, (parity == 0 ? z.even_offset[q] : z.odd_offset[q]),
                  (parity == 0 ? z.even_offset[q] : z.odd_offset[q]),
                  f.block(2 * q + parity));
        return M;
    };
    z.T_even = diag(0, Qmax, psm.T);
    z.T_odd = diag(1, Qmax, psm.T);

    auto shift = [&](int parity) {
        long dim_in = (parity == 0 ? even_dim : odd_dim);
        long dim_out = (parity == 0 ? z.even_offset[Qmax] : z.odd_offset[Qmax]);
        SparseMat M(static_cast<int>(dim_out), static_cast<int>(dim_in));
        for (int q = 0; q + 1 <= Qmax; ++q)
            place(M, (parity == 0 ? z.even_offset[q] : z.odd_offset[q]),
                  (parity == 0 ? z.even_offset[q + 1] : z.odd_offset[q + 1]),
                  psm.S.block(2 * (q + 1) + parity));
        return M;
    };
    z.shift_even = shift(0);
    z.shift_odd = shift(1);

    auto compat = [&](int parity) {
        long dim = (parity == 0 ? even_dim : odd_dim);
        int top_deg = 2 * Qmax + parity;
        SparseMat M(static_cast<int>(dim), static_cast<int>(C.rank(top_deg)));
        SparseMat acc = SparseMat::identity(static_cast<int>(C.rank(top_deg)));
        for (int q = Qmax; q >= 0; --q) {
            place(M, (parity == 0 ? z.even_offset[q] : z.odd_offset[q]), 0, acc);
            if (q > 0) acc = psm.S.block(2 * q + parity) * acc;
        }
        return M;
    };
    z.compat_even = compat(0);
    z.compat_odd = compat(1);

    // d^2 = (1-T) (compat shift), exactly, on raw tuples
    {
        // even: compose through O_{Q-1}, truncating the componentwise map
        SparseMat d_oe_trunc(static_cast<int>(z.even_offset[Qmax]),
                             static_cast<int>(odd_dim_trunc));
        for (int q = 0; q + 1 <= Qmax; ++q)
            place(d_oe_trunc, z.even_offset[q], z.odd_offset[q], psm.d.block(2 * q + 1));
        SparseMat sq_even = d_oe_trunc * z.d_eo;
        SparseMat ref_even =
            (SparseMat::identity(static_cast<int>(z.even_offset[Qmax])) -
             diag(0, Qmax - 1, psm.T)) *
            z.shift_even;
        z.cert.check_true("even: d^2 = (1-T) shift", sq_even == ref_even);

        // odd: d_eo already lands in O_{Q-1}
        SparseMat sq_odd = z.d_eo * z.d_oe;
        SparseMat ref_odd =
            (SparseMat::identity(static_cast<int>(z.odd_offset[Qmax])) -
             diag(1, Qmax - 1, psm.T)) *
            z.shift_odd;
        z.cert.check_true("odd: d^2 = (1-T) shift", sq_odd == ref_odd);
    }

    // compatible tuples are preserved: d (compat x) = compat' (...) is
    // checked implicitly by d^2; here certify S-compatibility of the
    // embedding: shift (compat x) = compat_{Q-1} x'.
    z.cert.check_true("compat tuples satisfy the defining shift relation", [&] {
        // shift_even * compat_even equals the truncated compat of S x_top
        SparseMat lhs = z.shift_even * z.compat_even;
        int top_deg = 2 * Qmax;
        SparseMat rhs(static_cast<int>(z.even_offset[Qmax]),
                      static_cast<int>(C.rank(top_deg)));
        SparseMat acc = psm.S.block(top_deg);
        for (int q = Qmax - 1; q >= 0; --q) {
            place(rhs, z.even_offset[q], 0, acc);
            if (q > 0) acc = psm.S.block(2 * q) * acc;
        }
        return lhs == rhs;
    }());
    return z;
}

} // namespace paracyc
