#include "paracyc/cyclic.hpp"

#include "paracyc/errors.hpp"

#include <cassert>

namespace paracyc {

namespace {

std::string idx2(const std::string& fmt, int i, int j) {
    return fmt + "  [i=" + std::to_string(i) + ", j=" + std::to_string(j) + "]";
}

} // namespace

ValidationReport validate(const CyclicStructure& cs) {
    ValidationReport rep(cs.name);
    const int M = cs.C.window;

    assert(static_cast<int>(cs.faces.size()) == M + 1);
    assert(static_cast<int>(cs.t.size()) == M + 1);

    // t invertible per degree
    for (int m = 0; m <= M; ++m) {
        bool ok = rank(cs.t[m]) == cs.C.rank(m);
        if (!ok) rep.note_fail("t invertible", m, "rank deficient");
    }
    rep.check_true("t invertible", true, "all degrees");

    // d_i d_j = d_{j-1} d_i  (i < j)
    for (int m = 2; m <= M; ++m) {
        for (int j = 1; j <= m; ++j) {
            for (int i = 0; i < j; ++i) {
                bool ok = cs.faces[m - 1][i] * cs.faces[m][j] ==
                          cs.faces[m - 1][j - 1] * cs.faces[m][i];
                if (!ok) rep.note_fail(idx2("d_i d_j = d_{j-1} d_i", i, j), m, "");
            }
        }
    }
    rep.check_true("d_i d_j = d_{j-1} d_i (i<j)", true, "all degrees, all pairs");

    // paracyclic relations: t d_i = d_{i+1} t (i < m), d_m = d_0 t
    for (int m = 0; m <= M; ++m) {
        for (int i = 0; i < m; ++i) {
            bool ok = cs.t[m - 1] * cs.faces[m][i] == cs.faces[m][i + 1] * cs.t[m];
            if (!ok) rep.note_fail(idx2("t d_i = d_{i+1} t", i, -1), m, "");
        }
        bool ok = cs.faces[m][m] == cs.faces[m][0] * cs.t[m];
        if (!ok) rep.note_fail("d_m = d_0 t", m, "");
    }
    rep.check_true("t d_i = d_{i+1} t, d_m = d_0 t", true, "all degrees");

    if (cs.has_degens()) {
        const auto& s = *cs.degens;
        assert(static_cast<int>(s.size()) >= M);  // degrees 0..M-1
        // s_i s_j = s_{j+1} s_i  (i <= j)
        for (int m = 0; m + 2 <= M; ++m) {
            for (int j = 0; j <= m; ++j)
                for (int i = 0; i <= j; ++i) {
                    bool ok = s[m + 1][i] * s[m][j] == s[m + 1][j + 1] * s[m][i];
                    if (!ok) rep.note_fail(idx2("s_i s_j = s_{j+1} s_i", i, j), m, "");
                }
        }
        rep.check_true("s_i s_j = s_{j+1} s_i (i<=j)", true, "all degrees");

        // mixed identities d_i s_j
        for (int m = 0; m + 1 <= M; ++m) {
            for (int j = 0; j <= m; ++j) {
                for (int i = 0; i <= m + 1; ++i) {
                    SparseMat lhs = cs.faces[m + 1][i] * s[m][j];
                    bool ok;
                    if (i == j || i == j + 1)
                        ok = lhs == SparseMat::identity(static_cast<int>(cs.C.rank(m)));
                    else if (i < j)
                        ok = lhs == s[m - 1][j - 1] * cs.faces[m][i];
                    else
                        ok = lhs == s[m - 1][j] * cs.faces[m][i - 1];
                    if (!ok) rep.note_fail(idx2("d_i s_j relation", i, j), m, "");
                }
            }
        }
        rep.check_true("d_i s_j relations", true, "all degrees");

        // t s_j = s_{j+1} t (j < m), t s_m = s_{-1} = t^{-1} s_0 t
        for (int m = 0; m + 1 <= M; ++m) {
            for (int j = 0; j < m; ++j) {
                bool ok = cs.t[m + 1] * s[m][j] == s[m][j + 1] * cs.t[m];
                if (!ok) rep.note_fail(idx2("t s_j = s_{j+1} t", j, -1), m, "");
            }
            SparseMat extra = inverse(cs.t[m + 1]) * s[m][0] * cs.t[m];
            bool ok = cs.t[m + 1] * s[m][m] == extra;
            if (!ok) rep.note_fail("t s_m = t^{-1} s_0 t", m, "");

            // extra degeneracy interactions
            // d_i s_{-1}: 1 (i=0), s_{-1} d_{i-1} (1<=i<=m), t (i=m+1)
            for (int i = 0; i <= m + 1; ++i) {
                SparseMat lhs = cs.faces[m + 1][i] * extra;
                bool ok2;
                if (i == 0)
                    ok2 = lhs == SparseMat::identity(static_cast<int>(cs.C.rank(m)));
                else if (i == m + 1)
                    ok2 = lhs == cs.t[m];
                else {
                    SparseMat extra_lower = inverse(cs.t[m]) * s[m - 1][0] * cs.t[m - 1];
                    ok2 = lhs == extra_lower * cs.faces[m][i - 1];
                }
                if (!ok2) rep.note_fail(idx2("d_i s_{-1} relation", i, -1), m, "");
            }
        }
        rep.check_true("t s_j and extra-degeneracy relations", true, "all degrees");
    }

    // contracting homotopy axioms, when one is available
    const CyclicStructure& c = cs;
    if (c.h_unital()) {
        DerivedOps ops = derive_operators(cs);
        ValidationReport sub("homotopy");
        sub.check_equal("b' s + s b' = 1", anticommutator(ops.bp, *ops.s),
                        GradedMap::identity(cs.C).restricted(0, M - 1));
        sub.check_zero("[T, s] = 0", commutator(ops.T, *ops.s));
        rep.merge(sub);
    }
    return rep;
}

DerivedOps derive_operators(const CyclicStructure& cs) {
    const int M = cs.C.window;
    const GradedModule& C = cs.C;

    auto face_sum = [&](int m, int upto, bool alternate) {
        SparseMat acc(static_cast<int>(C.rank(m - 1)), static_cast<int>(C.rank(m)));
        for (int i = 0; i <= upto; ++i) {
            if (alternate && (i % 2))
                acc = acc - cs.faces[m][i];
            else
                acc = acc + cs.faces[m][i];
        }
        return acc;
    };

    DerivedOps ops;
    ops.b = GradedMap::build(C, C, -1, [&](int m) { return face_sum(m, m, true); });
    ops.bp = GradedMap::build(C, C, -1, [&](int m) { return face_sum(m, m - 1, true); });
    ops.dprime = ops.b - ops.bp;

    GradedMap t = GradedMap::build(C, C, 0, [&](int m) { return cs.t[m]; });
    ops.tau = GradedMap::build(C, C, 0, [&](int m) {
        return (m % 2) ? -cs.t[m] : cs.t[m];
    });
    ops.Nop = GradedMap::build(C, C, 0, [&](int m) {
        SparseMat acc = SparseMat::identity(static_cast<int>(C.rank(m)));
        SparseMat pw = acc;
        const SparseMat& tm = ops.tau.block(m);
        for (int j = 1; j <= m; ++j) {
            pw = tm * pw;
            acc = acc + pw;
        }
        return acc;
    });
    ops.T = GradedMap::build(C, C, 0, [&](int m) {
        SparseMat acc = SparseMat::identity(static_cast<int>(C.rank(m)));
        for (int j = 0; j <= m; ++j) acc = cs.t[m] * acc;
        return acc;
    });
    ops.Tinv = gm_inverse(ops.T);

    if (cs.has_degens()) {
        ops.s_extra = GradedMap::build(C, C, 1, 0, M - 1, [&](int m) {
            return inverse(cs.t[m + 1]) * (*cs.degens)[m][0] * cs.t[m];
        });
        ops.s = ops.s_extra;
    } else if (cs.homotopy_s) {
        ops.s = GradedMap::build(C, C, 1, 0, M - 1,
                                 [&](int m) { return (*cs.homotopy_s)[m]; });
    }
    if (ops.s) {
        const GradedMap& s = *ops.s;
        ops.sprime = GradedMap::build(C, C, 1, 0, M - 1, [&](int m) {
            return s.block(m) * ops.bp.block(m + 1) * s.block(m);
        });
        ops.B = GradedMap::build(C, C, 1, 0, M - 1, [&](int m) {
            return (SparseMat::identity(static_cast<int>(C.rank(m + 1))) -
                    ops.tau.block(m + 1)) *
                   ops.sprime->block(m) * ops.Nop.block(m);
        });
    }
    return ops;
}

GradedMap operator_B(const CyclicStructure& cs) {
    DerivedOps ops = derive_operators(cs);
    if (!ops.B)
        throw MissingHomotopy("operator B needs degeneracies or a contracting homotopy");
    return *ops.B;
}

ValidationReport check_derived_identities(const CyclicStructure& cs,
                                          const DerivedOps& ops) {
    ValidationReport rep(cs.name + " derived operators");
    const GradedMap one = GradedMap::identity(cs.C);
    const GradedMap oneMinusTau = one - ops.tau;
    const GradedMap oneMinusT = one - ops.T;

    rep.check_zero("b^2 = 0", ops.b * ops.b);
    rep.check_zero("b'^2 = 0", ops.bp * ops.bp);
    rep.check_equal("b (1-tau) = (1-tau) b'", ops.b * oneMinusTau, oneMinusTau * ops.bp);
    rep.check_equal("N b = b' N", ops.Nop * ops.b, ops.bp * ops.Nop);
    rep.check_equal("(1-tau) N = 1 - T", oneMinusTau * ops.Nop, oneMinusT);
    rep.check_equal("N (1-tau) = 1 - T", ops.Nop * oneMinusTau, oneMinusT);
    rep.check_zero("[T, b] = 0", commutator(ops.T, ops.b));
    rep.check_zero("[T, b'] = 0", commutator(ops.T, ops.bp));
    rep.check_zero("[T, tau] = 0", commutator(ops.T, ops.tau));
    rep.check_zero("[T, N] = 0", commutator(ops.T, ops.Nop));
    for (int m = 1; m <= cs.C.window; ++m)
        for (int i = 0; i <= m; ++i) {
            bool ok = ops.T.block(m - 1) * cs.faces[m][i] ==
                      cs.faces[m][i] * ops.T.block(m);
            if (!ok)
                rep.note_fail("[T, d_i] = 0  [i=" + std::to_string(i) + "]", m, "");
        }
    rep.check_true("[T, d_i] = 0 (all i)", true, "all degrees");

    if (ops.sprime) {
        const GradedMap& sp = *ops.sprime;
        rep.check_equal("b' s' + s' b' = 1",
                        anticommutator(ops.bp, sp),
                        one.restricted(0, cs.C.window - 1));
        rep.check_zero("s'^2 = 0", sp * sp);
        rep.check_zero("s' (1-T) s' = 0", sp * oneMinusT * sp);
        rep.check_zero("[T, s'] = 0", commutator(ops.T, sp));
    }
    if (ops.B) {
        rep.check_equal("b B + B b = 1 - T", anticommutator(ops.b, *ops.B),
                        oneMinusT.restricted(0, cs.C.window - 1));
        rep.check_zero("B^2 = 0", *ops.B * *ops.B);
        rep.check_zero("[T, B] = 0", commutator(ops.T, *ops.B));
    }
    return rep;
}

} // namespace paracyc
