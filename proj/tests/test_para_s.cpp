#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "paracyc/builders.hpp"
#include "paracyc/errors.hpp"
#include "paracyc/para_s.hpp"
#include "paracyc/zoo.hpp"

using namespace paracyc;

TEST_CASE("the cyclic-type total object of the scalar structure is a para-S-module") {
    CyclicStructure cs = zoo("trivial-Q", 6);
    NaturalComplex nat = build_natural(cs);
    INFO(nat.cert.to_text());
    CHECK(nat.cert.all_ok());
    // d^2 = 0 here since T = 1
    CHECK((nat.psm.d * nat.psm.d).is_zero());
    // dim of the total object in degree 4: summands q = 4, 2, 0
    CHECK(nat.psm.C.rank(4) == 3);
}

TEST_CASE("the bicomplex-type total object of the twisted group structure") {
    CyclicStructure cs = zoo("group-Z2-phi-g", 5);
    DoubleNaturalComplex nn = build_double_natural(cs);
    INFO(nn.cert.to_text());
    CHECK(nn.cert.all_ok());
    // d^2 = (1-T) u^{-2} is nonzero here
    CHECK(!(nn.psm.d * nn.psm.d).is_zero());
}

TEST_CASE("a corrupted S-operator fails the bracket identity") {
    CyclicStructure cs = zoo("group-Z2-phi-g", 5);
    DoubleNaturalComplex nn = build_double_natural(cs);
    ParaSModule bad = nn.psm;
    bad.S = nn.psm.S * (GradedMap::identity(nn.psm.C) - nn.psm.T);
    ValidationReport rep = check_para_s(bad);
    CHECK(!rep.all_ok());
    bool bracket_failed = false;
    for (const auto& fchk : rep.failures())
        if (fchk.identity.find("[d, S]") != std::string::npos ||
            fchk.identity.find("d^2") != std::string::npos)
            bracket_failed = true;
    CHECK(bracket_failed);
}

TEST_CASE("quasi splitting with the averaging polynomial (order 2)") {
    CyclicStructure cs = zoo("group-Z2-phi-g", 4);
    DerivedOps ops = derive_operators(cs);
    QuasiSplitting sp = quasi_split(ops.T, averaging_polynomial(2));
    INFO(sp.cert.to_text());
    CHECK(sp.cert.all_ok());
    // piT = (1+T)/2
    GradedMap expect = gm_poly({frac(1, 2), frac(1, 2)}, ops.T);
    CHECK(equals(sp.piT, expect));

    // degree 0: ker(1-T) = span{e+g}, ran(1-T) = span{e-g}
    REQUIRE(sp.ker[0].dim() == 1);
    REQUIRE(sp.ran[0].dim() == 1);
    Vec sum = {Rat(1), Rat(1)}, diff = {Rat(1), Rat(-1)};
    CHECK(sp.ker[0].contains(sum));
    CHECK(sp.ran[0].contains(diff));
}

TEST_CASE("generic splitting agrees with the polynomial projector") {
    for (const auto& name : {"sign-twisted", "group-Z3-phi-g"}) {
        int r = std::string(name) == "group-Z3-phi-g" ? 3 : 2;
        CyclicStructure cs = zoo(name, 3);
        DerivedOps ops = derive_operators(cs);
        QuasiSplitting with_poly = quasi_split(ops.T, averaging_polynomial(r));
        QuasiSplitting generic = quasi_split(ops.T);
        CHECK(equals(with_poly.piT, generic.piT));
        CHECK(equals(with_poly.G, generic.G));
    }
}

TEST_CASE("T = identity gives the trivial splitting") {
    CyclicStructure cs = zoo("trivial-Q", 4);
    DerivedOps ops = derive_operators(cs);
    QuasiSplitting sp = quasi_split(ops.T);
    CHECK(equals(sp.piT, GradedMap::identity(cs.C)));
    for (int m = 0; m <= 4; ++m) CHECK(sp.ran[m].dim() == 0);
    CHECK(sp.G.is_zero());
}

TEST_CASE("a bad polynomial is rejected") {
    CyclicStructure cs = zoo("group-Z2-phi-g", 3);
    DerivedOps ops = derive_operators(cs);
    CHECK_THROWS_AS(quasi_split(ops.T, averaging_polynomial(3)), NotQuasi);
}

TEST_CASE("quasi retract of the cyclic-type total object") {
    CyclicStructure cs = zoo("group-Z2-phi-g", 5);
    DerivedOps ops = derive_operators(cs);
    QuasiSplitting base_split = quasi_split(ops.T, averaging_polynomial(2));
    NaturalComplex nat = build_natural(cs);
    QuasiMixedPack qp =
        quasi_mixed_pack(cs, ops, base_split, nat, build_double_natural(cs));

    // lift the splitting and the contracting homotopy to the total object
    QuasiSplitting sp_nat = quasi_split(nat.psm.T, averaging_polynomial(2));
    GradedMap beta_nat = nat.slots.lift(qp.beta);
    RetractRecord rr = quasi_retract(nat.psm, sp_nat, beta_nat);
    INFO(rr.cert.to_text());
    CHECK(rr.cert.all_ok());
    // h^2 = 0 for this instance
    CHECK((rr.h * rr.h).is_zero());
}

TEST_CASE("quasi retract of the bicomplex-type total object") {
    CyclicStructure cs = zoo("sign-twisted", 5);
    DerivedOps ops = derive_operators(cs);
    QuasiSplitting base_split = quasi_split(ops.T, averaging_polynomial(2));
    DoubleNaturalComplex nn = build_double_natural(cs);
    QuasiMixedPack qp = quasi_mixed_pack(cs, ops, base_split, build_natural(cs), nn);

    QuasiSplitting sp_nn = quasi_split(nn.psm.T, averaging_polynomial(2));
    RetractRecord rr = quasi_retract(nn.psm, sp_nn, qp.beta_nn);
    INFO(rr.cert.to_text());
    CHECK(rr.cert.all_ok());
    CHECK((rr.h * rr.h).is_zero());
}

TEST_CASE("trivial retract when T = 1") {
    CyclicStructure cs = zoo("dual-numbers", 4);
    NaturalComplex nat = build_natural(cs);
    QuasiSplitting sp = quasi_split(nat.psm.T);
    GradedMap beta = GradedMap::zero(nat.psm.C, nat.psm.C, 1);
    RetractRecord rr = quasi_retract(nat.psm, sp, beta);
    INFO(rr.cert.to_text());
    CHECK(rr.cert.all_ok());
    CHECK(equals(rr.pi_T * rr.iota_T, GradedMap::identity(rr.CT)));
    CHECK(rr.h.is_zero());
    CHECK(rr.CT.ranks == nat.psm.C.ranks);
}

TEST_CASE("a non-contracting homotopy is rejected") {
    CyclicStructure cs = zoo("group-Z2-phi-g", 4);
    NaturalComplex nat = build_natural(cs);
    QuasiSplitting sp_nat = quasi_split(nat.psm.T, averaging_polynomial(2));
    GradedMap beta = GradedMap::zero(nat.psm.C, nat.psm.C, 1);  // T != 1 here
    CHECK_THROWS_AS(quasi_retract(nat.psm, sp_nat, beta), HomotopyNotContracting);
}

TEST_CASE("periodic truncation: honest input gives a complex away from the tail") {
    CyclicStructure cs = zoo("trivial-Q", 7);
    NaturalComplex nat = build_natural(cs);
    Z2ParaComplex z = periodic_truncation(nat.psm, 3);
    INFO(z.cert.to_text());
    CHECK(z.cert.all_ok());
    CHECK((z.d_eo * z.d_oe).is_zero());  // T = 1
}

TEST_CASE("periodic truncation: para case squares to (1-T) shift") {
    CyclicStructure cs = zoo("group-Z2-phi-g", 7);
    DoubleNaturalComplex nn = build_double_natural(cs);
    Z2ParaComplex z = periodic_truncation(nn.psm, 3);
    INFO(z.cert.to_text());
    CHECK(z.cert.all_ok());
    CHECK(!(z.d_eo * z.d_oe).is_zero());
}

TEST_CASE("the truncated periodic object carries the b + B differential") {
    // assembly check: a plain tuple (y_{2q}) is identified with the
    // compatible total-object tuple x_{2q} = sum_r y_{2r} u^{q-r}; under
    // this identification the differential acts as b y_{2q+2} + B y_{2q}.
    CyclicStructure cs = zoo("trivial-Q", 7);
    DerivedOps ops = derive_operators(cs);
    NaturalComplex nat = build_natural(cs);
    Z2ParaComplex z = periodic_truncation(nat.psm, 3);
    const SlotModule& S = nat.slots;
    const GradedModule& C = cs.C;
    const int Q = 3;

    auto offsets = [&](int parity, int top, bool total_obj) {
        std::vector<long> off;
        long acc = 0;
        for (int q = 0; q <= top; ++q) {
            off.push_back(acc);
            acc += total_obj ? S.total.rank(2 * q + parity) : C.rank(2 * q + parity);
        }
        off.push_back(acc);
        return off;
    };
    auto assemble = [&](int parity, int top) {
        std::vector<long> roff = offsets(parity, top, true);
        std::vector<long> coff = offsets(parity, top, false);
        SparseMat E(static_cast<int>(roff.back()), static_cast<int>(coff.back()));
        for (int q = 0; q <= top; ++q)
            for (int r = 0; r <= q; ++r) {
                SparseMat emb = S.embed_block(2 * q + parity, q - r);
                for (int i = 0; i < emb.rows(); ++i)
                    for (const auto& [j, v] : emb.row(i))
                        E.set(static_cast<int>(roff[q]) + i,
                              static_cast<int>(coff[r]) + j, v);
            }
        return E;
    };

    std::vector<long> ecf = offsets(0, Q, false);
    std::vector<long> orf = offsets(1, Q - 1, false);
    SparseMat bB(static_cast<int>(orf.back()), static_cast<int>(ecf.back()));
    for (int q = 0; q < Q; ++q) {
        const SparseMat& bblk = ops.b.block(2 * q + 2);
        for (int i = 0; i < bblk.rows(); ++i)
            for (const auto& [j, v] : bblk.row(i))
                bB.set(static_cast<int>(orf[q]) + i, static_cast<int>(ecf[q + 1]) + j,
                       v);
        const SparseMat& Bblk = ops.B->block(2 * q);
        for (int i = 0; i < Bblk.rows(); ++i)
            for (const auto& [j, v] : Bblk.row(i))
                bB.set(static_cast<int>(orf[q]) + i, static_cast<int>(ecf[q]) + j, v);
    }
    CHECK(z.d_eo * assemble(0, Q) == assemble(1, Q - 1) * bB);
}

TEST_CASE("S-map flags propagate through composition") {
    CyclicStructure cs = zoo("group-Z2-phi-g", 4);
    NaturalComplex nat = build_natural(cs);
    DoubleNaturalComplex nn = build_double_natural(cs);
    // slot-zero inclusion composed with projection: both S-maps, composite too
    GradedMap idm = GradedMap::identity(nat.psm.C);
    SMapCheck c1 = check_s_map(nat.psm, nat.psm, idm);
    CHECK(c1.is_s_map());
    SMapCheck c2 = check_s_map(nat.psm, nat.psm, nat.psm.T);
    CHECK(c2.is_s_map());
    SMapCheck c3 = check_s_map(nat.psm, nat.psm, nat.psm.T * nat.psm.T);
    CHECK(c3.is_s_map());
    // a non-chain-map is flagged
    SMapCheck bad = check_s_map(nat.psm, nat.psm, nat.psm.T + idm.restricted(0, 3));
    CHECK(bad.commutes_with_T);
    CHECK(bad.chain_map);  // T and 1 both chain maps, sum is too
    SMapCheck worse = check_s_map(nn.psm, nn.psm, nn.dl * nn.psm.S);
    CHECK(!worse.is_s_map());
}

TEST_CASE("a non-split automorphism is rejected") {
    // Jordan block: ker(1-T) and ran(1-T) coincide
    GradedModule m;
    m.window = 2;
    m.ranks.assign(3, 2);
    GradedMap T = GradedMap::build(m, m, 0, [&](int) {
        SparseMat t = SparseMat::identity(2);
        t.set(0, 1, Rat(1));
        return t;
    });
    CHECK_THROWS_AS(quasi_split(T), NotQuasi);
}
