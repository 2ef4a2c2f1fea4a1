#ifndef PARACYC_BUILDERS_HPP
#define PARACYC_BUILDERS_HPP

#include "paracyc/cyclic.hpp"
#include "paracyc/para_s.hpp"
#include "paracyc/slots.hpp"
#include "paracyc/subspace.hpp"

namespace paracyc {

// Cyclic-type total object of (C, b, B): summands C_q u^p with 2p + q = m,
// differential b + B u^{-1}, S = u^{-1}, T acting slotwise.
struct NaturalComplex {
    SlotModule slots;
    GradedMap b, B;             // base operators
    GradedMap T_base, Tinv_base;
    ParaSModule psm;
    ValidationReport cert;
};

// T defaults to 1 - (bB + Bb); pass the structural T when available (it
// covers one more degree).  Throws NotParachain when the axioms fail.
NaturalComplex build_natural(const GradedModule& C, const GradedMap& b, const GradedMap& B,
                             const std::optional<GradedMap>& T = std::nullopt,
                             const std::string& name = "C-natural");

NaturalComplex build_natural(const CyclicStructure& cs);

// Bicomplex-type total object of a para-precyclic structure: summands
// C_q u^p with p + q = m, operators
//   dl: (1-tau) on odd u-columns, N on positive even ones
//   delta: b on even u-columns, -b' on odd ones
struct DoubleNaturalComplex {
    SlotModule slots;
    GradedMap dl, delta;
    GradedMap tau, Nop;         // base operators
    ParaSModule psm;            // d = dl + delta, S = u^{-2}
    ValidationReport cert;
};

DoubleNaturalComplex build_double_natural(const CyclicStructure& cs);

// Connes-type quotient complex: L_m = C_m / ran(1 - tau) with the induced b.
struct LambdaComplex {
    GradedModule L;
    std::vector<Quotient> quot;
    std::vector<Subspace> ran_tau;
    GradedMap pi;    // C -> L
    GradedMap incl;  // coordinate section L -> C
    GradedMap b;     // induced differential
    ValidationReport cert;
};

LambdaComplex build_lambda(const CyclicStructure& cs);

// Structure induced on C_T = C / ran(1-T); all structural operators descend.
struct StructureQuotient {
    CyclicStructure sub;
    std::vector<Quotient> quot;
    std::vector<Subspace> ranT;
    GradedMap pi;    // C -> C_T
    GradedMap incl;
    ValidationReport cert;
};

StructureQuotient build_quotient_T(const CyclicStructure& cs, const DerivedOps& ops);

// Structure restricted to C^T = ker(1-T).
struct StructureRestriction {
    CyclicStructure sub;
    std::vector<Subspace> kerT;
    GradedMap incl;  // C^T -> C
    ValidationReport cert;
};

StructureRestriction build_invariants_T(const CyclicStructure& cs, const DerivedOps& ops);

// Quasi-splitting package on the parachain and bicomplex levels:
//   beta  = (1-T)^{-1} B on the range factor (contracts it),
//   h     = -beta (1 - piT),
//   Btilde = piT B  (a mixed complex differential),
//   Ntilde = N piT  (bicomplex with dl-tilde squaring to zero),
//   beta_nn / h_nn   their counterparts on the bicomplex-type total object.
struct QuasiMixedPack {
    GradedMap beta, h, Btilde, Ntilde;
    GradedMap dl_tilde;          // dl with N replaced by Ntilde
    GradedMap beta_nn, h_nn;
    ValidationReport cert;
};

QuasiMixedPack quasi_mixed_pack(const CyclicStructure& cs, const DerivedOps& ops,
                                const QuasiSplitting& split, const NaturalComplex& nat,
                                const DoubleNaturalComplex& nn);

} // namespace paracyc

#endif
