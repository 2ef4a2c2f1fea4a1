#ifndef PARACYC_PARA_S_HPP
#define PARACYC_PARA_S_HPP

#include "paracyc/graded.hpp"
#include "paracyc/report.hpp"
#include "paracyc/subspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace paracyc {

// (C, d, S, T) with d of degree -1, S of degree -2 and T an automorphism,
// subject to d^2 = S(1-T) and pairwise commutation.
struct ParaSModule {
    std::string name;
    GradedModule C;
    GradedMap d;     // shift -1
    GradedMap S;     // shift -2
    GradedMap T;     // shift 0, invertible
    GradedMap Tinv;
};

ValidationReport check_para_s(const ParaSModule& psm);

// S-map / S-homotopy flags for a candidate map between para-S-modules.
struct SMapCheck {
    bool chain_map = false;        // f d = d f
    bool commutes_with_S = false;
    bool commutes_with_T = false;
    bool is_s_map() const { return chain_map && commutes_with_S && commutes_with_T; }
};
SMapCheck check_s_map(const ParaSModule& src, const ParaSModule& tgt, const GradedMap& f);

// Splitting C = ker(1-T) (+) ran(1-T), with the associated projector and
// the inverse of 1-T on the range (extended by zero on the kernel).
struct QuasiSplitting {
    std::vector<Subspace> ker;   // per degree
    std::vector<Subspace> ran;
    GradedModule RT;             // ranks of ran(1-T)
    GradedMap inclR;             // RT -> C
    GradedMap piT;               // projector onto ker along ran
    GradedMap G;                 // (1-T)^{-1} on ran, 0 on ker
    ValidationReport cert;
};

// When Q is supplied (coefficients of Q(X), constant term first) it must
// satisfy Q(T)(T-1) = 0 and Q(1) = 1; then piT = Q(T).  Otherwise the
// projector is constructed from the kernel/range bases.  Throws NotQuasi
// when the splitting is not direct.
QuasiSplitting quasi_split(const GradedMap& T,
                           const std::optional<std::vector<Rat>>& Q = std::nullopt);

// Deformation retract of C onto C_T = C / ran(1-T) produced by a quasi
// splitting together with an (S,T)-compatible contracting homotopy beta of
// ran(1-T) (given as an ambient map vanishing on the kernel factor).
struct RetractRecord {
    GradedModule CT;
    std::vector<Quotient> quot;
    GradedMap pi_T;      // C -> CT
    GradedMap iota_T;    // CT -> C, class -> T-invariant representative
    GradedMap h;         // -beta (1 - piT)
    ParaSModule quotient_psm;
    ValidationReport cert;
};

RetractRecord quasi_retract(const ParaSModule& psm, const QuasiSplitting& split,
                            const GradedMap& beta);

// Z2-graded truncation of the periodic object: plain products of the
// degree-(2q+i) pieces, q <= Q.  The square of the differential equals
// (1-T) composed with the compatibility shift exactly; on compatible
// tuples this is the relation d^2 = 1-T away from the top slot.
struct Z2ParaComplex {
    int Q = 0;
    std::vector<long> even_offset, odd_offset;  // slot offsets, plus total at end
    SparseMat d_eo;       // even (slots 0..Q) -> odd (slots 0..Q-1)
    SparseMat d_oe;       // odd (slots 0..Q)  -> even (slots 0..Q)
    SparseMat T_even, T_odd;
    SparseMat shift_even; // (x_q) -> (S x_{q+1}), even slots 0..Q-1
    SparseMat shift_odd;
    // embeds x in C_{2Q+i} as the compatible tuple (S^{Q-q} x)_q
    SparseMat compat_even, compat_odd;
    ValidationReport cert;
};

Z2ParaComplex periodic_truncation(const ParaSModule& psm, int Qmax);

} // namespace paracyc

#endif
