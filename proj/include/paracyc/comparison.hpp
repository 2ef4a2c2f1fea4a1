#ifndef PARACYC_COMPARISON_HPP
#define PARACYC_COMPARISON_HPP

#include "paracyc/builders.hpp"
#include "paracyc/homology.hpp"
#include "paracyc/para_s.hpp"
#include "paracyc/perturbation.hpp"

#include <optional>

namespace paracyc {

// Averaged operators over Q: hat divides by m+1 in degree m, Dhat is the
// weighted cyclic sum with Nhat + (1-tau) Dhat = 1, bphat divides b' by m.
struct HatOps {
    GradedMap hat;    // shift 0
    GradedMap Nhat;   // N hat
    GradedMap Dhat;
    GradedMap bphat;  // shift -1, zero out of degree 0
    GradedMap xi;     // -bphat Dhat b, shift -2
    GradedMap eta;    // -Dhat b, shift -1
    ValidationReport cert;
};

HatOps build_hat_ops(const CyclicStructure& cs, const DerivedOps& ops);

// Everything the comparison maps need about one structure.
struct ComparisonContext {
    CyclicStructure cs;
    DerivedOps ops;
    NaturalComplex nat;   // requires a contracting homotopy
    DoubleNaturalComplex nn;
    LambdaComplex lam;
    HatOps hat;

    GradedMap pi0_nat() const { return nat.slots.pi0(); }
    GradedMap pi0_nn() const { return nn.slots.pi0(); }
    GradedMap pi_nat() const { return lam.pi * nat.slots.pi0(); }
    GradedMap pi_nn() const { return lam.pi * nn.slots.pi0(); }
};

ComparisonContext make_context(const CyclicStructure& cs);

// Slot maps between the two total objects and their perturbation:
// I embeds x u^p as x u^{2p} (+ correction), J projects back, h contracts
// the odd columns through s'.
struct IJhPack {
    GradedMap I0, J0, h;
    GradedMap I, J;
    TransferenceData td;
    PerturbedData pd;
    ValidationReport cert;
};

IJhPack build_IJh(const ComparisonContext& ctx);

// The almost-inverse of the zero-slot projection on the bicomplex side.
struct NuNNPack {
    GradedMap nu;      // x -> Nhat x u^0
    GradedMap phi9;    // the starting contraction of the dl-complex
    GradedMap nu0;     // perturbed: chain homotopy inverse up to ran(1-tau)
    GradedMap mu;      // nu0 = mu N
    GradedMap phi_nn;  // perturbed homotopy
    TransferenceData td;
    PerturbedData pd;
    ValidationReport cert;
};

NuNNPack build_nu_nn(const ComparisonContext& ctx);

// Its counterpart on the cyclic-type side, through J.
struct NuNPack {
    GradedMap nu0;    // J nu0_nn
    GradedMap phi_n;  // J phi_nn I
    GradedMap mu;     // J mu_nn
    ValidationReport cert;
};

NuNPack build_nu_n(const ComparisonContext& ctx, const IJhPack& ijh, const NuNNPack& nn);

// Deformation retracts of the T-quotient total objects onto the Connes
// quotient complex, with the quasi-splitting variants into the objects
// themselves and the honest variants when T = 1.
struct LambdaRetracts {
    StructureQuotient sq;          // C_T
    ComparisonContext ctxT;        // structure machinery of C_T
    GradedMap piT_nn, piT_nat;     // slotwise projections to the quotients
    GradedMap inclT_nn, inclT_nat;

    GradedMap nu_bar_nn, pi_bar_nn, phi_bar_nn;    // on the C_T bicomplex side
    GradedMap nu_bar_nat, pi_bar_nat, phi_bar_nat; // on the C_T cyclic-type side

    std::optional<GradedMap> nuT_nn, phiT_nn;      // quasi case
    std::optional<GradedMap> nuT_nat, phiT_nat;
    std::optional<GradedMap> nu_pre_nn, nu_pre_nat;  // T = 1 case

    ValidationReport cert;
};

LambdaRetracts build_lambda_retracts(const ComparisonContext& ctx, const IJhPack& ijh,
                                     const NuNNPack& nunn, const NuNPack& nun,
                                     const std::optional<QuasiSplitting>& split,
                                     const std::optional<QuasiMixedPack>& pack);

// The degree -2 operator on the Connes quotient complex, by four routes:
//   1. zero-slot projection of u^{-2} nu0 on the bicomplex side
//   2. the double end-face formula  -(1/(m-1)) (d Dhat d Nhat x)^lambda
//   3. a pure double-face expansion: expanding Dhat and Nhat into powers of
//      tau and pushing the end faces through them with the rotation
//      relations gives, with r = (k+l) mod m,
//        S = -(1/((m-1)m(m+1))) sum_{k<=m-1} sum_{l<=m}
//             (-1)^{(m-1)(k+l)+(m-2)r+l} (m-1-k) (d_{m-1-r} d_{m-l} x)^lambda
//   4. zero-slot projection of u^{-1} nu0 on the cyclic-type side
//
// The comparison maps into the quotient complex intertwine S with the slot
// shifts up to explicit chain homotopies; the certificates construct them.
// `display_claims` separately records two stronger textbook-style shapes
// (the on-the-nose S-map property of the comparison maps and the weighted
// (-1)^{i+j} double-face sum); exact arithmetic refutes both on structures
// with more than one basis vector, so they do not gate anything.
struct PeriodicityPack {
    GradedMap S0;       // on C, shift -2
    GradedMap S;        // on the quotient complex
    GradedMap psi0_nn, psi_nn;  // the homotopies making the projections S-maps
    GradedMap psi0_nat, psi_nat;
    ValidationReport cert;
    ValidationReport display_claims;
};

PeriodicityPack periodicity_S(const ComparisonContext& ctx, const IJhPack& ijh,
                              const NuNNPack& nunn, const NuNPack& nun,
                              const LambdaRetracts& lr);

// B S(x^lambda) = -b x-bar modulo ran[b(1-tau)], certified by a preimage.
struct BSCertificate {
    int degree = 0;
    Vec x;
    Vec preimage;
    ValidationReport cert;
};

BSCertificate connes_BS_check(const ComparisonContext& ctx, const LambdaRetracts& lr,
                              const PeriodicityPack& per, int m, const Vec& x);

// Cochain side.  A degree-m cochain on the T-quotient total object is a row
// functional; its components phi_m, phi_{m-2}, ... are the slot blocks.
struct Cochain {
    int degree = 0;
    std::vector<Vec> comps;  // comps[j] is a functional on C_{T, degree-2j}
};

struct CocycleConversion {
    Vec cyclic;              // functional on the quotient-complex coordinates
    Vec lifted;              // the same functional pulled back to C_degree
    Cochain coboundary;      // certificate chi with iota(nu(phi)) - phi = chi d
    ValidationReport cert;
};

CocycleConversion convert_cocycle(const ComparisonContext& ctx, const LambdaRetracts& lr,
                                  const Cochain& phi);

// Cochain-level rank data: HC^n of the T-quotient, the induced periodicity
// maps, the stabilized periodic ranks, and the action transporting cocycles
// to the Connes cochain complex.
struct CochainStabilization {
    std::vector<long> hc_ranks;              // n = 0..top
    std::vector<SparseMat> S_matrices;       // HC^n -> HC^{n+2}
    StabilizationReport even, odd;
    std::vector<SparseMat> nu_action;        // HC^n -> H^n_lambda, isos
    ValidationReport cert;
};

CochainStabilization periodic_cochain_stabilize(const ComparisonContext& ctx,
                                                const LambdaRetracts& lr,
                                                const GradedMap& per_S);

// pi^lambda b' Dhat b N = pi^lambda d Dhat d N with d the end face.
ValidationReport check_quotient_face_identity(const ComparisonContext& ctx);

} // namespace paracyc

#endif
