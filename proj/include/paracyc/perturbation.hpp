#ifndef PARACYC_PERTURBATION_HPP
#define PARACYC_PERTURBATION_HPP

#include "paracyc/graded.hpp"
#include "paracyc/report.hpp"

#include <optional>
#include <string>

namespace paracyc {

// Graded module with two degree -1 operators; neither is assumed to square
// to zero.  Delta = delta^2 + dl delta + delta dl measures the failure.
struct ParaTwinComplex {
    std::string name;
    GradedModule C;
    GradedMap dl;
    GradedMap delta;

    GradedMap Delta() const;
};

// Input of the perturbation recipe: g f = 1 + dl phi + phi dl on the source,
// with (delta phi) nilpotent degreewise within the stated bound.
struct TransferenceData {
    ParaTwinComplex source;  // carries phi
    ParaTwinComplex target;
    GradedMap f;             // source -> target
    GradedMap g;             // target -> source
    GradedMap phi;           // source -> source, shift +1
    int nilpotency_bound = 0;
};

// Checks the homotopy identity; throws HypothesisFailed when it fails.
TransferenceData make_transference(ParaTwinComplex source, ParaTwinComplex target,
                                   GradedMap f, GradedMap g, GradedMap phi,
                                   int nilpotency_bound);

struct PerturbedData {
    GradedMap phi_t;    // sum phi (delta phi)^j
    GradedMap f_t;      // f (1 + delta phi_t)
    GradedMap g_t;      // (1 + phi_t delta) g
    GradedMap delta_t;  // f (delta + delta phi_t delta) g
};

// Evaluates the geometric sums exactly; throws SeriesDiverges when the
// powers of (delta phi) fail to vanish within the bound.
PerturbedData perturb(const TransferenceData& td);

// Hypotheses: [dl, f] = [dl, g] = 0; phi special (f phi = 0, phi g = 0,
// phi^2 = 0); [Delta, phi] = 0.  Conclusions: the perturbed maps intertwine
// the perturbed operators, the homotopy transfers, f_t g_t = fg, the defect
// of delta_t is f Delta g, and phi_t is special again.
// enforce_hypotheses = false runs the conclusion battery even when a
// hypothesis fails (for negative controls) instead of throwing.
ValidationReport verify_lemma_special(const TransferenceData& td, const PerturbedData& pd,
                                      bool enforce_hypotheses = true);

// Variant without the specialness assumption: Delta = 0 on both sides,
// [delta, f] = 0, f phi = 0, [dl, g] = 0.
ValidationReport verify_lemma_delta_zero(const TransferenceData& td, const PerturbedData& pd);

// Special-homotopy converter (needs f g = 1 and dl^2 = 0):
// phi_hat = phi_t dl phi_t with phi_t = (1-gf) phi (1-gf).
struct SpecialHomotopy {
    GradedMap phi_hat;
    ValidationReport cert;
};
SpecialHomotopy make_special(const GradedMap& f, const GradedMap& g, const GradedMap& phi,
                             const GradedMap& dl);

// Parachain specialization: a Hochschild deformation retract
// (f g = 1, g f = 1 + b phi + phi b, all T-compatible, phi special)
// is co-extended to the cyclic-type total objects.  B_coeffs[j] is
// f (B phi)^j B g, the u^{-j}-coefficient of the transferred degree +1
// operator.
struct ParachainPerturbation {
    GradedMap f_nat, g_nat, phi_nat;   // on the total objects
    std::vector<GradedMap> B_coeffs;   // on the target base
    GradedMap B_tilde_total;           // the full transferred perturbation
    bool target_unchanged = false;     // B_coeffs = (B, 0, 0, ...)
    ValidationReport cert;
};

struct ParachainPair {
    GradedModule C;
    GradedMap b, B, T;
};

ParachainPerturbation specialize_parachain(const ParachainPair& source,
                                           const ParachainPair& target,
                                           const GradedMap& f, const GradedMap& g,
                                           const GradedMap& phi);

} // namespace paracyc

#endif
