#ifndef PARACYC_CYCLIC_HPP
#define PARACYC_CYCLIC_HPP

#include "paracyc/graded.hpp"
#include "paracyc/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace paracyc {

// Pre-simplicial data with an invertible cyclic operator; degeneracies and a
// contracting homotopy for the bar complex are optional.  All operators are
// explicit matrices per degree.
struct CyclicStructure {
    std::string name;
    GradedModule C;
    // faces[m][i] : C_m -> C_{m-1}, i = 0..m, for m = 0..window
    std::vector<std::vector<SparseMat>> faces;
    // degens[m][j] : C_m -> C_{m+1}, j = 0..m, for m = 0..window-1
    std::optional<std::vector<std::vector<SparseMat>>> degens;
    // t[m] : C_m -> C_m, invertible
    std::vector<SparseMat> t;
    // user-supplied contracting homotopy for (C, b'), m = 0..window-1
    std::optional<std::vector<SparseMat>> homotopy_s;

    bool has_degens() const { return degens.has_value(); }
    bool h_unital() const { return has_degens() || homotopy_s.has_value(); }
};

// Operators derived from the structure.  Shifts: b, b', d' are -1; tau, N,
// T are 0; s, s', extra degeneracy and B are +1.
struct DerivedOps {
    GradedMap b, bp, dprime;
    GradedMap tau, Nop, T, Tinv;
    std::optional<GradedMap> s_extra;   // t^{-1} s_0 t, when degeneracies exist
    std::optional<GradedMap> s;         // contracting homotopy in use
    std::optional<GradedMap> sprime;    // s b' s
    std::optional<GradedMap> B;         // (1 - tau) s' N
};

// Exhaustive per-degree, per-index check of the face, degeneracy, mixed,
// cyclic and extra-degeneracy relations, t-invertibility, and (when a
// homotopy is available) b's + sb' = 1 and [T, s] = 0.
ValidationReport validate(const CyclicStructure& cs);

DerivedOps derive_operators(const CyclicStructure& cs);

// B = (1 - tau) s' N with s' = s b' s; throws MissingHomotopy.
GradedMap operator_B(const CyclicStructure& cs);

// Identities satisfied by the derived operators (b^2 = 0, Nb = b'N, ...).
ValidationReport check_derived_identities(const CyclicStructure& cs,
                                          const DerivedOps& ops);

// Result of the change-of-homotopy isomorphism f = 1 + (1-tau) s_alt s' N u^{-1}
// on the associated cyclic-type total object.
struct HomotopyChangeIso {
    GradedMap f;       // on the total object
    GradedMap f_inv;   // geometric series inverse
    ValidationReport cert;
};

// Requires b's_alt + s_alt b' = 1, s_alt (1-T) s_alt = 0, [T, s_alt] = 0;
// throws HypothesisFailed naming the violated one.
HomotopyChangeIso homotopy_change_iso(const CyclicStructure& cs, const GradedMap& s_alt);

} // namespace paracyc

#endif
