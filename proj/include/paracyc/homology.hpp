#ifndef PARACYC_HOMOLOGY_HPP
#define PARACYC_HOMOLOGY_HPP

#include "paracyc/cyclic.hpp"
#include "paracyc/graded.hpp"
#include "paracyc/report.hpp"
#include "paracyc/subspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace paracyc {

// Honest complex (d^2 = 0 certified on the guard-banded window).  direction
// +1 wraps cochain complexes; the differential's shift must match.
class ComplexHandle {
public:
    ComplexHandle(std::string name, GradedMap d, int direction = -1);

    const std::string& name() const { return name_; }
    const GradedModule& module() const { return d_.src(); }
    const GradedMap& d() const { return d_; }
    int direction() const { return dir_; }
    // largest degree with a trustworthy homology computation
    int max_degree() const;

    long homology_rank(int m) const;

    // deterministic homology basis: pivoted kernel basis modulo pivoted
    // image, representatives as rows in C_m coordinates.  Memoized per
    // degree, so share a handle across threads only behind a lock.
    struct Basis {
        SparseMat reps;          // h x n
        Subspace cycles;         // kernel of d_m
        Subspace boundaries;     // image of the incoming differential
        SparseMat to_coords;     // h x n: cycle -> homology coordinates
    };
    const Basis& basis(int m) const;

    // homology class of a cycle; nullopt when v is not a cycle
    std::optional<Vec> class_of(const Vec& v, int m) const;

private:
    std::string name_;
    GradedMap d_;
    int dir_;
    mutable std::vector<std::optional<Basis>> cache_;
};

// matrix of the induced map on homology in the deterministic bases;
// throws NotAChainMap unless f d = d f on the common window
SparseMat induced_map_on_homology(const ComplexHandle& src, const ComplexHandle& tgt,
                                  const GradedMap& f, int m);

// Per-degree rank table of several complexes with equality verdicts.
struct AgreementReport {
    std::vector<std::string> names;
    std::vector<std::vector<long>> ranks;  // ranks[i][m]
    int lo = 0, hi = -1;
    bool all_equal = true;
    std::string to_text() const;
};

AgreementReport agreement_report(const std::vector<ComplexHandle>& complexes, int hi);

// Direct-limit rank detection for a sequence V_i -> V_{i+2} -> ... of
// homology spaces under a degree +2 (or -2) map: ranks of the composites
// into the top window stage, with the first index where they stabilize.
struct StabilizationReport {
    int parity = 0;
    std::vector<long> space_dims;       // dim H^{i+2q}
    std::vector<long> composite_ranks;  // rank of H^{i+2q} -> H^{top}
    bool stabilized = false;
    long stable_rank = 0;
    int stable_index = -1;  // first q with constant composite rank onwards
    std::string to_text() const;
};

} // namespace paracyc

#endif
