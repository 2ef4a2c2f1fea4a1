#ifndef PARACYC_SUBSPACE_HPP
#define PARACYC_SUBSPACE_HPP

#include "paracyc/matrix.hpp"

#include <vector>

namespace paracyc {

// Row-span of a basis matrix inside an ambient coordinate space.  The stored
// basis is reduced to RREF, so dim() may be smaller than the number of rows
// passed in.
class Subspace {
public:
    Subspace() = default;
    Subspace(int ambient, const SparseMat& spanning_rows);

    static Subspace zero(int ambient) { return Subspace(ambient, SparseMat(0, ambient)); }
    static Subspace full(int ambient) { return Subspace(ambient, SparseMat::identity(ambient)); }

    int ambient() const { return ambient_; }
    int dim() const { return ech_.rank; }
    bool contains(const Vec& x) const { return ech_.in_span(x); }
    bool contains_rows(const SparseMat& rows) const;
    // basis vectors as rows (RREF)
    const SparseMat& basis() const { return basis_; }
    const Echelon& ech() const { return ech_; }

    // Coordinates of x in the RREF basis; nullopt when x is outside.
    std::optional<Vec> coordinates(const Vec& x) const;

private:
    int ambient_ = 0;
    SparseMat basis_;
    Echelon ech_;
};

// Quotient of the ambient space by a subspace, with a deterministic
// representative choice: the non-pivot coordinates of the subspace RREF,
// lowest indices first.
struct Quotient {
    int ambient = 0;
    std::vector<int> reps;  // ambient indices of representative coordinates
    SparseMat proj;         // dim x ambient;  proj * incl = identity, proj|sub = 0
    SparseMat incl;         // ambient x dim;  coordinate section
    int dim() const { return static_cast<int>(reps.size()); }
};

Quotient quotient_by(const Subspace& sub);

// Sum and intersection tests used by splitting checks.
bool direct_sum_spans(const Subspace& a, const Subspace& b);

} // namespace paracyc

#endif
