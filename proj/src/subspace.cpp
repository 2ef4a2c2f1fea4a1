#include "paracyc/subspace.hpp"

#include <cassert>

namespace paracyc {

Subspace::Subspace(int ambient, const SparseMat& spanning_rows) : ambient_(ambient) {
    assert(spanning_rows.cols() == ambient);
    ech_ = echelon(spanning_rows);
    basis_ = SparseMat(ech_.rank, ambient);
    for (int i = 0; i < ech_.rank; ++i) basis_.set_row(i, ech_.rows[i]);
}

bool Subspace::contains_rows(const SparseMat& rows) const {
    for (int i = 0; i < rows.rows(); ++i)
        if (!contains(dense_row(rows, i))) return false;
    return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& x) const {
    auto [res, coeffs] = ech_.reduce(x);
    for (const Rat& v : res)
        if (v != 0) return std::nullopt;
    return coeffs;
}

Quotient quotient_by(const Subspace& sub) {
    Quotient q;
    q.ambient = sub.ambient();
    q.reps = sub.ech().free_cols();
    int d = static_cast<int>(q.reps.size());
    q.incl = SparseMat(sub.ambient(), d);
    for (int k = 0; k < d; ++k) q.incl.set(q.reps[k], k, Rat(1));
    // proj: reduce each ambient basis vector modulo the subspace RREF and
    // read off the representative coordinates.  For a pivot column j killed
    // by RREF row i the result is minus the free part of that row; for a
    // representative column it is the matching unit vector.
    q.proj = SparseMat(d, sub.ambient());
    std::vector<int> rep_index(sub.ambient(), -1);
    for (int k = 0; k < d; ++k) rep_index[q.reps[k]] = k;
    for (int k = 0; k < d; ++k) q.proj.set(k, q.reps[k], Rat(1));
    const Echelon& e = sub.ech();
    for (int i = 0; i < e.rank; ++i) {
        int pcol = e.pivot_cols[i];
        for (const auto& [j, v] : e.rows[i]) {
            if (j == pcol) continue;
            assert(rep_index[j] >= 0);
            q.proj.add_to(rep_index[j], pcol, -v);
        }
    }
    return q;
}

bool direct_sum_spans(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) return false;
    if (a.dim() + b.dim() != a.ambient()) return false;
    return rank(a.basis().vstack(b.basis())) == a.ambient();
}

} // namespace paracyc
