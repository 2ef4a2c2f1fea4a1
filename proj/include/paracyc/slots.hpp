#ifndef PARACYC_SLOTS_HPP
#define PARACYC_SLOTS_HPP

#include "paracyc/graded.hpp"

namespace paracyc {

// Total object with summands C_q u^p, step*p + q = m, ordered by ascending
// p.  step = 2 gives the cyclic-type total object, step = 1 the
// bicomplex-type one.  u^{-1} is a pure index shift.
struct SlotModule {
    GradedModule base;
    int step = 2;
    GradedModule total;

    static SlotModule make(const GradedModule& base, int step);

    int nslots(int m) const { return m / step + 1; }
    int qof(int m, int p) const { return m - step * p; }
    long offset(int m, int p) const;

    SparseMat embed_block(int m, int p) const;    // total_m x base_q
    SparseMat project_block(int m, int p) const;  // base_q x total_m

    // slotwise lift of a base family: x u^p -> (f x) u^p
    GradedMap lift(const GradedMap& f) const;
    GradedMap u_inv(int power = 1) const;  // x u^p -> x u^{p-power}
    GradedMap pi0() const;                 // slot p = 0 projection
    GradedMap emb0() const;                // slot p = 0 inclusion
};

// Slotwise lift across two slot modules with the same step: the block of f
// in base degree q acts on every summand C_q u^p.
GradedMap slot_lift(const SlotModule& src, const SlotModule& tgt, const GradedMap& f);

// x u^p -> (f x) u^{p-drop}; summands with p < drop are killed.  This is
// how "f u^{-drop}" operators act on total objects.
GradedMap slot_lift_drop(const SlotModule& src, const SlotModule& tgt, const GradedMap& f,
                         int drop);

} // namespace paracyc

#endif
