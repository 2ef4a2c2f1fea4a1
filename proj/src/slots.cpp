#include "paracyc/slots.hpp"

#include <algorithm>
#include <cassert>

namespace paracyc {

SlotModule SlotModule::make(const GradedModule& base, int step) {
    SlotModule s;
    s.base = base;
    s.step = step;
    s.total.window = base.window;
    s.total.ranks.assign(base.window + 1, 0);
    for (int m = 0; m <= base.window; ++m) {
        long acc = 0;
        for (int p = 0; p <= m / step; ++p) acc += base.rank(m - step * p);
        s.total.ranks[m] = acc;
    }
    return s;
}

long SlotModule::offset(int m, int p) const {
    long acc = 0;
    for (int k = 0; k < p; ++k) acc += base.rank(qof(m, k));
    return acc;
}

SparseMat SlotModule::embed_block(int m, int p) const {
    SparseMat e(static_cast<int>(total.rank(m)), static_cast<int>(base.rank(qof(m, p))));
    long off = offset(m, p);
    for (int j = 0; j < e.cols(); ++j) e.set(static_cast<int>(off) + j, j, Rat(1));
    return e;
}

SparseMat SlotModule::project_block(int m, int p) const {
    SparseMat e(static_cast<int>(base.rank(qof(m, p))), static_cast<int>(total.rank(m)));
    long off = offset(m, p);
    for (int i = 0; i < e.rows(); ++i) e.set(i, static_cast<int>(off) + i, Rat(1));
    return e;
}

GradedMap SlotModule::lift(const GradedMap& f) const {
    return slot_lift(*this, *this, f);
}

GradedMap slot_lift(const SlotModule& src, const SlotModule& tgt, const GradedMap& f) {
    assert(src.step == tgt.step);
    assert(f.src() == src.base && f.tgt() == tgt.base);
    int s = f.shift();
    // Every summand C_q with q in [0, m] must be covered by f's window,
    // except that targets in negative degree contribute zero; so the lifted
    // window is capped by f's own window.
    int hi = std::min({src.total.window, tgt.total.window - s, f.hi()});
    assert(f.lo() == 0);
    auto mk = [&](int m) {
        SparseMat blk(static_cast<int>(tgt.total.rank(m + s)),
                      static_cast<int>(src.total.rank(m)));
        for (int p = 0; p <= m / src.step; ++p) {
            int q = src.qof(m, p);
            if (q + s < 0) continue;
            assert(q >= f.lo() && q <= f.hi());
            const SparseMat& fb = f.block(q);
            long roff = tgt.offset(m + s, p), coff = src.offset(m, p);
            for (int i = 0; i < fb.rows(); ++i)
                for (const auto& [j, v] : fb.row(i))
                    blk.set(static_cast<int>(roff) + i, static_cast<int>(coff) + j, v);
        }
        return blk;
    };
    return GradedMap::build(src.total, tgt.total, s, 0, hi, mk);
}

GradedMap SlotModule::u_inv(int power) const {
    int s = -power * step;
    auto mk = [&](int m) {
        SparseMat blk(static_cast<int>(total.rank(m + s)),
                      static_cast<int>(total.rank(m)));
        for (int p = power; p <= m / step; ++p) {
            long roff = offset(m + s, p - power), coff = offset(m, p);
            int q = qof(m, p);
            for (int j = 0; j < base.rank(q); ++j)
                blk.set(static_cast<int>(roff) + j, static_cast<int>(coff) + j, Rat(1));
        }
        return blk;
    };
    return GradedMap::build(total, total, s, 0, total.window, mk);
}

GradedMap slot_lift_drop(const SlotModule& src, const SlotModule& tgt, const GradedMap& f,
                         int drop) {
    assert(src.step == tgt.step);
    assert(f.src() == src.base && f.tgt() == tgt.base);
    assert(f.lo() == 0);
    int step = src.step;
    int s = f.shift() - step * drop;
    // Slots with p >= drop carry f on base degree q <= m - step*drop.
    int hi = std::min({src.total.window, tgt.total.window - s, f.hi() + step * drop});
    auto mk = [&](int m) {
        SparseMat blk(static_cast<int>(tgt.total.rank(m + s)),
                      static_cast<int>(src.total.rank(m)));
        for (int p = drop; p <= m / step; ++p) {
            int q = src.qof(m, p);
            if (q + f.shift() < 0) continue;
            const SparseMat& fb = f.block(q);
            long roff = tgt.offset(m + s, p - drop), coff = src.offset(m, p);
            for (int i = 0; i < fb.rows(); ++i)
                for (const auto& [j, v] : fb.row(i))
                    blk.set(static_cast<int>(roff) + i, static_cast<int>(coff) + j, v);
        }
        return blk;
    };
    return GradedMap::build(src.total, tgt.total, s, 0, hi, mk);
}

GradedMap SlotModule::pi0() const {
    return GradedMap::build(total, base, 0,
                            [&](int m) { return project_block(m, 0); });
}

GradedMap SlotModule::emb0() const {
    return GradedMap::build(base, total, 0, [&](int m) { return embed_block(m, 0); });
}

} // namespace paracyc
