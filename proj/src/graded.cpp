#include "paracyc/graded.hpp"

#include <algorithm>
#include <cassert>

namespace paracyc {

std::pair<int, int> max_window(const GradedModule& src, const GradedModule& tgt, int s) {
    // Source degrees must lie in [0, src.window]; target degree m+s may be
    // negative (zero module) but not above tgt.window.
    int lo = 0;
    int hi = std::min(src.window, tgt.window - s);
    return {lo, hi};
}

GradedMap::GradedMap(GradedModule src, GradedModule tgt, int shift, int lo, int hi,
                     std::vector<SparseMat> blocks)
    : src_(std::move(src)), tgt_(std::move(tgt)), shift_(shift), lo_(lo), hi_(hi),
      blocks_(std::move(blocks)) {
    if (lo_ <= hi_) {
        assert(lo_ >= 0 && hi_ <= src_.window);
        assert(static_cast<int>(blocks_.size()) == hi_ - lo_ + 1);
        for (int m = lo_; m <= hi_; ++m) {
            const SparseMat& b = blocks_[m - lo_];
            assert(b.rows() == tgt_.rank(m + shift_));
            assert(b.cols() == src_.rank(m));
            (void)b;
        }
    }
}

GradedMap GradedMap::build(const GradedModule& src, const GradedModule& tgt, int shift,
                           int lo, int hi, const std::function<SparseMat(int)>& mk) {
    std::vector<SparseMat> blocks;
    if (lo <= hi) {
        blocks.reserve(hi - lo + 1);
        for (int m = lo; m <= hi; ++m) blocks.push_back(mk(m));
    }
    return GradedMap(src, tgt, shift, lo, hi, std::move(blocks));
}

GradedMap GradedMap::build(const GradedModule& src, const GradedModule& tgt, int shift,
                           const std::function<SparseMat(int)>& mk) {
    auto [lo, hi] = max_window(src, tgt, shift);
    return build(src, tgt, shift, lo, hi, mk);
}

GradedMap GradedMap::identity(const GradedModule& mod) {
    return build(mod, mod, 0, [&](int m) {
        return SparseMat::identity(static_cast<int>(mod.rank(m)));
    });
}

GradedMap GradedMap::zero(const GradedModule& src, const GradedModule& tgt, int shift) {
    return build(src, tgt, shift, [&](int m) {
        return SparseMat(static_cast<int>(tgt.rank(m + shift)),
                         static_cast<int>(src.rank(m)));
    });
}

const SparseMat& GradedMap::block(int m) const {
    assert(m >= lo_ && m <= hi_);
    return blocks_[m - lo_];
}

GradedMap GradedMap::restricted(int lo, int hi) const {
    lo = std::max(lo, lo_);
    hi = std::min(hi, hi_);
    if (lo > hi) return GradedMap(src_, tgt_, shift_, 1, 0, {});
    std::vector<SparseMat> blocks(blocks_.begin() + (lo - lo_),
                                  blocks_.begin() + (hi - lo_ + 1));
    return GradedMap(src_, tgt_, shift_, lo, hi, std::move(blocks));
}

bool GradedMap::is_zero() const {
    for (const auto& b : blocks_)
        if (!b.is_zero()) return false;
    return true;
}

GradedMap GradedMap::operator-() const { return Rat(-1) * *this; }

GradedMap operator+(const GradedMap& a, const GradedMap& b) {
    if (a.shift_ != b.shift_)
        throw ShiftMismatch("add: shifts " + std::to_string(a.shift_) + " vs " +
                            std::to_string(b.shift_));
    assert(a.src_ == b.src_ && a.tgt_ == b.tgt_);
    int lo = std::max(a.lo_, b.lo_), hi = std::min(a.hi_, b.hi_);
    return GradedMap::build(a.src_, a.tgt_, a.shift_, lo, hi,
                            [&](int m) { return a.block(m) + b.block(m); });
}

GradedMap operator-(const GradedMap& a, const GradedMap& b) { return a + (-b); }

GradedMap operator*(const Rat& c, const GradedMap& a) {
    return GradedMap::build(a.src_, a.tgt_, a.shift_, a.lo_, a.hi_,
                            [&](int m) { return c * a.block(m); });
}

GradedMap operator*(const GradedMap& f, const GradedMap& g) {
    assert(f.src_ == g.tgt_);
    // Window: m valid for g, and either g lands in a degree valid for f or
    // in a negative degree (zero module, composite is zero).
    int lo = g.lo_, hi = g.hi_;
    auto mid_ok = [&](int m) {
        int mid = m + g.shift_;
        return mid < 0 || (mid >= f.lo_ && mid <= f.hi_);
    };
    while (lo <= hi && !mid_ok(lo)) ++lo;
    while (lo <= hi && !mid_ok(hi)) --hi;
    for (int m = lo; m <= hi; ++m)
        if (!mid_ok(m)) { hi = m - 1; break; }  // keep the window contiguous
    int shift = f.shift_ + g.shift_;
    if (lo > hi)
        throw WindowExhausted("compose: empty window");
    return GradedMap::build(g.src_, f.tgt_, shift, lo, hi, [&](int m) {
        int mid = m + g.shift_;
        if (mid < 0)
            return SparseMat(static_cast<int>(f.tgt_.rank(m + shift)),
                             static_cast<int>(g.src_.rank(m)));
        return f.block(mid) * g.block(m);
    });
}

GradedMap commutator(const GradedMap& f, const GradedMap& g) {
    return f * g - g * f;
}

GradedMap anticommutator(const GradedMap& f, const GradedMap& g) {
    return f * g + g * f;
}

MapComparison compare(const GradedMap& a, const GradedMap& b) {
    MapComparison r;
    if (a.shift() != b.shift()) {
        r.equal = false;
        r.note = "shift mismatch";
        return r;
    }
    r.lo = std::max(a.lo(), b.lo());
    r.hi = std::min(a.hi(), b.hi());
    if (r.lo > r.hi) {
        r.equal = false;
        r.note = "empty common window";
        return r;
    }
    for (int m = r.lo; m <= r.hi; ++m) {
        if (!(a.block(m) == b.block(m))) {
            r.equal = false;
            r.fail_degree = m;
            return r;
        }
    }
    return r;
}

bool equals(const GradedMap& a, const GradedMap& b) { return compare(a, b).equal; }

GradedMap gm_pow(const GradedMap& f, int n) {
    assert(f.shift() == 0 && n >= 0);
    GradedMap acc = GradedMap::identity(f.src()).restricted(f.lo(), f.hi());
    for (int k = 0; k < n; ++k) acc = f * acc;
    return acc;
}

GradedMap gm_poly(const std::vector<Rat>& coeffs, const GradedMap& f) {
    assert(f.shift() == 0);
    // Horner evaluation.
    GradedMap idm = GradedMap::identity(f.src()).restricted(f.lo(), f.hi());
    GradedMap acc = GradedMap::zero(f.src(), f.tgt(), 0).restricted(f.lo(), f.hi());
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
        acc = f * acc + coeffs[k] * idm;
    return acc;
}

GradedMap gm_inverse(const GradedMap& f) {
    assert(f.shift() == 0);
    return GradedMap::build(f.src(), f.tgt(), 0, f.lo(), f.hi(),
                            [&](int m) { return inverse(f.block(m)); });
}

} // namespace paracyc
