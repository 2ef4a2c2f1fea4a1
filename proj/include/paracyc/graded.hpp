#ifndef PARACYC_GRADED_HPP
#define PARACYC_GRADED_HPP

#include "paracyc/errors.hpp"
#include "paracyc/matrix.hpp"

#include <functional>
#include <string>
#include <vector>

namespace paracyc {

// Non-negatively graded module truncated at a degree window [0, M].
// Degrees below 0 and above M have rank 0, but a map is only *defined* into
// degrees <= M; hitting a degree above M makes the degree undefined rather
// than zero.
struct GradedModule {
    int window = 0;
    std::vector<long> ranks;  // size window+1

    long rank(int m) const {
        return (m < 0 || m > window) ? 0 : ranks[m];
    }
    bool operator==(const GradedModule&) const = default;
};

// Degree-homogeneous family of matrix blocks C_m -> C_{m+shift}, trusted on
// source degrees [lo, hi].  Blocks into negative degrees are 0-row matrices
// (the zero map); degrees whose target would exceed the window are excluded
// from [lo, hi].
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(GradedModule src, GradedModule tgt, int shift, int lo, int hi,
              std::vector<SparseMat> blocks);

    // Builds blocks by callback for every degree in [lo, hi].
    static GradedMap build(const GradedModule& src, const GradedModule& tgt, int shift,
                           int lo, int hi,
                           const std::function<SparseMat(int)>& mk);
    // Window defaults to the largest admissible one.
    static GradedMap build(const GradedModule& src, const GradedModule& tgt, int shift,
                           const std::function<SparseMat(int)>& mk);
    static GradedMap identity(const GradedModule& mod);
    static GradedMap zero(const GradedModule& src, const GradedModule& tgt, int shift);

    const GradedModule& src() const { return src_; }
    const GradedModule& tgt() const { return tgt_; }
    int shift() const { return shift_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool window_empty() const { return lo_ > hi_; }

    const SparseMat& block(int m) const;

    GradedMap restricted(int lo, int hi) const;
    bool is_zero() const;

    GradedMap operator-() const;
    friend GradedMap operator+(const GradedMap& a, const GradedMap& b);
    friend GradedMap operator-(const GradedMap& a, const GradedMap& b);
    friend GradedMap operator*(const Rat& c, const GradedMap& a);
    // Composition f * g = "f after g".
    friend GradedMap operator*(const GradedMap& f, const GradedMap& g);

private:
    GradedModule src_, tgt_;
    int shift_ = 0;
    int lo_ = 0, hi_ = -1;
    std::vector<SparseMat> blocks_;  // indexed by source degree
};

// Largest window a shift-s map src -> tgt can carry.
std::pair<int, int> max_window(const GradedModule& src, const GradedModule& tgt, int s);

GradedMap commutator(const GradedMap& f, const GradedMap& g);
GradedMap anticommutator(const GradedMap& f, const GradedMap& g);

// Exact pointwise comparison on the intersection of the valid windows.
struct MapComparison {
    bool equal = true;
    int lo = 0, hi = -1;      // window compared
    int fail_degree = -1;     // first differing degree when !equal
    std::string note;
};
MapComparison compare(const GradedMap& a, const GradedMap& b);
bool equals(const GradedMap& a, const GradedMap& b);

// f^n for shift-0 endomorphism families; n >= 0.
GradedMap gm_pow(const GradedMap& f, int n);

// p(f) for a shift-0 endomorphism family; coeffs[k] multiplies f^k.
GradedMap gm_poly(const std::vector<Rat>& coeffs, const GradedMap& f);

// Per-degree exact inverse of a shift-0 family; throws SingularMatrix.
GradedMap gm_inverse(const GradedMap& f);

} // namespace paracyc

#endif
