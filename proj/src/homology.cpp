#include "paracyc/homology.hpp"

#include "paracyc/errors.hpp"

#include <cassert>
#include <sstream>

namespace paracyc {

ComplexHandle::ComplexHandle(std::string name, GradedMap d, int direction)
    : name_(std::move(name)), d_(std::move(d)), dir_(direction) {
    assert(d_.shift() == dir_);
    GradedMap sq = d_ * d_;
    if (!sq.is_zero())
        throw NotAChainMap(name_ + ": d^2 != 0");
    cache_.resize(d_.src().window + 1);
}

int ComplexHandle::max_degree() const {
    // the outgoing differential must be defined at m, and for chain
    // complexes the incoming one at m+1
    return dir_ == -1 ? d_.hi() - 1 : d_.hi();
}

long ComplexHandle::homology_rank(int m) const {
    if (m < 0 || m > max_degree())
        throw WindowExhausted(name_ + ": homology degree out of window");
    const SparseMat& out = d_.block(m);
    long ker = d_.src().rank(m) - rank(out);
    int m_in = m - dir_;
    long im = 0;
    if (m_in >= d_.lo() && m_in <= d_.hi()) im = rank(d_.block(m_in));
    return ker - im;
}

const ComplexHandle::Basis& ComplexHandle::basis(int m) const {
    if (m < 0 || m > max_degree())
        throw WindowExhausted(name_ + ": homology degree out of window");
    if (cache_[m]) return *cache_[m];

    Basis b;
    int n = static_cast<int>(d_.src().rank(m));
    b.cycles = Subspace(n, kernel_basis(d_.block(m)));
    int m_in = m - dir_;
    if (m_in >= d_.lo() && m_in <= d_.hi())
        b.boundaries = Subspace(n, image_basis(d_.block(m_in)));
    else
        b.boundaries = Subspace::zero(n);

    // boundaries in cycle coordinates, then the quotient
    int k = b.cycles.dim();
    SparseMat bnd_in_k(b.boundaries.dim(), k);
    for (int i = 0; i < b.boundaries.dim(); ++i) {
        auto c = b.cycles.coordinates(dense_row(b.boundaries.basis(), i));
        if (!c) throw NotAChainMap(name_ + ": boundary outside the cycle space");
        for (int j = 0; j < k; ++j) bnd_in_k.set(i, j, (*c)[j]);
    }
    Quotient q = quotient_by(Subspace(k, bnd_in_k));
    b.reps = q.incl.transpose() * b.cycles.basis();  // h x n
    b.to_coords = q.proj;                            // h x k (cycle coords in)
    cache_[m] = std::move(b);
    return *cache_[m];
}

std::optional<Vec> ComplexHandle::class_of(const Vec& v, int m) const {
    const Basis& b = basis(m);
    auto c = b.cycles.coordinates(v);
    if (!c) return std::nullopt;
    return b.to_coords.apply(*c);
}

SparseMat induced_map_on_homology(const ComplexHandle& src, const ComplexHandle& tgt,
                                  const GradedMap& f, int m) {
    if (!equals(f * src.d(), tgt.d() * f))
        throw NotAChainMap("induced map: f d != d f");
    const auto& bs = src.basis(m);
    int mt = m + f.shift();
    const auto& bt = tgt.basis(mt);
    SparseMat out(bt.reps.rows(), bs.reps.rows());
    for (int i = 0; i < bs.reps.rows(); ++i) {
        Vec img = f.block(m).apply(dense_row(bs.reps, i));
        auto cls = tgt.class_of(img, mt);
        if (!cls) throw NotAChainMap("induced map: image of a cycle is not a cycle");
        for (int r = 0; r < out.rows(); ++r) out.set(r, i, (*cls)[r]);
    }
    return out;
}

std::string AgreementReport::to_text() const {
    std::ostringstream os;
    os << "degree";
    for (const auto& n : names) os << "\t" << n;
    os << "\tequal\n";
    for (int m = lo; m <= hi; ++m) {
        os << m;
        bool eq = true;
        for (size_t i = 0; i < ranks.size(); ++i) {
            os << "\t" << ranks[i][m - lo];
            eq = eq && ranks[i][m - lo] == ranks[0][m - lo];
        }
        os << "\t" << (eq ? "yes" : "NO") << "\n";
    }
    return os.str();
}

AgreementReport agreement_report(const std::vector<ComplexHandle>& complexes, int hi) {
    AgreementReport ar;
    ar.lo = 0;
    ar.hi = hi;
    for (const auto& c : complexes) {
        ar.names.push_back(c.name());
        std::vector<long> row;
        for (int m = 0; m <= hi; ++m) row.push_back(c.homology_rank(m));
        ar.ranks.push_back(std::move(row));
    }
    for (int m = 0; m <= hi; ++m)
        for (const auto& row : ar.ranks)
            ar.all_equal = ar.all_equal && row[m] == ar.ranks[0][m];
    return ar;
}

std::string StabilizationReport::to_text() const {
    std::ostringstream os;
    os << "parity " << parity << ": dims";
    for (long d : space_dims) os << " " << d;
    os << "; composite ranks";
    for (long r : composite_ranks) os << " " << r;
    if (stabilized)
        os << "; stabilized rank " << stable_rank << " from index " << stable_index;
    else
        os << "; not stabilized in window";
    return os.str();
}

} // namespace paracyc
