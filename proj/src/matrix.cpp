#include "paracyc/matrix.hpp"

#include "paracyc/errors.hpp"

#include <algorithm>
#include <cassert>

namespace paracyc {

namespace {

using Row = std::vector<std::pair<int, Rat>>;

// a += c * b, both sorted by column.
Row axpy(const Row& a, const Rat& c, const Row& b) {
    Row out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rat v = c * b[j].second;
            if (v != 0) out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            Rat v = a[i].second + c * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

const Rat* find_col(const Row& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != r.end() && it->first == col) return &it->second;
    return nullptr;
}

} // namespace

SparseMat SparseMat::identity(int n) {
    SparseMat m(n, n);
    for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rat(1));
    return m;
}

Rat SparseMat::get(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    const Rat* p = find_col(data_[i], j);
    return p ? *p : Rat(0);
}

void SparseMat::set(int i, int j, const Rat& v) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    auto& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
        if (v == 0)
            r.erase(it);
        else
            it->second = v;
    } else if (v != 0) {
        r.insert(it, {j, v});
    }
}

void SparseMat::add_to(int i, int j, const Rat& v) {
    if (v == 0) return;
    auto& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
        it->second += v;
        if (it->second == 0) r.erase(it);
    } else {
        r.insert(it, {j, v});
    }
}

long SparseMat::nnz() const {
    long n = 0;
    for (const auto& r : data_) n += static_cast<long>(r.size());
    return n;
}

bool SparseMat::is_zero() const {
    for (const auto& r : data_)
        if (!r.empty()) return false;
    return true;
}

SparseMat SparseMat::transpose() const {
    SparseMat t(cols_, rows_);
    std::vector<size_t> counts(cols_, 0);
    for (const auto& r : data_)
        for (const auto& [c, v] : r) counts[c]++;
    for (int c = 0; c < cols_; ++c) t.data_[c].reserve(counts[c]);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : data_[i]) t.data_[c].emplace_back(i, v);
    return t;
}

Vec SparseMat::apply(const Vec& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    Vec y(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : data_[i])
            if (x[c] != 0) y[i] += v * x[c];
    return y;
}

Vec SparseMat::apply_transposed(const Vec& x) const {
    assert(static_cast<int>(x.size()) == rows_);
    Vec y(cols_, Rat(0));
    for (int i = 0; i < rows_; ++i) {
        if (x[i] == 0) continue;
        for (const auto& [c, v] : data_[i]) y[c] += x[i] * v;
    }
    return y;
}

SparseMat operator+(const SparseMat& a, const SparseMat& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    SparseMat out(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
        out.data_[i] = axpy(a.data_[i], Rat(1), b.data_[i]);
    return out;
}

SparseMat operator-(const SparseMat& a, const SparseMat& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    SparseMat out(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
        out.data_[i] = axpy(a.data_[i], Rat(-1), b.data_[i]);
    return out;
}

SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    assert(a.cols_ == b.rows_);
    SparseMat out(a.rows_, b.cols_);
    // Row-by-row scatter accumulation.
    std::vector<Rat> acc(b.cols_, Rat(0));
    std::vector<int> touched;
    for (int i = 0; i < a.rows_; ++i) {
        touched.clear();
        for (const auto& [k, av] : a.data_[i]) {
            for (const auto& [j, bv] : b.data_[k]) {
                if (acc[j] == 0) touched.push_back(j);
                acc[j] += av * bv;
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& r = out.data_[i];
        r.reserve(touched.size());
        for (int j : touched) {
            if (acc[j] != 0) r.emplace_back(j, acc[j]);
            acc[j] = 0;
        }
    }
    return out;
}

SparseMat operator*(const Rat& c, const SparseMat& a) {
    SparseMat out(a.rows_, a.cols_);
    if (c == 0) return out;
    for (int i = 0; i < a.rows_; ++i) {
        out.data_[i].reserve(a.data_[i].size());
        for (const auto& [j, v] : a.data_[i]) out.data_[i].emplace_back(j, c * v);
    }
    return out;
}

SparseMat SparseMat::operator-() const { return Rat(-1) * *this; }

bool SparseMat::operator==(const SparseMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

SparseMat SparseMat::vstack(const SparseMat& other) const {
    assert(cols_ == other.cols_);
    SparseMat out(rows_ + other.rows_, cols_);
    for (int i = 0; i < rows_; ++i) out.data_[i] = data_[i];
    for (int i = 0; i < other.rows_; ++i) out.data_[rows_ + i] = other.data_[i];
    return out;
}

SparseMat SparseMat::hstack(const SparseMat& other) const {
    assert(rows_ == other.rows_);
    SparseMat out(rows_, cols_ + other.cols_);
    for (int i = 0; i < rows_; ++i) {
        out.data_[i] = data_[i];
        for (const auto& [j, v] : other.data_[i])
            out.data_[i].emplace_back(cols_ + j, v);
    }
    return out;
}

SparseMat SparseMat::submatrix_cols(int col_begin, int col_end) const {
    assert(0 <= col_begin && col_begin <= col_end && col_end <= cols_);
    SparseMat out(rows_, col_end - col_begin);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [j, v] : data_[i])
            if (j >= col_begin && j < col_end)
                out.data_[i].emplace_back(j - col_begin, v);
    return out;
}

void SparseMat::set_row(int i, std::vector<std::pair<int, Rat>> entries) {
    data_[i] = std::move(entries);
}

SparseMat row_matrix(const Vec& v) {
    SparseMat m(1, static_cast<int>(v.size()));
    for (int j = 0; j < static_cast<int>(v.size()); ++j)
        if (v[j] != 0) m.set(0, j, v[j]);
    return m;
}

SparseMat col_matrix(const Vec& v) {
    SparseMat m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[i] != 0) m.set(i, 0, v[i]);
    return m;
}

Vec dense_row(const SparseMat& m, int i) {
    Vec v(m.cols(), Rat(0));
    for (const auto& [j, x] : m.row(i)) v[j] = x;
    return v;
}

std::vector<int> Echelon::free_cols() const {
    std::vector<int> out;
    size_t p = 0;
    for (int c = 0; c < cols; ++c) {
        if (p < pivot_cols.size() && pivot_cols[p] == c)
            ++p;
        else
            out.push_back(c);
    }
    return out;
}

std::pair<Vec, Vec> Echelon::reduce(const Vec& x) const {
    assert(static_cast<int>(x.size()) == cols);
    Vec res = x;
    Vec coeffs(rank, Rat(0));
    for (int i = 0; i < rank; ++i) {
        const Rat& c = res[pivot_cols[i]];
        if (c == 0) continue;
        Rat f = c;       // pivot entries are 1
        coeffs[i] = f;
        for (const auto& [j, v] : rows[i]) res[j] -= f * v;
    }
    return {res, coeffs};
}

bool Echelon::in_span(const Vec& x) const {
    Vec res = reduce(x).first;
    for (const Rat& v : res)
        if (v != 0) return false;
    return true;
}

namespace {

// Shared forward elimination.  When `rref` is set, eliminates above the
// pivots too and normalizes pivots to 1.
//
// Rows are bucketed by their leading column: once columns < c are
// eliminated from a row, it has an entry at column c iff its front is c.
// Pivot choice is the lowest original row index in the bucket, so the
// procedure is deterministic (the RREF itself is canonical anyway).
Echelon eliminate(const SparseMat& m, bool rref) {
    Echelon e;
    e.cols = m.cols();
    std::vector<Row> work(m.rows());
    std::vector<std::vector<int>> bucket(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        work[i] = m.row(i);
        if (!work[i].empty()) bucket[work[i].front().first].push_back(i);
    }

    std::vector<int> pivot_rows;
    for (int c = 0; c < m.cols(); ++c) {
        auto& bk = bucket[c];
        if (bk.empty()) continue;
        std::sort(bk.begin(), bk.end());
        int prow = bk.front();
        Rat pval = work[prow].front().second;
        if (pval != 1) {
            Rat inv = Rat(1) / pval;
            for (auto& [j, v] : work[prow]) v *= inv;
        }
        for (size_t k = 1; k < bk.size(); ++k) {
            int r = bk[k];
            work[r] = axpy(work[r], -work[r].front().second, work[prow]);
            if (!work[r].empty()) bucket[work[r].front().first].push_back(r);
        }
        bk.clear();
        e.pivot_cols.push_back(c);
        pivot_rows.push_back(prow);
    }
    e.rank = static_cast<int>(e.pivot_cols.size());
    if (rref) {
        // Back-substitute pivots bottom-up.
        for (int i = e.rank - 1; i >= 0; --i) {
            int c = e.pivot_cols[i];
            for (int k = 0; k < i; ++k) {
                const Rat* entry = find_col(work[pivot_rows[k]], c);
                if (entry)
                    work[pivot_rows[k]] =
                        axpy(work[pivot_rows[k]], -*entry, work[pivot_rows[i]]);
            }
        }
        e.rows.reserve(e.rank);
        for (int i = 0; i < e.rank; ++i) e.rows.push_back(std::move(work[pivot_rows[i]]));
    }
    return e;
}

} // namespace

Echelon echelon(const SparseMat& m) { return eliminate(m, true); }

long rank(const SparseMat& m) { return eliminate(m, false).rank; }

SparseMat kernel_basis(const SparseMat& m) {
    Echelon e = echelon(m);
    std::vector<int> free = e.free_cols();
    SparseMat basis(static_cast<int>(free.size()), m.cols());
    for (size_t k = 0; k < free.size(); ++k) {
        int f = free[k];
        Row row;
        row.emplace_back(f, Rat(1));
        for (int i = 0; i < e.rank; ++i) {
            const Rat* v = find_col(e.rows[i], f);
            if (v) row.emplace_back(e.pivot_cols[i], -*v);
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        basis.set_row(static_cast<int>(k), std::move(row));
    }
    return basis;
}

SparseMat image_basis(const SparseMat& m) {
    Echelon e = echelon(m);
    SparseMat t = m.transpose();
    SparseMat basis(e.rank, m.rows());
    for (int i = 0; i < e.rank; ++i) basis.set_row(i, t.row(e.pivot_cols[i]));
    return basis;
}

std::optional<Vec> solve(const SparseMat& m, const Vec& rhs) {
    assert(static_cast<int>(rhs.size()) == m.rows());
    SparseMat aug = m.hstack(col_matrix(rhs));
    Echelon e = echelon(aug);
    Vec x(m.cols(), Rat(0));
    for (int i = 0; i < e.rank; ++i) {
        if (e.pivot_cols[i] == m.cols()) return std::nullopt;  // inconsistent
        const Rat* v = find_col(e.rows[i], m.cols());
        x[e.pivot_cols[i]] = v ? *v : Rat(0);
    }
    return x;
}

SparseMat inverse(const SparseMat& m) {
    if (m.rows() != m.cols())
        throw SingularMatrix("inverse: matrix is not square");
    int n = m.rows();
    SparseMat aug = m.hstack(SparseMat::identity(n));
    Echelon e = echelon(aug);
    if (e.rank != n || (e.rank > 0 && e.pivot_cols[n - 1] != n - 1))
        throw SingularMatrix("inverse: rank deficient");
    SparseMat inv(n, n);
    for (int i = 0; i < n; ++i) {
        Row row;
        for (const auto& [j, v] : e.rows[i])
            if (j >= n) row.emplace_back(j - n, v);
        inv.set_row(i, std::move(row));
    }
    return inv;
}

} // namespace paracyc
