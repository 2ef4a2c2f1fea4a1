#ifndef PARACYC_MATRIX_HPP
#define PARACYC_MATRIX_HPP

#include "paracyc/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace paracyc {

using Vec = std::vector<Rat>;

// Sparse matrix over Rat.  Rows are kept sorted by column index and never
// store zero entries.
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    static SparseMat identity(int n);
    static SparseMat zero(int rows, int cols) { return SparseMat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const std::vector<std::pair<int, Rat>>& row(int i) const { return data_[i]; }

    Rat get(int i, int j) const;
    // Overwrites the (i,j) entry. Erases it when v == 0.
    void set(int i, int j, const Rat& v);
    void add_to(int i, int j, const Rat& v);

    long nnz() const;
    bool is_zero() const;

    SparseMat transpose() const;
    Vec apply(const Vec& x) const;              // this * x
    Vec apply_transposed(const Vec& x) const;   // x^t * this, returned as a column

    friend SparseMat operator+(const SparseMat& a, const SparseMat& b);
    friend SparseMat operator-(const SparseMat& a, const SparseMat& b);
    friend SparseMat operator*(const SparseMat& a, const SparseMat& b);
    friend SparseMat operator*(const Rat& c, const SparseMat& a);
    SparseMat operator-() const;
    bool operator==(const SparseMat& o) const;

    // Rows of `other` appended below.
    SparseMat vstack(const SparseMat& other) const;
    // Columns of `other` appended to the right.
    SparseMat hstack(const SparseMat& other) const;
    SparseMat submatrix_cols(int col_begin, int col_end) const;

    void set_row(int i, std::vector<std::pair<int, Rat>> entries);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::pair<int, Rat>>> data_;
};

SparseMat row_matrix(const Vec& v);
SparseMat col_matrix(const Vec& v);
Vec dense_row(const SparseMat& m, int i);

// Reduced row echelon form with deterministic pivoting: columns are scanned
// left to right and the pivot is the lowest-index remaining row.
struct Echelon {
    int cols = 0;
    int rank = 0;
    std::vector<int> pivot_cols;                            // ascending
    std::vector<std::vector<std::pair<int, Rat>>> rows;     // rank rows, pivot entry 1
    std::vector<int> free_cols() const;
    // x minus its projection onto the row span; coeffs[i] is the multiple of
    // rows[i] removed.
    std::pair<Vec, Vec> reduce(const Vec& x) const;
    bool in_span(const Vec& x) const;
};

Echelon echelon(const SparseMat& m);

long rank(const SparseMat& m);

// Rows span the null space {x : m x = 0}; empty matrix when injective.
SparseMat kernel_basis(const SparseMat& m);

// Rows span the column space; the basis is the columns of m at the pivot
// column indices of its RREF.
SparseMat image_basis(const SparseMat& m);

std::optional<Vec> solve(const SparseMat& m, const Vec& rhs);

// Exact inverse; throws SingularMatrix when rank < n.
SparseMat inverse(const SparseMat& m);

} // namespace paracyc

#endif
