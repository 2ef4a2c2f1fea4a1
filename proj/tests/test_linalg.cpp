#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "paracyc/errors.hpp"
#include "paracyc/matrix.hpp"
#include "paracyc/rational.hpp"
#include "paracyc/subspace.hpp"

#include <random>

using namespace paracyc;

namespace {

SparseMat from_rows(const std::vector<std::vector<long>>& rows, int cols) {
    SparseMat m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (int j = 0; j < cols; ++j)
            if (rows[i][j] != 0) m.set(i, j, Rat(rows[i][j]));
    return m;
}

SparseMat random_matrix(std::mt19937_64& rng, int rows, int cols) {
    SparseMat m(rows, cols);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            int v = val(rng);
            if (v != 0 && rng() % 2) m.set(i, j, Rat(v));
        }
    return m;
}

} // namespace

TEST_CASE("rational parsing stays canonical") {
    CHECK(rat_str(rat_parse("3/6")) == "1/2");
    CHECK(rat_str(rat_parse("-4/8")) == "-1/2");
    CHECK(rat_str(rat_parse("7")) == "7");
    CHECK(rat_parse("0/5") == 0);
    CHECK(rat_parse("2/-4") == frac(-1, 2));
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("x"), std::invalid_argument);
}

TEST_CASE("rank") {
    CHECK(rank(from_rows({{1, 1}, {1, 1}}, 2)) == 1);
    CHECK(rank(SparseMat::zero(3, 3)) == 0);
    CHECK(rank(SparseMat::identity(4)) == 4);
}

TEST_CASE("rank equals rank of transpose") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        SparseMat m = random_matrix(rng, 6, 9);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("kernel basis") {
    SparseMat m = from_rows({{1, -1}}, 2);
    SparseMat k = kernel_basis(m);
    REQUIRE(k.rows() == 1);
    CHECK(k.get(0, 0) == k.get(0, 1));  // span{(1,1)}

    CHECK(kernel_basis(SparseMat::identity(5)).rows() == 0);

    SparseMat m2 = from_rows({{2, 4}}, 2);
    SparseMat k2 = kernel_basis(m2);
    REQUIRE(k2.rows() == 1);
    // verified by m v = 0, not by a fixed scaling
    Vec v = dense_row(k2, 0);
    Vec mv = m2.apply(v);
    CHECK(mv[0] == 0);
    CHECK(Rat(2) * v[0] + Rat(4) * v[1] == 0);
}

TEST_CASE("rank-nullity is exact") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        SparseMat m = random_matrix(rng, 5, 8);
        CHECK(kernel_basis(m).rows() + rank(m) == m.cols());
        SparseMat k = kernel_basis(m);
        for (int i = 0; i < k.rows(); ++i) {
            Vec mv = m.apply(dense_row(k, i));
            for (const Rat& x : mv) CHECK(x == 0);
        }
    }
}

TEST_CASE("solve") {
    SparseMat m = from_rows({{1, 2}, {3, 4}}, 2);
    auto x = solve(m, {Rat(5), Rat(6)});
    REQUIRE(x.has_value());
    Vec mx = m.apply(*x);
    CHECK(mx[0] == 5);
    CHECK(mx[1] == 6);

    SparseMat sing = from_rows({{1, 1}, {1, 1}}, 2);
    CHECK(!solve(sing, {Rat(0), Rat(1)}).has_value());
    CHECK(solve(sing, {Rat(2), Rat(2)}).has_value());
}

TEST_CASE("inverse") {
    SparseMat two = from_rows({{2}}, 1);
    CHECK(inverse(two).get(0, 0) == frac(1, 2));

    SparseMat swap = from_rows({{0, 1}, {1, 0}}, 2);
    CHECK(inverse(swap) == swap);

    SparseMat m = from_rows({{1, 1}, {0, 1}}, 2);
    SparseMat mi = inverse(m);
    CHECK(mi == from_rows({{1, -1}, {0, 1}}, 2));
    CHECK(mi * m == SparseMat::identity(2));

    CHECK_THROWS_AS(inverse(from_rows({{1, 1}, {1, 1}}, 2)), SingularMatrix);
}

TEST_CASE("inverse is exact on random invertible matrices") {
    std::mt19937_64 rng(3);
    int done = 0;
    while (done < 10) {
        SparseMat m = random_matrix(rng, 6, 6);
        if (rank(m) < 6) continue;
        CHECK(inverse(m) * m == SparseMat::identity(6));
        ++done;
    }
}

TEST_CASE("image basis spans the column space") {
    std::mt19937_64 rng(19);
    SparseMat m = random_matrix(rng, 7, 5);
    SparseMat im = image_basis(m);
    CHECK(im.rows() == rank(m));
    Subspace s(7, im);
    for (int j = 0; j < m.cols(); ++j) {
        Vec col(7, Rat(0));
        for (int i = 0; i < 7; ++i) col[i] = m.get(i, j);
        CHECK(s.contains(col));
    }
}

TEST_CASE("quotient of Q^2 by the antidiagonal") {
    Subspace sub(2, from_rows({{1, -1}}, 2));
    Quotient q = quotient_by(sub);
    REQUIRE(q.dim() == 1);
    // projection is (a, b) -> a + b in the representative coordinate
    CHECK(q.proj.get(0, 0) == 1);
    CHECK(q.proj.get(0, 1) == 1);
    CHECK(q.proj * q.incl == SparseMat::identity(1));
    CHECK((q.proj * sub.basis().transpose()).is_zero());
}

TEST_CASE("quotient by zero and by everything") {
    Quotient qz = quotient_by(Subspace::zero(3));
    CHECK(qz.dim() == 3);
    CHECK(qz.proj == SparseMat::identity(3));
    Quotient qf = quotient_by(Subspace::full(3));
    CHECK(qf.dim() == 0);
}

TEST_CASE("quotient projection properties on random subspaces") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        SparseMat gen = random_matrix(rng, 3, 7);
        Subspace sub(7, gen);
        Quotient q = quotient_by(sub);
        CHECK(q.dim() == 7 - sub.dim());
        CHECK(q.proj * q.incl == SparseMat::identity(q.dim()));
        CHECK((q.proj * sub.basis().transpose()).is_zero());
        CHECK(rank(q.proj) == q.dim());
    }
}
