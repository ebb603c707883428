#include "nchrr/sparse_matrix.hpp"
#include "nchrr/constructors.hpp"

#include <doctest.h>

using namespace nchrr;

namespace {
const Field Q = Field::rationals();
Scalar q(long long n) { return Scalar::of_int(n, Q); }

SparseMatrix mat(int rows, int cols, std::vector<std::vector<long long>> vals) {
    SparseMatrix m(rows, cols, Q);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, q(vals[i][j]));
    return m;
}
}  // namespace

TEST_CASE("scalar arithmetic is exact and canonical") {
    Scalar a = Scalar::parse("2/6", Q);
    CHECK(a.str() == "1/3");
    Scalar b = Scalar::parse("-4/8", Q);
    CHECK(b.str() == "-1/2");
    CHECK((a + b).str() == "-1/6");
    CHECK((a * b).str() == "-1/6");
    CHECK((a / b).str() == "-2/3");
    CHECK(a.inverse().str() == "3");
    CHECK_THROWS_AS(Scalar::zero(Q).inverse(), Error);
    CHECK_THROWS_AS(Scalar::parse("1/0", Q), InputError);
    CHECK_THROWS_AS(Scalar::parse("x", Q), InputError);

    // (a/b + c/d) recomputed via cross-multiplication matches
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        long an = static_cast<long>(rng.uniform(-20, 20)), ad = static_cast<long>(rng.uniform(1, 20));
        long cn = static_cast<long>(rng.uniform(-20, 20)), cd = static_cast<long>(rng.uniform(1, 20));
        Scalar x = Scalar::of_rational(mpq_class(an, ad));
        Scalar y = Scalar::of_rational(mpq_class(cn, cd));
        Scalar direct = x + y;
        Scalar cross = Scalar::of_rational(mpq_class(an * cd + cn * ad, ad * cd));
        CHECK(direct == cross);
    }
}

TEST_CASE("prime field residues") {
    Field f7 = Field::prime(7);
    Scalar x = Scalar::of_int(10, f7);
    CHECK(x.str() == "3");
    CHECK((x * x).str() == "2");
    CHECK((x.inverse() * x).is_one());
    CHECK_THROWS_AS(Field::prime(6), InputError);
    // residues of distinct moduli never mix
    Scalar y = Scalar::of_int(1, Field::prime(5));
    CHECK_THROWS_AS((void)(x + y), InputError);
    CHECK_THROWS_AS((void)(x + Scalar::one(Q)), InputError);
}

TEST_CASE("rank examples") {
    CHECK(SparseMatrix::identity(2, Q).rank() == 2);
    CHECK(SparseMatrix(3, 4, Q).rank() == 0);
    CHECK(mat(2, 2, {{1, 2}, {0, 1}}).rank() == 2);
}

TEST_CASE("kernel examples") {
    CHECK(SparseMatrix(2, 3, Q).kernel_basis().size() == 3);
    CHECK(SparseMatrix::identity(2, Q).kernel_basis().empty());
    auto k = mat(1, 2, {{1, 1}}).kernel_basis();
    REQUIRE(k.size() == 1);
    // span of (1, -1)
    CHECK(k[0][0] == -k[0][1]);
    CHECK(!k[0][0].is_zero());
}

TEST_CASE("solve examples") {
    auto m = mat(2, 2, {{1, 2}, {0, 1}});
    auto x = m.solve({q(0), q(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == q(-2));
    CHECK((*x)[1] == q(1));

    auto id = SparseMatrix::identity(3, Q);
    Vec v = {q(3), q(-1), q(5)};
    CHECK(*id.solve(v) == v);

    CHECK(!mat(1, 1, {{0}}).solve({q(1)}).has_value());
    CHECK_THROWS_AS(m.solve({q(1)}), InputError);
}

TEST_CASE("invert examples") {
    CHECK(mat(2, 2, {{1, 2}, {0, 1}}).invert() == mat(2, 2, {{1, -2}, {0, 1}}));
    CHECK(SparseMatrix::identity(4, Q).invert() == SparseMatrix::identity(4, Q));
    CHECK_THROWS_AS(mat(2, 2, {{1, 1}, {1, 1}}).invert(), Error);
}

TEST_CASE("determinant") {
    CHECK(mat(2, 2, {{1, 2}, {0, 1}}).determinant() == q(1));
    CHECK(mat(2, 2, {{0, 1}, {1, 0}}).determinant() == q(-1));
    CHECK(mat(2, 2, {{1, 1}, {1, 1}}).determinant() == q(0));
}

TEST_CASE("random linear algebra invariants") {
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
        Rng rng(100 + seed);
        Field f = seed == 0 ? Q : Field::prime(101);
        for (int t = 0; t < 40; ++t) {
            int rows = static_cast<int>(rng.uniform(1, 5));
            int cols = static_cast<int>(rng.uniform(1, 5));
            SparseMatrix m(rows, cols, f);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) {
                    long long v = rng.uniform(-3, 3);
                    if (v) m.set(i, j, Scalar::of_int(v, f));
                }
            // rank-nullity
            CHECK(m.rank() + static_cast<int>(m.kernel_basis().size()) == cols);
            for (const Vec& k : m.kernel_basis()) CHECK(is_zero(m.apply(k)));
            // solutions solve exactly
            Vec rhs = zero_vec(rows, f);
            for (int i = 0; i < rows; ++i) rhs[i] = Scalar::of_int(rng.uniform(-3, 3), f);
            if (auto x = m.solve(rhs)) CHECK(m.apply(*x) == rhs);
            // inverse multiplies back to the identity
            if (rows == cols) {
                try {
                    SparseMatrix inv = m.invert();
                    CHECK(inv * m == SparseMatrix::identity(rows, f));
                    CHECK(m * inv == SparseMatrix::identity(rows, f));
                } catch (const Error&) {
                    CHECK(m.rank() < rows);
                }
            }
        }
    }
}
