#include "corpus.hpp"

#include <doctest.h>

#include <set>

using namespace nchrr;
using namespace nchrr::corpus;

namespace {
const Field Q = Field::rationals();
Scalar q(long long n) { return Scalar::of_int(n, Q); }

AlgebraPtr ground_field() {
    return std::make_shared<DgAlgebra>(Q, std::vector<std::string>{"1"}, std::vector<int>{0},
                                       SparseVec{{0, q(1)}},
                                       std::map<std::pair<int, int>, SparseVec>{{{0, 0}, {{0, q(1)}}}},
                                       SparseMatrix(1, 1, Q));
}
}  // namespace

TEST_CASE("validation of corpus algebras") {
    CHECK(kx2(Q)->validate().ok());
    CHECK(keps(Q)->validate().ok());
    CHECK(exterior2(Q)->validate().ok());
    CHECK(mat2(Q)->validate().ok());
    CHECK(contractible_dg(Q)->validate().ok());
}

TEST_CASE("validation failure names a triple") {
    // (a a) b = a b = 1 but a (a b) = a: not associative
    std::map<std::pair<int, int>, SparseVec> mult;
    for (int i = 0; i < 3; ++i) {
        mult[{0, i}][i] = q(1);
        if (i) mult[{i, 0}][i] = q(1);
    }
    mult[{1, 1}][1] = q(1);  // a a = a
    mult[{1, 2}][0] = q(1);  // a b = 1
    DgAlgebra bad(Q, {"1", "a", "b"}, {0, 0, 0}, {{0, q(1)}}, std::move(mult),
                  SparseMatrix(3, 3, Q));
    ValidationReport rep = bad.validate();
    CHECK(!rep.ok());
    bool found = false;
    for (const auto& i : rep.issues) found = found || i.check == "associativity";
    CHECK(found);
}

TEST_CASE("opposite is an involution on the nose") {
    for (const AlgebraPtr& a : {kx2(Q), keps(Q), exterior2(Q), mat2(Q), contractible_dg(Q)}) {
        AlgebraPtr op = opposite(a);
        CHECK(op->validate().ok());
        CHECK(opposite(op)->same_table(*a));
    }
    // commutative ungraded: identical table
    CHECK(opposite(kx2(Q))->same_table(*kx2(Q)));
    // k[eps]: eps * eps = -eps eps = 0, same algebra
    CHECK(opposite(keps(Q))->same_table(*keps(Q)));
}

TEST_CASE("tensor products") {
    AlgebraPtr k = ground_field();
    AlgebraPtr a = exterior2(Q);
    // k ⊗ A is A under relabeling
    CHECK(tensor(k, a)->same_table(*a));

    AlgebraPtr e = keps(Q);
    AlgebraPtr ee = tensor(e, e);
    CHECK(ee->size() == 4);
    CHECK(ee->validate().ok());
    // basis order: 1⊗1, 1⊗e, e⊗1, e⊗e
    AlgebraElement e1 = AlgebraElement::basis(ee, 2);  // e⊗1
    AlgebraElement e2 = AlgebraElement::basis(ee, 1);  // 1⊗e
    AlgebraElement ete = AlgebraElement::basis(ee, 3);
    CHECK(e1 * e2 == ete);
    CHECK(e2 * e1 == ete.scaled(q(-1)));

    CHECK(tensor(exterior2(Q), kx2(Q))->validate().ok());
    // associativity up to the canonical relabeling of triples
    AlgebraPtr x = kx2(Q);
    CHECK(tensor(tensor(e, x), a)->same_table(*tensor(e, tensor(x, a))));
}

TEST_CASE("endomorphism algebras") {
    GradedSpace s;
    s.set_dim(0, 1);
    ChainComplex pt(Q, s);
    EndAlgebra e1 = endomorphism_algebra(pt);
    CHECK(e1.alg->size() == 1);
    CHECK(e1.alg->validate().ok());

    // X = k ⊕ k[-1]: k[-1]^n = k^{n-1}, i.e. a slot in degree 1
    GradedSpace s2;
    s2.set_dim(0, 1);
    s2.set_dim(1, 1);
    EndAlgebra e2 = endomorphism_algebra(ChainComplex(Q, s2));
    CHECK(e2.alg->size() == 4);
    std::multiset<int> degs(e2.alg->degrees().begin(), e2.alg->degrees().end());
    CHECK(degs == std::multiset<int>{-1, 0, 0, 1});
    CHECK(e2.alg->validate().ok());

    // Leibniz etc. on End of a complex with nonzero differential
    Rng rng(21);
    for (int t = 0; t < 5; ++t) {
        ChainComplex x = corpus::random_complex(Q, rng, 6);
        EndAlgebra ex = endomorphism_algebra(x);
        CHECK(ex.alg->validate().ok());
    }
}

TEST_CASE("left and right multiplication operators") {
    AlgebraPtr e = keps(Q);
    CHECK(left_operator(AlgebraElement::unit(e)) == SparseMatrix::identity(2, Q));
    CHECK(right_operator(AlgebraElement::unit(e)) == SparseMatrix::identity(2, Q));

    // R(eps): 1 -> eps, eps -> -eps^2 = 0
    SparseMatrix r = right_operator(AlgebraElement::basis(e, 1));
    CHECK(r.get(1, 0) == q(1));
    CHECK(r.column(1) == zero_vec(2, Q));

    for (const AlgebraPtr& a : {kx2(Q), exterior2(Q), mat2(Q)}) {
        Rng rng(22);
        for (int t = 0; t < 50; ++t) {
            AlgebraElement x = random_element(a, rng);
            AlgebraElement y = random_element(a, rng);
            // L is an algebra map
            CHECK(left_operator(x * y) == left_operator(x) * left_operator(y));
            // L and R commute on the nose for ungraded algebras
            if (a->is_ungraded())
                CHECK(left_operator(x) * right_operator(y) == right_operator(y) * left_operator(x));
        }
        // on homogeneous pairs L and R supercommute, and R is an anti-map
        // with the Koszul sign
        for (int i = 0; i < a->size(); ++i)
            for (int j = 0; j < a->size(); ++j) {
                AlgebraElement bi = AlgebraElement::basis(a, i), bj = AlgebraElement::basis(a, j);
                int sgn = (a->degree(i) * a->degree(j)) % 2 == 0 ? 1 : -1;
                CHECK(left_operator(bi) * right_operator(bj) ==
                      (right_operator(bj) * left_operator(bi)).scaled(q(sgn)));
                SparseMatrix lhs = right_operator(bi * bj);
                SparseMatrix rhs = (right_operator(bj) * right_operator(bi)).scaled(q(sgn));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("supertrace pairing is symmetric for ungraded commutative algebras") {
    AlgebraPtr a = kx2(Q);
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        AlgebraElement x = random_element(a, rng);
        AlgebraElement y = random_element(a, rng);
        CHECK(supertrace(left_operator(x) * right_operator(y), *a) ==
              supertrace(left_operator(y) * right_operator(x), *a));
    }
}
