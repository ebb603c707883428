#include "corpus.hpp"

#include <doctest.h>

using namespace nchrr;
using namespace nchrr::corpus;

namespace {
const Field Q = Field::rationals();
Scalar q(long long n) { return Scalar::of_int(n, Q); }
}  // namespace

TEST_CASE("directed algebra construction") {
    DirectedCategoryData one;
    one.objects = {"pt"};
    one.homdims = {{1}};
    DirectedAlgebra k = directed_algebra(one, Q);
    CHECK(k.alg->size() == 1);

    QuiverFixture a2f = a2(Q);
    CHECK(a2f.dir.alg->size() == 3);
    CHECK(a2f.dir.alg->validate().ok());

    QuiverFixture kr = kronecker(Q);
    CHECK(kr.dir.alg->size() == 4);
    SparseMatrix d = kr.dir.hom_matrix();
    CHECK(d.get(0, 1) == q(2));
    CHECK(d.get(1, 0) == q(0));

    // invariant failures
    DirectedCategoryData bad = one;
    bad.homdims = {{2}};
    CHECK_THROWS_AS(directed_algebra(bad, Q), InputError);
    DirectedCategoryData cyc;
    cyc.objects = {"a", "b"};
    cyc.homdims = {{1, 1}, {1, 1}};
    CHECK_THROWS_AS(directed_algebra(cyc, Q), InputError);
}

TEST_CASE("projectives and simple resolutions") {
    QuiverFixture a3f = a3(Q);
    // last object: S_n = P_n
    ResolvedModule s3r = simple_resolution(a3f.dir, 2);
    CHECK(s3r.module.rank() == 1);
    CHECK(s3r.module.alpha_entries().empty());

    ResolvedModule s1 = simple_resolution(a3f.dir, 0);
    CHECK(s1.module.validate().ok());
    // minimal resolution of S1 over A3 is P2 -> P1
    CHECK(s1.module.rank() == 2);
    CHECK(s1.block_object == std::vector<int>{0, 1});

    ResolvedModule s2 = simple_resolution(a3f.dir, 1);
    CHECK(s2.module.rank() == 2);
    CHECK(s2.block_object == std::vector<int>{1, 2});

    QuiverFixture kr = kronecker(Q);
    ResolvedModule k1 = simple_resolution(kr.dir, 0);
    CHECK(k1.module.rank() == 3);
    CHECK(k1.module.shifts() == std::vector<int>{0, 1, 1});
}

TEST_CASE("ringel formula") {
    QuiverFixture a2f = a2(Q);
    SparseMatrix d = a2f.dir.hom_matrix();
    Vec s1 = {q(1), q(0)}, s2 = {q(0), q(1)};
    CHECK(ringel_chi(s1, s2, d) == q(-1));
    CHECK(ringel_chi(s1, s1, d) == q(1));

    QuiverFixture kr = kronecker(Q);
    CHECK(ringel_chi(s1, s2, kr.dir.hom_matrix()) == q(-2));

    // dim vectors of projectives reproduce Hom dimensions
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ResolvedModule pi = projective_module(a2f.dir, i);
            ResolvedModule pj = projective_module(a2f.dir, j);
            Vec di, dj;
            for (int v : pi.dim_vector) di.push_back(q(v));
            for (int v : pj.dim_vector) dj.push_back(q(v));
            long long oracle = chi(pi.module, pj.module, pi.idem.pi, pj.idem.pi);
            CHECK(ringel_chi(di, dj, d) == q(oracle));
        }
}

TEST_CASE("kernel peeling on random quiver modules") {
    for (auto make : {a2, a3, kronecker}) {
        QuiverFixture qf = make(Q);
        Rng rng(61);
        for (int t = 0; t < 6; ++t) {
            DirectedModule m = random_quiver_module(qf, rng, 2);
            if (m.total == 0) continue;
            ResolvedModule res = resolve_module(qf.dir, m);
            CHECK(res.module.validate().ok());
            CHECK(res.module.rank() <= 16);
            // dim vector = block dimensions
            CHECK(res.dim_vector == m.dims);
        }
    }
}

TEST_CASE("group data validation and small groups") {
    CHECK(z2_plain(Q).validate(Q).ok());
    CHECK(z2_sl2(Q).validate(Q).ok());
    CHECK(s3_plain(Q).validate(Q).ok());
    CHECK(trivial_group_on(3, Q).validate(Q).ok());

    FiniteGroupData bad = z2_plain(Q);
    bad.table = {{0, 1}, {1, 1}};
    CHECK(!bad.validate(Q).ok());

    FiniteGroupData bad_chi = z2_plain(Q);
    bad_chi.characters = {{q(1), q(1)}, {q(1), q(1)}};
    CHECK(!bad_chi.validate(Q).ok());

    FiniteGroupData not_unimodular = z2_sl2(Q);
    not_unimodular.action[1] = SparseMatrix::identity(2, Q);
    not_unimodular.action[1].set(0, 0, q(-1));  // det = -1
    CHECK(!not_unimodular.validate(Q).ok());
}

TEST_CASE("lambda algebras") {
    // trivial G on k^1 gives k[eps]
    LambdaAlgebra l1 = lambda_vg(trivial_group_on(1, Q), Q);
    CHECK(l1.alg->same_table(*keps(Q)));

    // trivial G on k^2 gives the exterior algebra on two generators
    LambdaAlgebra l2 = lambda_vg(trivial_group_on(2, Q), Q);
    CHECK(l2.alg->same_table(*exterior2(Q)));

    // Z/2 in SL(2): eps * sigma = -(sigma * eps)
    LambdaAlgebra lam = lambda_vg(z2_sl2(Q), Q);
    CHECK(lam.alg->size() == 8);
    CHECK(lam.alg->validate().ok());
    AlgebraElement eps = AlgebraElement::basis(lam.alg, lam.index(1, 0));
    AlgebraElement sigma = AlgebraElement::basis(lam.alg, lam.index(0, 1));
    CHECK(eps * sigma == (sigma * eps).scaled(q(-1)));

    // group algebra of Z/2 = k[Z/2]
    LambdaAlgebra kz2 = group_algebra(z2_plain(Q), Q);
    CHECK(kz2.alg->size() == 2);
    CHECK(kz2.alg->is_ungraded());
}

TEST_CASE("central idempotents") {
    FiniteGroupData triv = trivial_group_on(1, Q);
    LambdaAlgebra lt = lambda_vg(triv, Q);
    CHECK(central_idempotent(triv, lt, 0) == AlgebraElement::unit(lt.alg));

    FiniteGroupData g = z2_sl2(Q);
    LambdaAlgebra lam = lambda_vg(g, Q);
    AlgebraElement p0 = central_idempotent(g, lam, 0);
    AlgebraElement p1 = central_idempotent(g, lam, 1);
    // p0 = (1 + sigma)/2, p1 = (1 - sigma)/2
    Scalar half = Scalar::of_rational(mpq_class(1, 2));
    CHECK(p0 == AlgebraElement(lam.alg, SparseVec{{lam.index(0, 0), half}, {lam.index(0, 1), half}}));
    CHECK(p1 == AlgebraElement(lam.alg, SparseVec{{lam.index(0, 0), half}, {lam.index(0, 1), -half}}));
    CHECK(p0 * p0 == p0);
    CHECK(p1 * p1 == p1);
    CHECK((p0 * p1).is_zero());
    CHECK(p0 + p1 == AlgebraElement::unit(lam.alg));

    FiniteGroupData s3 = s3_plain(Q);
    LambdaAlgebra ks3 = group_algebra(s3, Q);
    AlgebraElement sum = AlgebraElement::zero(ks3.alg);
    for (int r = 0; r < 3; ++r) {
        AlgebraElement p = central_idempotent(s3, ks3, r);
        CHECK(p * p == p);
        sum = sum + p;
        for (int r2 = 0; r2 < r; ++r2) CHECK((p * central_idempotent(s3, ks3, r2)).is_zero());
    }
    CHECK(sum == AlgebraElement::unit(ks3.alg));
}

TEST_CASE("exterior characters and the orbifold pairing") {
    FiniteGroupData g = z2_sl2(Q);
    auto chi = exterior_characters(g, Q);
    REQUIRE(chi.size() == 3);
    CHECK(chi[0] == std::vector<Scalar>{q(1), q(1)});
    CHECK(chi[1] == std::vector<Scalar>{q(2), q(-2)});
    CHECK(chi[2] == std::vector<Scalar>{q(1), q(1)});

    CHECK(orbifold_pairing(g, Q, 0, 0) == q(2));
    CHECK(orbifold_pairing(g, Q, 0, 1) == q(-2));
    CHECK(orbifold_pairing(g, Q, 1, 0) == q(-2));
    CHECK(orbifold_pairing(g, Q, 1, 1) == q(2));

    // trivial G on k^n: alternating binomial sum vanishes
    for (int n = 1; n <= 4; ++n) {
        FiniteGroupData t = trivial_group_on(n, Q);
        CHECK(orbifold_pairing(t, Q, 0, 0) == q(0));
    }

    // agreement with the direct supertrace pairing for all character pairs
    LambdaAlgebra lam = lambda_vg(g, Q);
    Pairing ctx(lam.alg);
    for (int r1 = 0; r1 < 2; ++r1)
        for (int r2 = 0; r2 < 2; ++r2) {
            HochschildChain c1 = HochschildChain::of_element(central_idempotent(g, lam, r1));
            HochschildChain c2 = HochschildChain::of_element(central_idempotent(g, lam, r2));
            CHECK(ctx.pair(c1, vee(c2, ctx.op())) == orbifold_pairing(g, Q, r1, r2));
        }
}

TEST_CASE("frobenius tensors and the pairing identity") {
    FrobeniusData kz2 = frobenius_kz2(Q);
    GammaTensor g = gamma_tensor(kz2);
    CHECK(g.coeffs == SparseMatrix::identity(2, Q));  // gamma = 1⊗1 + sigma⊗sigma
    CHECK(g.symmetric);

    AlgebraElement sigma = AlgebraElement::basis(kz2.algebra, 1);
    CHECK(tft_pair(kz2, sigma, sigma) == q(2));
    AlgebraElement one = AlgebraElement::unit(kz2.algebra);
    CHECK(tft_pair(kz2, one, one) == q(2));  // = dim A

    FrobeniusData m2 = frobenius_mat2(Q);
    GammaTensor gm = gamma_tensor(m2);
    CHECK(gm.symmetric);
    // gamma = sum e_ij ⊗ e_ji: coefficient matrix is the swap permutation
    CHECK(gm.coeffs == m2.gram());
    CHECK(tft_pair(m2, AlgebraElement::unit(m2.algebra), AlgebraElement::unit(m2.algebra)) == q(4));

    for (const FrobeniusData& fd : {frobenius_kz2(Q), frobenius_s3(Q), frobenius_mat2(Q)}) {
        FrobeniusCheckReport rep = frobenius_check(fd, 50, 0);
        CHECK(rep.all_equal);
        CHECK(rep.agree_trace == 50);
        CHECK(gamma_tensor(fd).symmetric);
        CHECK(phi_tensor(fd).cyclic);
    }

    // graded case is experimental: the contraction agrees with the plain
    // trace, not the supertrace
    FrobeniusData ext = frobenius_exterior2(Q);
    CHECK(ext.validate().ok());
    FrobeniusCheckReport rep = frobenius_check(ext, 20, 0);
    CHECK(rep.graded);
    CHECK(rep.trials == 20);

    // degenerate trace is rejected
    FrobeniusData bad = frobenius_kz2(Q);
    bad.trace_vec[0] = q(0);
    CHECK(!bad.validate().ok());
}
