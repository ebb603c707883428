#include "corpus.hpp"

#include <doctest.h>

using namespace nchrr;
using namespace nchrr::corpus;

namespace {
const Field Q = Field::rationals();
Scalar q(long long n) { return Scalar::of_int(n, Q); }
}  // namespace

TEST_CASE("supertrace of matrix words") {
    AlgebraPtr a = kx2(Q);
    // single 1x1 matrix with shift 0: str = the entry
    Morphism f(a, {0}, {0}, 0);
    f.set_entry(0, 0, AlgebraElement::basis(a, 1));
    HochschildChain s = str_chain(MatrixWord{q(1), {f}});
    CHECK(s == HochschildChain::single(a, BarWord{1, {}}, q(1)));

    // identity on A ⊕ A[1]: supertrace 1 - 1 = 0
    Morphism id = Morphism::identity(a, {0, 1});
    CHECK(str_chain(MatrixWord{q(1), {id}}).is_zero());
}

TEST_CASE("str is a chain map") {
    for (const AlgebraPtr& a : {kx2(Q), keps(Q), exterior2(Q)}) {
        Rng rng(51);
        for (int t = 0; t < 100; ++t) {
            MatrixWord w = random_matrix_word(a, rng, static_cast<int>(rng.uniform(1, 3)),
                                              static_cast<int>(rng.uniform(0, 2)));
            HochschildChain lhs = str_chain(w).b();
            HochschildChain rhs(a);
            for (const MatrixWord& bw : b_matrix_word(w)) rhs = rhs + str_chain(bw);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("euler chains") {
    AlgebraPtr a = kx2(Q);
    TwistedModule fa = TwistedModule::free_module(a);
    HochschildChain eu = euler_chain(fa, identity_idempotent(fa));
    CHECK(eu == HochschildChain::of_element(AlgebraElement::unit(a)));

    // cone(id) has vanishing Euler chain
    TwistedModule c = cone(fa, fa, Morphism::identity(a, {0}));
    CHECK(euler_chain(c, identity_idempotent(c)).is_zero());

    // ungraded twisted module: only l = 0 survives, giving the alternating trace
    QuiverFixture a2f = a2(Q);
    ResolvedModule s1 = simple_resolution(a2f.dir, 0);
    HochschildChain eu_s1 = euler_chain(s1.module, s1.idem);
    HochschildChain expected(a2f.dir.alg);
    expected.add_term(BarWord{a2f.dir.idempotents[0], {}}, q(1));
    expected.add_term(BarWord{a2f.dir.idempotents[1], {}}, q(-1));
    CHECK(eu_s1 == expected);

    // graded towers produce cycles with longer words; cycle property is
    // asserted inside euler_chain
    Rng rng(52);
    for (const AlgebraPtr& alg : {keps(Q), exterior2(Q)}) {
        for (int t = 0; t < 10; ++t) {
            TwistedModule m = random_cone_tower(alg, rng, 3);
            HochschildChain e = euler_chain(m, identity_idempotent(m));
            CHECK(e.b().is_zero());
        }
    }
}

TEST_CASE("wedge base cases") {
    AlgebraPtr a = kx2(Q);
    Pairing ctx(a);
    HochschildChain one = HochschildChain::of_element(AlgebraElement::unit(a));
    HochschildChain one_op = HochschildChain::of_element(AlgebraElement::unit(ctx.op()));
    HochschildChain w = ctx.wedge(one, one_op);
    // identity operator as a length-0 chain over End(A)
    HochschildChain expected = HochschildChain::of_element(AlgebraElement::unit(ctx.end_algebra().alg));
    CHECK(w == expected);

    // wedge(a0[a1], b0) = L(a0)R(b0)[L(a1)] for kx2 (trivial signs)
    HochschildChain left = HochschildChain::single(a, BarWord{0, {1}}, q(1));
    HochschildChain w2 = ctx.wedge(left, one_op);
    AlgebraComplex ac = algebra_as_complex(a);
    AlgebraElement lx = ctx.end_algebra().from_algebra_operator(ac, left_operator(AlgebraElement::basis(a, 1)));
    AlgebraElement head = AlgebraElement::unit(ctx.end_algebra().alg);
    HochschildChain expect2(ctx.end_algebra().alg);
    for (const auto& [i, c] : head.coeffs())
        for (const auto& [j, d] : lx.coeffs()) expect2.add_term(BarWord{i, {j}}, c * d);
    CHECK(w2 == expect2);
}

TEST_CASE("wedge of cycles is a cycle") {
    for (const AlgebraPtr& a : {kx2(Q), keps(Q)}) {
        Pairing ctx(a);
        Rng rng(53);
        for (int deg : {0, -1}) {
            auto lcycles = cycle_basis(a, deg, 2);
            auto rcycles = cycle_basis(ctx.op(), -deg, 2);
            for (int t = 0; t < 5 && t < static_cast<int>(lcycles.size()); ++t)
                for (int u = 0; u < 5 && u < static_cast<int>(rcycles.size()); ++u) {
                    HochschildChain w = ctx.wedge(lcycles[t], rcycles[u]);
                    CHECK(w.b().is_zero());
                }
        }
    }
}

TEST_CASE("fls integral") {
    Rng rng(54);
    for (int t = 0; t < 15; ++t) {
        ChainComplex x = random_complex(Q, rng, 8);
        EndAlgebra end = endomorphism_algebra(x);
        Retraction r = build_retraction(x);
        // phi(1_X) = euler characteristic
        HochschildChain unit_chain = HochschildChain::of_element(AlgebraElement::unit(end.alg));
        CHECK(fls_integral(end, r, unit_chain) == q(x.euler_characteristic()));
        // phi ∘ b = 0
        for (int u = 0; u < 6; ++u) {
            HochschildChain c = random_chain(end.alg, rng, 2, 2);
            CHECK(fls_integral(end, r, c.b()).is_zero());
        }
    }

    // acyclic X: phi of anything vanishes
    GradedSpace s;
    s.set_dim(0, 1);
    s.set_dim(1, 1);
    ChainComplex x(Q, s);
    SparseMatrix d(1, 1, Q);
    d.set(0, 0, q(1));
    x.set_d(0, std::move(d));
    EndAlgebra end = endomorphism_algebra(x);
    Retraction r = build_retraction(x);
    Rng rng2(55);
    for (int u = 0; u < 10; ++u) {
        HochschildChain c = random_chain(end.alg, rng2, 2, 2);
        CHECK(fls_integral(end, r, c).is_zero());
    }
}

TEST_CASE("pairing examples") {
    AlgebraPtr a = kx2(Q);
    Pairing ctx(a);
    HochschildChain one = HochschildChain::of_element(AlgebraElement::unit(a));
    HochschildChain one_op = HochschildChain::of_element(AlgebraElement::unit(ctx.op()));
    CHECK(ctx.pair(one, one_op) == q(2));  // tr(id) = dim A

    HochschildChain x = HochschildChain::of_element(AlgebraElement::basis(a, 1));
    HochschildChain x_op = HochschildChain::of_element(AlgebraElement::basis(ctx.op(), 1));
    CHECK(ctx.pair(x, x_op) == q(0));

    AlgebraPtr e = keps(Q);
    Pairing ctx_e(e);
    HochschildChain one_e = HochschildChain::of_element(AlgebraElement::unit(e));
    HochschildChain one_e_op = HochschildChain::of_element(AlgebraElement::unit(ctx_e.op()));
    CHECK(ctx_e.pair(one_e, one_e_op) == q(0));  // superdimension

    // non-cycle inputs are rejected
    AlgebraPtr cdg = contractible_dg(Q);
    Pairing ctx_c(cdg);
    HochschildChain s = HochschildChain::single(cdg, BarWord{1, {}}, q(1));  // ds != 0
    HochschildChain one_c_op = HochschildChain::of_element(AlgebraElement::unit(ctx_c.op()));
    CHECK_THROWS_AS(ctx_c.pair(s, one_c_op), Error);
}

TEST_CASE("pairing paths agree on overlapping domains") {
    for (const AlgebraPtr& a : {kx2(Q), keps(Q), exterior2(Q)}) {
        Pairing ctx(a);
        Rng rng(56);
        for (int deg : {0, -1, 1}) {
            auto lbasis = cycle_basis(a, deg, 2);
            auto rbasis = cycle_basis(ctx.op(), -deg, 2);
            if (lbasis.empty() || rbasis.empty()) continue;
            for (int t = 0; t < 10; ++t) {
                HochschildChain l = lbasis[rng.uniform(0, lbasis.size() - 1)];
                HochschildChain r = rbasis[rng.uniform(0, rbasis.size() - 1)];
                Scalar graded = ctx.pair_graded(l, r);
                CHECK(ctx.pair_fls(l, r) == graded);
                if (a->is_ungraded()) CHECK(ctx.pair_assoc(l, r) == graded);
            }
        }
    }
}

TEST_CASE("hrr verification on small cases") {
    AlgebraPtr a = kx2(Q);
    Pairing ctx(a);
    TwistedModule fa = TwistedModule::free_module(a);
    HrrReport rep = hrr_verify(ctx, fa, fa);
    CHECK(rep.equal);
    CHECK(rep.chi_oracle == 2);

    AlgebraPtr e = keps(Q);
    Pairing ctx_e(e);
    TwistedModule fe = TwistedModule::free_module(e);
    HrrReport rep_e = hrr_verify(ctx_e, fe, fe);
    CHECK(rep_e.equal);
    CHECK(rep_e.chi_oracle == 0);

    QuiverFixture a2f = a2(Q);
    Pairing ctx_a2(a2f.dir.alg);
    ResolvedModule s1 = simple_resolution(a2f.dir, 0);
    ResolvedModule s2 = simple_resolution(a2f.dir, 1);
    HrrReport r12 = hrr_verify(ctx_a2, s1.module, s2.module, s1.idem, s2.idem);
    CHECK(r12.equal);
    CHECK(r12.chi_oracle == -1);
    HrrReport r11 = hrr_verify(ctx_a2, s1.module, s1.module, s1.idem, s1.idem);
    CHECK(r11.equal);
    CHECK(r11.chi_oracle == 1);

    QuiverFixture kr = kronecker(Q);
    Pairing ctx_kr(kr.dir.alg);
    ResolvedModule p1 = projective_module(kr.dir, 0);
    ResolvedModule p2 = projective_module(kr.dir, 1);
    HrrReport rp = hrr_verify(ctx_kr, p2.module, p1.module, p2.idem, p1.idem);
    CHECK(rp.equal);
    CHECK(rp.chi_oracle == 2);  // two arrows
}

TEST_CASE("pairing gram matrices of directed algebras") {
    for (auto make : {a2, kronecker}) {
        QuiverFixture qf = make(Q);
        Pairing ctx(qf.dir.alg);
        std::vector<HochschildChain> idems;
        for (int i = 0; i < qf.dir.n_objects; ++i) idems.push_back(qf.dir.idempotent_chain(i));
        SparseMatrix g = pairing_gram(ctx, idems, idems);
        SparseMatrix d = qf.dir.hom_matrix();
        CHECK(g == d);
        CHECK(g.determinant() == q(1));
    }
}
