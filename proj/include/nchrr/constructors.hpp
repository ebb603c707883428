#pragma once

#include "nchrr/euler.hpp"

#include <cstdint>
#include <tuple>

namespace nchrr {

// ---------------------------------------------------------------------------
// Directed algebras (finite linear categories with unitriangular hom spaces)
// ---------------------------------------------------------------------------

struct DirectedCategoryData {
    std::vector<std::string> objects;
    std::vector<std::vector<int>> homdims;  // d[i][j] = dim Hom(i -> j)
    // (i, j, k) -> list of (a, b, c, coeff): composing the a-th morphism of
    // Hom(i,j) with the b-th of Hom(j,k) contributes coeff * (c-th of Hom(i,k)).
    // Identity compositions are implied.
    std::map<std::tuple<int, int, int>, std::vector<std::tuple<int, int, int, Scalar>>> compositions;
    std::vector<int> ordering;  // admissible order witness; empty = as listed
};

struct DirectedAlgebra {
    AlgebraPtr alg;
    int n_objects = 0;
    std::vector<std::vector<int>> homdims;
    std::vector<int> idempotents;                    // basis index of 1_i
    std::vector<std::pair<int, int>> hom_of_basis;   // basis -> (src, tgt)
    std::vector<std::vector<std::vector<int>>> basis_of;  // [i][j][a] -> basis index

    AlgebraElement idempotent(int i) const { return AlgebraElement::basis(alg, idempotents[i]); }
    HochschildChain idempotent_chain(int i) const {
        return HochschildChain::of_element(idempotent(i));
    }
    SparseMatrix hom_matrix() const;  // d as an exact matrix
};

// Builds the ungraded algebra A(V) = ⊕ Hom(v_s, v_t) with the concatenation
// product (x·y defined when target(x) = source(y)). Throws on invariant
// failures; the result passes DgAlgebra::validate.
DirectedAlgebra directed_algebra(const DirectedCategoryData& data, const Field& f);

// Finite-dimensional right module over a directed algebra: object-block
// dimensions and the total-space action of each basis element.
struct DirectedModule {
    std::vector<int> dims;              // per object
    std::vector<int> offset;            // block offsets in the total space
    int total = 0;
    std::map<int, SparseMatrix> action;  // basis index -> total matrix (m -> m·e)
};

// Validates block structure and m·(xy) = (m·x)·y on all basis pairs.
// Identity actions are filled in automatically.
DirectedModule make_module(const DirectedAlgebra& a, std::vector<int> dims,
                           const std::map<int, SparseMatrix>& action);

struct ResolvedModule {
    TwistedModule module;        // projective resolution as a twisted module
    HomotopyIdempotent idem;     // strict idempotent cutting P_obj out of each free slot
    std::vector<int> block_object;
    std::vector<int> dim_vector;  // (dim M)_j = dim M·1_j
};

// Kernel-peeling projective resolution; terminates by directedness.
ResolvedModule resolve_module(const DirectedAlgebra& a, const DirectedModule& m);

ResolvedModule projective_module(const DirectedAlgebra& a, int i);
DirectedModule simple_module(const DirectedAlgebra& a, int i);
ResolvedModule simple_resolution(const DirectedAlgebra& a, int i);

// sum_{i,j} (dim M)_i (d^{-1})_{ij} (dim N)_j.
Scalar ringel_chi(const Vec& dim_m, const Vec& dim_n, const SparseMatrix& homdims);

// ---------------------------------------------------------------------------
// Finite groups, group algebras, and the orbifold algebra Λ(V, G)
// ---------------------------------------------------------------------------

struct FiniteGroupData {
    int order = 0;
    std::vector<std::vector<int>> table;          // table[g][h] = g·h
    std::vector<std::vector<Scalar>> characters;  // characters[rho][g]
    std::vector<SparseMatrix> action;             // optional: per element, on V
    bool unimodular = false;                      // claim det = 1; checked when set

    ValidationReport validate(const Field& f) const;
    int identity_element() const;
    int inverse(int g) const;
    int power(int g, int k) const;
    int dim_v() const { return action.empty() ? 0 : action[0].rows(); }
    Scalar character_of_v(int g) const;  // trace of the action
};

struct LambdaAlgebra {
    AlgebraPtr alg;
    int dim_v = 0;
    int order = 0;
    // basis index of (wedge-monomial mask, group element)
    int index(int mask, int g) const { return mask * order + g; }
};

// Λ(V, G) with (v ⊗ g)(w ⊗ h) = (v ∧ g(w)) ⊗ gh, deg v = 1, deg g = 0.
// Without action matrices this is the group algebra k[G].
LambdaAlgebra lambda_vg(const FiniteGroupData& g, const Field& f);
inline LambdaAlgebra group_algebra(const FiniteGroupData& g, const Field& f) {
    FiniteGroupData h = g;
    h.action.clear();
    return lambda_vg(h, f);
}

// pi_rho = (dim rho / |G|) sum_g chi_rho(g^{-1}) g, asserted idempotent.
AlgebraElement central_idempotent(const FiniteGroupData& g, const LambdaAlgebra& lam, int rho);

// Characters of Λ^n V from the character of V (Newton-Girard).
std::vector<std::vector<Scalar>> exterior_characters(const FiniteGroupData& g, const Field& f);

// dim rho1 dim rho2 sum_n (-1)^n d^{Λ^n V}_{rho1 rho2}.
Scalar orbifold_pairing(const FiniteGroupData& g, const Field& f, int rho1, int rho2);

// ---------------------------------------------------------------------------
// Frobenius (Calabi-Yau) algebras
// ---------------------------------------------------------------------------

struct FrobeniusData {
    AlgebraPtr algebra;
    Vec trace_vec;        // tau on the basis
    int cy_dimension = 0;  // tau vanishes off degree cy_dimension

    ValidationReport validate() const;
    Scalar tau(const AlgebraElement& a) const;
    SparseMatrix gram() const;  // G_{ij} = tau(e_i e_j)
};

// gamma = sum_i gamma'_i ⊗ gamma''_i with a = sum_i gamma'_i tau(gamma''_i a);
// stored as the coefficient matrix (the inverse Gram contraction).
struct GammaTensor {
    SparseMatrix coeffs;
    bool symmetric = false;
};
GammaTensor gamma_tensor(const FrobeniusData& f);

struct PhiTensor {
    std::map<std::tuple<int, int, int>, Scalar> coeffs;
    bool cyclic = false;
};
PhiTensor phi_tensor(const FrobeniusData& f);

// <a, b>_tau = sum_i tau(a gamma'_i b gamma''_i).
Scalar tft_pair(const FrobeniusData& f, const AlgebraElement& a, const AlgebraElement& b);

struct FrobeniusCheckReport {
    int trials = 0;
    int agree_trace = 0;       // tft Pair vs tr(L(a)R(b))
    int agree_supertrace = 0;  // tft pair vs str(L(a)R(b)); relevant when graded
    bool graded = false;
    bool all_equal = false;    // trace agreement on every trial
};

// Deterministic for a fixed seed; coefficients drawn from {-2..2}.
FrobeniusCheckReport frobenius_check(const FrobeniusData& f, int trials, std::uint64_t seed);

// Shared deterministic generator helpers (platform-independent).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next();
    // uniform in [lo, hi]
    long long uniform(long long lo, long long hi);
};

AlgebraElement random_element(const AlgebraPtr& a, Rng& rng);

}  // namespace nchrr
