#pragma once

#include "nchrr/hochschild.hpp"

namespace nchrr {

class TwistedModule;

// Homogeneous morphism between finite free covers: entries f_{ij} in A
// represent A[src_j] -> A[tgt_i], with |f_{ij}| = deg + tgt_i - src_j.
class Morphism {
  public:
    Morphism() = default;
    Morphism(AlgebraPtr alg, std::vector<int> src_shifts, std::vector<int> tgt_shifts, int degree);

    static Morphism identity(AlgebraPtr alg, const std::vector<int>& shifts);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<int>& src_shifts() const { return src_; }
    const std::vector<int>& tgt_shifts() const { return tgt_; }
    int degree() const { return degree_; }
    const std::map<std::pair<int, int>, AlgebraElement>& entries() const { return entries_; }

    AlgebraElement entry(int i, int j) const;
    void set_entry(int i, int j, const AlgebraElement& a);

    bool is_zero() const { return entries_.empty(); }
    Morphism operator+(const Morphism& o) const;
    Morphism operator-(const Morphism& o) const;
    Morphism operator*(const Morphism& o) const;  // composition, entries multiply in A
    Morphism scaled(const Scalar& c) const;
    bool operator==(const Morphism& o) const;

    // Differential of the free Hom complex: (-1)^{tgt_i} d_A on entries.
    Morphism d_free() const;

  private:
    AlgebraPtr alg_;
    std::vector<int> src_, tgt_;
    int degree_ = 0;
    std::map<std::pair<int, int>, AlgebraElement> entries_;
};

// Twisted module (⊕_j A[r_j], d_free + α) with α strictly upper triangular
// satisfying Maurer-Cartan.
class TwistedModule {
  public:
    TwistedModule() = default;
    TwistedModule(AlgebraPtr alg, std::vector<int> shifts,
                  std::map<std::pair<int, int>, AlgebraElement> alpha);

    static TwistedModule free_module(AlgebraPtr alg, std::vector<int> shifts = {0});

    const AlgebraPtr& algebra() const { return alg_; }
    int rank() const { return static_cast<int>(shifts_.size()); }
    const std::vector<int>& shifts() const { return shifts_; }
    AlgebraElement alpha(int i, int j) const;
    const std::map<std::pair<int, int>, AlgebraElement>& alpha_entries() const { return alpha_; }
    Morphism alpha_morphism() const;  // degree-1 endomorphism of the free cover

    // Strict upper triangularity, entry degrees, Maurer-Cartan; exact.
    ValidationReport validate() const;

    bool operator==(const TwistedModule& o) const;

  private:
    AlgebraPtr alg_;
    std::vector<int> shifts_;
    std::map<std::pair<int, int>, AlgebraElement> alpha_;
};

// d_Tw(f) = d_free(f) + β f - (-1)^{|f|} f α  for f: (M, α) -> (N, β).
Morphism d_tw(const TwistedModule& src, const TwistedModule& tgt, const Morphism& f);
bool is_closed(const TwistedModule& src, const TwistedModule& tgt, const Morphism& f);

// Hom complex with the twisted differential, as a finite chain complex
// with a basis indexed by (target summand, source summand, algebra basis).
struct HomComplex {
    TwistedModule source, target;
    ChainComplex complex;
    std::map<int, std::vector<std::tuple<int, int, int>>> basis;       // degree -> slots
    std::map<std::tuple<int, int, int>, std::pair<int, int>> slot_of;  // -> (degree, pos)

    Morphism morphism_at(int degree, const Vec& coords) const;
    Vec coords_of(const Morphism& f) const;
    // Per-degree matrices of f -> left ∘ f ∘ right (both degree 0).
    std::map<int, SparseMatrix> conjugation_endo(const Morphism& left, const Morphism& right) const;
};

HomComplex hom_complex(const TwistedModule& m, const TwistedModule& n);

// Cone of a degree-0 closed morphism f: M -> N, listed as (N, M[1]) so
// that the assembled matrix stays strictly upper triangular.
TwistedModule cone(const TwistedModule& m, const TwistedModule& n, const Morphism& f);

TwistedModule shift(const TwistedModule& m, int k);
TwistedModule direct_sum(const TwistedModule& a, const TwistedModule& b);
Morphism direct_sum(const Morphism& a, const Morphism& b);

// Duality D = Hom_{Mod A}(-, A): a twisted module over the opposite algebra,
// with summands reversed and the documented sign profile (an involution).
TwistedModule dual(const TwistedModule& m);
TwistedModule dual(const TwistedModule& m, const AlgebraPtr& op_algebra);
// Transport of a degree-homogeneous endomorphism along D.
Morphism dual_morphism(const TwistedModule& m, const Morphism& f, const AlgebraPtr& op_algebra);

// N ⊗_A M for N over A and M over opposite(A), with a basis indexed by
// (N summand, M summand, algebra basis).
struct TensorComplex {
    TwistedModule left, right;
    ChainComplex complex;
    std::map<int, std::vector<std::tuple<int, int, int>>> basis;
    std::map<std::tuple<int, int, int>, std::pair<int, int>> slot_of;

    // Per-degree matrices of the induced endomorphism pn ⊗ pm.
    std::map<int, SparseMatrix> product_endo(const Morphism& pn, const Morphism& pm) const;
};

TensorComplex tensor_over_A(const TwistedModule& n, const TwistedModule& m);

struct HomotopyIdempotent {
    Morphism pi;       // degree 0, d_Tw-closed
    Morphism witness;  // degree -1, pi^2 - pi = d_Tw(witness)
};

// Verifies d_Tw(pi) = 0 and solves pi^2 - pi = d_Tw(h) exactly.
std::optional<HomotopyIdempotent> is_homotopy_idempotent(const TwistedModule& n, const Morphism& pi);

// Alternating trace of the map a chain-map projector induces on cohomology:
// rank bookkeeping for homotopy direct summands. The projector is given per
// degree; identity entries may be omitted entirely.
long long euler_characteristic_of_summand(const ChainComplex& x, const std::map<int, SparseMatrix>& projector);

// χ(M, N) = Σ (-1)^n dim Hom_{Ho(Perf A)}(M, N[n]); the Ext oracle.
long long chi(const TwistedModule& m, const TwistedModule& n);
long long chi(const TwistedModule& m, const TwistedModule& n, const Morphism& pi_m, const Morphism& pi_n);

}  // namespace nchrr
