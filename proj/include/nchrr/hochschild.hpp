#pragma once

#include "nchrr/dg_algebra.hpp"

namespace nchrr {

// Bar word a0[a1|...|an]; all slots are basis indices of the parent algebra.
struct BarWord {
    int a0 = 0;
    std::vector<int> letters;

    bool operator==(const BarWord&) const = default;
    // Canonical order: bar length first, then lexicographic.
    bool operator<(const BarWord& o) const {
        if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
        if (a0 != o.a0) return a0 < o.a0;
        return letters < o.letters;
    }
};

// Exact-coefficient combination of bar words, kept in normal form
// (sorted words, no zero coefficients).
class HochschildChain {
  public:
    HochschildChain() = default;
    explicit HochschildChain(AlgebraPtr alg) : alg_(std::move(alg)) {}
    // Bar-length-0 chain of an algebra element.
    static HochschildChain of_element(const AlgebraElement& a);
    static HochschildChain single(AlgebraPtr alg, BarWord w, Scalar c);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<BarWord, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const BarWord& w, const Scalar& c);

    HochschildChain operator+(const HochschildChain& o) const;
    HochschildChain operator-(const HochschildChain& o) const;
    HochschildChain scaled(const Scalar& c) const;
    bool operator==(const HochschildChain& o) const { return terms_ == o.terms_; }

    int word_degree(const BarWord& w) const;

    HochschildChain b0() const;
    HochschildChain b1() const;
    HochschildChain b() const { return b0() + b1(); }
    bool is_cycle() const { return b().is_zero(); }

    AlgebraElement length0_part() const;
    // Same chain viewed over a structurally identical algebra.
    HochschildChain retargeted(AlgebraPtr other) const;

    std::string str() const;

  private:
    AlgebraPtr alg_;
    std::map<BarWord, Scalar> terms_;
};

// Shuffle product of two chains over the same algebra (eq. sign rule on
// suspended degrees).
HochschildChain shuffle(const HochschildChain& c1, const HochschildChain& c2);

// Word-wise image under a degree-preserving algebra map given by the
// images of basis elements.
HochschildChain map_chain(const HochschildChain& c, const std::vector<AlgebraElement>& images,
                          AlgebraPtr target);

// Kunneth map C(A) ⊗ C(B) -> C(A ⊗ B): embed both factors, then shuffle.
HochschildChain kunneth(const HochschildChain& c1, const HochschildChain& c2);

// (a0[a1|...|an])^vee = (-1)^{n + sum_{i<j}|sa_i||sa_j|} a0[an|...|a1],
// landing over the opposite algebra. Passing a prebuilt opposite avoids
// reconstructing it; it must match structurally.
HochschildChain vee(const HochschildChain& c);
HochschildChain vee(const HochschildChain& c, AlgebraPtr op_algebra);

// All bar words of the given total degree with at most max_letters letters.
std::vector<BarWord> words_of_degree(const AlgebraPtr& a, int total_degree, int max_letters);

// Matrix of b from the degree-t truncated slice to the degree-(t+1) slice.
SparseMatrix boundary_matrix(const AlgebraPtr& a, int total_degree, int max_letters);

struct HhResult {
    int dimension = 0;
    bool exact = false;  // truncation provably computes the full group
};

// Homology dimension of the bar-length-truncated complex at a total degree.
// The truncation keeps words with fewer than bar_cap letters.
HhResult hh_dimensions(const AlgebraPtr& a, int total_degree, int bar_cap);

// HH_0 reduction: coordinates of degree-0 elements modulo degree-0
// commutators and d(A^{-1}), over a deterministic quotient basis.
class Hh0Reducer {
  public:
    explicit Hh0Reducer(AlgebraPtr alg);

    // Canonical representative over the degree-0 basis slots.
    Vec reduce(const AlgebraElement& elem) const;
    // Degree-0 basis indices whose coordinates survive in the quotient.
    const std::vector<int>& quotient_basis() const { return quotient_basis_; }
    const std::vector<int>& degree0_basis() const { return deg0_; }

  private:
    AlgebraPtr alg_;
    std::vector<int> deg0_;                       // degree-0 basis indices
    std::map<int, int> coord_of_;                 // basis index -> coordinate
    SparseMatrix::RowEchelon span_;               // reduced span of commutators + boundaries
    std::vector<int> quotient_basis_;
};

Vec reduce_hh0(const AlgebraPtr& a, const AlgebraElement& elem);

}  // namespace nchrr
