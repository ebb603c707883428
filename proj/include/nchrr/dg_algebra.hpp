#pragma once

#include "nchrr/graded.hpp"

#include <memory>
#include <optional>

namespace nchrr {

using SparseVec = std::map<int, Scalar>;  // basis index -> nonzero coefficient

struct ValidationIssue {
    std::string check;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string str() const;
};

class DgAlgebra;
using AlgebraPtr = std::shared_ptr<const DgAlgebra>;

// Finite-dimensional unital DG algebra given by structure constants.
class DgAlgebra {
  public:
    DgAlgebra(Field field, std::vector<std::string> basis, std::vector<int> degrees, SparseVec unit,
              std::map<std::pair<int, int>, SparseVec> mult, SparseMatrix diff);

    int size() const { return static_cast<int>(basis_.size()); }
    const Field& field() const { return field_; }
    const std::string& label(int i) const { return basis_[i]; }
    const std::vector<std::string>& labels() const { return basis_; }
    int degree(int i) const { return degrees_[i]; }
    const std::vector<int>& degrees() const { return degrees_; }
    const SparseVec& unit() const { return unit_; }
    const SparseMatrix& diff() const { return diff_; }
    const std::map<std::pair<int, int>, SparseVec>& mult() const { return mult_; }

    SparseVec mul_basis(int i, int j) const;
    SparseVec mul(const SparseVec& v, const SparseVec& w) const;
    SparseVec d(const SparseVec& v) const;

    bool is_ungraded() const;    // all degrees zero
    bool has_zero_diff() const { return diff_.is_zero(); }
    // Basis index spanning the unit, if the unit is a scalar multiple of
    // a single basis element.
    std::optional<int> unit_basis_index() const;

    ValidationReport validate() const;
    // Structure-constant equality; labels are ignored.
    bool same_table(const DgAlgebra& o) const;

  private:
    Field field_;
    std::vector<std::string> basis_;
    std::vector<int> degrees_;
    SparseVec unit_;
    std::map<std::pair<int, int>, SparseVec> mult_;
    SparseMatrix diff_;
};

class AlgebraElement {
  public:
    AlgebraElement() = default;
    AlgebraElement(AlgebraPtr alg, SparseVec coeffs);

    static AlgebraElement zero(AlgebraPtr alg);
    static AlgebraElement unit(AlgebraPtr alg);
    static AlgebraElement basis(AlgebraPtr alg, int i);

    const AlgebraPtr& algebra() const { return alg_; }
    const SparseVec& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    // Degree of a homogeneous element; nullopt for 0 or mixed degrees.
    std::optional<int> degree() const;
    std::map<int, AlgebraElement> homogeneous_components() const;

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(const AlgebraElement& o) const;
    AlgebraElement scaled(const Scalar& c) const;
    AlgebraElement d() const;
    bool operator==(const AlgebraElement& o) const;

    std::string str() const;

  private:
    AlgebraPtr alg_;
    SparseVec coeffs_;
};

AlgebraPtr opposite(const AlgebraPtr& a);
// Basis of the tensor product is ordered lexicographically in (left, right).
AlgebraPtr tensor(const AlgebraPtr& a, const AlgebraPtr& b);
inline int tensor_index(int dim_b, int i, int j) { return i * dim_b + j; }

// A finite-dimensional algebra seen as a complex of vector spaces,
// with translation between basis indices and (degree, position) slots.
struct AlgebraComplex {
    ChainComplex complex;
    std::vector<std::pair<int, int>> slot_of_basis;     // basis -> (degree, pos)
    std::map<std::pair<int, int>, int> basis_of_slot;
};

AlgebraComplex algebra_as_complex(const AlgebraPtr& a);

// End_k(X) for a finite complex X: elementary maps between basis slots,
// composition product, differential [d_X, -].
struct EndAlgebra {
    AlgebraPtr alg;
    ChainComplex complex;
    struct Gen {
        int from_degree, from_pos, to_degree, to_pos;
    };
    std::vector<Gen> gens;                              // End basis -> elementary map
    std::vector<std::pair<int, int>> total;             // total index -> (degree, pos)
    std::map<std::pair<int, int>, int> total_of_slot;
    // (from slot, to slot) -> End basis index
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, int> gen_of;

    // Element of End as a matrix on the total space of X.
    SparseMatrix total_matrix(const AlgebraElement& t) const;
    // Operator on X (as a matrix over the algebra basis of A) -> End element.
    AlgebraElement from_algebra_operator(const AlgebraComplex& ac, const SparseMatrix& op) const;
};

EndAlgebra endomorphism_algebra(const ChainComplex& x);

// L(x): c -> x c    and    R(y): c -> (-1)^{|c||y|} c y,
// as matrices acting on coefficient vectors of A.
SparseMatrix left_operator(const AlgebraElement& a);
SparseMatrix right_operator(const AlgebraElement& b);

Scalar trace(const SparseMatrix& m, const DgAlgebra& a);
Scalar supertrace(const SparseMatrix& m, const DgAlgebra& a);

}  // namespace nchrr
