#pragma once

#include "nchrr/sparse_matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace nchrr {

// Finite graded vector space; only nonzero degrees are stored.
struct GradedSpace {
    std::map<int, int> dims;
    std::map<int, std::vector<std::string>> labels;  // optional, per degree

    int dim(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }
    int total_dim() const;
    void set_dim(int n, int d);
    bool operator==(const GradedSpace& o) const { return dims == o.dims; }
};

// Finite cochain complex: d raises degree by one, d∘d = 0.
class ChainComplex {
  public:
    ChainComplex() = default;
    ChainComplex(const Field& f, GradedSpace space);

    const Field& field() const { return field_; }
    const GradedSpace& space() const { return space_; }
    int dim(int n) const { return space_.dim(n); }

    void set_d(int n, SparseMatrix m);
    // Always returns a dim(n+1) x dim(n) matrix.
    SparseMatrix d(int n) const;

    // Throws naming the first degree where d∘d != 0 or a shape is off.
    void validate() const;

    GradedSpace cohomology() const;
    long long euler_characteristic() const;

    // X[k] with X[k]^n = X^{n+k} and d_{X[k]} = (-1)^k d_X.
    ChainComplex shifted(int k) const;

  private:
    Field field_;
    GradedSpace space_;
    std::map<int, SparseMatrix> d_;
};

// Strong deformation retract of a complex onto its cohomology:
// p i = 1, i p - 1 = d H + H d, p H = 0, H i = 0, H H = 0.
struct Retraction {
    GradedSpace h;
    std::map<int, SparseMatrix> p;    // X^n -> H^n
    std::map<int, SparseMatrix> i;    // H^n -> X^n
    std::map<int, SparseMatrix> hop;  // X^n -> X^{n-1}

    SparseMatrix p_at(const ChainComplex& x, int n) const;
    SparseMatrix i_at(const ChainComplex& x, int n) const;
    SparseMatrix h_at(const ChainComplex& x, int n) const;

    // Checks the five identities exactly; throws on the first failure.
    void verify(const ChainComplex& x) const;
};

Retraction build_retraction(const ChainComplex& x);

}  // namespace nchrr
