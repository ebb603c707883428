#pragma once

#include "nchrr/scalar.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace nchrr {

using Vec = std::vector<Scalar>;

// Sparse exact matrix. Zero entries are never stored.
class SparseMatrix {
  public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols, const Field& f);

    static SparseMatrix identity(int n, const Field& f);
    static SparseMatrix from_columns(int rows, const std::vector<Vec>& cols, const Field& f);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return field_; }
    const std::map<std::pair<int, int>, Scalar>& entries() const { return entries_; }

    Scalar get(int r, int c) const;
    void set(int r, int c, const Scalar& v);
    void add_to(int r, int c, const Scalar& v);

    bool is_zero() const { return entries_.empty(); }
    bool operator==(const SparseMatrix& o) const;

    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix scaled(const Scalar& c) const;
    SparseMatrix transpose() const;
    Vec apply(const Vec& v) const;
    Vec column(int c) const;

    // Exact Gaussian elimination, partial pivoting by smallest bit length,
    // ties broken by lowest row; columns processed left to right.
    int rank() const;
    std::vector<Vec> kernel_basis() const;
    std::optional<Vec> solve(const Vec& rhs) const;
    SparseMatrix invert() const;
    Scalar determinant() const;

    // Indices of a deterministic maximal independent set of columns
    // (pivot columns of the echelon form, greedy left to right).
    std::vector<int> independent_columns() const;

    std::string str() const;

    struct RowEchelon {
        std::vector<std::map<int, Scalar>> rows;   // reduced rows, pivots scaled to 1
        std::vector<std::pair<int, int>> pivots;   // (row, col)
    };
    RowEchelon reduced_row_echelon() const;

  private:
    int rows_, cols_;
    Field field_;
    std::map<std::pair<int, int>, Scalar> entries_;
};

Vec zero_vec(int n, const Field& f);
Vec add(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, const Scalar& c);
bool is_zero(const Vec& v);

}  // namespace nchrr
