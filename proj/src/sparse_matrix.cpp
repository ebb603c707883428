#include "nchrr/sparse_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace nchrr {

namespace {

using Row = std::map<int, Scalar>;

// Row echelon form with the pivot policy from the header. Returns the
// eliminated rows and the pivot (row, col) pairs in elimination order.
struct Echelon {
    std::vector<Row> rows;
    std::vector<std::pair<int, int>> pivots;  // (row index in `rows`, column)
};

void axpy(Row& dst, const Scalar& c, const Row& src) {
    for (const auto& [j, v] : src) {
        auto it = dst.find(j);
        if (it == dst.end()) {
            Scalar t = c * v;
            if (!t.is_zero()) dst.emplace(j, std::move(t));
        } else {
            it->second += c * v;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

Echelon echelonize(std::vector<Row> rows, int cols) {
    Echelon e;
    size_t done = 0;  // rows [0, done) hold pivots already
    for (int col = 0; col < cols && done < rows.size(); ++col) {
        size_t best = rows.size();
        size_t best_bits = 0;
        for (size_t r = done; r < rows.size(); ++r) {
            auto it = rows[r].find(col);
            if (it == rows[r].end()) continue;
            size_t bits = it->second.bit_length();
            if (best == rows.size() || bits < best_bits) {
                best = r;
                best_bits = bits;
            }
        }
        if (best == rows.size()) continue;
        std::swap(rows[done], rows[best]);
        const Scalar piv = rows[done].at(col);
        for (size_t r = done + 1; r < rows.size(); ++r) {
            auto it = rows[r].find(col);
            if (it == rows[r].end()) continue;
            axpy(rows[r], -(it->second / piv), rows[done]);
        }
        e.pivots.emplace_back(static_cast<int>(done), col);
        ++done;
    }
    e.rows = std::move(rows);
    return e;
}

// Back-eliminates above pivots and scales pivots to 1.
void reduce(Echelon& e) {
    for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
        auto [r, c] = *it;
        Scalar inv = e.rows[r].at(c).inverse();
        Row scaled_row;
        for (const auto& [j, v] : e.rows[r]) scaled_row.emplace(j, inv * v);
        e.rows[r] = std::move(scaled_row);
        for (int above = 0; above < r; ++above) {
            auto hit = e.rows[above].find(c);
            if (hit == e.rows[above].end()) continue;
            axpy(e.rows[above], -hit->second, e.rows[r]);
        }
    }
}

}  // namespace

SparseMatrix::SparseMatrix(int rows, int cols, const Field& f) : rows_(rows), cols_(cols), field_(f) {
    if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
}

SparseMatrix SparseMatrix::identity(int n, const Field& f) {
    SparseMatrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
    return m;
}

SparseMatrix SparseMatrix::from_columns(int rows, const std::vector<Vec>& cols, const Field& f) {
    SparseMatrix m(rows, static_cast<int>(cols.size()), f);
    for (size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(cols[j].size()) != rows) throw InputError("column length mismatch");
        for (int i = 0; i < rows; ++i) m.set(i, static_cast<int>(j), cols[j][i]);
    }
    return m;
}

Scalar SparseMatrix::get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Scalar::zero(field_) : it->second;
}

void SparseMatrix::set(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw InputError("matrix index out of bounds");
    if (v.field() != field_) throw InputError("matrix entry from a different field");
    if (v.is_zero())
        entries_.erase({r, c});
    else
        entries_[{r, c}] = v;
}

void SparseMatrix::add_to(int r, int c, const Scalar& v) { set(r, c, get(r, c) + v); }

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in +");
    SparseMatrix m = *this;
    for (const auto& [rc, v] : o.entries_) m.add_to(rc.first, rc.second, v);
    return m;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + o.scaled(-Scalar::one(field_)); }

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix shape mismatch in *");
    SparseMatrix m(rows_, o.cols_, field_);
    for (const auto& [rc, v] : entries_) {
        auto lo = o.entries_.lower_bound({rc.second, 0});
        auto hi = o.entries_.upper_bound({rc.second, o.cols_});
        for (auto it = lo; it != hi; ++it) m.add_to(rc.first, it->first.second, v * it->second);
    }
    return m;
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
    SparseMatrix m(rows_, cols_, field_);
    if (c.is_zero()) return m;
    for (const auto& [rc, v] : entries_) m.set(rc.first, rc.second, c * v);
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix m(cols_, rows_, field_);
    for (const auto& [rc, v] : entries_) m.set(rc.second, rc.first, v);
    return m;
}

Vec SparseMatrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw InputError("vector length mismatch");
    Vec out = zero_vec(rows_, field_);
    for (const auto& [rc, e] : entries_) out[rc.first] += e * v[rc.second];
    return out;
}

Vec SparseMatrix::column(int c) const {
    Vec out = zero_vec(rows_, field_);
    for (int i = 0; i < rows_; ++i) out[i] = get(i, c);
    return out;
}

namespace {
std::vector<Row> to_rows(const SparseMatrix& m) {
    std::vector<Row> rows(m.rows());
    for (const auto& [rc, v] : m.entries()) rows[rc.first].emplace(rc.second, v);
    return rows;
}
}  // namespace

int SparseMatrix::rank() const { return static_cast<int>(echelonize(to_rows(*this), cols_).pivots.size()); }

std::vector<Vec> SparseMatrix::kernel_basis() const {
    Echelon e = echelonize(to_rows(*this), cols_);
    reduce(e);
    std::vector<bool> is_pivot(cols_, false);
    std::vector<int> pivot_row(cols_, -1);
    for (auto [r, c] : e.pivots) {
        is_pivot[c] = true;
        pivot_row[c] = r;
    }
    std::vector<Vec> basis;
    for (int f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        Vec x = zero_vec(cols_, field_);
        x[f] = Scalar::one(field_);
        for (auto [r, c] : e.pivots) {
            auto it = e.rows[r].find(f);
            if (it != e.rows[r].end()) x[c] = -it->second;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Vec> SparseMatrix::solve(const Vec& rhs) const {
    if (static_cast<int>(rhs.size()) != rows_) throw InputError("rhs length mismatch");
    std::vector<Row> rows = to_rows(*this);
    for (int i = 0; i < rows_; ++i)
        if (!rhs[i].is_zero()) rows[i].emplace(cols_, rhs[i]);
    Echelon e = echelonize(std::move(rows), cols_ + 1);
    for (auto [r, c] : e.pivots)
        if (c == cols_) return std::nullopt;  // pivot in the augmented column
    reduce(e);
    Vec x = zero_vec(cols_, field_);
    for (auto [r, c] : e.pivots) {
        auto it = e.rows[r].find(cols_);
        if (it != e.rows[r].end()) x[c] = it->second;
    }
    return x;
}

SparseMatrix SparseMatrix::invert() const {
    if (rows_ != cols_) throw Error("invert: matrix is not square");
    std::vector<Row> rows = to_rows(*this);
    for (int i = 0; i < rows_; ++i) rows[i].emplace(cols_ + i, Scalar::one(field_));
    Echelon e = echelonize(std::move(rows), 2 * cols_);
    int r = 0;
    for (auto [row, c] : e.pivots)
        if (c < cols_) ++r;
    if (r < cols_) throw Error("invert: singular matrix");
    reduce(e);
    SparseMatrix inv(rows_, cols_, field_);
    for (auto [row, c] : e.pivots) {
        for (const auto& [j, v] : e.rows[row])
            if (j >= cols_) inv.set(c, j - cols_, v);
    }
    return inv;
}

Scalar SparseMatrix::determinant() const {
    if (rows_ != cols_) throw Error("determinant: matrix is not square");
    std::vector<Row> rows = to_rows(*this);
    Scalar det = Scalar::one(field_);
    for (int col = 0; col < cols_; ++col) {
        size_t piv = rows.size();
        for (size_t r = col; r < rows.size(); ++r)
            if (rows[r].count(col)) {
                piv = r;
                break;
            }
        if (piv == rows.size()) return Scalar::zero(field_);
        if (piv != static_cast<size_t>(col)) {
            std::swap(rows[col], rows[piv]);
            det = -det;
        }
        const Scalar p = rows[col].at(col);
        det *= p;
        for (size_t r = col + 1; r < rows.size(); ++r) {
            auto it = rows[r].find(col);
            if (it == rows[r].end()) continue;
            axpy(rows[r], -(it->second / p), rows[col]);
        }
    }
    return det;
}

SparseMatrix::RowEchelon SparseMatrix::reduced_row_echelon() const {
    Echelon e = echelonize(to_rows(*this), cols_);
    reduce(e);
    RowEchelon out;
    out.rows = std::move(e.rows);
    out.pivots = std::move(e.pivots);
    return out;
}

std::vector<int> SparseMatrix::independent_columns() const {
    Echelon e = echelonize(to_rows(*this), cols_);
    std::vector<int> cols;
    for (auto [r, c] : e.pivots) cols.push_back(c);
    std::sort(cols.begin(), cols.end());
    return cols;
}

std::string SparseMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << get(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

Vec zero_vec(int n, const Field& f) { return Vec(static_cast<size_t>(n), Scalar::zero(f)); }

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("vector length mismatch in add");
    Vec out = a;
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Vec scaled(const Vec& a, const Scalar& c) {
    Vec out = a;
    for (auto& v : out) v *= c;
    return out;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace nchrr
