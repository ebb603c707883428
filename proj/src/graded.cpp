#include "nchrr/graded.hpp"

#include <string>

namespace nchrr {

int GradedSpace::total_dim() const {
    int t = 0;
    for (const auto& [n, d] : dims) t += d;
    return t;
}

void GradedSpace::set_dim(int n, int d) {
    if (d < 0) throw InputError("negative dimension in degree " + std::to_string(n));
    if (d == 0)
        dims.erase(n);
    else
        dims[n] = d;
}

ChainComplex::ChainComplex(const Field& f, GradedSpace space) : field_(f), space_(std::move(space)) {}

void ChainComplex::set_d(int n, SparseMatrix m) {
    if (m.rows() != dim(n + 1) || m.cols() != dim(n))
        throw InputError("d_" + std::to_string(n) + " has wrong shape");
    if (m.is_zero())
        d_.erase(n);
    else
        d_[n] = std::move(m);
}

SparseMatrix ChainComplex::d(int n) const {
    auto it = d_.find(n);
    if (it != d_.end()) return it->second;
    return SparseMatrix(dim(n + 1), dim(n), field_);
}

void ChainComplex::validate() const {
    for (const auto& [n, dn] : d_) {
        if (!(d(n + 1) * dn).is_zero())
            throw Error("d*d != 0 at degree " + std::to_string(n));
    }
}

GradedSpace ChainComplex::cohomology() const {
    validate();
    GradedSpace h;
    std::map<int, int> ranks;
    for (const auto& [n, dn] : d_) ranks[n] = dn.rank();
    auto rank_at = [&](int n) {
        auto it = ranks.find(n);
        return it == ranks.end() ? 0 : it->second;
    };
    for (const auto& [n, dn] : space_.dims) {
        int ker = dn - rank_at(n);
        h.set_dim(n, ker - rank_at(n - 1));
    }
    return h;
}

long long ChainComplex::euler_characteristic() const {
    long long by_dims = 0;
    for (const auto& [n, dn] : space_.dims) by_dims += (n % 2 == 0 ? dn : -dn);
    long long by_cohomology = 0;
    for (const auto& [n, dn] : cohomology().dims) by_cohomology += (n % 2 == 0 ? dn : -dn);
    if (by_dims != by_cohomology) throw Error("euler characteristic mismatch (d*d != 0?)");
    return by_dims;
}

ChainComplex ChainComplex::shifted(int k) const {
    GradedSpace s;
    for (const auto& [n, dn] : space_.dims) s.set_dim(n - k, dn);
    ChainComplex out(field_, s);
    Scalar sign = Scalar::of_int(k % 2 == 0 ? 1 : -1, field_);
    for (const auto& [n, dn] : d_) out.set_d(n - k, dn.scaled(sign));
    return out;
}

SparseMatrix Retraction::p_at(const ChainComplex& x, int n) const {
    auto it = p.find(n);
    return it != p.end() ? it->second : SparseMatrix(h.dim(n), x.dim(n), x.field());
}

SparseMatrix Retraction::i_at(const ChainComplex& x, int n) const {
    auto it = i.find(n);
    return it != i.end() ? it->second : SparseMatrix(x.dim(n), h.dim(n), x.field());
}

SparseMatrix Retraction::h_at(const ChainComplex& x, int n) const {
    auto it = hop.find(n);
    return it != hop.end() ? it->second : SparseMatrix(x.dim(n - 1), x.dim(n), x.field());
}

void Retraction::verify(const ChainComplex& x) const {
    const Field& f = x.field();
    std::vector<int> degrees;
    for (const auto& [n, d] : x.space().dims) degrees.push_back(n);
    for (int n : degrees) {
        SparseMatrix pn = p_at(x, n), in = i_at(x, n), hn = h_at(x, n);
        if (!(pn * in == SparseMatrix::identity(h.dim(n), f)))
            throw Error("retraction: p i != 1 at degree " + std::to_string(n));
        SparseMatrix lhs = in * pn - SparseMatrix::identity(x.dim(n), f);
        SparseMatrix rhs = x.d(n - 1) * hn + h_at(x, n + 1) * x.d(n);
        if (!(lhs == rhs)) throw Error("retraction: i p - 1 != dH + Hd at degree " + std::to_string(n));
        if (!(p_at(x, n - 1) * hn).is_zero())
            throw Error("retraction: p H != 0 at degree " + std::to_string(n));
        if (!(hn * i_at(x, n)).is_zero())
            throw Error("retraction: H i != 0 at degree " + std::to_string(n));
        if (!(h_at(x, n - 1) * hn).is_zero())
            throw Error("retraction: H H != 0 at degree " + std::to_string(n));
    }
}

Retraction build_retraction(const ChainComplex& x) {
    x.validate();
    const Field& f = x.field();
    Retraction r;

    // Per degree: X^n = B ⊕ Hrep ⊕ C with B = im(d_{n-1}), B ⊕ Hrep = ker(d_n),
    // and d mapping C isomorphically onto the next B. The homotopy inverts d
    // on that piece and kills the rest, which makes the side conditions hold.
    std::map<int, std::vector<Vec>> complement;  // C-basis per degree
    std::map<int, std::vector<Vec>> image;       // B-basis per degree, B[k] = d(C[k])

    for (const auto& [n, dim_n] : x.space().dims) {
        SparseMatrix dn = x.d(n);
        std::vector<Vec> kernel = dn.kernel_basis();
        // Extend the kernel by standard basis vectors to a basis of X^n;
        // the added columns form the complement C.
        std::vector<Vec> cols = kernel;
        for (int j = 0; j < dim_n; ++j) {
            Vec e = zero_vec(dim_n, f);
            e[j] = Scalar::one(f);
            cols.push_back(std::move(e));
        }
        SparseMatrix ext = SparseMatrix::from_columns(dim_n, cols, f);
        std::vector<Vec> c_basis;
        for (int c : ext.independent_columns())
            if (c >= static_cast<int>(kernel.size())) c_basis.push_back(cols[c]);
        std::vector<Vec> b_next;
        for (const Vec& c : c_basis) b_next.push_back(dn.apply(c));
        complement[n] = std::move(c_basis);
        image[n + 1] = std::move(b_next);
    }

    for (const auto& [n, dim_n] : x.space().dims) {
        std::vector<Vec> kernel = x.d(n).kernel_basis();
        const std::vector<Vec>& b_basis = image[n];
        const std::vector<Vec>& c_basis = complement[n];

        // Extend B to ker(d_n) by kernel columns; the added ones represent H^n.
        std::vector<Vec> cols = b_basis;
        for (const Vec& k : kernel) cols.push_back(k);
        SparseMatrix ext = SparseMatrix::from_columns(dim_n, cols, f);
        std::vector<Vec> h_basis;
        for (int c : ext.independent_columns())
            if (c >= static_cast<int>(b_basis.size())) h_basis.push_back(cols[c]);

        int hb = static_cast<int>(h_basis.size());
        r.h.set_dim(n, hb);

        std::vector<Vec> full = b_basis;
        full.insert(full.end(), h_basis.begin(), h_basis.end());
        full.insert(full.end(), c_basis.begin(), c_basis.end());
        if (static_cast<int>(full.size()) != dim_n) throw Error("retraction: basis split failed");
        if (dim_n == 0) continue;
        SparseMatrix basis = SparseMatrix::from_columns(dim_n, full, f);
        SparseMatrix coords = basis.invert();  // rows = (B | H | C)-coordinates

        int nb = static_cast<int>(b_basis.size());
        if (hb > 0) {
            SparseMatrix pn(hb, dim_n, f);
            for (const auto& [rc, v] : coords.entries())
                if (rc.first >= nb && rc.first < nb + hb) pn.set(rc.first - nb, rc.second, v);
            r.p[n] = std::move(pn);
            r.i[n] = SparseMatrix::from_columns(dim_n, h_basis, f);
        }
        if (nb > 0) {
            // H on B: d(c_k) -> -c_k, via the B-coordinate rows. The sign makes
            // i p - 1 = d H + H d hold as stated (not its negative).
            SparseMatrix b_coords(nb, dim_n, f);
            for (const auto& [rc, v] : coords.entries())
                if (rc.first < nb) b_coords.set(rc.first, rc.second, v);
            int prev_dim = x.dim(n - 1);
            SparseMatrix pre = SparseMatrix::from_columns(prev_dim, complement[n - 1], f);
            r.hop[n] = (pre * b_coords).scaled(-Scalar::one(f));
        }
    }
    r.verify(x);
    return r;
}

}  // namespace nchrr
