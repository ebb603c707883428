#include "nchrr/twisted.hpp"

#include <sstream>

namespace nchrr {

namespace {

int pm(long long e) { return e % 2 == 0 ? 1 : -1; }

// x(x+1)/2 mod 2, defined for all integers.
long long tri(long long x) { return (x * (x + 1) / 2) % 2; }

std::string pair_str(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

Morphism::Morphism(AlgebraPtr alg, std::vector<int> src_shifts, std::vector<int> tgt_shifts, int degree)
    : alg_(std::move(alg)), src_(std::move(src_shifts)), tgt_(std::move(tgt_shifts)), degree_(degree) {}

Morphism Morphism::identity(AlgebraPtr alg, const std::vector<int>& shifts) {
    Morphism f(alg, shifts, shifts, 0);
    for (size_t i = 0; i < shifts.size(); ++i)
        f.set_entry(static_cast<int>(i), static_cast<int>(i), AlgebraElement::unit(alg));
    return f;
}

AlgebraElement Morphism::entry(int i, int j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? AlgebraElement::zero(alg_) : it->second;
}

void Morphism::set_entry(int i, int j, const AlgebraElement& a) {
    if (i < 0 || i >= static_cast<int>(tgt_.size()) || j < 0 || j >= static_cast<int>(src_.size()))
        throw InputError("morphism entry out of range");
    if (a.is_zero()) {
        entries_.erase({i, j});
        return;
    }
    auto d = a.degree();
    if (!d || *d != degree_ + tgt_[i] - src_[j])
        throw InputError("morphism entry at " + pair_str(i, j) + " has wrong degree");
    entries_[{i, j}] = a;
}

Morphism Morphism::operator+(const Morphism& o) const {
    if (src_ != o.src_ || tgt_ != o.tgt_ || degree_ != o.degree_) throw Error("morphism shape mismatch in +");
    Morphism f = *this;
    for (const auto& [ij, a] : o.entries_) f.set_entry(ij.first, ij.second, f.entry(ij.first, ij.second) + a);
    return f;
}

Morphism Morphism::operator-(const Morphism& o) const {
    return *this + o.scaled(-Scalar::one(alg_->field()));
}

Morphism Morphism::operator*(const Morphism& o) const {
    if (src_ != o.tgt_) throw Error("morphism composition mismatch");
    Morphism f(alg_, o.src_, tgt_, degree_ + o.degree_);
    for (const auto& [ij, a] : entries_)
        for (const auto& [jk, b] : o.entries_) {
            if (ij.second != jk.first) continue;
            f.set_entry(ij.first, jk.second, f.entry(ij.first, jk.second) + a * b);
        }
    return f;
}

Morphism Morphism::scaled(const Scalar& c) const {
    Morphism f(alg_, src_, tgt_, degree_);
    if (c.is_zero()) return f;
    for (const auto& [ij, a] : entries_) f.set_entry(ij.first, ij.second, a.scaled(c));
    return f;
}

bool Morphism::operator==(const Morphism& o) const {
    return src_ == o.src_ && tgt_ == o.tgt_ && degree_ == o.degree_ && entries_ == o.entries_;
}

Morphism Morphism::d_free() const {
    Morphism f(alg_, src_, tgt_, degree_ + 1);
    for (const auto& [ij, a] : entries_) {
        AlgebraElement da = a.d();
        if (da.is_zero()) continue;
        f.set_entry(ij.first, ij.second, da.scaled(Scalar::of_int(pm(tgt_[ij.first]), alg_->field())));
    }
    return f;
}

TwistedModule::TwistedModule(AlgebraPtr alg, std::vector<int> shifts,
                             std::map<std::pair<int, int>, AlgebraElement> alpha)
    : alg_(std::move(alg)), shifts_(std::move(shifts)) {
    int n = rank();
    for (auto& [ij, a] : alpha) {
        if (ij.first < 0 || ij.first >= n || ij.second < 0 || ij.second >= n)
            throw InputError("alpha index out of range");
        if (!a.is_zero()) alpha_.emplace(ij, std::move(a));
    }
}

TwistedModule TwistedModule::free_module(AlgebraPtr alg, std::vector<int> shifts) {
    return TwistedModule(std::move(alg), std::move(shifts), {});
}

AlgebraElement TwistedModule::alpha(int i, int j) const {
    auto it = alpha_.find({i, j});
    return it == alpha_.end() ? AlgebraElement::zero(alg_) : it->second;
}

Morphism TwistedModule::alpha_morphism() const {
    Morphism f(alg_, shifts_, shifts_, 1);
    for (const auto& [ij, a] : alpha_) f.set_entry(ij.first, ij.second, a);
    return f;
}

ValidationReport TwistedModule::validate() const {
    ValidationReport rep;
    for (const auto& [ij, a] : alpha_) {
        if (ij.first >= ij.second) {
            rep.issues.push_back({"triangularity", "alpha" + pair_str(ij.first, ij.second) + " is not above the diagonal"});
            break;
        }
    }
    for (const auto& [ij, a] : alpha_) {
        auto d = a.degree();
        if (!d || *d != 1 + shifts_[ij.first] - shifts_[ij.second]) {
            rep.issues.push_back({"degree", "alpha" + pair_str(ij.first, ij.second) + " is not homogeneous of degree 1 + r_i - r_j"});
            break;
        }
    }
    if (!rep.ok()) return rep;

    // d_free(alpha) + alpha*alpha = 0
    Morphism a = alpha_morphism();
    Morphism mc = a.d_free() + a * a;
    if (!mc.is_zero()) {
        auto ij = mc.entries().begin()->first;
        rep.issues.push_back({"maurer-cartan", "fails at entry " + pair_str(ij.first, ij.second)});
    }
    return rep;
}

bool TwistedModule::operator==(const TwistedModule& o) const {
    return shifts_ == o.shifts_ && alpha_ == o.alpha_;
}

Morphism d_tw(const TwistedModule& src, const TwistedModule& tgt, const Morphism& f) {
    Morphism out = f.d_free();
    Morphism beta = tgt.alpha_morphism();
    Morphism alpha = src.alpha_morphism();
    out = out + beta * f;
    out = out + (f * alpha).scaled(Scalar::of_int(-pm(f.degree()), f.algebra()->field()));
    return out;
}

bool is_closed(const TwistedModule& src, const TwistedModule& tgt, const Morphism& f) {
    return d_tw(src, tgt, f).is_zero();
}

HomComplex hom_complex(const TwistedModule& m, const TwistedModule& n) {
    if (!m.algebra()->same_table(*n.algebra())) throw InputError("hom_complex: algebra mismatch");
    const AlgebraPtr& a = m.algebra();
    const Field& f = a->field();
    if (!m.validate().ok() || !n.validate().ok()) throw Error("hom_complex: invalid module");

    HomComplex hc;
    hc.source = m;
    hc.target = n;
    GradedSpace space;
    for (int i = 0; i < n.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j)
            for (int w = 0; w < a->size(); ++w) {
                int t = a->degree(w) - n.shifts()[i] + m.shifts()[j];
                auto& list = hc.basis[t];
                hc.slot_of[{i, j, w}] = {t, static_cast<int>(list.size())};
                list.emplace_back(i, j, w);
                space.set_dim(t, static_cast<int>(list.size()));
            }

    ChainComplex x(f, space);
    for (const auto& [t, slots] : hc.basis) {
        SparseMatrix d(space.dim(t + 1), space.dim(t), f);
        for (size_t col = 0; col < slots.size(); ++col) {
            auto [i, j, w] = slots[col];
            Morphism elem(a, m.shifts(), n.shifts(), t);
            elem.set_entry(i, j, AlgebraElement::basis(a, w));
            Morphism img = d_tw(m, n, elem);
            for (const auto& [ij, val] : img.entries())
                for (const auto& [wb, c] : val.coeffs()) {
                    auto [td, pos] = hc.slot_of.at({ij.first, ij.second, wb});
                    if (td != t + 1) throw Error("hom_complex: differential is not degree 1");
                    d.add_to(pos, static_cast<int>(col), c);
                }
        }
        if (!d.is_zero()) x.set_d(t, std::move(d));
    }
    x.validate();  // d_Tw^2 = 0
    hc.complex = std::move(x);
    return hc;
}

Morphism HomComplex::morphism_at(int degree, const Vec& coords) const {
    Morphism f(source.algebra(), source.shifts(), target.shifts(), degree);
    auto it = basis.find(degree);
    if (it == basis.end()) return f;
    const auto& slots = it->second;
    if (coords.size() != slots.size()) throw Error("morphism_at: bad coordinate length");
    std::map<std::pair<int, int>, SparseVec> acc;
    for (size_t k = 0; k < slots.size(); ++k) {
        if (coords[k].is_zero()) continue;
        auto [i, j, w] = slots[k];
        acc[{i, j}][w] = coords[k];
    }
    for (auto& [ij, v] : acc) f.set_entry(ij.first, ij.second, AlgebraElement(source.algebra(), std::move(v)));
    return f;
}

Vec HomComplex::coords_of(const Morphism& f) const {
    auto it = basis.find(f.degree());
    int dim = it == basis.end() ? 0 : static_cast<int>(it->second.size());
    Vec v = zero_vec(dim, source.algebra()->field());
    for (const auto& [ij, val] : f.entries())
        for (const auto& [w, c] : val.coeffs()) {
            auto [t, pos] = slot_of.at({ij.first, ij.second, w});
            if (t != f.degree()) throw Error("coords_of: degree mismatch");
            v[pos] = c;
        }
    return v;
}

std::map<int, SparseMatrix> HomComplex::conjugation_endo(const Morphism& left, const Morphism& right) const {
    const Field& f = source.algebra()->field();
    std::map<int, SparseMatrix> out;
    for (const auto& [t, slots] : basis) {
        SparseMatrix p(static_cast<int>(slots.size()), static_cast<int>(slots.size()), f);
        for (size_t col = 0; col < slots.size(); ++col) {
            auto [i, j, w] = slots[col];
            Morphism elem(source.algebra(), source.shifts(), target.shifts(), t);
            elem.set_entry(i, j, AlgebraElement::basis(source.algebra(), w));
            Morphism img = left * elem * right;
            for (const auto& [ij, val] : img.entries())
                for (const auto& [wb, c] : val.coeffs()) {
                    auto [td, pos] = slot_of.at({ij.first, ij.second, wb});
                    if (td != t) throw Error("conjugation_endo: degree drift");
                    p.add_to(pos, static_cast<int>(col), c);
                }
        }
        out[t] = std::move(p);
    }
    return out;
}

TwistedModule cone(const TwistedModule& m, const TwistedModule& n, const Morphism& f) {
    if (f.degree() != 0) throw Error("cone: morphism degree must be 0");
    if (f.src_shifts() != m.shifts() || f.tgt_shifts() != n.shifts()) throw Error("cone: shape mismatch");
    if (!is_closed(m, n, f)) throw Error("cone: morphism is not closed");
    const Field& fld = m.algebra()->field();
    int nn = n.rank();
    std::vector<int> shifts = n.shifts();
    for (int r : m.shifts()) shifts.push_back(r + 1);

    std::map<std::pair<int, int>, AlgebraElement> alpha;
    for (const auto& [ij, a] : n.alpha_entries()) alpha[ij] = a;
    Scalar minus = Scalar::of_int(-1, fld);
    for (const auto& [ij, a] : m.alpha_entries()) alpha[{nn + ij.first, nn + ij.second}] = a.scaled(minus);
    for (const auto& [ij, a] : f.entries()) alpha[{ij.first, nn + ij.second}] = a;

    TwistedModule c(m.algebra(), std::move(shifts), std::move(alpha));
    if (!c.validate().ok()) throw Error("cone: result fails validation: " + c.validate().str());
    return c;
}

TwistedModule shift(const TwistedModule& m, int k) {
    std::vector<int> shifts = m.shifts();
    for (int& r : shifts) r += k;
    std::map<std::pair<int, int>, AlgebraElement> alpha;
    Scalar s = Scalar::of_int(pm(k), m.algebra()->field());
    for (const auto& [ij, a] : m.alpha_entries()) alpha[ij] = a.scaled(s);
    TwistedModule out(m.algebra(), std::move(shifts), std::move(alpha));
    if (!out.validate().ok()) throw Error("shift: result fails validation");
    return out;
}

TwistedModule direct_sum(const TwistedModule& a, const TwistedModule& b) {
    std::vector<int> shifts = a.shifts();
    shifts.insert(shifts.end(), b.shifts().begin(), b.shifts().end());
    std::map<std::pair<int, int>, AlgebraElement> alpha = a.alpha_entries();
    int off = a.rank();
    for (const auto& [ij, x] : b.alpha_entries()) alpha[{off + ij.first, off + ij.second}] = x;
    return TwistedModule(a.algebra(), std::move(shifts), std::move(alpha));
}

Morphism direct_sum(const Morphism& a, const Morphism& b) {
    if (a.degree() != b.degree()) throw Error("direct_sum: degree mismatch");
    std::vector<int> src = a.src_shifts(), tgt = a.tgt_shifts();
    src.insert(src.end(), b.src_shifts().begin(), b.src_shifts().end());
    tgt.insert(tgt.end(), b.tgt_shifts().begin(), b.tgt_shifts().end());
    Morphism f(a.algebra(), src, tgt, a.degree());
    for (const auto& [ij, x] : a.entries()) f.set_entry(ij.first, ij.second, x);
    int ro = static_cast<int>(a.tgt_shifts().size());
    int co = static_cast<int>(a.src_shifts().size());
    for (const auto& [ij, x] : b.entries()) f.set_entry(ro + ij.first, co + ij.second, x);
    return f;
}

namespace {

// Sign of the dualized alpha entry (j,k); chosen so that dual is an
// involution on the nose and Maurer-Cartan is preserved.
int dual_alpha_sign(int rj, int rk) {
    long long e = static_cast<long long>(rj) * rk + rk + tri(-rj) + tri(-rk);
    return -pm(e);
}

}  // namespace

TwistedModule dual(const TwistedModule& m) { return dual(m, opposite(m.algebra())); }

TwistedModule dual(const TwistedModule& m, const AlgebraPtr& op) {
    if (!opposite(m.algebra())->same_table(*op)) throw InputError("dual: target is not the opposite algebra");
    if (!m.validate().ok()) throw Error("dual: invalid module");
    int n = m.rank();
    auto rev = [n](int j) { return n - 1 - j; };
    std::vector<int> shifts(n);
    for (int j = 0; j < n; ++j) shifts[rev(j)] = -m.shifts()[j];
    std::map<std::pair<int, int>, AlgebraElement> alpha;
    for (const auto& [jk, a] : m.alpha_entries()) {
        int j = jk.first, k = jk.second;
        Scalar s = Scalar::of_int(dual_alpha_sign(m.shifts()[j], m.shifts()[k]), op->field());
        alpha[{rev(k), rev(j)}] = AlgebraElement(op, a.coeffs()).scaled(s);
    }
    TwistedModule out(op, std::move(shifts), std::move(alpha));
    if (!out.validate().ok()) throw Error("dual: result fails validation: " + out.validate().str());
    return out;
}

Morphism dual_morphism(const TwistedModule& m, const Morphism& f, const AlgebraPtr& op) {
    if (f.src_shifts() != m.shifts() || f.tgt_shifts() != m.shifts())
        throw Error("dual_morphism: only endomorphisms are transported");
    int n = m.rank();
    auto rev = [n](int j) { return n - 1 - j; };
    std::vector<int> shifts(n);
    for (int j = 0; j < n; ++j) shifts[rev(j)] = -m.shifts()[j];
    Morphism out(op, shifts, shifts, f.degree());
    for (const auto& [jk, a] : f.entries()) {
        int j = jk.first, k = jk.second;
        long long rj = m.shifts()[j], rk = m.shifts()[k];
        long long e = rj * rk + rj + static_cast<long long>(f.degree()) * rj + tri(-rj) + tri(-rk);
        out.set_entry(rev(k), rev(j), AlgebraElement(op, a.coeffs()).scaled(Scalar::of_int(pm(e), op->field())));
    }
    return out;
}

TensorComplex tensor_over_A(const TwistedModule& n, const TwistedModule& m) {
    const AlgebraPtr& a = n.algebra();
    if (!opposite(a)->same_table(*m.algebra())) throw InputError("tensor_over_A: right factor must live over the opposite algebra");
    if (!n.validate().ok() || !m.validate().ok()) throw Error("tensor_over_A: invalid module");
    const Field& f = a->field();

    TensorComplex tc;
    tc.left = n;
    tc.right = m;
    GradedSpace space;
    for (int j = 0; j < n.rank(); ++j)
        for (int i = 0; i < m.rank(); ++i)
            for (int w = 0; w < a->size(); ++w) {
                int t = a->degree(w) - n.shifts()[j] - m.shifts()[i];
                auto& list = tc.basis[t];
                tc.slot_of[{j, i, w}] = {t, static_cast<int>(list.size())};
                list.emplace_back(j, i, w);
                space.set_dim(t, static_cast<int>(list.size()));
            }

    ChainComplex x(f, space);
    for (const auto& [t, slots] : tc.basis) {
        SparseMatrix d(space.dim(t + 1), space.dim(t), f);
        auto emit = [&](int j, int i, const SparseVec& v, int col, const Scalar& c) {
            for (const auto& [wb, coef] : v) {
                auto [td, pos] = tc.slot_of.at({j, i, wb});
                if (td != t + 1) throw Error("tensor_over_A: differential is not degree 1");
                d.add_to(pos, col, c * coef);
            }
        };
        for (size_t col = 0; col < slots.size(); ++col) {
            auto [j, i, w] = slots[col];
            SparseVec ew{{w, Scalar::one(f)}};
            // free part
            SparseVec dw = a->d(ew);
            if (!dw.empty())
                emit(j, i, dw, static_cast<int>(col), Scalar::of_int(pm(n.shifts()[j]), f));
            // alpha of N acts by left multiplication
            for (const auto& [jj, av] : n.alpha_entries()) {
                if (jj.second != j) continue;
                emit(jj.first, i, a->mul(av.coeffs(), ew), static_cast<int>(col), Scalar::one(f));
            }
            // beta of M acts by right multiplication with a Koszul sign
            for (const auto& [ii, bv] : m.alpha_entries()) {
                if (ii.second != i) continue;
                long long si = m.shifts()[i], sip = m.shifts()[ii.first];
                long long e = a->degree(w) + n.shifts()[j] + si * sip;
                emit(j, ii.first, a->mul(ew, bv.coeffs()), static_cast<int>(col),
                     Scalar::of_int(pm(e), f));
            }
        }
        if (!d.is_zero()) x.set_d(t, std::move(d));
    }
    x.validate();
    tc.complex = std::move(x);
    return tc;
}

std::map<int, SparseMatrix> TensorComplex::product_endo(const Morphism& pn, const Morphism& pm_) const {
    const AlgebraPtr& a = left.algebra();
    const Field& f = a->field();
    if (pn.degree() != 0 || pm_.degree() != 0) throw Error("product_endo: degree-0 morphisms required");
    std::map<int, SparseMatrix> out;
    for (const auto& [t, slots] : basis) {
        SparseMatrix p(static_cast<int>(slots.size()), static_cast<int>(slots.size()), f);
        for (size_t col = 0; col < slots.size(); ++col) {
            auto [j, i, w] = slots[col];
            SparseVec ew{{w, Scalar::one(f)}};
            for (const auto& [jj, left_e] : pn.entries()) {
                if (jj.second != j) continue;
                SparseVec lw = a->mul(left_e.coeffs(), ew);
                if (lw.empty()) continue;
                for (const auto& [ii, right_e] : pm_.entries()) {
                    if (ii.second != i) continue;
                    SparseVec lwr = a->mul(lw, right_e.coeffs());
                    long long si = right.shifts()[i], sip = right.shifts()[ii.first];
                    Scalar sgn = Scalar::of_int(pm(sip + si * sip), f);
                    for (const auto& [wb, c] : lwr) {
                        auto [td, pos] = slot_of.at({jj.first, ii.first, wb});
                        if (td != t) throw Error("product_endo: degree drift");
                        p.add_to(pos, static_cast<int>(col), sgn * c);
                    }
                }
            }
        }
        out[t] = std::move(p);
    }
    return out;
}

std::optional<HomotopyIdempotent> is_homotopy_idempotent(const TwistedModule& n, const Morphism& pi) {
    if (pi.degree() != 0 || pi.src_shifts() != n.shifts() || pi.tgt_shifts() != n.shifts())
        throw InputError("is_homotopy_idempotent: pi must be a degree-0 endomorphism");
    if (!is_closed(n, n, pi)) return std::nullopt;
    Morphism defect = pi * pi - pi;
    if (defect.is_zero()) {
        Morphism h(n.algebra(), n.shifts(), n.shifts(), -1);
        return HomotopyIdempotent{pi, h};
    }
    HomComplex hc = hom_complex(n, n);
    auto sol = hc.complex.d(-1).solve(hc.coords_of(defect));
    if (!sol) return std::nullopt;
    return HomotopyIdempotent{pi, hc.morphism_at(-1, *sol)};
}

long long euler_characteristic_of_summand(const ChainComplex& x, const std::map<int, SparseMatrix>& projector) {
    Retraction r = build_retraction(x);
    const Field& f = x.field();
    Scalar total = Scalar::zero(f);
    for (const auto& [t, hd] : r.h.dims) {
        SparseMatrix pt = projector.count(t) ? projector.at(t) : SparseMatrix::identity(x.dim(t), f);
        SparseMatrix induced = r.p_at(x, t) * pt * r.i_at(x, t);
        Scalar tr = Scalar::zero(f);
        for (int k = 0; k < hd; ++k) tr += induced.get(k, k);
        total += t % 2 == 0 ? tr : -tr;
    }
    if (f.is_rational()) {
        if (total.rational().get_den() != 1) throw Error("summand euler characteristic is not an integer");
        return total.rational().get_num().get_si();
    }
    return total.residue();
}

long long chi(const TwistedModule& m, const TwistedModule& n) {
    return hom_complex(m, n).complex.euler_characteristic();
}

long long chi(const TwistedModule& m, const TwistedModule& n, const Morphism& pi_m, const Morphism& pi_n) {
    HomComplex hc = hom_complex(m, n);
    return euler_characteristic_of_summand(hc.complex, hc.conjugation_endo(pi_n, pi_m));
}

}  // namespace nchrr
