#include "nchrr/dg_algebra.hpp"

#include <sstream>

namespace nchrr {

namespace {

void vec_add_to(SparseVec& dst, int idx, const Scalar& v) {
    auto it = dst.find(idx);
    if (it == dst.end()) {
        if (!v.is_zero()) dst.emplace(idx, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) dst.erase(it);
    }
}

SparseVec vec_scaled(const SparseVec& v, const Scalar& c) {
    SparseVec out;
    if (c.is_zero()) return out;
    for (const auto& [i, x] : v) out.emplace(i, c * x);
    return out;
}

}  // namespace

std::string ValidationReport::str() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& i : issues) os << i.check << ": " << i.detail << "\n";
    return os.str();
}

DgAlgebra::DgAlgebra(Field field, std::vector<std::string> basis, std::vector<int> degrees, SparseVec unit,
                     std::map<std::pair<int, int>, SparseVec> mult, SparseMatrix diff)
    : field_(field),
      basis_(std::move(basis)),
      degrees_(std::move(degrees)),
      unit_(std::move(unit)),
      mult_(std::move(mult)),
      diff_(std::move(diff)) {
    int n = size();
    if (static_cast<int>(degrees_.size()) != n) throw InputError("degrees/basis size mismatch");
    if (diff_.rows() != n || diff_.cols() != n) throw InputError("differential has wrong shape");
    for (const auto& [i, c] : unit_) {
        if (i < 0 || i >= n) throw InputError("unit index out of range");
        if (c.field() != field_) throw InputError("unit coefficient in wrong field");
    }
    for (const auto& [ij, v] : mult_) {
        if (ij.first < 0 || ij.first >= n || ij.second < 0 || ij.second >= n)
            throw InputError("mult table index out of range");
        for (const auto& [k, c] : v) {
            if (k < 0 || k >= n) throw InputError("mult table target out of range");
            if (c.field() != field_) throw InputError("mult coefficient in wrong field");
        }
    }
}

SparseVec DgAlgebra::mul_basis(int i, int j) const {
    auto it = mult_.find({i, j});
    return it == mult_.end() ? SparseVec{} : it->second;
}

SparseVec DgAlgebra::mul(const SparseVec& v, const SparseVec& w) const {
    SparseVec out;
    for (const auto& [i, a] : v)
        for (const auto& [j, b] : w) {
            Scalar c = a * b;
            if (c.is_zero()) continue;
            auto it = mult_.find({i, j});
            if (it == mult_.end()) continue;
            for (const auto& [k, m] : it->second) vec_add_to(out, k, c * m);
        }
    return out;
}

SparseVec DgAlgebra::d(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [i, a] : v) {
        for (int k = 0; k < size(); ++k) {
            Scalar e = diff_.get(k, i);
            if (!e.is_zero()) vec_add_to(out, k, a * e);
        }
    }
    return out;
}

bool DgAlgebra::is_ungraded() const {
    for (int d : degrees_)
        if (d != 0) return false;
    return true;
}

std::optional<int> DgAlgebra::unit_basis_index() const {
    if (unit_.size() != 1) return std::nullopt;
    return unit_.begin()->first;
}

namespace {
std::string triple_str(const DgAlgebra& a, int i, int j, int k) {
    return "(" + a.label(i) + ", " + a.label(j) + ", " + a.label(k) + ")";
}
}  // namespace

ValidationReport DgAlgebra::validate() const {
    ValidationReport rep;
    int n = size();
    auto vec_eq = [](const SparseVec& a, const SparseVec& b) { return a == b; };

    bool assoc_done = false;
    for (int i = 0; i < n && !assoc_done; ++i)
        for (int j = 0; j < n && !assoc_done; ++j)
            for (int k = 0; k < n && !assoc_done; ++k) {
                SparseVec lhs = mul(mul_basis(i, j), SparseVec{{k, Scalar::one(field_)}});
                SparseVec rhs = mul(SparseVec{{i, Scalar::one(field_)}}, mul_basis(j, k));
                if (!vec_eq(lhs, rhs)) {
                    rep.issues.push_back({"associativity", "fails at triple " + triple_str(*this, i, j, k)});
                    assoc_done = true;
                }
            }

    for (int i = 0; i < n; ++i) {
        SparseVec e{{i, Scalar::one(field_)}};
        if (!vec_eq(mul(unit_, e), e) || !vec_eq(mul(e, unit_), e)) {
            rep.issues.push_back({"unit", "1*e or e*1 differs from e at " + label(i)});
            break;
        }
    }
    if (!d(unit_).empty()) rep.issues.push_back({"unit", "d(1) != 0"});

    for (const auto& [ij, v] : mult_) {
        bool bad = false;
        for (const auto& [k, c] : v)
            if (degrees_[k] != degrees_[ij.first] + degrees_[ij.second]) bad = true;
        if (bad) {
            rep.issues.push_back({"degree", "product degree off at " + triple_str(*this, ij.first, ij.second, ij.first)});
            break;
        }
    }
    for (const auto& [rc, c] : diff_.entries()) {
        if (degrees_[rc.first] != degrees_[rc.second] + 1) {
            rep.issues.push_back({"degree", "d does not raise degree by 1 at " + label(rc.second)});
            break;
        }
    }

    bool leibniz_done = false;
    for (int i = 0; i < n && !leibniz_done; ++i)
        for (int j = 0; j < n && !leibniz_done; ++j) {
            SparseVec ei{{i, Scalar::one(field_)}}, ej{{j, Scalar::one(field_)}};
            SparseVec lhs = d(mul_basis(i, j));
            SparseVec rhs = mul(d(ei), ej);
            Scalar sgn = Scalar::of_int(degrees_[i] % 2 == 0 ? 1 : -1, field_);
            for (const auto& [k, c] : mul(ei, d(ej))) vec_add_to(rhs, k, sgn * c);
            if (!vec_eq(lhs, rhs)) {
                rep.issues.push_back({"leibniz", "fails at pair (" + label(i) + ", " + label(j) + ")"});
                leibniz_done = true;
            }
        }

    if (!(diff_ * diff_).is_zero()) rep.issues.push_back({"d_squared", "d*d != 0"});
    return rep;
}

bool DgAlgebra::same_table(const DgAlgebra& o) const {
    return field_ == o.field_ && degrees_ == o.degrees_ && unit_ == o.unit_ && mult_ == o.mult_ &&
           diff_ == o.diff_;
}

AlgebraElement::AlgebraElement(AlgebraPtr alg, SparseVec coeffs) : alg_(std::move(alg)), coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->first < 0 || it->first >= alg_->size()) throw InputError("element index out of range");
        it = it->second.is_zero() ? coeffs_.erase(it) : std::next(it);
    }
}

AlgebraElement AlgebraElement::zero(AlgebraPtr alg) { return AlgebraElement(std::move(alg), {}); }

AlgebraElement AlgebraElement::unit(AlgebraPtr alg) {
    SparseVec u = alg->unit();
    return AlgebraElement(std::move(alg), std::move(u));
}

AlgebraElement AlgebraElement::basis(AlgebraPtr alg, int i) {
    Scalar one = Scalar::one(alg->field());
    return AlgebraElement(std::move(alg), SparseVec{{i, one}});
}

std::optional<int> AlgebraElement::degree() const {
    std::optional<int> deg;
    for (const auto& [i, c] : coeffs_) {
        int d = alg_->degree(i);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

std::map<int, AlgebraElement> AlgebraElement::homogeneous_components() const {
    std::map<int, SparseVec> parts;
    for (const auto& [i, c] : coeffs_) parts[alg_->degree(i)].emplace(i, c);
    std::map<int, AlgebraElement> out;
    for (auto& [d, v] : parts) out.emplace(d, AlgebraElement(alg_, std::move(v)));
    return out;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    SparseVec out = coeffs_;
    for (const auto& [i, c] : o.coeffs_) vec_add_to(out, i, c);
    return AlgebraElement(alg_, std::move(out));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    return *this + o.scaled(-Scalar::one(alg_->field()));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    return AlgebraElement(alg_, alg_->mul(coeffs_, o.coeffs_));
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const { return AlgebraElement(alg_, vec_scaled(coeffs_, c)); }

AlgebraElement AlgebraElement::d() const { return AlgebraElement(alg_, alg_->d(coeffs_)); }

bool AlgebraElement::operator==(const AlgebraElement& o) const { return coeffs_ == o.coeffs_; }

std::string AlgebraElement::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : coeffs_) {
        if (!first) os << " + ";
        os << c.str() << "*" << alg_->label(i);
        first = false;
    }
    return os.str();
}

AlgebraPtr opposite(const AlgebraPtr& a) {
    std::map<std::pair<int, int>, SparseVec> mult;
    for (const auto& [ij, v] : a->mult()) {
        int sign = (a->degree(ij.first) * a->degree(ij.second)) % 2 == 0 ? 1 : -1;
        SparseVec w = vec_scaled(v, Scalar::of_int(sign, a->field()));
        if (!w.empty()) mult[{ij.second, ij.first}] = std::move(w);
    }
    return std::make_shared<DgAlgebra>(a->field(), a->labels(), a->degrees(), a->unit(), std::move(mult),
                                       a->diff());
}

AlgebraPtr tensor(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a->field() != b->field()) throw InputError("tensor: field mismatch");
    const Field& f = a->field();
    int nb = b->size();
    int n = a->size() * nb;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (int i = 0; i < a->size(); ++i)
        for (int j = 0; j < nb; ++j) {
            labels.push_back(a->label(i) + "(x)" + b->label(j));
            degrees.push_back(a->degree(i) + b->degree(j));
        }
    SparseVec unit;
    for (const auto& [i, c] : a->unit())
        for (const auto& [j, e] : b->unit()) unit[tensor_index(nb, i, j)] = c * e;

    std::map<std::pair<int, int>, SparseVec> mult;
    for (int i = 0; i < a->size(); ++i)
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < a->size(); ++k)
                for (int l = 0; l < nb; ++l) {
                    SparseVec left = a->mul_basis(i, k);
                    if (left.empty()) continue;
                    SparseVec right = b->mul_basis(j, l);
                    if (right.empty()) continue;
                    // (a'⊗b')(a''⊗b'') = (-1)^{|b'||a''|} a'a'' ⊗ b'b''
                    int sign = (b->degree(j) * a->degree(k)) % 2 == 0 ? 1 : -1;
                    SparseVec prod;
                    for (const auto& [p, c] : left)
                        for (const auto& [q, e] : right)
                            vec_add_to(prod, tensor_index(nb, p, q), Scalar::of_int(sign, f) * c * e);
                    if (!prod.empty()) mult[{tensor_index(nb, i, j), tensor_index(nb, k, l)}] = std::move(prod);
                }

    SparseMatrix diff(n, n, f);
    for (int i = 0; i < a->size(); ++i)
        for (int j = 0; j < nb; ++j) {
            int col = tensor_index(nb, i, j);
            for (const auto& [rc, c] : a->diff().entries())
                if (rc.second == i) diff.add_to(tensor_index(nb, rc.first, j), col, c);
            int sign = a->degree(i) % 2 == 0 ? 1 : -1;
            for (const auto& [rc, c] : b->diff().entries())
                if (rc.second == j) diff.add_to(tensor_index(nb, i, rc.first), col, Scalar::of_int(sign, f) * c);
        }
    return std::make_shared<DgAlgebra>(f, std::move(labels), std::move(degrees), std::move(unit),
                                       std::move(mult), std::move(diff));
}

AlgebraComplex algebra_as_complex(const AlgebraPtr& a) {
    AlgebraComplex ac;
    GradedSpace space;
    std::map<int, int> next_pos;
    ac.slot_of_basis.resize(a->size());
    for (int i = 0; i < a->size(); ++i) {
        int deg = a->degree(i);
        int pos = next_pos[deg]++;
        ac.slot_of_basis[i] = {deg, pos};
        ac.basis_of_slot[{deg, pos}] = i;
        space.set_dim(deg, pos + 1);
        space.labels[deg].push_back(a->label(i));
    }
    ChainComplex x(a->field(), space);
    std::map<int, SparseMatrix> d;
    for (const auto& [deg, dim] : space.dims) d.emplace(deg, SparseMatrix(space.dim(deg + 1), dim, a->field()));
    for (const auto& [rc, c] : a->diff().entries()) {
        auto [tdeg, tpos] = ac.slot_of_basis[rc.first];
        auto [sdeg, spos] = ac.slot_of_basis[rc.second];
        d.at(sdeg).set(tpos, spos, c);
    }
    for (auto& [deg, m] : d)
        if (!m.is_zero()) x.set_d(deg, std::move(m));
    ac.complex = std::move(x);
    return ac;
}

EndAlgebra endomorphism_algebra(const ChainComplex& x) {
    const Field& f = x.field();
    EndAlgebra e;
    e.complex = x;
    for (const auto& [deg, dim] : x.space().dims)
        for (int pos = 0; pos < dim; ++pos) {
            e.total_of_slot[{deg, pos}] = static_cast<int>(e.total.size());
            e.total.emplace_back(deg, pos);
        }
    auto& gen_index = e.gen_of;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (const auto& [to, ignored1] : e.total_of_slot)
        for (const auto& [from, ignored2] : e.total_of_slot) {
            gen_index[{from, to}] = static_cast<int>(e.gens.size());
            e.gens.push_back({from.first, from.second, to.first, to.second});
            labels.push_back("E[" + std::to_string(to.first) + "." + std::to_string(to.second) + "<-" +
                             std::to_string(from.first) + "." + std::to_string(from.second) + "]");
            degrees.push_back(to.first - from.first);
        }
    int n = static_cast<int>(e.gens.size());

    SparseVec unit;
    for (const auto& [slot, t] : e.total_of_slot) unit[gen_index.at({slot, slot})] = Scalar::one(f);

    // E_{b<-a} * E_{d<-c} = [a == d] E_{b<-c}   (product = composition)
    std::map<std::pair<int, int>, SparseVec> mult;
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            const auto& gs = e.gens[s];
            const auto& gt = e.gens[t];
            if (gs.from_degree != gt.to_degree || gs.from_pos != gt.to_pos) continue;
            int target = gen_index.at({{gt.from_degree, gt.from_pos}, {gs.to_degree, gs.to_pos}});
            mult[{s, t}] = SparseVec{{target, Scalar::one(f)}};
        }

    // d(E) = d_X ∘ E - (-1)^{|E|} E ∘ d_X
    SparseMatrix diff(n, n, f);
    for (int s = 0; s < n; ++s) {
        const auto& g = e.gens[s];
        SparseMatrix d_to = x.d(g.to_degree);
        for (const auto& [rc, c] : d_to.entries()) {
            if (rc.second != g.to_pos) continue;
            int target = gen_index.at({{g.from_degree, g.from_pos}, {g.to_degree + 1, rc.first}});
            diff.add_to(target, s, c);
        }
        SparseMatrix d_from = x.d(g.from_degree - 1);
        int sign = (g.to_degree - g.from_degree) % 2 == 0 ? -1 : 1;
        for (const auto& [rc, c] : d_from.entries()) {
            if (rc.first != g.from_pos) continue;
            int target = gen_index.at({{g.from_degree - 1, rc.second}, {g.to_degree, g.to_pos}});
            diff.add_to(target, s, Scalar::of_int(sign, f) * c);
        }
    }
    e.alg = std::make_shared<DgAlgebra>(f, std::move(labels), std::move(degrees), std::move(unit),
                                        std::move(mult), std::move(diff));
    return e;
}

SparseMatrix EndAlgebra::total_matrix(const AlgebraElement& t) const {
    int dim = static_cast<int>(total.size());
    SparseMatrix m(dim, dim, alg->field());
    for (const auto& [g, c] : t.coeffs()) {
        const Gen& gen = gens[g];
        m.add_to(total_of_slot.at({gen.to_degree, gen.to_pos}), total_of_slot.at({gen.from_degree, gen.from_pos}),
                 c);
    }
    return m;
}

AlgebraElement EndAlgebra::from_algebra_operator(const AlgebraComplex& ac, const SparseMatrix& op) const {
    SparseVec coeffs;
    for (const auto& [rc, c] : op.entries()) {
        auto to = ac.slot_of_basis[rc.first];
        auto from = ac.slot_of_basis[rc.second];
        coeffs[gen_of.at({from, to})] = c;
    }
    return AlgebraElement(alg, std::move(coeffs));
}

SparseMatrix left_operator(const AlgebraElement& a) {
    const auto& alg = *a.algebra();
    SparseMatrix m(alg.size(), alg.size(), alg.field());
    for (int c = 0; c < alg.size(); ++c) {
        SparseVec col = alg.mul(a.coeffs(), SparseVec{{c, Scalar::one(alg.field())}});
        for (const auto& [k, v] : col) m.set(k, c, v);
    }
    return m;
}

SparseMatrix right_operator(const AlgebraElement& b) {
    const auto& alg = *b.algebra();
    SparseMatrix m(alg.size(), alg.size(), alg.field());
    for (int c = 0; c < alg.size(); ++c) {
        for (const auto& [j, v] : b.coeffs()) {
            int sign = (alg.degree(c) * alg.degree(j)) % 2 == 0 ? 1 : -1;
            SparseVec part = alg.mul_basis(c, j);
            for (const auto& [k, w] : part) m.add_to(k, c, Scalar::of_int(sign, alg.field()) * v * w);
        }
    }
    return m;
}

Scalar trace(const SparseMatrix& m, const DgAlgebra& a) {
    Scalar t = Scalar::zero(a.field());
    for (int i = 0; i < a.size(); ++i) t += m.get(i, i);
    return t;
}

Scalar supertrace(const SparseMatrix& m, const DgAlgebra& a) {
    Scalar t = Scalar::zero(a.field());
    for (int i = 0; i < a.size(); ++i) {
        Scalar d = m.get(i, i);
        t += a.degree(i) % 2 == 0 ? d : -d;
    }
    return t;
}

}  // namespace nchrr
