#include "nchrr/constructors.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace nchrr {

namespace {

int pm(long long e) { return e % 2 == 0 ? 1 : -1; }

void vec_add_to(SparseVec& dst, int idx, const Scalar& v) {
    auto it = dst.find(idx);
    if (it == dst.end()) {
        if (!v.is_zero()) dst.emplace(idx, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) dst.erase(it);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Directed algebras
// ---------------------------------------------------------------------------

SparseMatrix DirectedAlgebra::hom_matrix() const {
    const Field& f = alg->field();
    SparseMatrix d(n_objects, n_objects, f);
    for (int i = 0; i < n_objects; ++i)
        for (int j = 0; j < n_objects; ++j) d.set(i, j, Scalar::of_int(homdims[i][j], f));
    return d;
}

DirectedAlgebra directed_algebra(const DirectedCategoryData& data, const Field& f) {
    int n = static_cast<int>(data.objects.size());
    if (n == 0) throw InputError("directed algebra needs at least one object");
    if (static_cast<int>(data.homdims.size()) != n) throw InputError("homdims has wrong shape");
    for (const auto& row : data.homdims)
        if (static_cast<int>(row.size()) != n) throw InputError("homdims has wrong shape");
    for (int i = 0; i < n; ++i)
        if (data.homdims[i][i] != 1) throw InputError("Hom(v,v) must be spanned by the identity");

    std::vector<int> order = data.ordering;
    if (order.empty()) {
        order.resize(n);
        for (int i = 0; i < n; ++i) order[i] = i;
    }
    {
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i)
            if (sorted[i] != i) throw InputError("ordering is not a permutation of the objects");
    }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < p; ++q)
            if (data.homdims[order[p]][order[q]] != 0)
                throw InputError("hom dimensions are not unitriangular under the given ordering");

    DirectedAlgebra out;
    out.n_objects = n;
    out.homdims = data.homdims;
    out.basis_of.assign(n, std::vector<std::vector<int>>(n));
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < data.homdims[i][j]; ++a) {
                int idx = static_cast<int>(labels.size());
                out.basis_of[i][j].push_back(idx);
                out.hom_of_basis.emplace_back(i, j);
                if (i == j && a == 0)
                    labels.push_back("1_" + data.objects[i]);
                else
                    labels.push_back(data.objects[i] + ">" + data.objects[j] + ":" + std::to_string(a));
                degrees.push_back(0);
            }
    out.idempotents.resize(n);
    for (int i = 0; i < n; ++i) out.idempotents[i] = out.basis_of[i][i][0];

    int dim = static_cast<int>(labels.size());
    SparseVec unit;
    for (int i = 0; i < n; ++i) unit[out.idempotents[i]] = Scalar::one(f);

    std::map<std::pair<int, int>, SparseVec> mult;
    auto is_identity = [&](int b) {
        auto [i, j] = out.hom_of_basis[b];
        return i == j && out.basis_of[i][i][0] == b;
    };
    for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y) {
            auto [i, j] = out.hom_of_basis[x];
            auto [j2, k] = out.hom_of_basis[y];
            if (j != j2) continue;
            if (is_identity(x)) {
                mult[{x, y}] = SparseVec{{y, Scalar::one(f)}};
                continue;
            }
            if (is_identity(y)) {
                mult[{x, y}] = SparseVec{{x, Scalar::one(f)}};
                continue;
            }
            auto it = data.compositions.find({i, j, k});
            if (it == data.compositions.end()) continue;
            int a = x - out.basis_of[i][j][0];
            int b = y - out.basis_of[j][k][0];
            SparseVec prod;
            for (const auto& [ea, eb, ec, coeff] : it->second) {
                if (ea != a || eb != b) continue;
                if (ec < 0 || ec >= data.homdims[i][k]) throw InputError("composition target out of range");
                vec_add_to(prod, out.basis_of[i][k][ec], coeff);
            }
            if (!prod.empty()) mult[{x, y}] = std::move(prod);
        }

    out.alg = std::make_shared<DgAlgebra>(f, std::move(labels), std::move(degrees), std::move(unit),
                                          std::move(mult), SparseMatrix(dim, dim, f));
    ValidationReport rep = out.alg->validate();
    if (!rep.ok()) throw InputError("directed algebra fails validation: " + rep.str());
    return out;
}

DirectedModule make_module(const DirectedAlgebra& a, std::vector<int> dims,
                           const std::map<int, SparseMatrix>& action) {
    int n = a.n_objects;
    if (static_cast<int>(dims.size()) != n) throw InputError("module dims have wrong length");
    DirectedModule m;
    m.dims = std::move(dims);
    m.offset.resize(n);
    for (int i = 0; i < n; ++i) {
        m.offset[i] = m.total;
        m.total += m.dims[i];
    }
    const Field& f = a.alg->field();
    int dim = a.alg->size();
    auto block_of = [&](int row) {
        for (int i = n - 1; i >= 0; --i)
            if (row >= m.offset[i]) return i;
        return 0;
    };
    for (int b = 0; b < dim; ++b) {
        auto [src, tgt] = a.hom_of_basis[b];
        bool identity = src == tgt && a.idempotents[src] == b;
        if (identity) {
            SparseMatrix proj(m.total, m.total, f);
            for (int r = m.offset[src]; r < m.offset[src] + m.dims[src]; ++r) proj.set(r, r, Scalar::one(f));
            m.action[b] = std::move(proj);
            continue;
        }
        auto it = action.find(b);
        SparseMatrix act = it == action.end() ? SparseMatrix(m.total, m.total, f) : it->second;
        if (act.rows() != m.total || act.cols() != m.total) throw InputError("module action has wrong shape");
        for (const auto& [rc, v] : act.entries())
            if (block_of(rc.first) != tgt || block_of(rc.second) != src)
                throw InputError("module action violates the object grading");
        m.action[b] = std::move(act);
    }
    // m·(x y) = (m·x)·y on all basis pairs
    for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y) {
            SparseMatrix lhs(m.total, m.total, f);
            for (const auto& [k, c] : a.alg->mul_basis(x, y)) lhs = lhs + m.action.at(k).scaled(c);
            SparseMatrix rhs = m.action.at(y) * m.action.at(x);
            if (!(lhs == rhs)) throw InputError("module action is not associative over the algebra");
        }
    return m;
}

namespace {

struct CoverData {
    std::vector<int> summand_object;
    std::vector<std::pair<int, int>> slots;          // (summand, algebra basis z)
    std::map<std::pair<int, int>, int> slot_index;
    DirectedModule mod;                              // cover as a module
    SparseMatrix to_target;                          // cover total -> target total
};

// Minimal projective cover of `cur` built on top generators.
CoverData build_cover(const DirectedAlgebra& a, const DirectedModule& cur) {
    const Field& f = a.alg->field();
    int n = a.n_objects;
    CoverData cover;

    std::vector<Vec> gens;  // generator vectors in cur total coords
    for (int t = 0; t < n; ++t) {
        if (cur.dims[t] == 0) continue;
        // radical at t: images of all non-identity actions landing in block t
        std::vector<Vec> cols;
        for (const auto& [b, act] : cur.action) {
            auto [src, tgt] = a.hom_of_basis[b];
            if (tgt != t || b == a.idempotents[t]) continue;
            if (src == tgt && b == a.idempotents[src]) continue;
            for (int c = cur.offset[src]; c < cur.offset[src] + cur.dims[src]; ++c) {
                Vec col = zero_vec(cur.dims[t], f);
                bool nz = false;
                for (int r = 0; r < cur.dims[t]; ++r) {
                    col[r] = act.get(cur.offset[t] + r, c);
                    nz = nz || !col[r].is_zero();
                }
                if (nz) cols.push_back(std::move(col));
            }
        }
        size_t nrad = cols.size();
        for (int j = 0; j < cur.dims[t]; ++j) {
            Vec e = zero_vec(cur.dims[t], f);
            e[j] = Scalar::one(f);
            cols.push_back(std::move(e));
        }
        SparseMatrix ext = SparseMatrix::from_columns(cur.dims[t], cols, f);
        for (int c : ext.independent_columns()) {
            if (c < static_cast<int>(nrad)) continue;
            Vec g = zero_vec(cur.total, f);
            for (int r = 0; r < cur.dims[t]; ++r) g[cur.offset[t] + r] = cols[c][r];
            cover.summand_object.push_back(t);
            gens.push_back(std::move(g));
        }
    }

    // cover layout: per summand, the basis of P_t = morphisms out of t
    std::vector<int> cdims(n, 0);
    for (size_t s = 0; s < gens.size(); ++s) {
        int t = cover.summand_object[s];
        for (int z = 0; z < a.alg->size(); ++z) {
            if (a.hom_of_basis[z].first != t) continue;
            cover.slot_index[{static_cast<int>(s), z}] = static_cast<int>(cover.slots.size());
            cover.slots.emplace_back(static_cast<int>(s), z);
            cdims[a.hom_of_basis[z].second]++;
        }
    }
    // object-sorted coordinates for the cover module
    DirectedModule cm;
    cm.dims = cdims;
    cm.offset.resize(n);
    for (int i = 0; i < n; ++i) {
        cm.offset[i] = cm.total;
        cm.total += cdims[i];
    }
    // map each slot to a coordinate inside its object block
    std::vector<int> coord(cover.slots.size());
    {
        std::vector<int> next = cm.offset;
        for (size_t k = 0; k < cover.slots.size(); ++k) {
            int obj = a.hom_of_basis[cover.slots[k].second].second;
            coord[k] = next[obj]++;
        }
    }

    // cover action
    std::map<int, SparseMatrix> raw;
    for (int e = 0; e < a.alg->size(); ++e) {
        auto [src, tgt] = a.hom_of_basis[e];
        if (src == tgt && a.idempotents[src] == e) continue;
        SparseMatrix act(cm.total, cm.total, f);
        for (size_t k = 0; k < cover.slots.size(); ++k) {
            auto [s, z] = cover.slots[k];
            if (a.hom_of_basis[z].second != src) continue;
            for (const auto& [z2, c] : a.alg->mul_basis(z, e))
                act.add_to(coord[cover.slot_index.at({s, z2})], coord[k], c);
        }
        if (!act.is_zero()) raw[e] = std::move(act);
    }
    cover.mod = make_module(a, cdims, raw);

    // permute slot list so slot k <-> coordinate coord[k]
    {
        std::vector<std::pair<int, int>> sorted(cover.slots.size());
        for (size_t k = 0; k < cover.slots.size(); ++k) sorted[coord[k]] = cover.slots[k];
        cover.slots = std::move(sorted);
        cover.slot_index.clear();
        for (size_t k = 0; k < cover.slots.size(); ++k) cover.slot_index[cover.slots[k]] = static_cast<int>(k);
    }

    cover.to_target = SparseMatrix(cur.total, cm.total, f);
    for (size_t k = 0; k < cover.slots.size(); ++k) {
        auto [s, z] = cover.slots[k];
        Vec img = cur.action.at(z).apply(gens[s]);
        for (int r = 0; r < cur.total; ++r) cover.to_target.add_to(r, static_cast<int>(k), img[r]);
    }
    return cover;
}

}  // namespace

ResolvedModule resolve_module(const DirectedAlgebra& a, const DirectedModule& m) {
    const Field& f = a.alg->field();
    int n = a.n_objects;

    std::vector<std::vector<int>> level_objects;
    std::vector<std::map<std::pair<int, int>, AlgebraElement>> deltas;  // per level >= 1

    DirectedModule cur = m;
    // generators of the current kernel inside the previous cover
    SparseMatrix ker_embed;  // prev cover total x cur total
    std::vector<std::pair<int, int>> prev_slots;

    for (int level = 0; cur.total > 0; ++level) {
        if (level > n) throw Error("resolve_module: peeling failed to terminate");
        CoverData cover = build_cover(a, cur);
        level_objects.push_back(cover.summand_object);

        if (level > 0) {
            std::map<std::pair<int, int>, AlgebraElement> delta;
            // new summand generators, written in the previous cover
            // (gens live in cur coords; embed them)
            // reconstruct generator vectors: summand s corresponds to the slot (s, 1_t)
            for (size_t s = 0; s < cover.summand_object.size(); ++s) {
                int t = cover.summand_object[s];
                int unit_slot = cover.slot_index.at({static_cast<int>(s), a.idempotents[t]});
                Vec g_cur = cover.to_target.column(unit_slot);  // = generator in cur coords
                Vec g_prev = ker_embed.apply(g_cur);
                std::map<int, SparseVec> per_summand;
                for (size_t k = 0; k < prev_slots.size(); ++k) {
                    if (g_prev[k].is_zero()) continue;
                    auto [ps, z] = prev_slots[k];
                    per_summand[ps][z] = g_prev[k];
                }
                for (auto& [ps, v] : per_summand)
                    delta[{ps, static_cast<int>(s)}] = AlgebraElement(a.alg, std::move(v));
            }
            deltas.push_back(std::move(delta));
        }

        // kernel of the cover map
        std::vector<Vec> kernel = cover.to_target.kernel_basis();
        DirectedModule next;
        next.dims.assign(n, 0);
        next.offset.assign(n, 0);
        if (!kernel.empty()) {
            // each kernel vector is supported in one object block
            std::vector<int> kobj(kernel.size());
            auto object_of_coord = [&](int k) { return a.hom_of_basis[cover.slots[k].second].second; };
            for (size_t v = 0; v < kernel.size(); ++v) {
                int obj = -1;
                for (size_t k = 0; k < kernel[v].size(); ++k) {
                    if (kernel[v][k].is_zero()) continue;
                    int o = object_of_coord(static_cast<int>(k));
                    if (obj != -1 && obj != o) throw Error("resolve_module: kernel vector mixes objects");
                    obj = o;
                }
                kobj[v] = obj;
            }
            // sort kernel vectors by object for a block layout
            std::vector<size_t> order(kernel.size());
            for (size_t v = 0; v < order.size(); ++v) order[v] = v;
            std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return kobj[x] < kobj[y]; });
            std::vector<Vec> sorted;
            std::vector<int> sobj;
            for (size_t v : order) {
                sorted.push_back(kernel[order.size() ? v : v]);
                sobj.push_back(kobj[v]);
            }
            kernel = std::move(sorted);
            for (int o : sobj) next.dims[o]++;
            next.total = static_cast<int>(kernel.size());
            for (int i = 0, acc = 0; i < n; ++i) {
                next.offset[i] = acc;
                acc += next.dims[i];
            }
            SparseMatrix emb = SparseMatrix::from_columns(cover.mod.total, kernel, f);
            // restrict the cover action to the kernel
            std::map<int, SparseMatrix> raw;
            for (int e = 0; e < a.alg->size(); ++e) {
                auto [src, tgt] = a.hom_of_basis[e];
                if (src == tgt && a.idempotents[src] == e) continue;
                SparseMatrix act(next.total, next.total, f);
                bool nz = false;
                for (int v = 0; v < next.total; ++v) {
                    Vec w = cover.mod.action.at(e).apply(kernel[v]);
                    if (is_zero(w)) continue;
                    auto x = emb.solve(w);
                    if (!x) throw Error("resolve_module: kernel is not action-stable");
                    for (int r = 0; r < next.total; ++r)
                        if (!(*x)[r].is_zero()) {
                            act.set(r, v, (*x)[r]);
                            nz = true;
                        }
                }
                if (nz) raw[e] = std::move(act);
            }
            next = make_module(a, next.dims, raw);
            ker_embed = std::move(emb);
        } else {
            next.total = 0;
            ker_embed = SparseMatrix(cover.mod.total, 0, f);
        }
        prev_slots = cover.slots;
        cur = std::move(next);
    }

    // assemble the twisted module
    ResolvedModule out;
    std::vector<int> shifts;
    std::vector<int> level_offset;
    for (size_t l = 0; l < level_objects.size(); ++l) {
        level_offset.push_back(static_cast<int>(shifts.size()));
        for (int obj : level_objects[l]) {
            shifts.push_back(static_cast<int>(l));
            out.block_object.push_back(obj);
        }
    }
    std::map<std::pair<int, int>, AlgebraElement> alpha;
    for (size_t l = 1; l < level_objects.size(); ++l)
        for (const auto& [cc, e] : deltas[l - 1])
            alpha[{level_offset[l - 1] + cc.first, level_offset[l] + cc.second}] = e;

    out.module = TwistedModule(a.alg, shifts, std::move(alpha));
    ValidationReport rep = out.module.validate();
    if (!rep.ok()) throw Error("resolve_module: resolution fails validation: " + rep.str());

    Morphism pi(a.alg, shifts, shifts, 0);
    for (size_t s = 0; s < out.block_object.size(); ++s)
        pi.set_entry(static_cast<int>(s), static_cast<int>(s), a.idempotent(out.block_object[s]));
    if (!is_closed(out.module, out.module, pi)) throw Error("resolve_module: idempotent is not closed");
    Morphism h(a.alg, shifts, shifts, -1);
    out.idem = HomotopyIdempotent{pi, h};
    if (!(pi * pi - pi).is_zero()) throw Error("resolve_module: idempotent is not strict");

    out.dim_vector = m.dims;
    return out;
}

ResolvedModule projective_module(const DirectedAlgebra& a, int i) {
    if (i < 0 || i >= a.n_objects) throw InputError("projective_module: object index out of range");
    ResolvedModule out;
    out.module = TwistedModule::free_module(a.alg, {0});
    Morphism pi(a.alg, {0}, {0}, 0);
    pi.set_entry(0, 0, a.idempotent(i));
    Morphism h(a.alg, {0}, {0}, -1);
    out.idem = HomotopyIdempotent{pi, h};
    out.block_object = {i};
    out.dim_vector = a.homdims[i];
    return out;
}

DirectedModule simple_module(const DirectedAlgebra& a, int i) {
    if (i < 0 || i >= a.n_objects) throw InputError("simple_module: object index out of range");
    std::vector<int> dims(a.n_objects, 0);
    dims[i] = 1;
    return make_module(a, dims, {});
}

ResolvedModule simple_resolution(const DirectedAlgebra& a, int i) {
    return resolve_module(a, simple_module(a, i));
}

Scalar ringel_chi(const Vec& dim_m, const Vec& dim_n, const SparseMatrix& homdims) {
    SparseMatrix inv = homdims.invert();
    if (static_cast<int>(dim_m.size()) != inv.rows() || static_cast<int>(dim_n.size()) != inv.cols())
        throw InputError("ringel_chi: dimension vector length mismatch");
    Scalar total = Scalar::zero(inv.field());
    for (const auto& [rc, v] : inv.entries()) total += dim_m[rc.first] * v * dim_n[rc.second];
    return total;
}

// ---------------------------------------------------------------------------
// Groups and Λ(V, G)
// ---------------------------------------------------------------------------

int FiniteGroupData::identity_element() const {
    for (int e = 0; e < order; ++e) {
        bool ok = true;
        for (int g = 0; g < order && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
        if (ok) return e;
    }
    throw InputError("group table has no identity");
}

int FiniteGroupData::inverse(int g) const {
    int e = identity_element();
    for (int h = 0; h < order; ++h)
        if (table[g][h] == e && table[h][g] == e) return h;
    throw InputError("group element has no inverse");
}

int FiniteGroupData::power(int g, int k) const {
    int e = identity_element();
    int r = e;
    for (int i = 0; i < k; ++i) r = table[r][g];
    return r;
}

Scalar FiniteGroupData::character_of_v(int g) const {
    if (action.empty()) throw InputError("group has no action data");
    Scalar t = Scalar::zero(action[g].field());
    for (int i = 0; i < action[g].rows(); ++i) t += action[g].get(i, i);
    return t;
}

ValidationReport FiniteGroupData::validate(const Field& f) const {
    ValidationReport rep;
    if (order <= 0 || static_cast<int>(table.size()) != order) {
        rep.issues.push_back({"table", "group table shape mismatch"});
        return rep;
    }
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != order) {
            rep.issues.push_back({"table", "group table shape mismatch"});
            return rep;
        }
        for (int v : row)
            if (v < 0 || v >= order) {
                rep.issues.push_back({"table", "group table entry out of range"});
                return rep;
            }
    }
    try {
        identity_element();
        for (int g = 0; g < order; ++g) inverse(g);
    } catch (const InputError& e) {
        rep.issues.push_back({"axioms", e.what()});
        return rep;
    }
    for (int g = 0; g < order; ++g)
        for (int h = 0; h < order; ++h)
            for (int k = 0; k < order; ++k)
                if (table[table[g][h]][k] != table[g][table[h][k]]) {
                    rep.issues.push_back({"axioms", "group multiplication is not associative"});
                    return rep;
                }

    for (const auto& chi : characters)
        if (static_cast<int>(chi.size()) != order) {
            rep.issues.push_back({"characters", "character length differs from the group order"});
            return rep;
        }
    Scalar ord = Scalar::of_int(order, f);
    for (size_t r = 0; r < characters.size(); ++r)
        for (size_t s = 0; s < characters.size(); ++s) {
            Scalar sum = Scalar::zero(f);
            for (int g = 0; g < order; ++g) sum += characters[r][g] * characters[s][inverse(g)];
            Scalar expect = r == s ? ord : Scalar::zero(f);
            if (sum != expect) {
                rep.issues.push_back({"orthogonality", "characters " + std::to_string(r) + " and " +
                                                           std::to_string(s) + " fail orthogonality"});
                return rep;
            }
        }

    if (!action.empty()) {
        if (static_cast<int>(action.size()) != order) {
            rep.issues.push_back({"action", "need one matrix per group element"});
            return rep;
        }
        int dv = action[0].rows();
        for (const auto& m : action)
            if (m.rows() != dv || m.cols() != dv) {
                rep.issues.push_back({"action", "action matrices have mixed shapes"});
                return rep;
            }
        int e = identity_element();
        if (!(action[e] == SparseMatrix::identity(dv, f)))
            rep.issues.push_back({"action", "identity element does not act as the identity"});
        for (int g = 0; g < order && rep.ok(); ++g)
            for (int h = 0; h < order && rep.ok(); ++h)
                if (!(action[g] * action[h] == action[table[g][h]]))
                    rep.issues.push_back({"action", "action is not a homomorphism"});
        if (unimodular)
            for (int g = 0; g < order && rep.ok(); ++g)
                if (!(action[g].determinant() == Scalar::one(f)))
                    rep.issues.push_back({"action", "claimed unimodular but det != 1"});
    }
    return rep;
}

namespace {

std::vector<int> mask_bits(int mask) {
    std::vector<int> bits;
    for (int b = 0; mask >> b; ++b)
        if (mask & (1 << b)) bits.push_back(b);
    return bits;
}

Scalar minor_det(const SparseMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    int k = static_cast<int>(rows.size());
    SparseMatrix sub(k, k, m.field());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub.set(i, j, m.get(rows[i], cols[j]));
    return sub.determinant();
}

// Sign of eps_S ∧ eps_U relative to the sorted monomial of S ∪ U; the
// caller guarantees the masks are disjoint.
int wedge_sign(int s_mask, int u_mask) {
    int inversions = 0;
    for (int b : mask_bits(s_mask))
        inversions += std::popcount(static_cast<unsigned>(u_mask & ((1 << b) - 1)));
    return pm(inversions);
}

}  // namespace

LambdaAlgebra lambda_vg(const FiniteGroupData& g, const Field& f) {
    ValidationReport rep = g.validate(f);
    if (!rep.ok()) throw InputError("group data fails validation: " + rep.str());
    int dv = g.dim_v();
    int masks = 1 << dv;
    LambdaAlgebra lam;
    lam.dim_v = dv;
    lam.order = g.order;

    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (int mask = 0; mask < masks; ++mask)
        for (int gg = 0; gg < g.order; ++gg) {
            std::string v;
            for (int b : mask_bits(mask)) v += (v.empty() ? "v" : "^v") + std::to_string(b + 1);
            if (v.empty()) v = "1";
            labels.push_back(v + "*g" + std::to_string(gg));
            degrees.push_back(std::popcount(static_cast<unsigned>(mask)));
        }

    int e = g.identity_element();
    SparseVec unit{{lam.index(0, e), Scalar::one(f)}};

    std::map<std::pair<int, int>, SparseVec> mult;
    for (int s = 0; s < masks; ++s)
        for (int ga = 0; ga < g.order; ++ga)
            for (int t = 0; t < masks; ++t)
                for (int gb = 0; gb < g.order; ++gb) {
                    // (eps_S ⊗ ga)(eps_T ⊗ gb) = (eps_S ∧ ga(eps_T)) ⊗ ga gb
                    SparseVec prod;
                    std::vector<int> tbits = mask_bits(t);
                    int tsize = static_cast<int>(tbits.size());
                    for (int u = 0; u < masks; ++u) {
                        if (std::popcount(static_cast<unsigned>(u)) != tsize) continue;
                        if (u & s) continue;
                        Scalar c = tsize == 0 ? Scalar::one(f)
                                              : minor_det(g.action[ga], mask_bits(u), tbits);
                        if (c.is_zero()) continue;
                        c *= Scalar::of_int(wedge_sign(s, u), f);
                        vec_add_to(prod, lam.index(s | u, g.table[ga][gb]), c);
                    }
                    if (!prod.empty()) mult[{lam.index(s, ga), lam.index(t, gb)}] = std::move(prod);
                }

    int dim = masks * g.order;
    lam.alg = std::make_shared<DgAlgebra>(f, std::move(labels), std::move(degrees), std::move(unit),
                                          std::move(mult), SparseMatrix(dim, dim, f));
    ValidationReport arep = lam.alg->validate();
    if (!arep.ok()) throw Error("lambda_vg: algebra fails validation: " + arep.str());
    return lam;
}

AlgebraElement central_idempotent(const FiniteGroupData& g, const LambdaAlgebra& lam, int rho) {
    if (rho < 0 || rho >= static_cast<int>(g.characters.size()))
        throw InputError("central_idempotent: no such character");
    const Field& f = lam.alg->field();
    int e = g.identity_element();
    Scalar dim_rho = g.characters[rho][e];
    Scalar scale = dim_rho / Scalar::of_int(g.order, f);
    SparseVec v;
    for (int gg = 0; gg < g.order; ++gg) {
        Scalar c = scale * g.characters[rho][g.inverse(gg)];
        if (!c.is_zero()) v[lam.index(0, gg)] = c;
    }
    AlgebraElement pi(lam.alg, std::move(v));
    if (!(pi * pi == pi)) throw Error("central_idempotent: pi^2 != pi");
    return pi;
}

std::vector<std::vector<Scalar>> exterior_characters(const FiniteGroupData& g, const Field& f) {
    int dv = g.dim_v();
    std::vector<std::vector<Scalar>> e(dv + 1, std::vector<Scalar>(g.order, Scalar::zero(f)));
    for (int gg = 0; gg < g.order; ++gg) e[0][gg] = Scalar::one(f);
    for (int k = 1; k <= dv; ++k)
        for (int gg = 0; gg < g.order; ++gg) {
            Scalar sum = Scalar::zero(f);
            for (int t = 1; t <= k; ++t) {
                Scalar p = g.character_of_v(g.power(gg, t));
                Scalar term = e[k - t][gg] * p;
                sum += t % 2 == 1 ? term : -term;
            }
            e[k][gg] = sum / Scalar::of_int(k, f);
        }
    return e;
}

Scalar orbifold_pairing(const FiniteGroupData& g, const Field& f, int rho1, int rho2) {
    if (rho1 < 0 || rho1 >= static_cast<int>(g.characters.size()) || rho2 < 0 ||
        rho2 >= static_cast<int>(g.characters.size()))
        throw InputError("orbifold_pairing: no such character");
    std::vector<std::vector<Scalar>> chi_ext = exterior_characters(g, f);
    Scalar ord = Scalar::of_int(g.order, f);
    Scalar total = Scalar::zero(f);
    for (size_t nn = 0; nn < chi_ext.size(); ++nn) {
        // d^{Λ^n V}_{rho1 rho2} = (1/|G|) sum_g chi_{Λ^n}(g) chi_{rho2}(g) chi_{rho1}(g^{-1})
        Scalar d = Scalar::zero(f);
        for (int gg = 0; gg < g.order; ++gg)
            d += chi_ext[nn][gg] * g.characters[rho2][gg] * g.characters[rho1][g.inverse(gg)];
        d = d / ord;
        total += nn % 2 == 0 ? d : -d;
    }
    int e = g.identity_element();
    return g.characters[rho1][e] * g.characters[rho2][e] * total;
}

// ---------------------------------------------------------------------------
// Frobenius algebras
// ---------------------------------------------------------------------------

Scalar FrobeniusData::tau(const AlgebraElement& a) const {
    Scalar t = Scalar::zero(algebra->field());
    for (const auto& [i, c] : a.coeffs()) t += c * trace_vec[i];
    return t;
}

SparseMatrix FrobeniusData::gram() const {
    const Field& f = algebra->field();
    int n = algebra->size();
    SparseMatrix g(n, n, f);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar v = Scalar::zero(f);
            for (const auto& [k, c] : algebra->mul_basis(i, j)) v += c * trace_vec[k];
            g.set(i, j, v);
        }
    return g;
}

ValidationReport FrobeniusData::validate() const {
    ValidationReport rep;
    const Field& f = algebra->field();
    int n = algebra->size();
    if (static_cast<int>(trace_vec.size()) != n) {
        rep.issues.push_back({"trace", "trace vector length mismatch"});
        return rep;
    }
    for (int i = 0; i < n; ++i)
        if (!trace_vec[i].is_zero() && algebra->degree(i) != cy_dimension) {
            rep.issues.push_back({"trace", "tau is supported off degree " + std::to_string(cy_dimension)});
            break;
        }
    for (int i = 0; i < n; ++i) {
        AlgebraElement de = AlgebraElement::basis(algebra, i).d();
        if (!tau(de).is_zero()) {
            rep.issues.push_back({"trace", "tau(d a) != 0 at basis " + algebra->label(i)});
            break;
        }
    }
    for (int i = 0; i < n && rep.ok(); ++i)
        for (int j = 0; j < n; ++j) {
            AlgebraElement ei = AlgebraElement::basis(algebra, i), ej = AlgebraElement::basis(algebra, j);
            AlgebraElement comm =
                ei * ej - (ej * ei).scaled(Scalar::of_int(pm(static_cast<long long>(algebra->degree(i)) * algebra->degree(j)), f));
            if (!tau(comm).is_zero()) {
                rep.issues.push_back({"trace", "tau([a,b]) != 0 at pair (" + algebra->label(i) + ", " +
                                                   algebra->label(j) + ")"});
                break;
            }
        }
    try {
        gram().invert();
    } catch (const Error&) {
        rep.issues.push_back({"gram", "trace pairing is degenerate"});
    }
    return rep;
}

GammaTensor gamma_tensor(const FrobeniusData& f) {
    SparseMatrix g = f.gram();
    GammaTensor out;
    out.coeffs = g.invert();
    // defining identity: sum_{kl} Gamma_{kl} e_k tau(e_l e_m) = e_m
    if (!(out.coeffs * g == SparseMatrix::identity(g.rows(), g.field())))
        throw Error("gamma_tensor: contraction identity fails");
    out.symmetric = out.coeffs == out.coeffs.transpose();
    return out;
}

PhiTensor phi_tensor(const FrobeniusData& f) {
    const AlgebraPtr& a = f.algebra;
    SparseMatrix gamma = gamma_tensor(f).coeffs;
    PhiTensor out;
    // Phi = sum_{i,j} gamma'_i ⊗ gamma'_j gamma''_i ⊗ gamma''_j
    for (const auto& [ab, cab] : gamma.entries())
        for (const auto& [cd, ccd] : gamma.entries()) {
            for (const auto& [m, cm] : a->mul_basis(cd.first, ab.second)) {
                auto key = std::make_tuple(ab.first, m, cd.second);
                Scalar add = cab * ccd * cm;
                auto it = out.coeffs.find(key);
                if (it == out.coeffs.end()) {
                    if (!add.is_zero()) out.coeffs.emplace(key, add);
                } else {
                    it->second += add;
                    if (it->second.is_zero()) out.coeffs.erase(it);
                }
            }
        }
    // tau(abc) = sum Phi tau(a phi') tau(b phi'') tau(c phi''') on basis triples
    SparseMatrix g = f.gram();
    int n = a->size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                AlgebraElement prod = AlgebraElement::basis(a, i) * AlgebraElement::basis(a, j) *
                                      AlgebraElement::basis(a, k);
                Scalar lhs = f.tau(prod);
                Scalar rhs = Scalar::zero(a->field());
                for (const auto& [key, c] : out.coeffs) {
                    auto [p, q, r] = key;
                    rhs += c * g.get(i, p) * g.get(j, q) * g.get(k, r);
                }
                if (!(lhs == rhs)) throw Error("phi_tensor: defining identity fails");
            }
    // cyclic symmetry
    out.cyclic = true;
    for (const auto& [key, c] : out.coeffs) {
        auto [p, q, r] = key;
        auto it = out.coeffs.find(std::make_tuple(q, r, p));
        if (it == out.coeffs.end() || !(it->second == c)) {
            out.cyclic = false;
            break;
        }
    }
    return out;
}

Scalar tft_pair(const FrobeniusData& f, const AlgebraElement& a, const AlgebraElement& b) {
    SparseMatrix gamma = gamma_tensor(f).coeffs;
    Scalar total = Scalar::zero(f.algebra->field());
    for (const auto& [kl, c] : gamma.entries()) {
        AlgebraElement prod = a * AlgebraElement::basis(f.algebra, kl.first) * b *
                              AlgebraElement::basis(f.algebra, kl.second);
        total += c * f.tau(prod);
    }
    return total;
}

std::uint64_t Rng::next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

long long Rng::uniform(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

AlgebraElement random_element(const AlgebraPtr& a, Rng& rng) {
    SparseVec v;
    for (int i = 0; i < a->size(); ++i) {
        long long c = rng.uniform(-2, 2);
        if (c != 0) v[i] = Scalar::of_int(c, a->field());
    }
    return AlgebraElement(a, std::move(v));
}

FrobeniusCheckReport frobenius_check(const FrobeniusData& f, int trials, std::uint64_t seed) {
    FrobeniusCheckReport rep;
    rep.trials = trials;
    rep.graded = !f.algebra->is_ungraded();
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        AlgebraElement a = random_element(f.algebra, rng);
        AlgebraElement b = random_element(f.algebra, rng);
        Scalar lhs = tft_pair(f, a, b);
        SparseMatrix op = left_operator(a) * right_operator(b);
        if (lhs == trace(op, *f.algebra)) rep.agree_trace++;
        if (lhs == supertrace(op, *f.algebra)) rep.agree_supertrace++;
    }
    rep.all_equal = rep.agree_trace == rep.trials;
    return rep;
}

}  // namespace nchrr
