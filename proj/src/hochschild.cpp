#include "nchrr/hochschild.hpp"

#include <functional>
#include <sstream>

namespace nchrr {

namespace {

int pm(long long exponent) { return exponent % 2 == 0 ? 1 : -1; }

}  // namespace

HochschildChain HochschildChain::of_element(const AlgebraElement& a) {
    HochschildChain c(a.algebra());
    for (const auto& [i, v] : a.coeffs()) c.add_term(BarWord{i, {}}, v);
    return c;
}

HochschildChain HochschildChain::single(AlgebraPtr alg, BarWord w, Scalar c) {
    HochschildChain out(std::move(alg));
    out.add_term(w, c);
    return out;
}

void HochschildChain::add_term(const BarWord& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

HochschildChain HochschildChain::operator+(const HochschildChain& o) const {
    HochschildChain out = *this;
    for (const auto& [w, c] : o.terms_) out.add_term(w, c);
    return out;
}

HochschildChain HochschildChain::operator-(const HochschildChain& o) const {
    return *this + o.scaled(-Scalar::one(alg_->field()));
}

HochschildChain HochschildChain::scaled(const Scalar& c) const {
    HochschildChain out(alg_);
    for (const auto& [w, v] : terms_) out.add_term(w, v * c);
    return out;
}

int HochschildChain::word_degree(const BarWord& w) const {
    int d = alg_->degree(w.a0);
    for (int l : w.letters) d += alg_->degree(l) - 1;
    return d;
}

HochschildChain HochschildChain::b0() const {
    const Field& f = alg_->field();
    HochschildChain out(alg_);
    for (const auto& [w, c] : terms_) {
        // d(a0) slot
        for (const auto& [k, v] : alg_->d(SparseVec{{w.a0, Scalar::one(f)}})) {
            BarWord nw = w;
            nw.a0 = k;
            out.add_term(nw, c * v);
        }
        // -(-1)^{eta_{i-1}} a0[...|da_i|...]
        long long eta = alg_->degree(w.a0);
        for (size_t i = 0; i < w.letters.size(); ++i) {
            Scalar sgn = Scalar::of_int(-pm(eta), f);
            for (const auto& [k, v] : alg_->d(SparseVec{{w.letters[i], Scalar::one(f)}})) {
                BarWord nw = w;
                nw.letters[i] = k;
                out.add_term(nw, c * v * sgn);
            }
            eta += alg_->degree(w.letters[i]) - 1;
        }
    }
    return out;
}

HochschildChain HochschildChain::b1() const {
    const Field& f = alg_->field();
    HochschildChain out(alg_);
    for (const auto& [w, c] : terms_) {
        size_t n = w.letters.size();
        if (n == 0) continue;
        std::vector<long long> eta(n + 1);
        eta[0] = alg_->degree(w.a0);
        for (size_t i = 1; i <= n; ++i) eta[i] = eta[i - 1] + alg_->degree(w.letters[i - 1]) - 1;

        // (-1)^{|a0|} (a0 a1)[a2|...]
        {
            Scalar sgn = Scalar::of_int(pm(alg_->degree(w.a0)), f);
            for (const auto& [k, v] : alg_->mul_basis(w.a0, w.letters[0])) {
                BarWord nw{k, std::vector<int>(w.letters.begin() + 1, w.letters.end())};
                out.add_term(nw, c * v * sgn);
            }
        }
        // (-1)^{eta_i} a0[...|a_i a_{i+1}|...]
        for (size_t i = 1; i <= n - 1; ++i) {
            Scalar sgn = Scalar::of_int(pm(eta[i]), f);
            for (const auto& [k, v] : alg_->mul_basis(w.letters[i - 1], w.letters[i])) {
                BarWord nw{w.a0, {}};
                nw.letters.assign(w.letters.begin(), w.letters.begin() + (i - 1));
                nw.letters.push_back(k);
                nw.letters.insert(nw.letters.end(), w.letters.begin() + (i + 1), w.letters.end());
                out.add_term(nw, c * v * sgn);
            }
        }
        // -(-1)^{eta_{n-1}(|a_n|+1)} (a_n a0)[a1|...|a_{n-1}]
        {
            long long e = eta[n - 1] * (alg_->degree(w.letters[n - 1]) + 1);
            Scalar sgn = Scalar::of_int(-pm(e), f);
            for (const auto& [k, v] : alg_->mul_basis(w.letters[n - 1], w.a0)) {
                BarWord nw{k, std::vector<int>(w.letters.begin(), w.letters.end() - 1)};
                out.add_term(nw, c * v * sgn);
            }
        }
    }
    return out;
}

AlgebraElement HochschildChain::length0_part() const {
    SparseVec v;
    for (const auto& [w, c] : terms_)
        if (w.letters.empty()) v[w.a0] = c;
    return AlgebraElement(alg_, std::move(v));
}

HochschildChain HochschildChain::retargeted(AlgebraPtr other) const {
    if (!alg_->same_table(*other)) throw Error("retarget: structurally different algebra");
    HochschildChain out(std::move(other));
    out.terms_ = terms_;
    return out;
}

std::string HochschildChain::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*" << alg_->label(w.a0);
        if (!w.letters.empty()) {
            os << "[";
            for (size_t i = 0; i < w.letters.size(); ++i) os << (i ? "|" : "") << alg_->label(w.letters[i]);
            os << "]";
        }
    }
    return os.str();
}

HochschildChain shuffle(const HochschildChain& c1, const HochschildChain& c2) {
    const AlgebraPtr& alg = c1.algebra();
    if (!alg->same_table(*c2.algebra())) throw InputError("shuffle: chains over different algebras");
    const Field& f = alg->field();
    HochschildChain out(alg);

    for (const auto& [u, cu] : c1.terms()) {
        std::vector<int> su(u.letters.size());
        for (size_t i = 0; i < u.letters.size(); ++i) su[i] = alg->degree(u.letters[i]) - 1;
        // suffix sums of suspended degrees of the u-letters
        std::vector<long long> suf(u.letters.size() + 1, 0);
        for (size_t i = u.letters.size(); i-- > 0;) suf[i] = suf[i + 1] + su[i];

        for (const auto& [v, cv] : c2.terms()) {
            std::vector<int> sv(v.letters.size());
            for (size_t i = 0; i < v.letters.size(); ++i) sv[i] = alg->degree(v.letters[i]) - 1;

            // (-1)^{|b0| (|sa_1|+...+|sa_n|)}
            Scalar base = cu * cv * Scalar::of_int(pm(static_cast<long long>(alg->degree(v.a0)) * suf[0]), f);
            SparseVec head = alg->mul_basis(u.a0, v.a0);
            if (head.empty()) continue;

            std::vector<int> letters;
            std::function<void(size_t, size_t, long long)> walk = [&](size_t iu, size_t iv, long long sgn) {
                if (iu == u.letters.size() && iv == v.letters.size()) {
                    for (const auto& [k, m] : head) {
                        BarWord w{k, letters};
                        out.add_term(w, base * m * Scalar::of_int(pm(sgn), f));
                    }
                    return;
                }
                if (iu < u.letters.size()) {
                    letters.push_back(u.letters[iu]);
                    walk(iu + 1, iv, sgn);
                    letters.pop_back();
                }
                if (iv < v.letters.size()) {
                    // v-letter jumps over the remaining u-letters
                    letters.push_back(v.letters[iv]);
                    walk(iu, iv + 1, sgn + static_cast<long long>(sv[iv]) * suf[iu]);
                    letters.pop_back();
                }
            };
            walk(0, 0, 0);
        }
    }
    return out;
}

HochschildChain map_chain(const HochschildChain& c, const std::vector<AlgebraElement>& images,
                          AlgebraPtr target) {
    const AlgebraPtr& src = c.algebra();
    if (static_cast<int>(images.size()) != src->size()) throw InputError("map_chain: wrong image count");
    for (int i = 0; i < src->size(); ++i) {
        auto d = images[i].degree();
        if (d && *d != src->degree(i)) throw InputError("map_chain: map is not degree-preserving");
    }
    HochschildChain out(target);
    for (const auto& [w, coeff] : c.terms()) {
        std::vector<const SparseVec*> slots;
        slots.push_back(&images[w.a0].coeffs());
        for (int l : w.letters) slots.push_back(&images[l].coeffs());
        BarWord nw;
        nw.letters.resize(w.letters.size());
        std::function<void(size_t, Scalar)> expand = [&](size_t k, Scalar acc) {
            if (k == slots.size()) {
                out.add_term(nw, acc);
                return;
            }
            for (const auto& [idx, v] : *slots[k]) {
                if (k == 0)
                    nw.a0 = idx;
                else
                    nw.letters[k - 1] = idx;
                expand(k + 1, acc * v);
            }
        };
        expand(0, coeff);
    }
    return out;
}

HochschildChain kunneth(const HochschildChain& c1, const HochschildChain& c2) {
    const AlgebraPtr& a = c1.algebra();
    const AlgebraPtr& b = c2.algebra();
    AlgebraPtr t = tensor(a, b);
    std::vector<AlgebraElement> iota_a, iota_b;
    for (int i = 0; i < a->size(); ++i) {
        SparseVec v;
        for (const auto& [j, u] : b->unit()) v[tensor_index(b->size(), i, j)] = u;
        iota_a.emplace_back(t, std::move(v));
    }
    for (int j = 0; j < b->size(); ++j) {
        SparseVec v;
        for (const auto& [i, u] : a->unit()) v[tensor_index(b->size(), i, j)] = u;
        iota_b.emplace_back(t, std::move(v));
    }
    return shuffle(map_chain(c1, iota_a, t), map_chain(c2, iota_b, t));
}

HochschildChain vee(const HochschildChain& c) { return vee(c, opposite(c.algebra())); }

HochschildChain vee(const HochschildChain& c, AlgebraPtr op_algebra) {
    const AlgebraPtr& a = c.algebra();
    if (!opposite(a)->same_table(*op_algebra)) throw InputError("vee: target is not the opposite algebra");
    HochschildChain out(std::move(op_algebra));
    for (const auto& [w, coeff] : c.terms()) {
        size_t n = w.letters.size();
        long long e = static_cast<long long>(n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                e += static_cast<long long>(a->degree(w.letters[i]) - 1) * (a->degree(w.letters[j]) - 1);
        BarWord nw{w.a0, std::vector<int>(w.letters.rbegin(), w.letters.rend())};
        out.add_term(nw, coeff * Scalar::of_int(pm(e), a->field()));
    }
    return out;
}

namespace {

void enumerate_letters(const AlgebraPtr& a, int remaining, int want, int smin, int smax, BarWord& w,
                       std::vector<BarWord>& out) {
    if (remaining == 0) {
        if (want == 0) out.push_back(w);
        return;
    }
    for (int l = 0; l < a->size(); ++l) {
        int s = a->degree(l) - 1;
        int rest = want - s;
        int r = remaining - 1;
        if (rest < r * smin || rest > r * smax) continue;
        w.letters.push_back(l);
        enumerate_letters(a, r, rest, smin, smax, w, out);
        w.letters.pop_back();
    }
}

}  // namespace

std::vector<BarWord> words_of_degree(const AlgebraPtr& a, int total_degree, int max_letters) {
    int smin = 0, smax = 0;
    for (int i = 0; i < a->size(); ++i) {
        int s = a->degree(i) - 1;
        smin = i == 0 ? s : std::min(smin, s);
        smax = i == 0 ? s : std::max(smax, s);
    }
    std::vector<BarWord> out;
    for (int len = 0; len <= max_letters; ++len) {
        for (int h = 0; h < a->size(); ++h) {
            int want = total_degree - a->degree(h);
            if (want < len * smin || want > len * smax) continue;
            BarWord w{h, {}};
            enumerate_letters(a, len, want, smin, smax, w, out);
        }
    }
    return out;
}

SparseMatrix boundary_matrix(const AlgebraPtr& a, int total_degree, int max_letters) {
    std::vector<BarWord> cols = words_of_degree(a, total_degree, max_letters);
    std::vector<BarWord> rows = words_of_degree(a, total_degree + 1, max_letters);
    std::map<BarWord, int> row_index;
    for (size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = static_cast<int>(i);
    SparseMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()), a->field());
    for (size_t j = 0; j < cols.size(); ++j) {
        HochschildChain bc = HochschildChain::single(a, cols[j], Scalar::one(a->field())).b();
        for (const auto& [w, v] : bc.terms()) m.set(row_index.at(w), static_cast<int>(j), v);
    }
    return m;
}

HhResult hh_dimensions(const AlgebraPtr& a, int total_degree, int bar_cap) {
    if (bar_cap < 1) throw InputError("bar_cap must be >= 1");
    int max_letters = bar_cap - 1;
    SparseMatrix out_of = boundary_matrix(a, total_degree, max_letters);
    SparseMatrix into = boundary_matrix(a, total_degree - 1, max_letters);
    HhResult r;
    r.dimension = out_of.cols() - out_of.rank() - into.rank();

    int smin = 0, smax = 0, dmin = 0, dmax = 0;
    for (int i = 0; i < a->size(); ++i) {
        int d = a->degree(i);
        if (i == 0) {
            dmin = dmax = d;
        } else {
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
    }
    smin = dmin - 1;
    smax = dmax - 1;
    auto contributes = [&](long long n, int deg) {
        return dmin + n * smin <= deg && deg <= dmax + n * smax;
    };
    // Does any bar length beyond the truncation reach degree t or t-1?
    bool tail = false;
    if (smax > 0) {
        tail = true;
    } else if (smax == 0) {
        tail = total_degree <= dmax || total_degree - 1 <= dmax;
    } else {
        for (long long n = bar_cap; dmax + n * smax >= total_degree - 1; ++n)
            if (contributes(n, total_degree) || contributes(n, total_degree - 1)) {
                tail = true;
                break;
            }
    }
    r.exact = !tail;
    return r;
}

Hh0Reducer::Hh0Reducer(AlgebraPtr alg) : alg_(std::move(alg)) {
    const Field& f = alg_->field();
    for (int i = 0; i < alg_->size(); ++i)
        if (alg_->degree(i) == 0) {
            coord_of_[i] = static_cast<int>(deg0_.size());
            deg0_.push_back(i);
        }
    int nc = static_cast<int>(deg0_.size());

    std::vector<SparseVec> gens;
    for (int i = 0; i < alg_->size(); ++i)
        for (int j = 0; j < alg_->size(); ++j) {
            if (alg_->degree(i) + alg_->degree(j) != 0) continue;
            SparseVec comm = alg_->mul_basis(i, j);
            int sign = (alg_->degree(i) * alg_->degree(j)) % 2 == 0 ? -1 : 1;
            for (const auto& [k, v] : alg_->mul_basis(j, i)) {
                auto it = comm.find(k);
                Scalar add = Scalar::of_int(sign, f) * v;
                if (it == comm.end()) {
                    if (!add.is_zero()) comm.emplace(k, add);
                } else {
                    it->second += add;
                    if (it->second.is_zero()) comm.erase(it);
                }
            }
            if (!comm.empty()) gens.push_back(std::move(comm));
        }
    for (int k = 0; k < alg_->size(); ++k) {
        if (alg_->degree(k) != -1) continue;
        SparseVec dk = alg_->d(SparseVec{{k, Scalar::one(f)}});
        if (!dk.empty()) gens.push_back(std::move(dk));
    }

    SparseMatrix rows(static_cast<int>(gens.size()), nc, f);
    for (size_t r = 0; r < gens.size(); ++r)
        for (const auto& [k, v] : gens[r]) rows.set(static_cast<int>(r), coord_of_.at(k), v);
    span_ = rows.reduced_row_echelon();

    std::vector<bool> pivot(nc, false);
    for (auto [r, c] : span_.pivots) pivot[c] = true;
    for (int c = 0; c < nc; ++c)
        if (!pivot[c]) quotient_basis_.push_back(deg0_[c]);
}

Vec Hh0Reducer::reduce(const AlgebraElement& elem) const {
    const Field& f = alg_->field();
    Vec v = zero_vec(static_cast<int>(deg0_.size()), f);
    for (const auto& [i, c] : elem.coeffs()) {
        if (alg_->degree(i) != 0) throw Error("reduce_hh0: element has nonzero degree");
        v[coord_of_.at(i)] = c;
    }
    for (auto [r, c] : span_.pivots) {
        if (v[c].is_zero()) continue;
        Scalar m = v[c];
        for (const auto& [j, w] : span_.rows[r]) v[j] -= m * w;
    }
    return v;
}

Vec reduce_hh0(const AlgebraPtr& a, const AlgebraElement& elem) { return Hh0Reducer(a).reduce(elem); }

}  // namespace nchrr
