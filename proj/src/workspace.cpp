#include "nchrr/workspace.hpp"

namespace nchrr {

namespace {

Field field_from_string(const std::string& s) {
    if (s == "q") return Field::rationals();
    if (s.rfind("fp:", 0) == 0) return Field::prime(std::stoll(s.substr(3)));
    throw InputError("unknown field spec '" + s + "' (use q or fp:P)");
}

SparseMatrix matrix_from_json(const Json& j, int rows, int cols, const Field& f) {
    SparseMatrix m(rows, cols, f);
    if (static_cast<int>(j.size()) != rows) throw InputError("matrix row count mismatch");
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols) throw InputError("matrix column count mismatch");
        for (int c = 0; c < cols; ++c) m.set(r, c, scalar_from_json(j[r][c], f));
    }
    return m;
}

}  // namespace

Scalar scalar_from_json(const Json& j, const Field& f) {
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), f);
    if (j.is_number_integer()) return Scalar::of_int(j.get<long long>(), f);
    throw InputError("scalar must be a string or an integer");
}

AlgebraPtr algebra_from_json(const Json& j, const Field& f) {
    std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
    std::vector<int> degrees = j.value("degrees", std::vector<int>(basis.size(), 0));
    int n = static_cast<int>(basis.size());

    SparseVec unit;
    const Json& ju = j.at("unit");
    if (static_cast<int>(ju.size()) != n) throw InputError("unit vector length mismatch");
    for (int i = 0; i < n; ++i) {
        Scalar c = scalar_from_json(ju[i], f);
        if (!c.is_zero()) unit[i] = c;
    }

    std::map<std::pair<int, int>, SparseVec> mult;
    for (const Json& row : j.value("mult", Json::array())) {
        if (row.size() != 4) throw InputError("mult rows are [i, j, k, coeff]");
        int i = row[0], jj = row[1], k = row[2];
        Scalar c = scalar_from_json(row[3], f);
        if (!c.is_zero()) mult[{i, jj}][k] = mult[{i, jj}].count(k) ? mult[{i, jj}][k] + c : c;
    }
    SparseMatrix diff(n, n, f);
    for (const Json& row : j.value("diff", Json::array())) {
        if (row.size() != 3) throw InputError("diff rows are [i, k, coeff]");
        diff.add_to(row[1], row[0], scalar_from_json(row[2], f));
    }
    return std::make_shared<DgAlgebra>(f, std::move(basis), std::move(degrees), std::move(unit),
                                       std::move(mult), std::move(diff));
}

ChainComplex complex_from_json(const Json& j, const Field& f) {
    std::vector<int> degrees = j.at("degrees").get<std::vector<int>>();
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    if (degrees.size() != dims.size()) throw InputError("complex degrees/dims length mismatch");
    GradedSpace space;
    for (size_t i = 0; i < degrees.size(); ++i) space.set_dim(degrees[i], dims[i]);
    ChainComplex x(f, space);
    std::map<int, SparseMatrix> d;
    for (const Json& row : j.value("d", Json::array())) {
        if (row.size() != 4) throw InputError("complex d rows are [fromDegree, row, col, coeff]");
        int deg = row[0];
        if (!d.count(deg)) d.emplace(deg, SparseMatrix(space.dim(deg + 1), space.dim(deg), f));
        d.at(deg).add_to(row[1], row[2], scalar_from_json(row[3], f));
    }
    for (auto& [deg, m] : d) x.set_d(deg, std::move(m));
    return x;
}

HochschildChain chain_from_json(const Json& j, const AlgebraPtr& a) {
    HochschildChain c(a);
    for (const Json& t : j.at("terms")) {
        BarWord w;
        w.a0 = t.at("a0").get<int>();
        w.letters = t.value("letters", std::vector<int>{});
        if (w.a0 < 0 || w.a0 >= a->size()) throw InputError("chain term a0 out of range");
        for (int l : w.letters)
            if (l < 0 || l >= a->size()) throw InputError("chain letter out of range");
        c.add_term(w, scalar_from_json(t.at("coeff"), a->field()));
    }
    return c;
}

Json chain_to_json(const HochschildChain& c) {
    Json terms = Json::array();
    for (const auto& [w, coeff] : c.terms()) {
        Json t;
        t["a0"] = w.a0;
        t["letters"] = w.letters;
        t["coeff"] = coeff.str();
        terms.push_back(std::move(t));
    }
    return Json{{"terms", std::move(terms)}};
}

Json gram_to_json(const SparseMatrix& g) {
    Json rows = Json::array();
    for (int i = 0; i < g.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.cols(); ++j) row.push_back(g.get(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json validation_to_json(const ValidationReport& r) {
    Json issues = Json::array();
    for (const auto& i : r.issues) issues.push_back(Json{{"check", i.check}, {"detail", i.detail}});
    return Json{{"ok", r.ok()}, {"issues", std::move(issues)}};
}

namespace {

Morphism morphism_from_json(const Json& j, const AlgebraPtr& a, const std::vector<int>& src,
                            const std::vector<int>& tgt) {
    Morphism f(a, src, tgt, j.value("degree", 0));
    for (const Json& row : j.at("entries")) {
        if (row.size() != 3) throw InputError("morphism entries are [i, j, {coeffs}]");
        const Json& jc = row[2].at("coeffs");
        SparseVec v;
        for (int k = 0; k < static_cast<int>(jc.size()); ++k) {
            Scalar c = scalar_from_json(jc[k], a->field());
            if (!c.is_zero()) v[k] = c;
        }
        f.set_entry(row[0], row[1], AlgebraElement(a, std::move(v)));
    }
    return f;
}

}  // namespace

Workspace Workspace::load_json(const Json& j, const std::optional<Field>& field_override) {
    Workspace ws;
    ws.field = field_override ? *field_override : field_from_string(j.value("field", "q"));
    const Field& f = ws.field;

    const Json algebras_section = j.value("algebras", Json::object());
    for (const auto& [name, spec] : algebras_section.items()) {
        try {
            ws.algebras[name] = algebra_from_json(spec, f);
        } catch (const std::exception& e) {
            throw InputError("algebra '" + name + "': " + e.what());
        }
    }
    const Json quivers_section = j.value("quivers", Json::object());
    for (const auto& [name, spec] : quivers_section.items()) {
        try {
            DirectedCategoryData data;
            data.objects = spec.at("objects").get<std::vector<std::string>>();
            data.homdims = spec.at("homdims").get<std::vector<std::vector<int>>>();
            data.ordering = spec.value("ordering", std::vector<int>{});
            for (const Json& row : spec.value("compositions", Json::array())) {
                if (row.size() != 7) throw InputError("composition rows are [i,j,k,a,b,c,coeff]");
                data.compositions[{row[0], row[1], row[2]}].emplace_back(row[3], row[4], row[5],
                                                                         scalar_from_json(row[6], f));
            }
            ws.quivers.emplace(name, directed_algebra(data, f));
        } catch (const std::exception& e) {
            throw InputError("quiver '" + name + "': " + e.what());
        }
    }
    const Json groups_section = j.value("groups", Json::object());
    for (const auto& [name, spec] : groups_section.items()) {
        try {
            FiniteGroupData g;
            g.order = spec.at("order").get<int>();
            g.table = spec.at("table").get<std::vector<std::vector<int>>>();
            for (const Json& chi : spec.value("characters", Json::array())) {
                std::vector<Scalar> row;
                for (const Json& v : chi) row.push_back(scalar_from_json(v, f));
                g.characters.push_back(std::move(row));
            }
            for (const Json& act : spec.value("action", Json::array())) {
                int dv = static_cast<int>(act.size());
                g.action.push_back(matrix_from_json(act, dv, dv, f));
            }
            g.unimodular = spec.value("unimodular", false);
            ValidationReport rep = g.validate(f);
            if (!rep.ok()) throw InputError(rep.str());
            ws.group_algebras.emplace(name, group_algebra(g, f));
            if (!g.action.empty()) ws.lambdas.emplace(name, lambda_vg(g, f));
            ws.groups.emplace(name, std::move(g));
        } catch (const std::exception& e) {
            throw InputError("group '" + name + "': " + e.what());
        }
    }
    const Json frobenius_section = j.value("frobenius", Json::object());
    for (const auto& [name, spec] : frobenius_section.items()) {
        try {
            FrobeniusData fd;
            const Json& alg = spec.at("algebra");
            fd.algebra = alg.is_string() ? ws.algebra(alg.get<std::string>()) : algebra_from_json(alg, f);
            const Json& tr = spec.at("trace");
            if (static_cast<int>(tr.size()) != fd.algebra->size())
                throw InputError("trace vector length mismatch");
            for (const Json& v : tr) fd.trace_vec.push_back(scalar_from_json(v, f));
            fd.cy_dimension = spec.value("cy_dimension", 0);
            ValidationReport rep = fd.validate();
            if (!rep.ok()) throw InputError(rep.str());
            ws.frobenius.emplace(name, std::move(fd));
        } catch (const std::exception& e) {
            throw InputError("frobenius '" + name + "': " + e.what());
        }
    }
    const Json modules_section = j.value("modules", Json::object());
    for (const auto& [name, spec] : modules_section.items()) {
        try {
            ModuleEntry entry;
            entry.algebra_ref = spec.at("algebra").get<std::string>();
            AlgebraPtr a = ws.algebra(entry.algebra_ref);
            std::vector<int> shifts = spec.at("shifts").get<std::vector<int>>();
            std::map<std::pair<int, int>, AlgebraElement> alpha;
            for (const Json& row : spec.value("alpha", Json::array())) {
                if (row.size() != 3) throw InputError("alpha rows are [i, j, {coeffs}]");
                const Json& jc = row[2].at("coeffs");
                SparseVec v;
                for (int k = 0; k < static_cast<int>(jc.size()); ++k) {
                    Scalar c = scalar_from_json(jc[k], f);
                    if (!c.is_zero()) v[k] = c;
                }
                alpha[{row[0], row[1]}] = AlgebraElement(a, std::move(v));
            }
            entry.module = TwistedModule(a, shifts, std::move(alpha));
            if (spec.contains("idempotent"))
                entry.pi = morphism_from_json(spec.at("idempotent"), a, shifts, shifts);
            ws.modules.emplace(name, std::move(entry));
        } catch (const std::exception& e) {
            throw InputError("module '" + name + "': " + e.what());
        }
    }
    const Json chains_section = j.value("chains", Json::object());
    for (const auto& [name, spec] : chains_section.items()) {
        try {
            ChainEntry entry;
            entry.algebra_ref = spec.at("algebra").get<std::string>();
            entry.op = spec.value("op", false);
            AlgebraPtr a = ws.algebra(entry.algebra_ref);
            if (entry.op) a = opposite(a);
            entry.chain = chain_from_json(spec, a);
            ws.chains.emplace(name, std::move(entry));
        } catch (const std::exception& e) {
            throw InputError("chain '" + name + "': " + e.what());
        }
    }
    const Json complexes_section = j.value("complexes", Json::object());
    for (const auto& [name, spec] : complexes_section.items()) {
        try {
            ws.complexes.emplace(name, complex_from_json(spec, f));
        } catch (const std::exception& e) {
            throw InputError("complex '" + name + "': " + e.what());
        }
    }
    return ws;
}

Workspace Workspace::load_file(const std::string& path, const std::optional<Field>& field_override) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw InputError("cannot open workspace file: " + path);
    std::string data;
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, fp)) > 0) data.append(buf, got);
    std::fclose(fp);
    Json j;
    try {
        j = Json::parse(data);
    } catch (const std::exception& e) {
        throw InputError(std::string("workspace parse error: ") + e.what());
    }
    return load_json(j, field_override);
}

AlgebraPtr Workspace::algebra(const std::string& ref) const {
    auto take = [&](const auto& m, const std::string& key, const char* kind) {
        auto it = m.find(key);
        if (it == m.end()) throw InputError(std::string("dangling ") + kind + " reference: " + key);
        return it;
    };
    if (ref.rfind("quiver:", 0) == 0) return take(quivers, ref.substr(7), "quiver")->second.alg;
    if (ref.rfind("group:", 0) == 0) return take(group_algebras, ref.substr(6), "group")->second.alg;
    if (ref.rfind("lambda:", 0) == 0) return take(lambdas, ref.substr(7), "lambda")->second.alg;
    return take(algebras, ref, "algebra")->second;
}

}  // namespace nchrr
