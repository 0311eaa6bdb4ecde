#include "jorn/deformation.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace jorn {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw CatalogError(where + ": " + what);
}

std::string str_field(const ojson& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_string())
        bad(where, std::string("missing string field '") + key + "'");
    return j.at(key).get<std::string>();
}

ParamMap param_map(const ojson& v, const std::string& where) {
    if (!v.is_object()) bad(where, "expected an object of expressions");
    ParamMap out;
    for (const auto& [k, s] : v.items()) {
        if (!s.is_string()) bad(where, "parameter '" + k + "' must be a string expression");
        out.emplace_back(k, s.get<std::string>());
    }
    return out;
}

ojson put_map(const ParamMap& m) {
    ojson o = ojson::object();
    for (const auto& [k, v] : m) o[k] = v;
    return o;
}

std::vector<std::vector<std::string>> matrix_field(const ojson& v, const std::string& where) {
    if (!v.is_array()) bad(where, "matrix must be an array of rows");
    std::vector<std::vector<std::string>> out;
    for (const auto& row : v) {
        if (!row.is_array()) bad(where, "matrix rows must be arrays");
        std::vector<std::string> r;
        for (const auto& x : row) {
            if (!x.is_string()) bad(where, "matrix entries must be expressions");
            r.push_back(x.get<std::string>());
        }
        out.push_back(std::move(r));
    }
    for (const auto& r : out)
        if (r.size() != out.size()) bad(where, "matrix must be square");
    return out;
}

AlgebraRef ref_field(const ojson& v, const std::string& where) {
    AlgebraRef r;
    r.label = str_field(v, "label", where);
    if (v.contains("params")) r.params = param_map(v.at("params"), where);
    return r;
}

std::string bindings_text(const std::string& label, const ParamMap& fixed, const ParamMap& path, const ScalarBindings& free) {
    std::string out;
    Bindings ctx = to_bindings(free);
    for (const auto& [k, v] : fixed) out += (out.empty() ? "" : ",") + k + "=" + parse_constant(v, ctx).str();
    for (const auto& [k, v] : path) {
        std::string e = Expr::parse(v).eval(ctx).str();
        out += (out.empty() ? "" : ",") + k + "=" + e;
    }
    return out.empty() ? label : label + "[" + out + "]";
}

std::string entry_name(int i, int j, int k) {
    return "e" + std::to_string(i + 1) + "e" + std::to_string(j + 1) + "->e" + std::to_string(k + 1);
}

std::string tensor_diff(const Tensor<ExactScalar>& got, const Tensor<ExactScalar>& want) {
    std::string out;
    int n = got.dim();
    int shown = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!(got.at(i, j, k) == want.at(i, j, k)) && shown++ < 6)
                    out += (out.empty() ? "" : "; ") + entry_name(i, j, k) + ": got " + got.at(i, j, k).str() +
                           " want " + want.at(i, j, k).str();
    return out;
}

}  // namespace

CurveFile CurveFile::from_json_text(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CatalogError(std::string("parse error: ") + e.what());
    }
    CurveFile cf;
    cf.format = str_field(j, "format", "curve file");
    if (!j.contains("curves") || !j.at("curves").is_array()) bad("curve file", "missing curves");
    for (const auto& c : j.at("curves")) {
        CurveSpec s;
        s.id = str_field(c, "id", "curve");
        std::string where = "curve " + s.id;
        if (!c.contains("source")) bad(where, "missing source");
        const ojson& src = c.at("source");
        s.source.label = str_field(src, "label", where);
        if (src.contains("params")) s.source.params = param_map(src.at("params"), where);
        if (src.contains("param_path")) s.param_path = param_map(src.at("param_path"), where);
        if (!c.contains("matrix")) bad(where, "missing matrix");
        s.matrix = matrix_field(c.at("matrix"), where);
        if (c.contains("free_params")) {
            for (const auto& [k, v] : c.at("free_params").items()) {
                std::vector<std::string> vals;
                for (const auto& x : v) vals.push_back(x.get<std::string>());
                s.free_params.emplace_back(k, vals);
            }
        }
        if (!c.contains("special_points") || c.at("special_points").empty()) bad(where, "no special points");
        for (const auto& p : c.at("special_points")) {
            SpecialPoint sp;
            sp.t0 = str_field(p, "t0", where);
            sp.target = ref_field(p.at("target"), where);
            if (p.contains("witness")) sp.witness = matrix_field(p.at("witness"), where);
            s.special_points.push_back(sp);
        }
        if (c.contains("expected_det")) s.expected_det = str_field(c, "expected_det", where);
        if (c.contains("note")) s.note = str_field(c, "note", where);
        cf.curves.push_back(s);
    }
    if (j.contains("external_edges"))
        for (const auto& e : j.at("external_edges"))
            cf.external_edges.push_back({str_field(e, "id", "external edge"), str_field(e, "from", "external edge"),
                                         str_field(e, "to", "external edge"), str_field(e, "citation", "external edge")});
    if (j.contains("direct_sum_edges"))
        for (const auto& e : j.at("direct_sum_edges"))
            cf.direct_sum_edges.push_back({str_field(e, "id", "direct sum"), str_field(e, "left", "direct sum"),
                                           str_field(e, "right", "direct sum"), str_field(e, "from", "direct sum"),
                                           str_field(e, "to", "direct sum")});
    return cf;
}

CurveFile CurveFile::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string CurveFile::to_json_text() const {
    ojson j;
    j["format"] = format;
    j["curves"] = ojson::array();
    for (const auto& c : curves) {
        ojson o;
        o["id"] = c.id;
        o["source"]["label"] = c.source.label;
        o["source"]["params"] = put_map(c.source.params);
        o["source"]["param_path"] = put_map(c.param_path);
        o["matrix"] = c.matrix;
        o["free_params"] = ojson::object();
        for (const auto& [k, v] : c.free_params) o["free_params"][k] = v;
        o["special_points"] = ojson::array();
        for (const auto& p : c.special_points) {
            ojson q;
            q["t0"] = p.t0;
            q["target"]["label"] = p.target.label;
            q["target"]["params"] = put_map(p.target.params);
            if (!p.witness.empty()) q["witness"] = p.witness;
            o["special_points"].push_back(q);
        }
        if (!c.expected_det.empty()) o["expected_det"] = c.expected_det;
        if (!c.note.empty()) o["note"] = c.note;
        j["curves"].push_back(o);
    }
    j["external_edges"] = ojson::array();
    for (const auto& e : external_edges) {
        ojson o;
        o["id"] = e.id;
        o["from"] = e.from;
        o["to"] = e.to;
        o["citation"] = e.citation;
        j["external_edges"].push_back(o);
    }
    j["direct_sum_edges"] = ojson::array();
    for (const auto& e : direct_sum_edges) {
        ojson o;
        o["id"] = e.id;
        o["left"] = e.left;
        o["right"] = e.right;
        o["from"] = e.from;
        o["to"] = e.to;
        j["direct_sum_edges"].push_back(o);
    }
    return j.dump(2) + "\n";
}

const CurveSpec* CurveFile::curve(const std::string& id) const {
    for (const auto& c : curves)
        if (c.id == id) return &c;
    return nullptr;
}

const ExternalEdgeSpec* CurveFile::external(const std::string& id) const {
    for (const auto& e : external_edges)
        if (e.id == id) return &e;
    return nullptr;
}

Tensor<RatFunc> instantiate_along(const Catalog& cat, const std::string& label, const Bindings& params) {
    const CatalogEntry& e = cat.entry(label);
    for (const auto& [k, v] : params) {
        bool known = false;
        for (const auto& p : e.params) known = known || p.name == k;
        if (!known) throw ConstraintViolation(label + " has no parameter '" + k + "'");
    }
    for (const auto& p : e.params) {
        auto it = params.find(p.name);
        if (it == params.end()) throw ConstraintViolation(label + ": parameter '" + p.name + "' not bound");
        for (const auto& x : p.excluded)
            if ((it->second - RatFunc(parse_constant(x))).is_zero())
                throw ConstraintViolation(label + ": " + p.name + " = " + x + " is excluded");
    }
    for (const auto& c : e.constraints) {
        RatFunc v = Expr::parse(c.expr).eval(params);
        for (const auto& x : c.excluded)
            if ((v - RatFunc(parse_constant(x))).is_zero())
                throw ConstraintViolation(label + ": constraint " + c.expr + " != " + x + " violated");
    }
    Tensor<RatFunc> t(e.dim);
    for (const auto& p : e.products) t.set(p.i - 1, p.j - 1, p.k - 1, Expr::parse(p.coeff).eval(params));
    return t;
}

CurveResult verify_curve(const Catalog& cat, const CurveSpec& c) {
    CurveResult res;
    res.id = c.id;
    res.fixed_source = c.fixed_source();
    std::vector<ScalarBindings> frees;
    try {
        frees = expand_free(c.free_params);
    } catch (const std::exception& ex) {
        CurveSample s;
        s.error = ex.what();
        res.samples.push_back(s);
        return res;
    }
    for (const auto& fb : frees) {
        CurveSample s;
        s.free = fb;
        try {
            Bindings ctx = to_bindings(fb);
            s.source = bindings_text(c.source.label, c.source.params, c.param_path, fb);
            Bindings src;
            for (const auto& [k, v] : c.source.params) src[k] = RatFunc(parse_constant(v, ctx));
            for (const auto& [k, v] : c.param_path) src[k] = Expr::parse(v).eval(ctx);
            Tensor<RatFunc> base = instantiate_along(cat, c.source.label, src);
            std::size_t n = c.matrix.size();
            if (static_cast<int>(n) != base.dim()) throw std::invalid_argument("matrix size does not match source");
            Matrix<RatFunc> g(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) g(i, j) = Expr::parse(c.matrix[i][j]).eval(ctx);
            RatFunc det = g.det();
            s.det = det.str();
            s.det_ok = !det.is_zero();
            if (!c.expected_det.empty()) s.det_matches = det == Expr::parse(c.expected_det).eval(ctx);
            if (!s.det_ok) throw SingularMatrix();
            int nonzero = 0;
            for (int tv : {2, 3, 5, 7}) {
                ExactScalar x(tv);
                if (!det.has_pole_at(x) && !det.eval(x).is_zero()) ++nonzero;
            }
            s.generic_ok = nonzero >= 3;
            Tensor<RatFunc> tt = apply_basis_change(base, g);
            bool all = true;
            for (const auto& p : c.special_points) {
                PointResult pr;
                pr.t0 = p.t0;
                AlgebraId tid{p.target.label, bind_params(p.target.params, ctx)};
                pr.target = tid.str();
                try {
                    ExactScalar t0 = parse_constant(p.t0, ctx);
                    int dim = tt.dim();
                    Tensor<ExactScalar> lim(dim);
                    std::string poles;
                    for (int i = 0; i < dim; ++i)
                        for (int j = 0; j < dim; ++j)
                            for (int k = 0; k < dim; ++k) {
                                const RatFunc& f = tt.at(i, j, k);
                                if (f.has_pole_at(t0)) {
                                    if (j >= i) poles += (poles.empty() ? "" : "; ") + entry_name(i, j, k) + " = " + f.str();
                                    continue;
                                }
                                lim.set_raw(i, j, k, f.eval(t0));
                            }
                    if (!poles.empty()) throw PoleError("pole at t = " + p.t0 + ": " + poles);
                    if (!p.witness.empty()) lim = apply_basis_change(lim, eval_matrix(p.witness, ctx));
                    Tensor<ExactScalar> want = cat.instantiate(tid);
                    pr.ok = lim == want;
                    if (!pr.ok) pr.detail = "limit mismatch: " + tensor_diff(lim, want);
                } catch (const std::exception& ex) {
                    pr.ok = false;
                    pr.detail = ex.what();
                }
                all = all && pr.ok;
                s.points.push_back(pr);
            }
            s.ok = s.det_ok && s.det_matches && s.generic_ok && all;
            if (!s.det_matches) s.error = "determinant " + s.det + " differs from expected " + c.expected_det;
            if (!s.generic_ok) s.error = "determinant vanishes at sampled t";
        } catch (const std::exception& ex) {
            s.ok = false;
            s.error = ex.what();
        }
        res.samples.push_back(s);
    }
    res.ok = !res.samples.empty();
    for (const auto& s : res.samples) res.ok = res.ok && s.ok;
    return res;
}

CurveResult scaling_edge(const Catalog& cat, const AlgebraId& id, const std::string& zero_label) {
    const CatalogEntry& e = cat.entry(id.label);
    CurveSpec c;
    c.id = "scale:" + id.str();
    c.source.label = id.label;
    for (const auto& [k, v] : id.params) c.source.params.emplace_back(k, v.str());
    int n = e.dim;
    c.matrix.assign(static_cast<std::size_t>(n), std::vector<std::string>(static_cast<std::size_t>(n), "0"));
    for (int i = 0; i < n; ++i) c.matrix[i][i] = "t";
    c.special_points.push_back({"0", {zero_label, {}}, {}});
    return verify_curve(cat, c);
}

std::vector<std::string> ObstructionReport::failed() const {
    std::vector<std::string> out;
    for (const auto& c : conditions)
        if (!c.ok) out.push_back(c.name);
    return out;
}

bool ObstructionReport::fails(const std::string& name) const {
    for (const auto& c : conditions)
        if (c.name == name && !c.ok) return true;
    return false;
}

ObstructionReport check_obstructions(const std::string& a_name, const InvariantProfile& a, const std::string& b_name,
                                     const InvariantProfile& b) {
    ObstructionReport r;
    r.from = a_name;
    r.to = b_name;
    auto cmp = [](const std::string& what, int x, const char* op, int y) {
        return what + " " + std::to_string(x) + " " + op + " " + std::to_string(y);
    };
    r.conditions.push_back({"aut_strict", a.der_dim < b.der_dim, cmp("dim Aut", a.der_dim, "<", b.der_dim)});
    r.conditions.push_back({"ann", a.ann_dim <= b.ann_dim, cmp("dim Ann", a.ann_dim, "<=", b.ann_dim)});
    Condition pw{"powers", true, ""};
    int top = std::max(a.nilindex, b.nilindex);
    for (int m = 1; m <= top; ++m)
        if (a.power_dim(m) < b.power_dim(m) && pw.ok) {
            pw.ok = false;
            pw.detail = cmp("dim J^" + std::to_string(m), a.power_dim(m), ">=", b.power_dim(m));
        }
    if (pw.ok) pw.detail = "dims " + format_dims(a.power_dims) + " >= " + format_dims(b.power_dims);
    r.conditions.push_back(pw);
    r.conditions.push_back({"center", a.center_dim <= b.center_dim, cmp("dim Z", a.center_dim, "<=", b.center_dim)});
    r.conditions.push_back({"nilindex", a.nilindex >= b.nilindex, cmp("nilindex", a.nilindex, ">=", b.nilindex)});
    bool assoc_ok = b.associative || !a.associative;
    r.conditions.push_back({"associativity", assoc_ok,
                            std::string(a.associative ? "associative" : "non-associative") + " -> " +
                                (b.associative ? "associative" : "non-associative")});
    for (auto& c : r.conditions)
        if (!c.ok) {
            r.blocked = true;
            c.detail = "needs " + c.detail;
        }
    return r;
}

ObstructionReport check_obstructions(const Catalog& cat, const AlgebraId& a, const AlgebraId& b) {
    return check_obstructions(a.str(), invariant_profile(cat.instantiate(a)), b.str(),
                              invariant_profile(cat.instantiate(b)));
}

CurveSpec direct_sum_curve(const Catalog& cat, const CurveSpec& a, const CurveSpec& b, const std::string& sum_from,
                           const std::string& sum_to) {
    if (!a.fixed_source() || !b.fixed_source() || !a.free_params.empty() || !b.free_params.empty())
        throw std::invalid_argument("direct sums need fixed curves without free parameters");
    std::size_t na = a.matrix.size(), nb = b.matrix.size();
    if (static_cast<int>(na + nb) != cat.entry(sum_from).dim) throw std::invalid_argument("dimension bookkeeping mismatch");
    CurveSpec c;
    c.id = a.id + "+" + b.id;
    c.source.label = sum_from;
    c.matrix.assign(na + nb, std::vector<std::string>(na + nb, "0"));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) c.matrix[i][j] = a.matrix[i][j];
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) c.matrix[na + i][na + j] = b.matrix[i][j];
    c.special_points.push_back({"0", {sum_to, {}}, {}});
    return c;
}

namespace {

CurveSpec identity_curve(const Catalog& cat, const std::string& label) {
    CurveSpec c;
    int n = cat.entry(label).dim;
    c.id = "id:" + label;
    c.source.label = label;
    c.matrix.assign(static_cast<std::size_t>(n), std::vector<std::string>(static_cast<std::size_t>(n), "0"));
    for (int i = 0; i < n; ++i) c.matrix[i][i] = "1";
    c.special_points.push_back({"0", {label, {}}, {}});
    return c;
}

}  // namespace

DirectSumResult derive_direct_sum_edge(const Catalog& cat, const CurveFile& cf, const DirectSumSpec& d) {
    DirectSumResult r;
    r.id = d.id;
    r.from = d.from;
    r.to = d.to;
    try {
        std::string lf, lt;
        const CurveSpec* lc = cf.curve(d.left);
        const ExternalEdgeSpec* le = cf.external(d.left);
        if (lc) {
            if (lc->special_points.empty() || !lc->source.params.empty())
                throw std::invalid_argument("curve " + d.left + " cannot be lifted");
            lf = lc->source.label;
            lt = lc->special_points.front().target.label;
        } else if (le) {
            lf = le->from;
            lt = le->to;
            r.external = true;
        } else {
            throw std::invalid_argument("unknown edge " + d.left);
        }
        int n = cat.entry(lf).dim + cat.entry(d.right).dim;
        if (n != cat.entry(d.from).dim || n != cat.entry(d.to).dim) throw std::invalid_argument("dimension bookkeeping mismatch");
        auto right = cat.instantiate(d.right);
        bool from_ok = direct_sum(cat.instantiate(lf), right) == cat.instantiate(d.from);
        bool to_ok = direct_sum(cat.instantiate(lt), right) == cat.instantiate(d.to);
        if (!from_ok) r.detail = d.from + " is not " + lf + " + " + d.right;
        if (!to_ok) r.detail += (r.detail.empty() ? "" : "; ") + d.to + " is not " + lt + " + " + d.right;
        r.ok = from_ok && to_ok;
        if (r.ok && lc) {
            CurveResult cr = verify_curve(cat, direct_sum_curve(cat, *lc, identity_curve(cat, d.right), d.from, d.to));
            r.ok = cr.ok;
            if (!cr.ok) r.detail = describe(cr);
        }
        if (r.ok) r.detail = lf + "->" + lt + " with " + d.right + (r.external ? " (cited edge)" : " (verified curve)");
    } catch (const std::exception& ex) {
        r.ok = false;
        r.detail = ex.what();
    }
    return r;
}

std::string describe(const CurveResult& r) {
    std::string out = r.id + (r.ok ? ": ok" : ": FAILED");
    for (const auto& s : r.samples) {
        if (s.ok && r.ok) continue;
        out += " | " + s.source + (s.free.empty() ? "" : " {" + format_bindings(s.free) + "}");
        if (!s.error.empty()) out += " error: " + s.error;
        for (const auto& p : s.points)
            if (!p.ok) out += " t0=" + p.t0 + "->" + p.target + ": " + p.detail;
    }
    return out;
}

}  // namespace jorn
