#include "jorn/catalog.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace jorn {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw CatalogError(where + ": " + what);
}

const ojson& field(const ojson& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string get_string(const ojson& j, const char* key, const std::string& where) {
    const ojson& v = field(j, key, where);
    if (!v.is_string()) bad(where, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

int get_int(const ojson& j, const char* key, const std::string& where) {
    const ojson& v = field(j, key, where);
    if (!v.is_number_integer()) bad(where, std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::vector<std::string> get_strings(const ojson& v, const std::string& where) {
    if (!v.is_array()) bad(where, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& s : v) {
        if (!s.is_string()) bad(where, "expected an array of strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

ParamMap get_param_map(const ojson& v, const std::string& where) {
    if (!v.is_object()) bad(where, "expected an object of expressions");
    ParamMap out;
    for (const auto& [k, s] : v.items()) {
        if (!s.is_string()) bad(where, "parameter '" + k + "' must be a string expression");
        out.emplace_back(k, s.get<std::string>());
    }
    return out;
}

ojson put_param_map(const ParamMap& m) {
    ojson o = ojson::object();
    for (const auto& [k, v] : m) o[k] = v;
    return o;
}

AlgebraRef get_ref(const ojson& v, const std::string& where) {
    AlgebraRef r;
    r.label = get_string(v, "label", where);
    r.params = get_param_map(field(v, "params", where), where);
    return r;
}

ojson put_ref(const AlgebraRef& r) {
    ojson o;
    o["label"] = r.label;
    o["params"] = put_param_map(r.params);
    return o;
}

std::vector<std::vector<std::string>> get_matrix(const ojson& v, const std::string& where) {
    if (!v.is_array()) bad(where, "matrix must be an array of rows");
    std::vector<std::vector<std::string>> out;
    for (const auto& row : v) out.push_back(get_strings(row, where));
    for (const auto& row : out)
        if (row.size() != out.size()) bad(where, "matrix must be square");
    return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>> get_free(const ojson& v, const std::string& where) {
    if (!v.is_object()) bad(where, "free_params must be an object");
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    for (const auto& [k, s] : v.items()) out.emplace_back(k, get_strings(s, where));
    return out;
}

ojson put_free(const std::vector<std::pair<std::string, std::vector<std::string>>>& f) {
    ojson o = ojson::object();
    for (const auto& [k, v] : f) o[k] = v;
    return o;
}

WitnessSpec parse_witness(const ojson& j, const std::string& where) {
    WitnessSpec w;
    w.id = get_string(j, "id", where);
    std::string at = where + " witness " + w.id;
    if (j.contains("free_params")) w.free_params = get_free(j.at("free_params"), at);
    if (j.contains("params")) w.params = get_param_map(j.at("params"), at);
    w.target = get_ref(field(j, "target", at), at);
    w.matrix = get_matrix(field(j, "matrix", at), at);
    return w;
}

ojson put_witness(const WitnessSpec& w) {
    ojson o;
    o["id"] = w.id;
    if (!w.free_params.empty()) o["free_params"] = put_free(w.free_params);
    if (!w.params.empty()) o["params"] = put_param_map(w.params);
    o["target"] = put_ref(w.target);
    o["matrix"] = w.matrix;
    return o;
}

CatalogEntry parse_entry(const ojson& j) {
    CatalogEntry e;
    e.label = get_string(j, "label", "entry");
    std::string where = "entry " + e.label;
    e.dim = get_int(j, "dim", where);
    if (e.dim < 1 || e.dim > 8) bad(where, "dimension out of range");
    e.table = get_string(j, "table", where);
    for (const auto& p : field(j, "params", where)) {
        ParamSpec ps;
        ps.name = get_string(p, "name", where);
        ps.excluded = get_strings(field(p, "excluded", where), where);
        e.params.push_back(ps);
    }
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& p : field(j, "products", where)) {
        ProductSpec ps;
        ps.i = get_int(p, "i", where);
        ps.j = get_int(p, "j", where);
        ps.k = get_int(p, "k", where);
        ps.coeff = get_string(p, "coeff", where);
        if (ps.i < 1 || ps.j < ps.i || ps.j > e.dim || ps.k < 1 || ps.k > e.dim)
            bad(where, "product index out of range");
        if (!seen.insert({ps.i, ps.j, ps.k}).second) bad(where, "duplicate product");
        e.products.push_back(ps);
    }
    for (const auto& x : field(j, "expected", where)) {
        ExpectedFragment f;
        if (x.contains("when")) {
            const ojson& w = x.at("when");
            Guard g;
            g.param = get_string(w, "param", where);
            if (w.contains("eq")) {
                g.value = get_string(w, "eq", where);
            } else {
                g.equal = false;
                g.value = get_string(w, "ne", where);
            }
            f.when = g;
        }
        for (const auto& [k, v] : field(x, "values", where).items()) {
            if (v.is_number_integer()) {
                f.values.emplace_back(k, v.get<int>());
            } else if (v.is_array()) {
                f.values.emplace_back(k, v.get<std::vector<int>>());
            } else {
                bad(where, "expected value '" + k + "' must be an integer or list");
            }
        }
        e.expected.push_back(f);
    }
    const ojson& g = field(j, "graph", where);
    if (g.is_string()) {
        e.graph = g.get<std::string>();
    } else {
        e.graph = get_param_map(field(g, "member", where), where);
    }
    if (j.contains("constraints"))
        for (const auto& c : j.at("constraints"))
            e.constraints.push_back({get_string(c, "expr", where), get_strings(field(c, "excluded", where), where)});
    if (j.contains("samples"))
        for (const auto& s : j.at("samples")) e.samples.push_back(get_param_map(s, where));
    if (j.contains("decomposition")) e.decomposition = get_strings(j.at("decomposition"), where);
    if (j.contains("witnesses"))
        for (const auto& w : j.at("witnesses")) e.witnesses.push_back(parse_witness(w, where));
    if (j.contains("note")) e.note = get_string(j, "note", where);
    return e;
}

ojson put_entry(const CatalogEntry& e) {
    ojson o;
    o["label"] = e.label;
    o["dim"] = e.dim;
    o["table"] = e.table;
    o["params"] = ojson::array();
    for (const auto& p : e.params) {
        ojson q;
        q["name"] = p.name;
        q["excluded"] = p.excluded;
        o["params"].push_back(q);
    }
    o["products"] = ojson::array();
    for (const auto& p : e.products) {
        ojson q;
        q["i"] = p.i;
        q["j"] = p.j;
        q["k"] = p.k;
        q["coeff"] = p.coeff;
        o["products"].push_back(q);
    }
    o["expected"] = ojson::array();
    for (const auto& f : e.expected) {
        ojson q;
        if (f.when) {
            q["when"]["param"] = f.when->param;
            q["when"][f.when->equal ? "eq" : "ne"] = f.when->value;
        }
        q["values"] = ojson::object();
        for (const auto& [k, v] : f.values) {
            if (std::holds_alternative<int>(v)) {
                q["values"][k] = std::get<int>(v);
            } else {
                q["values"][k] = std::get<std::vector<int>>(v);
            }
        }
        o["expected"].push_back(q);
    }
    if (std::holds_alternative<std::string>(e.graph)) {
        o["graph"] = std::get<std::string>(e.graph);
    } else {
        o["graph"]["member"] = put_param_map(std::get<ParamMap>(e.graph));
    }
    if (!e.constraints.empty()) {
        o["constraints"] = ojson::array();
        for (const auto& c : e.constraints) {
            ojson q;
            q["expr"] = c.expr;
            q["excluded"] = c.excluded;
            o["constraints"].push_back(q);
        }
    }
    if (!e.samples.empty()) {
        o["samples"] = ojson::array();
        for (const auto& s : e.samples) o["samples"].push_back(put_param_map(s));
    }
    if (!e.decomposition.empty()) o["decomposition"] = e.decomposition;
    if (!e.witnesses.empty()) {
        o["witnesses"] = ojson::array();
        for (const auto& w : e.witnesses) o["witnesses"].push_back(put_witness(w));
    }
    if (!e.note.empty()) o["note"] = e.note;
    return o;
}

}  // namespace

std::string CatalogEntry::graph_kind() const {
    if (std::holds_alternative<std::string>(graph)) return std::get<std::string>(graph);
    return "member";
}

std::vector<std::string> CatalogEntry::param_names() const {
    std::vector<std::string> out;
    for (const auto& p : params) out.push_back(p.name);
    return out;
}

std::string AlgebraId::str() const {
    if (params.empty()) return label;
    return label + "[" + format_bindings(params) + "]";
}

std::string format_bindings(const ScalarBindings& b) {
    std::string out;
    for (const auto& [k, v] : b) out += (out.empty() ? "" : ",") + k + "=" + v.str();
    return out;
}

ScalarBindings bind_params(const ParamMap& m, const Bindings& context) {
    ScalarBindings out;
    for (const auto& [k, v] : m) out[k] = parse_constant(v, context);
    return out;
}

Matrix<ExactScalar> eval_matrix(const std::vector<std::vector<std::string>>& m, const Bindings& b) {
    Matrix<ExactScalar> g(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) g(i, j) = parse_constant(m[i][j], b);
    return g;
}

std::vector<ScalarBindings> expand_free(const std::vector<std::pair<std::string, std::vector<std::string>>>& free) {
    std::vector<ScalarBindings> out{{}};
    for (const auto& [name, values] : free) {
        std::vector<ScalarBindings> next;
        for (const auto& b : out)
            for (const auto& v : values) {
                ScalarBindings c = b;
                c[name] = parse_constant(v);
                next.push_back(std::move(c));
            }
        out = std::move(next);
    }
    return out;
}

void Catalog::reindex() {
    index_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (!index_.emplace(entries_[i].label, i).second) throw CatalogError("duplicate label " + entries_[i].label);
}

Catalog Catalog::from_json_text(const std::string& text) {
    Catalog c;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return c;
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CatalogError(std::string("parse error: ") + e.what());
    }
    c.format_ = get_string(j, "format", "catalog");
    for (const auto& e : field(j, "entries", "catalog")) c.entries_.push_back(parse_entry(e));
    c.reindex();
    for (const auto& e : c.entries_) {
        for (const auto& b : c.samples(e)) {
            Tensor<ExactScalar> t;
            try {
                t = c.instantiate(AlgebraId{e.label, b});
            } catch (const std::exception& ex) {
                throw CatalogError("entry " + e.label + ": " + ex.what());
            }
            if (!is_jordan(t)) throw CatalogError("entry " + AlgebraId{e.label, b}.str() + " is not a Jordan algebra");
        }
    }
    return c;
}

Catalog Catalog::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string Catalog::to_json_text() const {
    ojson j;
    j["format"] = format_;
    j["entries"] = ojson::array();
    for (const auto& e : entries_) j["entries"].push_back(put_entry(e));
    return j.dump(2) + "\n";
}

const CatalogEntry& Catalog::entry(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw CatalogError("unknown label " + label);
    return entries_[it->second];
}

void Catalog::check_params(const CatalogEntry& e, const ScalarBindings& params) const {
    for (const auto& [k, v] : params) {
        bool known = false;
        for (const auto& p : e.params) known = known || p.name == k;
        if (!known) throw ConstraintViolation(e.label + " has no parameter '" + k + "'");
    }
    for (const auto& p : e.params) {
        auto it = params.find(p.name);
        if (it == params.end()) throw ConstraintViolation(e.label + ": parameter '" + p.name + "' not bound");
        for (const auto& x : p.excluded)
            if (parse_constant(x) == it->second)
                throw ConstraintViolation(e.label + ": " + p.name + " = " + x + " is excluded");
    }
    Bindings b = to_bindings(params);
    for (const auto& c : e.constraints) {
        ExactScalar v = parse_constant(c.expr, b);
        for (const auto& x : c.excluded)
            if (parse_constant(x) == v) throw ConstraintViolation(e.label + ": constraint " + c.expr + " != " + x + " violated");
    }
}

Tensor<ExactScalar> Catalog::instantiate(const AlgebraId& id) const {
    const CatalogEntry& e = entry(id.label);
    check_params(e, id.params);
    Bindings b = to_bindings(id.params);
    Tensor<ExactScalar> t(e.dim);
    for (const auto& p : e.products) t.set(p.i - 1, p.j - 1, p.k - 1, parse_constant(p.coeff, b));
    return t;
}

std::vector<ScalarBindings> Catalog::samples(const CatalogEntry& e) const {
    if (e.samples.empty()) return {ScalarBindings{}};
    std::vector<ScalarBindings> out;
    for (const auto& s : e.samples) out.push_back(bind_params(s));
    return out;
}

std::vector<AlgebraId> Catalog::sampled_ids(const CatalogEntry& e) const {
    std::vector<AlgebraId> out;
    for (auto& b : samples(e)) out.push_back(AlgebraId{e.label, b});
    return out;
}

void Catalog::set_samples(const std::string& label, const std::vector<ParamMap>& samples) {
    CatalogEntry& e = entries_[index_.at(entry(label).label)];
    if (!e.is_family()) throw CatalogError(label + " has no parameters");
    for (const auto& s : samples) {
        AlgebraId id{label, bind_params(s)};
        if (!is_jordan(instantiate(id))) throw CatalogError(id.str() + " is not a Jordan algebra");
    }
    e.samples = samples;
}

std::vector<std::pair<std::string, FieldValue>> Catalog::expected(const AlgebraId& id) const {
    const CatalogEntry& e = entry(id.label);
    std::vector<std::pair<std::string, FieldValue>> out;
    for (const auto& f : e.expected) {
        if (f.when) {
            auto it = id.params.find(f.when->param);
            if (it == id.params.end()) continue;
            bool eq = it->second == parse_constant(f.when->value);
            if (eq != f.when->equal) continue;
        }
        for (const auto& [k, v] : f.values) {
            bool replaced = false;
            for (auto& [k2, v2] : out)
                if (k2 == k) {
                    v2 = v;
                    replaced = true;
                }
            if (!replaced) out.emplace_back(k, v);
        }
    }
    return out;
}

std::vector<WitnessResult> Catalog::verify_witness(const CatalogEntry& e, const WitnessSpec& w) const {
    std::vector<WitnessResult> out;
    for (const auto& fb : expand_free(w.free_params)) {
        WitnessResult r;
        r.id = w.id + (fb.empty() ? "" : "[" + format_bindings(fb) + "]");
        try {
            Bindings ctx = to_bindings(fb);
            AlgebraId src{e.label, bind_params(w.params, ctx)};
            AlgebraId tgt{w.target.label, bind_params(w.target.params, ctx)};
            r.source = src.str();
            r.target = tgt.str();
            Tensor<ExactScalar> a = instantiate(src);
            Tensor<ExactScalar> b = instantiate(tgt);
            Matrix<ExactScalar> g = eval_matrix(w.matrix, ctx);
            if (static_cast<int>(g.rows()) != a.dim()) throw CatalogError("witness matrix has wrong size");
            Tensor<ExactScalar> c = apply_basis_change(a, g);
            r.ok = c == b;
            if (!r.ok) r.detail = "transformed: " + format_table(c) + " | target: " + format_table(b);
        } catch (const std::exception& ex) {
            r.ok = false;
            r.detail = ex.what();
        }
        out.push_back(r);
    }
    return out;
}

std::string format_value(const FieldValue& v) {
    if (std::holds_alternative<int>(v)) return std::to_string(std::get<int>(v));
    return format_dims(std::get<std::vector<int>>(v));
}

std::optional<FieldValue> profile_field(const InvariantProfile& p, const std::string& f) {
    if (f == "der_dim") return p.der_dim;
    if (f == "ann_dim") return p.ann_dim;
    if (f == "square_dim") return p.square_dim();
    if (f == "nilindex") return p.nilindex;
    if (f == "center_dim") return p.center_dim;
    if (f == "h2_dim") return p.h2_dim;
    if (f == "jacobi_dim") return p.jacobi_dim;
    if (f == "orbit_dim") return p.orbit_dim;
    if (f == "nilpotency_type") return p.nilpotency_type;
    return std::nullopt;
}

std::vector<FieldMismatch> compare_expected(const std::vector<std::pair<std::string, FieldValue>>& expected,
                                            const InvariantProfile& p) {
    std::vector<FieldMismatch> out;
    for (const auto& [k, v] : expected) {
        auto got = profile_field(p, k);
        if (!got) {
            out.push_back({k, format_value(v), "unknown field"});
        } else if (!(*got == v)) {
            out.push_back({k, format_value(v), format_value(*got)});
        }
    }
    return out;
}

}  // namespace jorn
