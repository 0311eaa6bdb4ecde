#include "jorn/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace jorn {

using ojson = nlohmann::ordered_json;

int DominanceGraph::index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw GraphError("unknown node " + id);
    return it->second;
}

void DominanceGraph::add_node(Node n) {
    if (has(n.id)) return;
    index_.emplace(n.id, static_cast<int>(nodes_.size()));
    nodes_.push_back(std::move(n));
}

void DominanceGraph::add_edge(Edge e) {
    if (!has(e.from)) throw GraphError("edge endpoint " + e.from + " is not a node");
    if (!has(e.to)) throw GraphError("edge endpoint " + e.to + " is not a node");
    if (e.from == e.to) return;
    for (const auto& x : edges_)
        if (x.from == e.from && x.to == e.to && x.provenance == e.provenance) return;
    edges_.push_back(std::move(e));
}

std::vector<std::vector<bool>> DominanceGraph::closure() const {
    std::size_t n = nodes_.size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges_) adj[static_cast<std::size_t>(index(e.from))].push_back(index(e.to));
    std::vector<std::vector<bool>> out(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::deque<int> q{static_cast<int>(s)};
        out[s][s] = true;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (!out[s][static_cast<std::size_t>(v)]) {
                    out[s][static_cast<std::size_t>(v)] = true;
                    q.push_back(v);
                }
        }
    }
    return out;
}

DominanceGraph DominanceGraph::closure_graph() const {
    DominanceGraph g;
    for (const auto& n : nodes_) g.add_node(n);
    auto c = closure();
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        for (std::size_t j = 0; j < nodes_.size(); ++j)
            if (i != j && c[i][j]) g.add_edge({nodes_[i].id, nodes_[j].id, "closure", ""});
    return g;
}

std::vector<std::string> DominanceGraph::reachable(const std::string& id) const {
    auto c = closure();
    std::vector<std::string> out;
    auto i = static_cast<std::size_t>(index(id));
    for (std::size_t j = 0; j < nodes_.size(); ++j)
        if (c[i][j]) out.push_back(nodes_[j].id);
    return out;
}

bool DominanceGraph::reaches(const std::string& a, const std::string& b) const {
    return closure()[static_cast<std::size_t>(index(a))][static_cast<std::size_t>(index(b))];
}

std::vector<std::string> DominanceGraph::roots() const {
    std::vector<bool> hit(nodes_.size(), false);
    for (const auto& e : edges_) hit[static_cast<std::size_t>(index(e.to))] = true;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!hit[i]) out.push_back(nodes_[i].id);
    return out;
}

std::vector<std::string> DominanceGraph::unreached(const std::vector<std::string>& from) const {
    auto c = closure();
    std::vector<std::string> out;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        bool hit = false;
        for (const auto& f : from) hit = hit || c[static_cast<std::size_t>(index(f))][j];
        if (!hit) out.push_back(nodes_[j].id);
    }
    return out;
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

std::string edge_style(const std::string& provenance) {
    if (provenance == "curve") return "style=solid";
    if (provenance == "external") return "style=dashed, color=red";
    if (provenance == "membership") return "style=dotted, color=gray, arrowhead=empty";
    if (provenance == "isomorphism") return "style=bold, color=blue";
    return "style=dotted";
}

}  // namespace

std::string DominanceGraph::to_dot() const {
    std::string out = "digraph dominance {\n";
    for (const auto& n : nodes_) {
        out += "  " + quote(n.id);
        if (n.kind == "union") out += " [shape=box]";
        if (n.kind == "member") out += " [shape=ellipse, fontsize=10]";
        out += ";\n";
    }
    for (const auto& e : edges_) {
        out += "  " + quote(e.from) + " -> " + quote(e.to) + " [" + edge_style(e.provenance);
        if (e.provenance == "curve" || e.provenance == "direct_sum") out += ", label=" + quote(e.ref);
        out += "];\n";
    }
    return out + "}\n";
}

std::string DominanceGraph::to_json_text() const {
    ojson j;
    j["nodes"] = ojson::array();
    for (const auto& n : nodes_) {
        ojson o;
        o["id"] = n.id;
        o["kind"] = n.kind;
        o["label"] = n.label;
        o["params"] = ojson::object();
        for (const auto& [k, v] : n.params) o["params"][k] = v.str();
        j["nodes"].push_back(o);
    }
    j["edges"] = ojson::array();
    for (const auto& e : edges_) {
        ojson o;
        o["from"] = e.from;
        o["to"] = e.to;
        o["provenance"] = e.provenance;
        o["ref"] = e.ref;
        j["edges"].push_back(o);
    }
    return j.dump(2) + "\n";
}

DominanceGraph DominanceGraph::from_json_text(const std::string& text) {
    DominanceGraph g;
    try {
        ojson j = ojson::parse(text);
        for (const auto& o : j.at("nodes")) {
            Node n{o.at("id").get<std::string>(), o.at("kind").get<std::string>(), o.at("label").get<std::string>(), {}};
            for (const auto& [k, v] : o.at("params").items()) n.params[k] = parse_constant(v.get<std::string>());
            g.add_node(n);
        }
        for (const auto& o : j.at("edges"))
            g.add_edge({o.at("from").get<std::string>(), o.at("to").get<std::string>(),
                        o.at("provenance").get<std::string>(), o.at("ref").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(std::string("bad graph json: ") + e.what());
    }
    return g;
}

std::string union_node_id(const std::string& label) {
    return "N" + label.substr(1) + "#";
}

std::string member_node_id(const AlgebraId& id) {
    return id.str();
}

namespace {

bool depends_on(const ParamMap& m, const std::set<std::string>& names) {
    for (const auto& [k, v] : m)
        for (const auto& p : Expr::parse(v).params())
            if (names.count(p)) return true;
    return false;
}

struct Builder {
    const Catalog& cat;
    GraphBuild& out;
    bool membership = true;

    std::string concrete(const AlgebraId& id) {
        const CatalogEntry& e = cat.entry(id.label);
        std::string kind = e.graph_kind();
        if (kind == "orbit") return e.label;
        if (kind == "member") {
            if (bind_params(std::get<ParamMap>(e.graph)) != id.params)
                throw GraphError(id.str() + " is not the graph member of " + e.label);
            return e.label;
        }
        if (kind == "family") {
            std::string nid = member_node_id(id);
            if (!out.graph.has(nid)) {
                cat.check_params(e, id.params);
                out.graph.add_node({nid, "member", e.label, id.params});
                if (membership) out.graph.add_edge({union_node_id(e.label), nid, "membership", ""});
            }
            return nid;
        }
        throw GraphError(e.label + " is not a graph node");
    }

    std::string generic(const std::string& label) {
        const CatalogEntry& e = cat.entry(label);
        if (e.graph_kind() != "family") throw GraphError(label + " is not a family");
        return union_node_id(label);
    }
};

}  // namespace

GraphBuild build_graph(const Catalog& cat, const CurveFile& cf, const GraphOptions& opt) {
    GraphBuild out;
    DominanceGraph& g = out.graph;
    Builder b{cat, out, opt.membership};

    for (const auto& e : cat.entries()) {
        std::string kind = e.graph_kind();
        if (kind == "orbit") g.add_node({e.label, "orbit", e.label, {}});
        if (kind == "member") g.add_node({e.label, "orbit", e.label, bind_params(std::get<ParamMap>(e.graph))});
        if (kind == "family") {
            g.add_node({union_node_id(e.label), "union", e.label, {}});
            for (const auto& id : cat.sampled_ids(e)) g.add_node({member_node_id(id), "member", e.label, id.params});
        }
    }
    if (opt.membership)
        for (const auto& n : std::vector<Node>(g.nodes()))
            if (n.kind == "member") g.add_edge({union_node_id(n.label), n.id, "membership", ""});

    if (opt.curves) {
        for (const auto& c : cf.curves) {
            CurveResult r = verify_curve(cat, c);
            out.curves.push_back(r);
            if (!r.ok) throw GraphError("curve " + c.id + " failed: " + describe(r));
            std::set<std::string> free;
            for (const auto& [k, v] : c.free_params) free.insert(k);
            bool src_generic = !c.fixed_source() || depends_on(c.source.params, free);
            for (const auto& p : c.special_points) {
                bool tgt_generic = depends_on(p.target.params, free);
                std::vector<std::pair<std::string, std::string>> ends;
                for (const auto& fb : expand_free(c.free_params)) {
                    Bindings ctx = to_bindings(fb);
                    AlgebraId src{c.source.label, bind_params(c.source.params, ctx)};
                    AlgebraId tgt{p.target.label, bind_params(p.target.params, ctx)};
                    if (c.fixed_source()) out.fixed_pairs.emplace_back(src, tgt);
                    std::string from = src_generic ? b.generic(src.label) : b.concrete(src);
                    std::string to = tgt_generic ? b.generic(tgt.label) : b.concrete(tgt);
                    g.add_edge({from, to, "curve", c.id});
                }
            }
        }
    }

    if (opt.external)
        for (const auto& e : cf.external_edges)
            if (g.has(e.from) && g.has(e.to)) g.add_edge({e.from, e.to, "external", e.citation});

    if (opt.direct_sums) {
        for (const auto& d : cf.direct_sum_edges) {
            DirectSumResult r = derive_direct_sum_edge(cat, cf, d);
            out.direct_sums.push_back(r);
            if (!r.ok) throw GraphError("direct sum " + d.id + " failed: " + r.detail);
            out.fixed_pairs.emplace_back(AlgebraId{d.from, {}}, AlgebraId{d.to, {}});
            g.add_edge({b.concrete({d.from, {}}), b.concrete({d.to, {}}), "direct_sum", d.id});
        }
    }

    for (const auto& e : cat.entries())
        for (const auto& w : e.witnesses)
            for (const auto& r : cat.verify_witness(e, w)) {
                if (!r.ok) throw GraphError("witness " + r.id + " failed: " + r.detail);
                out.isomorphic.emplace_back(r.source, r.target);
                if (!opt.isomorphisms || !w.free_params.empty()) continue;
                AlgebraId src{e.label, bind_params(w.params)};
                AlgebraId tgt{w.target.label, bind_params(w.target.params)};
                std::string from, to;
                try {
                    from = b.concrete(src);
                    to = b.concrete(tgt);
                } catch (const GraphError&) {
                    continue;
                }
                g.add_edge({from, to, "isomorphism", w.id});
                g.add_edge({to, from, "isomorphism", w.id});
            }

    if (opt.scaling && g.has(opt.zero_label)) {
        for (const auto& n : std::vector<Node>(g.nodes())) {
            if (n.id == opt.zero_label) continue;
            AlgebraId rep{n.label, n.params};
            if (n.kind == "union") rep = cat.sampled_ids(cat.entry(n.label)).front();
            CurveResult r = scaling_edge(cat, rep, opt.zero_label);
            if (!r.ok) throw GraphError("scaling of " + n.id + " failed: " + describe(r));
            if (n.kind != "union") out.fixed_pairs.emplace_back(rep, AlgebraId{opt.zero_label, {}});
            g.add_edge({n.id, opt.zero_label, "scaling", "t*I"});
        }
    }
    return out;
}

NodeData::NodeData(const Catalog& cat, const DominanceGraph& g) {
    for (const auto& n : g.nodes()) {
        Item it;
        if (n.kind == "union") {
            const CatalogEntry& e = cat.entry(n.label);
            auto ids = cat.sampled_ids(e);
            it.rep = ids.front();
            it.is_union = true;
            int np = static_cast<int>(e.params.size());
            it.profile = invariant_profile(cat.instantiate(it.rep));
            it.dim = it.profile.orbit_dim + np;
            for (std::size_t k = 1; k < ids.size(); ++k)
                if (invariant_profile(cat.instantiate(ids[k])).orbit_dim + np != it.dim) it.constant = false;
        } else {
            it.rep = AlgebraId{n.label, n.params};
            it.profile = invariant_profile(cat.instantiate(it.rep));
            it.dim = it.profile.orbit_dim;
        }
        items_.emplace(n.id, std::move(it));
    }
}

const InvariantProfile& NodeData::profile(const std::string& node) const { return items_.at(node).profile; }
int NodeData::dim(const std::string& node) const { return items_.at(node).dim; }
bool NodeData::dim_constant(const std::string& node) const { return items_.at(node).constant; }
const AlgebraId& NodeData::representative(const std::string& node) const { return items_.at(node).rep; }
bool NodeData::is_union(const std::string& node) const { return items_.at(node).is_union; }

namespace {

std::string first_difference(const InvariantProfile& a, const InvariantProfile& b) {
    auto cmp = [](const char* name, int x, int y) {
        return std::string(name) + " " + std::to_string(x) + " vs " + std::to_string(y);
    };
    if (a.ann_dim != b.ann_dim) return cmp("dim Ann", a.ann_dim, b.ann_dim);
    if (a.power_dims != b.power_dims) return "powers " + format_dims(a.power_dims) + " vs " + format_dims(b.power_dims);
    if (a.center_dim != b.center_dim) return cmp("dim Z", a.center_dim, b.center_dim);
    if (a.der_dim != b.der_dim) return cmp("dim Aut", a.der_dim, b.der_dim);
    if (a.jacobi_dim != b.jacobi_dim) return cmp("dim Jac", a.jacobi_dim, b.jacobi_dim);
    if (a.h2_dim != b.h2_dim) return cmp("dim H2", a.h2_dim, b.h2_dim);
    if (a.associative != b.associative) return "associativity differs";
    return "";
}

std::string failed_conditions(const ObstructionReport& r, bool with_aut) {
    std::string out;
    for (const auto& c : r.conditions)
        if (!c.ok && (with_aut || c.name != "aut_strict")) out += (out.empty() ? "" : "; ") + c.name + ": " + c.detail;
    return out;
}

}  // namespace

Evidence non_domination(const Catalog& cat, const NodeData& data, const std::string& s, const std::string& r) {
    (void)cat;
    Evidence ev;
    ev.dominator = s;
    ev.target = r;
    int ds = data.dim(s), dr = data.dim(r);
    const InvariantProfile& ps = data.profile(s);
    const InvariantProfile& pr = data.profile(r);
    std::string dims = std::to_string(dr) + " vs " + std::to_string(ds);
    ObstructionReport rep = check_obstructions(data.representative(s).str(), ps, data.representative(r).str(), pr);
    if (!data.is_union(s)) {
        if (rep.blocked) {
            ev = {s, r, true, "obstruction", failed_conditions(rep, true)};
        } else if (!data.is_union(r) && dr >= ds) {
            ev = {s, r, true, "dimension", "orbit dim " + std::to_string(dr) + " >= " + std::to_string(ds)};
        } else if (data.is_union(r) && dr > ds) {
            ev = {s, r, true, "dimension", "dim " + std::to_string(dr) + " > " + std::to_string(ds)};
        } else if (data.is_union(r) && dr == ds && !(ps == pr)) {
            ev = {s, r, true, "profile", "equal dimension " + std::to_string(dr) + ", " + first_difference(ps, pr)};
        }
        return ev;
    }
    std::string diff = first_difference(ps, pr);
    std::string semi = failed_conditions(rep, false);
    if (dr > ds)
        ev = {s, r, true, "dimension", "dim " + std::to_string(dr) + " > " + std::to_string(ds)};
    else if (dr == ds && !diff.empty())
        ev = {s, r, true, "profile", "equal dimension " + std::to_string(dr) + ", " + diff};
    else if (!semi.empty())
        ev = {s, r, true, "obstruction", semi};
    return ev;
}

RootVerdict rigidity_check(const Catalog& cat, const DominanceGraph& g, const NodeData& data, const std::string& root,
                           const std::vector<std::string>& roots) {
    RootVerdict v;
    v.root = root;
    v.dim = data.dim(root);
    v.reachable = g.reachable(root);
    auto c = g.closure();
    auto ri = static_cast<std::size_t>(g.index(root));
    for (std::size_t i = 0; i < g.nodes().size(); ++i)
        if (i != ri && c[i][ri]) v.dominated_by.push_back(g.nodes()[i].id);
    bool all = true;
    for (const auto& s : roots) {
        if (s == root) continue;
        Evidence e = non_domination(cat, data, s, root);
        all = all && e.found;
        v.evidence.push_back(e);
    }
    v.component = v.dominated_by.empty() && all;
    v.rigid = v.component && !data.is_union(root);
    return v;
}

bool ComponentReport::confirmed() const {
    if (roots.empty() || !unreached.empty() || !minimality_failures.empty()) return false;
    for (const auto& v : verdicts)
        if (!v.component) return false;
    return true;
}

std::string ComponentReport::to_json_text() const {
    ojson j;
    j["roots"] = roots;
    j["components"] = ojson::array();
    for (const auto& v : verdicts) {
        ojson o;
        o["root"] = v.root;
        o["dim"] = v.dim;
        o["component"] = v.component;
        o["rigid"] = v.rigid;
        o["reachable"] = v.reachable;
        o["dominated_by"] = v.dominated_by;
        o["evidence"] = ojson::array();
        for (const auto& e : v.evidence) {
            ojson x;
            x["against"] = e.dominator;
            x["found"] = e.found;
            x["kind"] = e.kind;
            x["detail"] = e.detail;
            o["evidence"].push_back(x);
        }
        j["components"].push_back(o);
    }
    j["unreached"] = unreached;
    j["minimality_failures"] = minimality_failures;
    j["external_edges"] = ojson::array();
    for (const auto& e : external_edges) {
        ojson x;
        x["from"] = e.from;
        x["to"] = e.to;
        x["citation"] = e.ref;
        j["external_edges"].push_back(x);
    }
    j["dim_warnings"] = dim_warnings;
    return j.dump(2) + "\n";
}

ComponentReport component_report(const Catalog& cat, const DominanceGraph& g) {
    ComponentReport rep;
    NodeData data(cat, g);
    rep.roots = g.roots();
    rep.unreached = g.unreached(rep.roots);
    for (const auto& r : rep.roots) {
        std::vector<std::string> rest;
        for (const auto& x : rep.roots)
            if (x != r) rest.push_back(x);
        if (g.unreached(rest).empty()) rep.minimality_failures.push_back(r);
        rep.verdicts.push_back(rigidity_check(cat, g, data, r, rep.roots));
    }
    for (const auto& e : g.edges())
        if (e.provenance == "external") rep.external_edges.push_back(e);
    for (const auto& n : g.nodes())
        if (n.kind == "union" && !data.dim_constant(n.id))
            rep.dim_warnings.push_back(n.id + ": dimension varies across samples");
    return rep;
}

std::vector<ConsistencyIssue> closure_consistency(const Catalog& cat, const GraphBuild& b) {
    DominanceGraph g;
    std::map<std::string, AlgebraId> ids;
    for (const auto& [s, t] : b.fixed_pairs) {
        for (const auto& x : {s, t}) {
            ids.emplace(x.str(), x);
            g.add_node({x.str(), "orbit", x.label, x.params});
        }
        g.add_edge({s.str(), t.str(), "fixed", ""});
    }
    // isomorphism classes
    std::map<std::string, std::string> cls;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) -> std::string {
        auto it = cls.find(x);
        if (it == cls.end() || it->second == x) return x;
        return it->second = find(it->second);
    };
    for (const auto& [a, c] : b.isomorphic) {
        std::string ra = find(a), rc = find(c);
        if (ra != rc) cls[ra] = rc;
    }
    std::map<std::string, InvariantProfile> prof;
    auto profile = [&](const std::string& id) -> const InvariantProfile& {
        auto it = prof.find(id);
        if (it == prof.end()) it = prof.emplace(id, invariant_profile(cat.instantiate(ids.at(id)))).first;
        return it->second;
    };
    std::vector<ConsistencyIssue> out;
    auto c = g.closure();
    const auto& nodes = g.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (i == j || !c[i][j]) continue;
            const std::string& a = nodes[i].id;
            const std::string& d = nodes[j].id;
            if (find(a) == find(d)) continue;
            ObstructionReport r = check_obstructions(a, profile(a), d, profile(d));
            if (r.blocked) out.push_back({a, d, r.failed()});
        }
    return out;
}

}  // namespace jorn
