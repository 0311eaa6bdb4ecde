#include "jorn/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>

namespace jorn {

using ojson = nlohmann::ordered_json;

const std::vector<std::string>& stage_names() {
    static const std::vector<std::string> names{"catalog",     "invariants", "witnesses", "obstructions",
                                                "curves",      "graph",      "rigidity"};
    return names;
}

std::string default_data_dir() {
    if (const char* env = std::getenv("JORN_DATA_DIR"); env && *env) return env;
    return JORN_DEFAULT_DATA_DIR;
}

std::pair<std::string, ParamMap> parse_sample_override(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0) throw std::invalid_argument("sample must look like LABEL:k=v,...");
    std::string label = text.substr(0, colon);
    ParamMap m;
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        std::string kv = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("bad binding '" + kv + "'");
        m.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return {label, m};
}

namespace {

struct Ctx {
    const Catalog& cat;
    const CurveFile& cf;
    RunReport& rep;
    std::map<std::string, InvariantProfile> profiles;

    const InvariantProfile& profile(const AlgebraId& id) {
        auto key = id.str();
        auto it = profiles.find(key);
        if (it == profiles.end()) it = profiles.emplace(key, invariant_profile(cat.instantiate(id))).first;
        return it->second;
    }

    void fail(StageResult& s, const std::string& line) {
        ++s.failures;
        s.lines.push_back(line);
    }
    void mismatch(StageResult& s, Discrepancy d) {
        std::string line = d.subject + " " + d.field + ": expected " + d.expected + ", computed " + d.computed;
        if (!d.note.empty()) line += " (" + d.note + ")";
        fail(s, line);
        rep.discrepancies.push_back(std::move(d));
    }
};

bool identifies_with_table2(const CatalogEntry& e) {
    for (const auto& w : e.witnesses)
        if (w.target.label.rfind("eps_", 0) == 0) return true;
    return false;
}

void stage_catalog(Ctx& c, StageResult& s) {
    for (const auto& e : c.cat.entries())
        for (const auto& id : c.cat.sampled_ids(e)) {
            auto t = c.cat.instantiate(id);
            ++s.checks;
            if (!is_commutative(t)) c.mismatch(s, {s.name, id.str(), "commutative", "true", "false", ""});
            if (!is_jordan(t)) c.mismatch(s, {s.name, id.str(), "jordan", "true", "false", ""});
            if (e.dim != 5) continue;
            bool want_assoc = e.label.rfind("eps_", 0) == 0 || identifies_with_table2(e);
            if (is_associative(t) != want_assoc)
                c.mismatch(s, {s.name, id.str(), "associative", want_assoc ? "true" : "false",
                               want_assoc ? "false" : "true", ""});
        }
}

void stage_invariants(Ctx& c, StageResult& s) {
    for (const auto& e : c.cat.entries())
        for (const auto& id : c.cat.sampled_ids(e)) {
            auto expected = c.cat.expected(id);
            if (expected.empty()) continue;
            const InvariantProfile& p = c.profile(id);
            s.checks += static_cast<int>(expected.size());
            for (const auto& m : compare_expected(expected, p)) {
                std::string note = m.field == "h2_dim" ? "cohomology definitional variance" : "";
                c.mismatch(s, {s.name, id.str(), m.field, m.expected, m.computed, note});
            }
        }
}

void stage_witnesses(Ctx& c, StageResult& s) {
    for (const auto& e : c.cat.entries())
        for (const auto& w : e.witnesses)
            for (const auto& r : c.cat.verify_witness(e, w)) {
                ++s.checks;
                if (!r.ok) c.mismatch(s, {s.name, r.id, "isomorphism", r.target, r.detail, ""});
            }
}

void stage_obstructions(Ctx& c, StageResult& s) {
    std::vector<AlgebraId> ids;
    for (const auto& e : c.cat.entries())
        if (e.dim == 5 && e.graph_kind() != "none")
            for (const auto& id : c.cat.sampled_ids(e)) ids.push_back(id);
    int blocked = 0;
    for (const auto& a : ids)
        for (const auto& b : ids) {
            if (a.label == b.label) continue;
            if (check_obstructions(a.str(), c.profile(a), b.str(), c.profile(b)).blocked) ++blocked;
            ++s.checks;
        }
    s.lines.push_back(std::to_string(blocked) + " of " + std::to_string(s.checks) + " ordered pairs blocked");
    for (const auto& cv : c.cf.curves) {
        if (!cv.fixed_source()) continue;
        for (const auto& fb : expand_free(cv.free_params)) {
            Bindings ctx = to_bindings(fb);
            AlgebraId src{cv.source.label, bind_params(cv.source.params, ctx)};
            for (const auto& p : cv.special_points) {
                AlgebraId tgt{p.target.label, bind_params(p.target.params, ctx)};
                ++s.checks;
                auto r = check_obstructions(src.str(), c.profile(src), tgt.str(), c.profile(tgt));
                if (r.blocked) {
                    std::string f;
                    for (const auto& x : r.failed()) f += (f.empty() ? "" : ",") + x;
                    c.mismatch(s, {s.name, cv.id + " " + src.str() + "->" + tgt.str(), "obstruction", "none", f, ""});
                }
            }
        }
    }
}

void stage_curves(Ctx& c, StageResult& s) {
    for (const auto& cv : c.cf.curves) {
        ++s.checks;
        CurveResult r = verify_curve(c.cat, cv);
        if (!r.ok) c.mismatch(s, {s.name, cv.id, "curve", "verified", describe(r), ""});
    }
    for (const auto& d : c.cf.direct_sum_edges) {
        ++s.checks;
        auto r = derive_direct_sum_edge(c.cat, c.cf, d);
        if (!r.ok) c.mismatch(s, {s.name, d.id, "direct_sum", "verified", r.detail, ""});
    }
}

void stage_graph(Ctx& c, StageResult& s, GraphBuild& b) {
    b = build_graph(c.cat, c.cf);
    s.lines.push_back(std::to_string(b.graph.nodes().size()) + " nodes, " + std::to_string(b.graph.edges().size()) +
                      " edges");
    ++s.checks;
    auto issues = closure_consistency(c.cat, b);
    for (const auto& i : issues) {
        std::string f;
        for (const auto& x : i.failed) f += (f.empty() ? "" : ",") + x;
        c.mismatch(s, {s.name, i.from + "->" + i.to, "closure_obstruction", "none", f, ""});
    }
    ++s.checks;
    auto unreached = b.graph.unreached(b.graph.roots());
    for (const auto& u : unreached) c.mismatch(s, {s.name, u, "reachable", "true", "false", ""});
}

void stage_rigidity(Ctx& c, StageResult& s, const GraphBuild& b) {
    ComponentReport cr = component_report(c.cat, b.graph);
    for (const auto& v : cr.verdicts) {
        ++s.checks;
        std::string line = v.root + " dim " + std::to_string(v.dim) + (v.rigid ? " rigid" : v.component ? " component" : " NOT a component");
        s.lines.push_back(line);
        for (const auto& e : v.evidence)
            s.lines.push_back("  " + e.dominator + " does not dominate " + v.root + ": " +
                              (e.found ? e.kind + ", " + e.detail : "no evidence"));
        if (!v.component) {
            std::string why = v.dominated_by.empty() ? "missing evidence" : "dominated by " + v.dominated_by.front();
            c.mismatch(s, {s.name, v.root, "component", "true", why, ""});
        }
    }
    for (const auto& u : cr.unreached) c.mismatch(s, {s.name, u, "covered", "true", "false", ""});
    for (const auto& r : cr.minimality_failures) c.mismatch(s, {s.name, r, "root_needed", "true", "false", ""});
    for (const auto& w : cr.dim_warnings) c.mismatch(s, {s.name, w, "dim_constant", "true", "false", ""});
    s.lines.push_back(std::to_string(cr.external_edges.size()) + " cited edges");
    if (cr.confirmed()) {
        std::string roots;
        for (const auto& r : cr.roots) roots += (roots.empty() ? "" : ", ") + r;
        c.rep.summary = std::to_string(cr.roots.size()) + " components confirmed: " + roots;
    } else {
        c.rep.summary = "components not confirmed";
    }
}

}  // namespace

RunReport run_all(const Catalog& cat, const CurveFile& cf, const std::vector<std::string>& stages) {
    for (const auto& st : stages)
        if (std::find(stage_names().begin(), stage_names().end(), st) == stage_names().end())
            throw std::invalid_argument("unknown stage " + st);
    RunReport rep;
    Ctx c{cat, cf, rep, {}};
    auto wanted = [&](const std::string& n) {
        return stages.empty() || std::find(stages.begin(), stages.end(), n) != stages.end();
    };
    GraphBuild build;
    bool built = false;
    for (const auto& name : stage_names()) {
        if (!wanted(name)) continue;
        StageResult s;
        s.name = name;
        try {
            if (name == "catalog") stage_catalog(c, s);
            if (name == "invariants") stage_invariants(c, s);
            if (name == "witnesses") stage_witnesses(c, s);
            if (name == "obstructions") stage_obstructions(c, s);
            if (name == "curves") stage_curves(c, s);
            if (name == "graph" || (name == "rigidity" && !built)) {
                stage_graph(c, s, build);
                built = true;
            }
            if (name == "rigidity") stage_rigidity(c, s, build);
        } catch (const std::exception& ex) {
            c.mismatch(s, {name, "stage", "error", "completed", ex.what(), ""});
        }
        rep.stages.push_back(std::move(s));
    }
    rep.exit_code = rep.discrepancies.empty() ? 0 : 1;
    if (rep.summary.empty()) rep.summary = rep.exit_code == 0 ? "all checks passed" : "verification mismatches";
    return rep;
}

RunReport run_all(const RunConfig& cfg) {
    std::string dir = cfg.data_dir.empty() ? default_data_dir() : cfg.data_dir;
    try {
        Catalog cat = Catalog::load(dir + "/catalog.json");
        for (const auto& [label, s] : cfg.samples) cat.set_samples(label, s);
        CurveFile cf = CurveFile::load(dir + "/curves.json");
        return run_all(cat, cf, cfg.stages);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& ex) {
        RunReport rep;
        rep.exit_code = 2;
        rep.summary = std::string("input error: ") + ex.what();
        rep.discrepancies.push_back({"load", dir, "input", "readable", ex.what(), ""});
        return rep;
    }
}

std::string RunReport::to_text() const {
    std::string out;
    for (const auto& s : stages) {
        out += "[" + s.name + "] " + std::to_string(s.checks) + " checks, " + std::to_string(s.failures) + " failures\n";
        for (const auto& l : s.lines) out += "  " + l + "\n";
    }
    if (!discrepancies.empty()) {
        out += "discrepancies (" + std::to_string(discrepancies.size()) + "):\n";
        for (const auto& d : discrepancies) {
            out += "  " + d.stage + ": " + d.subject + " " + d.field + " expected " + d.expected + ", computed " + d.computed;
            if (!d.note.empty()) out += " [" + d.note + "]";
            out += "\n";
        }
    }
    return out + summary + "\n";
}

std::string RunReport::to_json_text() const {
    ojson j;
    j["exit_code"] = exit_code;
    j["summary"] = summary;
    j["stages"] = ojson::array();
    for (const auto& s : stages) {
        ojson o;
        o["name"] = s.name;
        o["checks"] = s.checks;
        o["failures"] = s.failures;
        o["lines"] = s.lines;
        j["stages"].push_back(o);
    }
    j["discrepancies"] = ojson::array();
    for (const auto& d : discrepancies) {
        ojson o;
        o["stage"] = d.stage;
        o["subject"] = d.subject;
        o["field"] = d.field;
        o["expected"] = d.expected;
        o["computed"] = d.computed;
        if (!d.note.empty()) o["note"] = d.note;
        j["discrepancies"].push_back(o);
    }
    return j.dump(2) + "\n";
}

}  // namespace jorn
