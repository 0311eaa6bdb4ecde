#include "jorn/runner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

using namespace jorn;

namespace {

struct Options {
    std::string data_dir;
    std::vector<std::string> samples;
};

Catalog load_catalog(const Options& o) {
    std::string dir = o.data_dir.empty() ? default_data_dir() : o.data_dir;
    Catalog cat = Catalog::load(dir + "/catalog.json");
    for (const auto& s : o.samples) {
        auto [label, m] = parse_sample_override(s);
        cat.set_samples(label, {m});
    }
    return cat;
}

CurveFile load_curves(const Options& o) {
    std::string dir = o.data_dir.empty() ? default_data_dir() : o.data_dir;
    return CurveFile::load(dir + "/curves.json");
}

std::vector<std::pair<std::string, std::vector<ParamMap>>> grouped_samples(const Options& o) {
    std::vector<std::pair<std::string, std::vector<ParamMap>>> out;
    for (const auto& s : o.samples) {
        auto [label, m] = parse_sample_override(s);
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == label; });
        if (it == out.end()) out.push_back({label, {m}});
        else it->second.push_back(m);
    }
    return out;
}

int catalog_list(const Options& o) {
    Catalog cat = load_catalog(o);
    for (const auto& e : cat.entries()) {
        std::string params;
        for (const auto& p : e.param_names()) params += (params.empty() ? "" : ",") + p;
        std::cout << e.label << "\tdim " << e.dim << "\t" << e.graph_kind();
        if (!params.empty()) std::cout << "\tparams " << params;
        std::cout << "\n";
    }
    return 0;
}

int catalog_show(const Options& o, const std::string& label) {
    Catalog cat = load_catalog(o);
    const CatalogEntry& e = cat.entry(label);
    std::cout << e.label << " (dim " << e.dim << ", " << e.graph_kind() << ")\n";
    std::cout << "table: " << e.table << "\n";
    for (const auto& p : e.params) {
        std::cout << "param " << p.name;
        if (!p.excluded.empty()) {
            std::cout << " not in {";
            for (std::size_t i = 0; i < p.excluded.size(); ++i) std::cout << (i ? "," : "") << p.excluded[i];
            std::cout << "}";
        }
        std::cout << "\n";
    }
    for (const auto& c : e.constraints) {
        std::cout << "constraint " << c.expr << " not in {";
        for (std::size_t i = 0; i < c.excluded.size(); ++i) std::cout << (i ? "," : "") << c.excluded[i];
        std::cout << "}\n";
    }
    for (const auto& id : cat.sampled_ids(e)) {
        std::cout << "sample " << id.str() << ":";
        for (const auto& [k, v] : cat.expected(id)) std::cout << " " << k << "=" << format_value(v);
        std::cout << "\n";
    }
    for (const auto& w : e.witnesses) std::cout << "witness " << w.id << " -> " << w.target.label << "\n";
    if (!e.note.empty()) std::cout << "note: " << e.note << "\n";
    return 0;
}

int invariants(const Options& o, const std::string& label, const std::vector<std::string>& params) {
    Catalog cat = load_catalog(o);
    ParamMap m;
    for (const auto& kv : params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--param expects k=v, got " + kv);
        m.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    AlgebraId id{label, bind_params(m)};
    InvariantProfile p = invariant_profile(cat.instantiate(id));
    std::cout << id.str() << ": " << format_profile(p) << "\n";
    auto mism = compare_expected(cat.expected(id), p);
    for (const auto& x : mism)
        std::cout << "MISMATCH " << x.field << ": expected " << x.expected << ", computed " << x.computed << "\n";
    return mism.empty() ? 0 : 1;
}

int verify(const Options& o, const std::string& what, std::vector<std::string> stages, bool json) {
    if (what == "identity") stages = {"catalog"};
    else if (what != "all") stages = {what};
    RunConfig cfg{o.data_dir, stages, grouped_samples(o)};
    RunReport r = run_all(cfg);
    std::cout << (json ? r.to_json_text() : r.to_text());
    return r.exit_code;
}

int report(const Options& o, const std::string& what, const std::string& format) {
    Catalog cat = load_catalog(o);
    CurveFile cf = load_curves(o);
    GraphBuild b = build_graph(cat, cf);
    if (what == "graph") {
        std::cout << (format == "dot" ? b.graph.to_dot() : b.graph.to_json_text());
        return 0;
    }
    ComponentReport cr = component_report(cat, b.graph);
    std::cout << cr.to_json_text();
    return cr.confirmed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of nilpotent Jordan algebra degenerations"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--data", o.data_dir, "data directory (default: $JORN_DATA_DIR or the built-in path)");
    app.add_option("--samples", o.samples, "family sample override LABEL:k=v,... (repeatable)");

    auto* cat = app.add_subcommand("catalog", "inspect the catalog");
    cat->require_subcommand(1);
    cat->add_subcommand("list", "list entries");
    std::string show_label;
    auto* show = cat->add_subcommand("show", "show one entry");
    show->add_option("label", show_label)->required();

    std::string inv_label;
    std::vector<std::string> inv_params;
    auto* inv = app.add_subcommand("invariants", "compute the invariant profile");
    inv->add_option("label", inv_label)->required();
    inv->add_option("--param", inv_params, "parameter binding k=v");

    std::string what = "all";
    std::vector<std::string> stages;
    bool json = false;
    auto* ver = app.add_subcommand("verify", "run verification stages");
    ver->add_option("what", what)
        ->check(CLI::IsMember({"identity", "invariants", "witnesses", "obstructions", "curves", "graph", "rigidity", "all"}));
    ver->add_option("--stage", stages, "restrict 'all' to these stages")->check(CLI::IsMember(stage_names()));
    ver->add_flag("--json", json, "JSON report");

    std::string rep_what = "graph";
    std::string format = "dot";
    auto* rep = app.add_subcommand("report", "emit reports");
    rep->add_option("what", rep_what)->check(CLI::IsMember({"graph", "components"}));
    rep->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cat->parsed()) return cat->got_subcommand("list") ? catalog_list(o) : catalog_show(o, show_label);
        if (inv->parsed()) return invariants(o, inv_label, inv_params);
        if (ver->parsed()) return verify(o, what, stages, json);
        if (rep->parsed()) return report(o, rep_what, format);
    } catch (const ConstraintViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
