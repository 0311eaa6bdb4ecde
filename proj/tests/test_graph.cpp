#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jorn/graph.hpp"

#include <algorithm>
#include <set>

using namespace jorn;

namespace {

std::string data_path(const std::string& f) { return std::string(JORN_DEFAULT_DATA_DIR) + "/" + f; }

const Catalog& cat() {
    static Catalog c = Catalog::load(data_path("catalog.json"));
    return c;
}

const CurveFile& curves() {
    static CurveFile c = CurveFile::load(data_path("curves.json"));
    return c;
}

const GraphBuild& full() {
    static GraphBuild b = build_graph(cat(), curves());
    return b;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("union and member nodes") {
    const auto& g = full().graph;
    for (const char* u : {"N_15#", "N_23#", "N_24#", "N_26#", "N_27#"}) {
        REQUIRE(g.has(u));
        CHECK(g.node(u).kind == "union");
    }
    CHECK(g.has("J_27[eps=2,phi=3]"));
    CHECK(g.node("J_41").params.at("lambda").is_zero());
    CHECK_FALSE(g.has("J_24^1"));
    CHECK_FALSE(g.has("F_62"));
}

TEST_CASE("five roots cover everything") {
    const auto& g = full().graph;
    auto roots = g.roots();
    CHECK(as_set(roots) == std::set<std::string>{"eps_1", "J_21", "J_22", "J_40", "N_27#"});
    CHECK(g.unreached(roots).empty());
    for (const auto& r : roots) {
        std::vector<std::string> rest;
        std::copy_if(roots.begin(), roots.end(), std::back_inserter(rest), [&](const auto& x) { return x != r; });
        CHECK_MESSAGE(!g.unreached(rest).empty(), r);
    }
}

TEST_CASE("zero algebra is reached from every node") {
    const auto& g = full().graph;
    for (const auto& n : g.nodes()) CHECK_MESSAGE(g.reaches(n.id, "eps_25"), n.id);
}

TEST_CASE("closure is idempotent") {
    auto c1 = full().graph.closure_graph();
    auto c2 = c1.closure_graph();
    CHECK(c1 == c2);
    CHECK(c1.closure() == full().graph.closure());
}

TEST_CASE("scaling-only graph") {
    GraphOptions opt;
    opt.curves = opt.external = opt.direct_sums = opt.membership = opt.isomorphisms = false;
    auto b = build_graph(cat(), curves(), opt);
    for (const auto& n : b.graph.nodes()) {
        std::set<std::string> want{n.id, "eps_25"};
        CHECK(as_set(b.graph.reachable(n.id)) == want);
    }
}

TEST_CASE("edge provenance") {
    const auto& g = full().graph;
    std::set<std::string> from21;
    int external = 0;
    for (const auto& e : g.edges()) {
        if (e.from == "J_21" && e.provenance == "curve") from21.insert(e.to);
        if (e.provenance == "external") ++external;
        if (e.provenance == "external") CHECK(e.from == "eps_1");
    }
    CHECK(from21 == std::set<std::string>{"J_18", "J_20", "J_9"});
    CHECK(external == 23);
    auto has_edge = [&](const std::string& a, const std::string& b, const std::string& p) {
        return std::any_of(g.edges().begin(), g.edges().end(),
                           [&](const Edge& e) { return e.from == a && e.to == b && e.provenance == p; });
    };
    CHECK(has_edge("J_4", "J_1", "direct_sum"));
    CHECK(has_edge("J_29", "J_24^0", "isomorphism"));
    CHECK(has_edge("J_24^0", "J_29", "isomorphism"));
    CHECK(has_edge("N_23#", "J_41", "curve"));
    CHECK(has_edge("J_15[alpha=1]", "eps_5", "curve"));
    CHECK(has_edge("N_27#", "J_27[eps=2,phi=3]", "membership"));
}

TEST_CASE("dot output") {
    CHECK(DominanceGraph().to_dot() == "digraph dominance {\n}\n");
    std::string dot = full().graph.to_dot();
    CHECK(dot.find("\"J_21\" -> \"J_18\" [style=solid, label=\"J21-J18\"];") != std::string::npos);
    CHECK(dot.find("\"eps_1\" -> \"eps_2\" [style=dashed") != std::string::npos);
    CHECK(dot.find("\"J_4\" -> \"J_3\" [style=dotted") != std::string::npos);
    CHECK(dot.find("\"N_27#\" [shape=box];") != std::string::npos);
}

TEST_CASE("json round trip and determinism") {
    std::string j = full().graph.to_json_text();
    CHECK(DominanceGraph::from_json_text(j) == full().graph);
    CHECK(DominanceGraph::from_json_text(j).to_json_text() == j);
    CHECK(build_graph(cat(), curves()).graph.to_json_text() == j);
    CHECK(DominanceGraph::from_json_text(DominanceGraph().to_json_text()) == DominanceGraph());
    CHECK_THROWS_AS(DominanceGraph::from_json_text("[]"), GraphError);
}

TEST_CASE("node dimensions") {
    NodeData data(cat(), full().graph);
    CHECK(data.dim("J_21") == 22);
    CHECK(data.dim("J_22") == 21);
    CHECK(data.dim("J_40") == 21);
    CHECK(data.dim("N_27#") == 21);
    CHECK(data.profile("N_27#").orbit_dim == 19);
    CHECK(data.dim_constant("N_27#"));
}

TEST_CASE("rigidity evidence") {
    const auto& g = full().graph;
    NodeData data(cat(), g);
    auto roots = g.roots();
    auto v21 = rigidity_check(cat(), g, data, "J_21", roots);
    CHECK(v21.rigid);
    for (const auto& e : v21.evidence)
        if (e.dominator == "N_27#") {
            CHECK(e.kind == "dimension");
            CHECK(e.detail == "dim 22 > 21");
        }
    auto v40 = rigidity_check(cat(), g, data, "J_40", roots);
    CHECK(v40.rigid);
    for (const auto& e : v40.evidence)
        if (e.dominator == "N_27#") {
            CHECK(e.kind == "profile");
            CHECK(e.detail.find("equal dimension 21") != std::string::npos);
            CHECK(e.detail.find("dim Ann 1 vs 2") != std::string::npos);
        }
    auto n27 = rigidity_check(cat(), g, data, "N_27#", roots);
    CHECK(n27.component);
    CHECK_FALSE(n27.rigid);
    auto z = rigidity_check(cat(), g, data, "eps_25", roots);
    CHECK_FALSE(z.component);
    CHECK_FALSE(z.dominated_by.empty());
}

TEST_CASE("component report") {
    auto rep = component_report(cat(), full().graph);
    CHECK(rep.confirmed());
    CHECK(rep.roots.size() == 5);
    CHECK(rep.external_edges.size() == 23);
    CHECK(rep.dim_warnings.empty());
    CHECK(rep.to_json_text() == component_report(cat(), full().graph).to_json_text());
}

TEST_CASE("no blocked pair in the fixed-source closure") {
    CHECK(closure_consistency(cat(), full()).empty());
    CHECK(full().fixed_pairs.size() > 40);
}

TEST_CASE("a broken curve aborts the build with its id") {
    CurveFile cf = curves();
    cf.curves[3].special_points[0].target.label = "J_18";
    try {
        build_graph(cat(), cf);
        FAIL("no error");
    } catch (const GraphError& e) {
        CHECK(std::string(e.what()).find(cf.curves[3].id) != std::string::npos);
    }
}
