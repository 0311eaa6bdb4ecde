#pragma once

#include "jorn/deformation.hpp"

#include <map>
#include <string>
#include <vector>

namespace jorn {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Node {
    std::string id;
    std::string kind;  // orbit, member, union
    std::string label;
    ScalarBindings params;  // empty for orbit and union nodes

    friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
    std::string from, to;
    std::string provenance;  // curve, external, direct_sum, scaling, membership, isomorphism
    std::string ref;         // curve / witness id or citation

    friend bool operator==(const Edge&, const Edge&) = default;
};

class DominanceGraph {
public:
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has(const std::string& id) const { return index_.count(id) > 0; }
    int index(const std::string& id) const;
    const Node& node(const std::string& id) const { return nodes_[static_cast<std::size_t>(index(id))]; }

    void add_node(Node n);
    // duplicates (same endpoints and provenance) are dropped; self loops too
    void add_edge(Edge e);

    // reflexive-transitive closure, closure[i][j] = i reaches j
    std::vector<std::vector<bool>> closure() const;
    // graph on the same nodes whose edges are the closure pairs
    DominanceGraph closure_graph() const;
    std::vector<std::string> reachable(const std::string& id) const;
    bool reaches(const std::string& a, const std::string& b) const;
    std::vector<std::string> roots() const;
    // nodes reached by none of `from`
    std::vector<std::string> unreached(const std::vector<std::string>& from) const;

    std::string to_dot() const;
    std::string to_json_text() const;
    static DominanceGraph from_json_text(const std::string& text);

    friend bool operator==(const DominanceGraph& a, const DominanceGraph& b) {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::map<std::string, int> index_;
};

std::string union_node_id(const std::string& label);
std::string member_node_id(const AlgebraId& id);

struct GraphOptions {
    bool curves = true;
    bool external = true;
    bool direct_sums = true;
    bool scaling = true;
    bool membership = true;
    bool isomorphisms = true;
    std::string zero_label = "eps_25";
};

struct GraphBuild {
    DominanceGraph graph;
    std::vector<CurveResult> curves;
    std::vector<DirectSumResult> direct_sums;
    // concrete (source, target) pairs of fixed-source curve, scaling and direct-sum edges
    std::vector<std::pair<AlgebraId, AlgebraId>> fixed_pairs;
    // pairs of catalog ids joined by an isomorphism witness
    std::vector<std::pair<std::string, std::string>> isomorphic;
};

// throws GraphError naming the first edge that fails to verify
GraphBuild build_graph(const Catalog& cat, const CurveFile& cf, const GraphOptions& opt = {});

// Profiles and dimensions attached to graph nodes. Union nodes use their
// first sample as the generic member.
class NodeData {
public:
    NodeData(const Catalog& cat, const DominanceGraph& g);

    const InvariantProfile& profile(const std::string& node) const;
    // orbit dimension, or for a union node orbit_dim(sample) + number of parameters
    int dim(const std::string& node) const;
    bool dim_constant(const std::string& node) const;
    const AlgebraId& representative(const std::string& node) const;
    bool is_union(const std::string& node) const;

private:
    struct Item {
        AlgebraId rep;
        InvariantProfile profile;
        int dim = 0;
        bool constant = true;
        bool is_union = false;
    };
    std::map<std::string, Item> items_;
};

struct Evidence {
    std::string dominator;  // the node shown not to dominate
    std::string target;
    bool found = false;
    std::string kind;  // obstruction, dimension, profile
    std::string detail;
};

// why `s` cannot dominate `r`
Evidence non_domination(const Catalog& cat, const NodeData& data, const std::string& s, const std::string& r);

struct RootVerdict {
    std::string root;
    int dim = 0;
    std::vector<std::string> reachable;
    std::vector<std::string> dominated_by;  // other nodes reaching this one
    std::vector<Evidence> evidence;         // against every other root
    bool component = false;
    bool rigid = false;  // component given by a single orbit
};

RootVerdict rigidity_check(const Catalog& cat, const DominanceGraph& g, const NodeData& data, const std::string& root,
                           const std::vector<std::string>& roots);

struct ComponentReport {
    std::vector<std::string> roots;
    std::vector<RootVerdict> verdicts;
    std::vector<std::string> unreached;
    std::vector<std::string> minimality_failures;  // roots whose removal keeps coverage
    std::vector<Edge> external_edges;
    std::vector<std::string> dim_warnings;

    bool confirmed() const;
    std::string to_json_text() const;
};

ComponentReport component_report(const Catalog& cat, const DominanceGraph& g);

struct ConsistencyIssue {
    std::string from, to;
    std::vector<std::string> failed;
};

// no pair in the closure of the fixed-source edges may be blocked
std::vector<ConsistencyIssue> closure_consistency(const Catalog& cat, const GraphBuild& b);

}  // namespace jorn
