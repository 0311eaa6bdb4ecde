#pragma once

#include "jorn/catalog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jorn {

struct SpecialPoint {
    std::string t0;
    AlgebraRef target;
    std::vector<std::vector<std::string>> witness;  // optional limit basis change
};

struct CurveSpec {
    std::string id;
    AlgebraRef source;
    ParamMap param_path;  // parameter -> expression in t
    std::vector<std::vector<std::string>> matrix;
    std::vector<std::pair<std::string, std::vector<std::string>>> free_params;
    std::vector<SpecialPoint> special_points;
    std::string expected_det;
    std::string note;

    bool fixed_source() const { return param_path.empty(); }
};

struct ExternalEdgeSpec {
    std::string id, from, to, citation;
};

struct DirectSumSpec {
    std::string id, left, right, from, to;
};

struct CurveFile {
    std::string format = "jorn-curves/1";
    std::vector<CurveSpec> curves;
    std::vector<ExternalEdgeSpec> external_edges;
    std::vector<DirectSumSpec> direct_sum_edges;

    static CurveFile from_json_text(const std::string& text);
    static CurveFile load(const std::string& path);
    std::string to_json_text() const;
    const CurveSpec* curve(const std::string& id) const;
    const ExternalEdgeSpec* external(const std::string& id) const;
};

struct PointResult {
    std::string t0;
    std::string target;
    bool ok = false;
    std::string detail;
};

struct CurveSample {
    ScalarBindings free;
    std::string source;  // AlgebraId text; path parameters shown as expressions
    std::string det;
    bool det_ok = false;
    bool det_matches = true;  // against expected_det when given
    bool generic_ok = false;  // det nonzero at sampled t
    std::vector<PointResult> points;
    std::string error;
    bool ok = false;
};

struct CurveResult {
    std::string id;
    bool fixed_source = true;
    std::vector<CurveSample> samples;
    bool ok = false;
};

// Structure constants of a catalog entry with parameters bound to
// rational functions of t. Excluded values and constraints must not hold
// identically.
Tensor<RatFunc> instantiate_along(const Catalog& cat, const std::string& label, const Bindings& params);

CurveResult verify_curve(const Catalog& cat, const CurveSpec& c);

// t * identity applied to the algebra; the limit must be the zero algebra.
CurveResult scaling_edge(const Catalog& cat, const AlgebraId& id, const std::string& zero_label = "eps_25");

struct Condition {
    std::string name;  // aut_strict, ann, powers, center, nilindex, associativity
    bool ok = true;
    std::string detail;
};

struct ObstructionReport {
    std::string from, to;
    std::vector<Condition> conditions;
    bool blocked = false;

    std::vector<std::string> failed() const;
    bool fails(const std::string& name) const;
};

// Necessary conditions for `a` to degenerate to `b`.
ObstructionReport check_obstructions(const std::string& a_name, const InvariantProfile& a,
                                     const std::string& b_name, const InvariantProfile& b);
ObstructionReport check_obstructions(const Catalog& cat, const AlgebraId& a, const AlgebraId& b);

struct DirectSumResult {
    std::string id;
    std::string from, to;
    bool ok = false;
    bool external = false;  // rests on a cited edge
    std::string detail;
};

// Lifts an edge on one summand to the direct sum with an identity edge on
// the other summand. `left` names a curve or external edge, `right` an
// algebra carried along unchanged.
DirectSumResult derive_direct_sum_edge(const Catalog& cat, const CurveFile& cf, const DirectSumSpec& d);

// Builds the block-diagonal curve of two fixed-source curves.
CurveSpec direct_sum_curve(const Catalog& cat, const CurveSpec& a, const CurveSpec& b, const std::string& sum_from,
                           const std::string& sum_to);

std::string describe(const CurveResult& r);

}  // namespace jorn
