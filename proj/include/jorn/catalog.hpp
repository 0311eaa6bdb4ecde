#pragma once

#include "jorn/expr.hpp"
#include "jorn/invariants.hpp"
#include "jorn/tensor.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace jorn {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstraintViolation : std::domain_error {
    using std::domain_error::domain_error;
};

// name -> ScalarExpr text, in file order
using ParamMap = std::vector<std::pair<std::string, std::string>>;

struct ParamSpec {
    std::string name;
    std::vector<std::string> excluded;
};

struct ProductSpec {
    int i = 0, j = 0, k = 0;  // 1-based, i <= j
    std::string coeff;
};

struct Guard {
    std::string param;
    bool equal = true;
    std::string value;
};

using FieldValue = std::variant<int, std::vector<int>>;

struct ExpectedFragment {
    std::optional<Guard> when;
    std::vector<std::pair<std::string, FieldValue>> values;
};

struct ConstraintSpec {
    std::string expr;
    std::vector<std::string> excluded;
};

struct AlgebraRef {
    std::string label;
    ParamMap params;
};

struct WitnessSpec {
    std::string id;
    std::vector<std::pair<std::string, std::vector<std::string>>> free_params;
    ParamMap params;
    AlgebraRef target;
    std::vector<std::vector<std::string>> matrix;
};

struct CatalogEntry {
    std::string label;
    int dim = 0;
    std::string table;
    std::vector<ParamSpec> params;
    std::vector<ProductSpec> products;
    std::vector<ExpectedFragment> expected;
    // "orbit", "family", "none", or a member binding
    std::variant<std::string, ParamMap> graph;
    std::vector<ConstraintSpec> constraints;
    std::vector<ParamMap> samples;
    std::vector<std::string> decomposition;
    std::vector<WitnessSpec> witnesses;
    std::string note;

    bool is_family() const { return !params.empty(); }
    std::string graph_kind() const;
    std::vector<std::string> param_names() const;
};

// A catalog algebra with bound parameter values.
struct AlgebraId {
    std::string label;
    ScalarBindings params;

    std::string str() const;
    friend bool operator==(const AlgebraId&, const AlgebraId&) = default;
};

struct FieldMismatch {
    std::string field;
    std::string expected;
    std::string computed;
};

struct WitnessResult {
    std::string id;
    std::string source;
    std::string target;
    bool ok = false;
    std::string detail;
};

class Catalog {
public:
    Catalog() = default;

    static Catalog from_json_text(const std::string& text);
    static Catalog load(const std::string& path);
    std::string to_json_text() const;

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    bool has(const std::string& label) const { return index_.count(label) > 0; }
    const CatalogEntry& entry(const std::string& label) const;
    std::size_t size() const { return entries_.size(); }

    Tensor<ExactScalar> instantiate(const AlgebraId& id) const;
    Tensor<ExactScalar> instantiate(const std::string& label, const ScalarBindings& params = {}) const {
        return instantiate(AlgebraId{label, params});
    }
    // throws ConstraintViolation on excluded values
    void check_params(const CatalogEntry& e, const ScalarBindings& params) const;

    // default samples, or one empty binding for a plain entry
    std::vector<ScalarBindings> samples(const CatalogEntry& e) const;
    std::vector<AlgebraId> sampled_ids(const CatalogEntry& e) const;
    // replaces the default samples of a family; each must be legal and Jordan
    void set_samples(const std::string& label, const std::vector<ParamMap>& samples);

    // guard-resolved expectation, later fragments override earlier ones
    std::vector<std::pair<std::string, FieldValue>> expected(const AlgebraId& id) const;

    std::vector<WitnessResult> verify_witness(const CatalogEntry& e, const WitnessSpec& w) const;

private:
    void reindex();

    std::string format_ = "jorn-catalog/1";
    std::vector<CatalogEntry> entries_;
    std::map<std::string, std::size_t> index_;
};

ScalarBindings bind_params(const ParamMap& m, const Bindings& context = {});
std::string format_bindings(const ScalarBindings& b);
std::string format_value(const FieldValue& v);
std::optional<FieldValue> profile_field(const InvariantProfile& p, const std::string& field);
std::vector<FieldMismatch> compare_expected(const std::vector<std::pair<std::string, FieldValue>>& expected,
                                            const InvariantProfile& p);

Matrix<ExactScalar> eval_matrix(const std::vector<std::vector<std::string>>& m, const Bindings& b);

// every combination of the free parameter samples
std::vector<ScalarBindings> expand_free(const std::vector<std::pair<std::string, std::vector<std::string>>>& free);

}  // namespace jorn
