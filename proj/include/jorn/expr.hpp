#pragma once

#include "jorn/ratfunc.hpp"

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jorn {

using Bindings = std::map<std::string, RatFunc>;
using ScalarBindings = std::map<std::string, ExactScalar>;

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos(pos) {}
    std::size_t pos;
};

struct UnboundParameter : std::runtime_error {
    explicit UnboundParameter(const std::string& name)
        : std::runtime_error("unbound parameter '" + name + "'"), name(name) {}
    std::string name;
};

// Parsed scalar expression over i, r2, t and named parameters.
class Expr {
public:
    struct Node;

    static Expr parse(std::string_view text);

    RatFunc eval(const Bindings& b = {}) const;
    ExactScalar eval_constant(const Bindings& b = {}) const;
    std::set<std::string> params() const;
    bool uses_t() const;
    const std::string& text() const { return text_; }

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

RatFunc parse_scalar_expr(std::string_view text, const ScalarBindings& bindings = {});
ExactScalar parse_constant(std::string_view text, const Bindings& bindings = {});

Bindings to_bindings(const ScalarBindings& b);

}  // namespace jorn
