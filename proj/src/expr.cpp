#include "jorn/expr.hpp"

#include <cctype>
#include <vector>

namespace jorn {

struct Expr::Node {
    enum Kind { Int, I, R2, T, Ident, Neg, Add, Sub, Mul, Div, Pow } kind;
    Rational value;
    std::string name;
    unsigned long exponent = 0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Node = Expr::Node;

NodePtr make(Node::Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw ParseError("syntax error: " + msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            if (accept('+')) {
                e = make(Node::Add, e, term());
            } else if (accept('-')) {
                e = make(Node::Sub, e, term());
            } else {
                return e;
            }
        }
    }

    NodePtr term() {
        NodePtr e = factor();
        for (;;) {
            if (accept('*')) {
                e = make(Node::Mul, e, factor());
            } else if (accept('/')) {
                e = make(Node::Div, e, factor());
            } else {
                return e;
            }
        }
    }

    NodePtr factor() {
        if (accept('-')) return make(Node::Neg, factor());
        NodePtr a = atom();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            auto p = std::make_shared<Node>();
            p->kind = Node::Pow;
            p->lhs = a;
            try {
                p->exponent = std::stoul(std::string(s_.substr(start, pos_ - start)));
            } catch (const std::exception&) {
                pos_ = start;
                fail("exponent out of range");
            }
            return p;
        }
        return a;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            auto n = std::make_shared<Node>();
            n->kind = Node::Int;
            n->value = Rational::parse(s_.substr(start, pos_ - start));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id(s_.substr(start, pos_ - start));
            if (id == "i") return make(Node::I);
            if (id == "r2") return make(Node::R2);
            if (id == "t") return make(Node::T);
            auto n = std::make_shared<Node>();
            n->kind = Node::Ident;
            n->name = id;
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

RatFunc power(RatFunc base, unsigned long e) {
    RatFunc r(1);
    while (e) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

RatFunc eval_node(const Node& n, const Bindings& b) {
    switch (n.kind) {
        case Node::Int: return RatFunc(ExactScalar(n.value));
        case Node::I: return RatFunc(ExactScalar::i());
        case Node::R2: return RatFunc(ExactScalar::r2());
        case Node::T: return RatFunc::t();
        case Node::Ident: {
            auto it = b.find(n.name);
            if (it == b.end()) throw UnboundParameter(n.name);
            return it->second;
        }
        case Node::Neg: return -eval_node(*n.lhs, b);
        case Node::Add: return eval_node(*n.lhs, b) + eval_node(*n.rhs, b);
        case Node::Sub: return eval_node(*n.lhs, b) - eval_node(*n.rhs, b);
        case Node::Mul: return eval_node(*n.lhs, b) * eval_node(*n.rhs, b);
        case Node::Div: {
            RatFunc d = eval_node(*n.rhs, b);
            if (d.is_zero()) throw std::domain_error("division by zero");
            return eval_node(*n.lhs, b) / d;
        }
        case Node::Pow: return power(eval_node(*n.lhs, b), n.exponent);
    }
    return {};
}

void collect(const Node& n, std::set<std::string>& out, bool& t) {
    if (n.kind == Node::Ident) out.insert(n.name);
    if (n.kind == Node::T) t = true;
    if (n.lhs) collect(*n.lhs, out, t);
    if (n.rhs) collect(*n.rhs, out, t);
}

}  // namespace

Expr Expr::parse(std::string_view text) {
    Expr e;
    e.root_ = Parser(text).parse();
    e.text_ = std::string(text);
    return e;
}

RatFunc Expr::eval(const Bindings& b) const { return eval_node(*root_, b); }

ExactScalar Expr::eval_constant(const Bindings& b) const {
    RatFunc f = eval(b);
    if (!f.is_constant()) throw std::domain_error("expression depends on t: " + text_);
    return f.constant();
}

std::set<std::string> Expr::params() const {
    std::set<std::string> out;
    bool t = false;
    collect(*root_, out, t);
    return out;
}

bool Expr::uses_t() const {
    std::set<std::string> out;
    bool t = false;
    collect(*root_, out, t);
    return t;
}

Bindings to_bindings(const ScalarBindings& b) {
    Bindings out;
    for (const auto& [k, v] : b) out.emplace(k, RatFunc(v));
    return out;
}

RatFunc parse_scalar_expr(std::string_view text, const ScalarBindings& bindings) {
    return Expr::parse(text).eval(to_bindings(bindings));
}

ExactScalar parse_constant(std::string_view text, const Bindings& bindings) {
    return Expr::parse(text).eval_constant(bindings);
}

}  // namespace jorn
