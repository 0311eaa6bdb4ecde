#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jorn/expr.hpp"

using namespace jorn;

TEST_CASE("constants") {
    CHECK(parse_constant("-1/2") == ExactScalar(Rational(-1, 2)));
    CHECK(parse_constant("(1+i)*(1-i)") == ExactScalar(2));
    CHECK(parse_constant("r2*r2") == ExactScalar(2));
    CHECK_THROWS_AS(parse_constant("2^-2"), ParseError);
    CHECK(parse_constant("2^0") == ExactScalar(1));
    CHECK(parse_constant("-2^2") == ExactScalar(-4));
    CHECK(parse_constant("(-2)^2") == ExactScalar(4));
    CHECK(parse_constant("1/(1+i)") == parse_constant("(1-i)/2"));
}

TEST_CASE("t expressions") {
    RatFunc d = parse_scalar_expr("-2^8*t^23");
    CHECK(d == RatFunc(ExactScalar(-256)) * parse_scalar_expr("t^23"));
    CHECK(parse_scalar_expr("t/t") == RatFunc(1));
    CHECK(parse_scalar_expr("(t^2-1)/(t-1)") == parse_scalar_expr("t+1"));
}

TEST_CASE("parameters") {
    ScalarBindings b{{"eps", ExactScalar(2)}, {"phi", ExactScalar(3)}};
    CHECK(parse_scalar_expr("eps*phi-1", b) == RatFunc(5));
    Expr e = Expr::parse("(1-2*s^2)*i/s + t");
    CHECK(e.params() == std::set<std::string>{"s"});
    CHECK(e.uses_t());
    CHECK_FALSE(Expr::parse("alpha").uses_t());
    CHECK(parse_constant("(1-2*s^2)*i/s", to_bindings({{"s", ExactScalar(2)}})) ==
          ExactScalar(Rational(-7, 2)) * ExactScalar::i());
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(parse_constant("1/0"), std::domain_error);
    CHECK_THROWS_AS(parse_constant("beta"), UnboundParameter);
    CHECK_THROWS_AS(parse_constant("t"), std::domain_error);
    CHECK_THROWS_AS(Expr::parse("1+"), ParseError);
    CHECK_THROWS_AS(Expr::parse("(1"), ParseError);
    CHECK_THROWS_AS(Expr::parse("2 3"), ParseError);
    try {
        Expr::parse("1+*2");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.pos == 2);
    }
}
