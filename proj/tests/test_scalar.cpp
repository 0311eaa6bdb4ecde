#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jorn/expr.hpp"

#include <random>

using namespace jorn;

TEST_CASE("rational normalization and sign") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(0, 5).is_zero());
    CHECK(Rational(10, 5).is_integer());
    CHECK(Rational(-1, 3).sign() == -1);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
    CHECK(Rational::parse("-7/21") == Rational(-1, 3));
}

TEST_CASE("rational arithmetic agrees with mpq across the overflow boundary") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> small(-1000, 1000);
    std::uniform_int_distribution<long long> huge(INT64_MIN / 2, INT64_MAX / 2);
    for (int it = 0; it < 2000; ++it) {
        bool big = it % 3 == 0;
        long long an = big ? huge(rng) : small(rng), bn = big ? huge(rng) : small(rng);
        long long ad = std::max(1LL, std::llabs(small(rng))), bd = std::max(1LL, std::llabs(huge(rng) % 100000));
        Rational a(an, ad), b(bn, bd);
        mpq_class qa(mpz_class(std::to_string(an)), mpz_class(std::to_string(ad)));
        mpq_class qb(mpz_class(std::to_string(bn)), mpz_class(std::to_string(bd)));
        qa.canonicalize();
        qb.canonicalize();
        CHECK((a + b).to_mpq() == qa + qb);
        CHECK((a - b).to_mpq() == qa - qb);
        CHECK((a * b).to_mpq() == qa * qb);
        if (!b.is_zero()) CHECK((a / b).to_mpq() == qa / qb);
        CHECK(((a < b) == (qa < qb)));
    }
}

TEST_CASE("big values shrink back to the inline form") {
    Rational x(INT64_MAX);
    Rational y = x * x;
    mpz_class m(std::to_string(INT64_MAX));
    CHECK(y.str() == mpz_class(m * m).get_str());
    Rational z = y / x;
    CHECK(z == x);
    CHECK(y - y == Rational(0));
}

TEST_CASE("exact scalar field relations") {
    ExactScalar i = ExactScalar::i(), r2 = ExactScalar::r2();
    CHECK(i * i == ExactScalar(-1));
    CHECK(r2 * r2 == ExactScalar(2));
    CHECK((ExactScalar(1) + i).inverse() == (ExactScalar(1) - i) / ExactScalar(2));
    CHECK((i * r2) * (i * r2) == ExactScalar(-2));
    CHECK_THROWS_AS(ExactScalar(0).inverse(), std::domain_error);
}

TEST_CASE("exact scalar inverse and string round trip on random elements") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int it = 0; it < 300; ++it) {
        ExactScalar x(Rational(d(rng), 1 + std::abs(d(rng))), Rational(d(rng)), Rational(d(rng), 3), Rational(d(rng)));
        CHECK(parse_constant(x.str()) == x);
        if (x.is_zero()) continue;
        CHECK(x * x.inverse() == ExactScalar(1));
        CHECK((x * x.conj()).coord(1).is_zero());
    }
}

TEST_CASE("polynomial gcd and division") {
    RatFunc t = RatFunc::t();
    Poly p = (t * t - RatFunc(1)).num();
    Poly q = (t - RatFunc(1)).num();
    auto [quo, rem] = Poly::divmod(p, q);
    CHECK(rem.is_zero());
    CHECK(RatFunc(quo) == t + RatFunc(1));
    CHECK(RatFunc(Poly::gcd(p, (t * t - RatFunc(2) * t + RatFunc(1)).num())) == t - RatFunc(1));
}

TEST_CASE("rational function normal form") {
    RatFunc t = RatFunc::t();
    CHECK(((t * t - RatFunc(1)) / (t - RatFunc(1)) - (t + RatFunc(1))).is_zero());
    RatFunc f = (t * t) / (RatFunc(1) + t);
    CHECK(f.eval(ExactScalar(1)) == ExactScalar(Rational(1, 2)));
    RatFunc d = parse_scalar_expr("-2^8*t^23");
    CHECK(d.eval(ExactScalar(0)).is_zero());
    CHECK(d == RatFunc(ExactScalar(-256)) * parse_scalar_expr("t^23"));
    CHECK_THROWS_AS((RatFunc(1) / t).eval(ExactScalar(0)), PoleError);
    CHECK((RatFunc(1) / t).has_pole_at(ExactScalar(0)));
    CHECK(((t + RatFunc(ExactScalar::i())) * (t - RatFunc(ExactScalar::i()))) == t * t + RatFunc(1));
    CHECK_THROWS_AS(RatFunc(1) / RatFunc(0), std::domain_error);
}

TEST_CASE("rational function string form parses back") {
    for (const char* s : {"1/t^16", "(t-1)/2", "-1*r2/4*t^19", "(1+t^2)/(1-t)^2", "i*t^4-3", "t^7-t^6"}) {
        RatFunc f = parse_scalar_expr(s);
        CHECK(parse_scalar_expr(f.str()) == f);
    }
}
