#include "jorn/tensor.hpp"

namespace jorn {

Tensor<ExactScalar> to_scalar(const Tensor<Rational>& t) {
    return t.map<ExactScalar>([](const Rational& q) { return ExactScalar(q); });
}

Tensor<RatFunc> to_ratfunc(const Tensor<ExactScalar>& t) {
    return t.map<RatFunc>([](const ExactScalar& s) { return RatFunc(s); });
}

bool is_rational(const Tensor<ExactScalar>& t) {
    int n = t.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!t.at(i, j, k).is_rational()) return false;
    return true;
}

Tensor<Rational> to_rational(const Tensor<ExactScalar>& t) {
    if (!is_rational(t)) throw std::domain_error("tensor has irrational constants");
    return t.map<Rational>([](const ExactScalar& s) { return s.re(); });
}

Tensor<ExactScalar> clear_denominators(const Tensor<ExactScalar>& t) {
    mpz_class den = 1, num = 0;
    int n = t.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int c = 0; c < 4; ++c) {
                    const Rational& q = t.at(i, j, k).coord(c);
                    if (q.is_zero()) continue;
                    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.denominator().get_mpz_t());
                    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.numerator().get_mpz_t());
                }
    if (num == 0) return t;
    return scale(t, ExactScalar(Rational(mpq_class(den, num))));
}

Matrix<ExactScalar> to_scalar(const Matrix<Rational>& m) {
    return m.map<ExactScalar>([](const Rational& q) { return ExactScalar(q); });
}

Matrix<RatFunc> to_ratfunc(const Matrix<ExactScalar>& m) {
    return m.map<RatFunc>([](const ExactScalar& s) { return RatFunc(s); });
}

std::string format_table(const Tensor<ExactScalar>& t) {
    std::string out;
    int n = t.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::string rhs;
            for (int k = 0; k < n; ++k) {
                const ExactScalar& c = t.at(i, j, k);
                if (c.is_zero()) continue;
                std::string e = "e" + std::to_string(k + 1);
                std::string cs = c.str();
                bool multi = cs.find_first_of("+-", 1) != std::string::npos;
                std::string term;
                if (c.is_one()) {
                    term = "+" + e;
                } else if (c == ExactScalar(-1)) {
                    term = "-" + e;
                } else if (multi) {
                    term = "+(" + cs + ")" + e;
                } else {
                    term = (cs[0] == '-' ? cs : "+" + cs) + e;
                }
                rhs += term;
            }
            if (rhs.empty()) continue;
            if (rhs[0] == '+') rhs = rhs.substr(1);
            if (!out.empty()) out += "; ";
            out += "e" + std::to_string(i + 1) + "e" + std::to_string(j + 1) + "=" + rhs;
        }
    return out.empty() ? "0" : out;
}

}  // namespace jorn
