#include "jorn/scalar.hpp"

namespace jorn {

ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    if (y.is_rational()) {
        const Rational& s = y.c_[0];
        if (x.is_rational()) return ExactScalar(x.c_[0] * s);
        return {x.c_[0] * s, x.c_[1] * s, x.c_[2] * s, x.c_[3] * s};
    }
    if (x.is_rational()) return y * x;
    const auto& [a, b, c, d] = x.c_;
    const auto& [e, f, g, h] = y.c_;
    Rational two(2);
    return {a * e - b * f + two * (c * g - d * h),
            a * f + b * e + two * (c * h + d * g),
            a * g + c * e - b * h - d * f,
            a * h + d * e + b * g + c * f};
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (is_rational()) return ExactScalar(c_[0].inverse());
    // x = u + v*r2 with u, v in Q(i); x^-1 = (u - v*r2) / (u^2 - 2 v^2)
    const auto& [a, b, c, d] = c_;
    Rational two(2);
    Rational nr = a * a - b * b - two * (c * c - d * d);
    Rational ni = two * (a * b - two * c * d);
    // nr + ni*i is nonzero in Q(i); its inverse is (nr - ni*i)/(nr^2 + ni^2)
    Rational m = (nr * nr + ni * ni).inverse();
    ExactScalar ninv(nr * m, -ni * m, Rational(), Rational());
    return ExactScalar(a, b, -c, -d) * ninv;
}

std::string ExactScalar::str() const {
    static const char* unit[4] = {"", "i", "r2", "i*r2"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
        const Rational& q = c_[k];
        if (q.is_zero()) continue;
        bool neg = q.sign() < 0;
        Rational a = neg ? -q : q;
        std::string term;
        if (k == 0) {
            term = a.str();
        } else if (a.is_one()) {
            term = unit[k];
        } else if (a.is_integer()) {
            term = a.str() + "*" + unit[k];
        } else {
            term = a.numerator().get_str() + "*" + unit[k] + "/" + a.denominator().get_str();
        }
        if (out.empty()) {
            out = neg ? "-" + term : term;
        } else {
            out += (neg ? "-" : "+") + term;
        }
    }
    return out.empty() ? "0" : out;
}

std::size_t ExactScalar::hash() const {
    std::size_t h = 0;
    for (const auto& q : c_) h = h * 1000003 + q.hash();
    return h;
}

}  // namespace jorn
