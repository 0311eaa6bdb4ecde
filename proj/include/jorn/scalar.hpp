#pragma once

#include "jorn/rational.hpp"

#include <array>
#include <string>

namespace jorn {

// Element a + b*i + c*r2 + d*i*r2 of Q(i, sqrt 2).
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(long long n) : c_{Rational(n), {}, {}, {}} {}
    ExactScalar(const Rational& q) : c_{q, {}, {}, {}} {}
    ExactScalar(const Rational& a, const Rational& b, const Rational& c, const Rational& d) : c_{a, b, c, d} {}

    static ExactScalar i() { return ExactScalar(0, 1, 0, 0); }
    static ExactScalar r2() { return ExactScalar(0, 0, 1, 0); }

    const Rational& coord(int k) const { return c_[k]; }
    const Rational& re() const { return c_[0]; }

    bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }
    bool is_one() const { return c_[0].is_one() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }
    bool is_rational() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

    ExactScalar operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }
    ExactScalar inverse() const;
    // complex conjugation i -> -i
    ExactScalar conj() const { return {c_[0], -c_[1], c_[2], -c_[3]}; }

    friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
        if (x.is_rational() && y.is_rational()) return ExactScalar(x.c_[0] + y.c_[0]);
        return {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]};
    }
    friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
        if (x.is_rational() && y.is_rational()) return ExactScalar(x.c_[0] - y.c_[0]);
        return {x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2], x.c_[3] - y.c_[3]};
    }
    friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y);
    friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) { return x * y.inverse(); }

    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

    friend bool operator==(const ExactScalar& x, const ExactScalar& y) { return x.c_ == y.c_; }

    // grammar form, e.g. "1/2+3*i-r2"
    std::string str() const;
    std::size_t hash() const;

private:
    std::array<Rational, 4> c_{};
};

}  // namespace jorn
