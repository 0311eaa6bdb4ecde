#pragma once

#include "jorn/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jorn {

// Univariate polynomial in t over ExactScalar, low degree first.
class Poly {
public:
    Poly() = default;
    Poly(const ExactScalar& c);
    explicit Poly(std::vector<ExactScalar> coeffs);
    static Poly t_power(int k, const ExactScalar& c = ExactScalar(1));

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    // lowest power of t with nonzero coefficient; -1 for zero
    int order() const;
    bool is_monomial() const;
    const ExactScalar& lead() const { return c_.back(); }
    ExactScalar coeff(int k) const;
    const std::vector<ExactScalar>& coeffs() const { return c_; }

    ExactScalar eval(const ExactScalar& x) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const ExactScalar& s) const;
    Poly shifted_down(int k) const;

    // quotient and remainder; b nonzero
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    static Poly gcd(Poly a, Poly b);
    Poly monic() const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    void trim();
    std::vector<ExactScalar> c_;
};

// Rational function num/den in t; gcd(num, den) = 1 and den is monic.
class RatFunc {
public:
    RatFunc() : den_(ExactScalar(1)) {}
    RatFunc(long long n) : num_(ExactScalar(n)), den_(ExactScalar(1)) {}
    RatFunc(const ExactScalar& c) : num_(c), den_(ExactScalar(1)) {}
    RatFunc(const Poly& p) : num_(p), den_(ExactScalar(1)) {}
    RatFunc(const Poly& num, const Poly& den);

    static RatFunc t() { return RatFunc(Poly::t_power(1)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.degree() == 0 && num_.degree() == 0 && num_.lead().is_one(); }
    bool is_constant() const { return den_.degree() == 0 && num_.degree() <= 0; }
    ExactScalar constant() const;

    // throws PoleError when den(t0) = 0
    ExactScalar eval(const ExactScalar& t0) const;
    bool has_pole_at(const ExactScalar& t0) const { return den_.eval(t0).is_zero(); }

    RatFunc operator-() const;
    RatFunc inverse() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    std::string str() const;

private:
    struct Reduced {};
    RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    Poly num_;
    Poly den_;
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace jorn
