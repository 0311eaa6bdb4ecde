#include "jorn/ratfunc.hpp"

#include <algorithm>

namespace jorn {

Poly::Poly(const ExactScalar& c) {
    if (!c.is_zero()) c_.push_back(c);
}

Poly::Poly(std::vector<ExactScalar> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::t_power(int k, const ExactScalar& c) {
    std::vector<ExactScalar> v(static_cast<std::size_t>(k) + 1);
    v[static_cast<std::size_t>(k)] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int Poly::order() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    return -1;
}

bool Poly::is_monomial() const { return !c_.empty() && order() == degree(); }

ExactScalar Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return {};
    return c_[static_cast<std::size_t>(k)];
}

ExactScalar Poly::eval(const ExactScalar& x) const {
    ExactScalar acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<ExactScalar> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] = a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ExactScalar> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            v[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Poly(std::move(v));
}

Poly Poly::scaled(const ExactScalar& s) const {
    if (s.is_zero()) return {};
    Poly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

Poly Poly::shifted_down(int k) const {
    if (k <= 0) return *this;
    if (k > degree()) return {};
    return Poly(std::vector<ExactScalar>(c_.begin() + k, c_.end()));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<ExactScalar> r = a.c_;
    std::vector<ExactScalar> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    ExactScalar inv = b.lead().inverse();
    int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
        const ExactScalar& top = r[static_cast<std::size_t>(k)];
        if (top.is_zero()) continue;
        ExactScalar f = top * inv;
        q[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly Poly::monic() const {
    if (is_zero() || lead().is_one()) return *this;
    return scaled(lead().inverse());
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace {

bool needs_parens(const ExactScalar& c) {
    int terms = 0;
    for (int k = 0; k < 4; ++k) terms += !c.coord(k).is_zero();
    return terms > 1;
}

std::string t_pow(int k) { return k == 1 ? "t" : "t^" + std::to_string(k); }

}  // namespace

std::string Poly::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const ExactScalar& c = c_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        std::string term;
        bool neg = false;
        if (k == 0) {
            term = c.str();
        } else if (needs_parens(c)) {
            term = "(" + c.str() + ")*" + t_pow(k);
        } else {
            ExactScalar a = c;
            for (int j = 0; j < 4; ++j)
                if (c.coord(j).sign() < 0) neg = true;
            if (neg) a = -c;
            term = a.is_one() ? t_pow(k) : a.str() + "*" + t_pow(k);
        }
        if (!neg && term[0] == '-') {
            neg = true;
            term = term.substr(1);
        }
        if (out.empty()) {
            out = neg ? "-" + term : term;
        } else {
            out += (neg ? "-" : "+") + term;
        }
    }
    return out;
}

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) { normalize(); }

void RatFunc::normalize() {
    if (den_.is_zero()) throw std::domain_error("division by zero polynomial");
    if (num_.is_zero()) {
        den_ = Poly(ExactScalar(1));
        return;
    }
    if (den_.degree() > 0) {
        if (den_.is_monomial()) {
            int k = std::min(den_.degree(), num_.order());
            num_ = num_.shifted_down(k);
            den_ = den_.shifted_down(k);
        } else {
            Poly g = Poly::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = Poly::divmod(num_, g).first;
                den_ = Poly::divmod(den_, g).first;
            }
        }
    }
    if (!den_.lead().is_one()) {
        ExactScalar inv = den_.lead().inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

ExactScalar RatFunc::constant() const {
    if (!is_constant()) throw std::domain_error("not a constant: " + str());
    return num_.coeff(0);
}

ExactScalar RatFunc::eval(const ExactScalar& t0) const {
    ExactScalar d = den_.eval(t0);
    if (d.is_zero()) throw PoleError("pole at t = " + t0.str() + " in " + str());
    return num_.eval(t0) / d;
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    return RatFunc(den_, num_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.degree() == 0 && b.den_.degree() == 0) return RatFunc(a.num_ + b.num_, Poly(ExactScalar(1)), RatFunc::Reduced{});
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_.degree() == 0 && b.den_.degree() == 0) return RatFunc(a.num_ * b.num_, Poly(ExactScalar(1)), RatFunc::Reduced{});
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

std::string RatFunc::str() const {
    if (den_.degree() == 0) return num_.str();
    std::string n = num_.str();
    bool simple_num = num_.is_monomial() && !needs_parens(num_.lead());
    if (!simple_num) n = "(" + n + ")";
    std::string d = den_.is_monomial() ? den_.str() : "(" + den_.str() + ")";
    return n + "/" + d;
}

}  // namespace jorn
