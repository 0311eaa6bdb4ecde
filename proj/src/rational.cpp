#include "jorn/rational.hpp"

#include <cctype>

namespace jorn {

namespace {

using i128 = __int128;

bool fits(i128 v) { return v > static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX); }

unsigned long long ugcd(unsigned long long a, unsigned long long b) { return std::gcd(a, b); }

unsigned long long uabs(long long v) {
    return v < 0 ? 0ULL - static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
}

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<unsigned long long>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<unsigned long long>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("division by zero");
    if (n != INT64_MIN && d != INT64_MIN) {
        long long g = static_cast<long long>(ugcd(uabs(n), uabs(d)));
        n /= g;
        d /= g;
        if (d < 0) {
            n = -n;
            d = -d;
        }
        n_ = n;
        d_ = d;
        return;
    }
    mpq_class q(mpz_class(std::to_string(n)), mpz_class(std::to_string(d)));
    q.canonicalize();
    set_big(q);
}

void Rational::set_big(const mpq_class& q) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (num.fits_slong_p() && den.fits_slong_p() && num != LONG_MIN) {
        n_ = num.get_si();
        d_ = den.get_si();
        big_.reset();
        return;
    }
    n_ = 0;
    d_ = 1;
    big_ = std::make_shared<const mpq_class>(q);
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::domain_error("division by zero");
    q.canonicalize();
    return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    mpq_set_si(q.get_mpq_t(), n_, static_cast<unsigned long>(d_));
    return q;
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(n_)); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(d_)); }

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

std::size_t Rational::hash() const {
    if (!big_) return std::hash<long long>()(n_) * 31 + std::hash<long long>()(d_);
    return std::hash<std::string>()(big_->get_str());
}

std::optional<std::uint64_t> Rational::residue(std::uint64_t p) const {
    std::uint64_t num, den;
    if (big_) {
        mpz_class mp(std::to_string(p));
        auto reduce = [&](const mpz_class& z) {
            mpz_class r = z % mp;
            if (r < 0) r += mp;
            return std::stoull(r.get_str());
        };
        num = reduce(big_->get_num());
        den = reduce(big_->get_den());
    } else {
        long long pp = static_cast<long long>(p);
        num = static_cast<std::uint64_t>(((n_ % pp) + pp) % pp);
        den = static_cast<std::uint64_t>(d_ % pp);
    }
    if (den == 0) return std::nullopt;
    if (den == 1) return num;
    return modp::mul(num, modp::inv(den, p), p);
}

Rational Rational::operator-() const {
    if (!big_) return Rational(-n_, d_, Raw{});
    return Rational(mpq_class(-*big_));
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (!big_) {
        if (n_ < 0) return Rational(-d_, -n_, Raw{});
        return Rational(d_, n_, Raw{});
    }
    return Rational(mpq_class(1 / *big_));
}

Rational Rational::add_small(const Rational& a, const Rational& b) {
    unsigned long long g = ugcd(static_cast<unsigned long long>(a.d_), static_cast<unsigned long long>(b.d_));
    long long da = a.d_ / static_cast<long long>(g);
    long long db = b.d_ / static_cast<long long>(g);
    i128 num = static_cast<i128>(a.n_) * db + static_cast<i128>(b.n_) * da;
    i128 den = static_cast<i128>(a.d_) * db;
    if (num == 0) return Rational();
    if (g != 1) {
        // only factors of g can be shared between num and den
        unsigned __int128 un = num < 0 ? static_cast<unsigned __int128>(-num) : static_cast<unsigned __int128>(num);
        unsigned long long r = static_cast<unsigned long long>(un % g);
        unsigned long long h = ugcd(g, r);
        if (h != 1) {
            num /= h;
            den /= h;
        }
    }
    if (fits(num) && fits(den)) return Rational(static_cast<long long>(num), static_cast<long long>(den), Raw{});
    mpq_class q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    return Rational(q);
}

Rational Rational::mul_small(const Rational& a, const Rational& b) {
    unsigned long long g1 = ugcd(uabs(a.n_), static_cast<unsigned long long>(b.d_));
    unsigned long long g2 = ugcd(uabs(b.n_), static_cast<unsigned long long>(a.d_));
    i128 num = static_cast<i128>(a.n_ / static_cast<long long>(g1)) * (b.n_ / static_cast<long long>(g2));
    i128 den = static_cast<i128>(a.d_ / static_cast<long long>(g2)) * (b.d_ / static_cast<long long>(g1));
    if (fits(num) && fits(den)) return Rational(static_cast<long long>(num), static_cast<long long>(den), Raw{});
    mpq_class q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    return Rational(q);
}

Rational Rational::add_big(const Rational& a, const Rational& b) { return Rational(mpq_class(a.to_mpq() + b.to_mpq())); }
Rational Rational::mul_big(const Rational& a, const Rational& b) { return Rational(mpq_class(a.to_mpq() * b.to_mpq())); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.n_) * b.d_;
        i128 r = static_cast<i128>(b.n_) * a.d_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

}  // namespace jorn
