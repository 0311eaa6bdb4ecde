#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jorn {

namespace modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a, p))
        if (e & 1) r = mul(r, a, p);
    return r;
}

// p prime, a nonzero mod p
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

}  // namespace modp

// Exact rational number. Values whose numerator and denominator fit in
// 63 bits are stored inline; anything larger lives in a shared GMP value.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : n_(n) {
        if (n == INT64_MIN) set_big(mpq_class(mpz_class(std::to_string(n))));
    }
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& q) { set_big(q); }

    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const;
    int sign() const;

    mpq_class to_mpq() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    std::string str() const;
    std::size_t hash() const;
    // image in Z/p, empty when p divides the denominator
    std::optional<std::uint64_t> residue(std::uint64_t p) const;

    Rational operator-() const;
    Rational inverse() const;

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.d_ == 1 && b.d_ == 1) {
                long long s;
                if (!__builtin_add_overflow(a.n_, b.n_, &s) && s != INT64_MIN) return Rational(s, Raw{});
            }
            return add_small(a, b);
        }
        return add_big(a, b);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.n_ == 0 || b.n_ == 0) return Rational();
            if (a.d_ == 1 && b.d_ == 1) {
                long long p;
                if (!__builtin_mul_overflow(a.n_, b.n_, &p) && p != INT64_MIN) return Rational(p, Raw{});
            }
            return mul_small(a, b);
        }
        return mul_big(a, b);
    }
    friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
        if (!a.big_ || !b.big_) return false;
        return *a.big_ == *b.big_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    struct Raw {};
    Rational(long long n, Raw) : n_(n) {}
    Rational(long long n, long long d, Raw) : n_(n), d_(d) {}

    void set_big(const mpq_class& q);
    static Rational add_small(const Rational& a, const Rational& b);
    static Rational mul_small(const Rational& a, const Rational& b);
    static Rational add_big(const Rational& a, const Rational& b);
    static Rational mul_big(const Rational& a, const Rational& b);

    long long n_ = 0;
    long long d_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

}  // namespace jorn
