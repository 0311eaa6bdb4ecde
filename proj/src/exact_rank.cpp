#include "jorn/exact_rank.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace jorn {

namespace {

struct ModPivots {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

// rows independent modulo p and their pivot columns, empty if some entry has no image
template <class F, class Residue>
std::optional<ModPivots> pivots_mod_p(const std::vector<Vec<F>>& rows, std::size_t cols, std::uint64_t p,
                                      const Residue& residue) {
    std::vector<std::vector<std::uint64_t>> basis;
    ModPivots out;
    std::vector<std::uint64_t> v(cols);
    for (std::size_t r = 0; r < rows.size() && out.rows.size() < cols; ++r) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (rows[r][j].is_zero()) {
                v[j] = 0;
                continue;
            }
            auto x = residue(rows[r][j]);
            if (!x) return std::nullopt;
            v[j] = *x;
        }
        for (std::size_t b = 0; b < basis.size(); ++b) {
            std::uint64_t f = v[out.cols[b]];
            if (f == 0) continue;
            const auto& row = basis[b];
            for (std::size_t j = out.cols[b]; j < cols; ++j)
                if (row[j]) v[j] = (v[j] + p - modp::mul(f, row[j], p)) % p;
        }
        std::size_t c = 0;
        while (c < cols && v[c] == 0) ++c;
        if (c == cols) continue;
        std::uint64_t inv = modp::inv(v[c], p);
        for (std::size_t j = c; j < cols; ++j) v[j] = modp::mul(v[j], inv, p);
        for (auto& row : basis)
            if (row[c]) {
                std::uint64_t f = row[c];
                for (std::size_t j = c; j < cols; ++j)
                    if (v[j]) row[j] = (row[j] + p - modp::mul(f, v[j], p)) % p;
            }
        basis.push_back(v);
        out.cols.push_back(c);
        out.rows.push_back(r);
    }
    return out;
}

// Fraction-free Gauss-Jordan on the pivot columns. Every intermediate entry
// is a minor of the input, so the divisions are exact and sizes stay bounded.
// Returns the nullspace basis scaled by the pivot block determinant, empty
// if that block is singular.
template <class T, class Divider>
std::optional<std::vector<std::vector<T>>> bareiss_nullspace(std::vector<std::vector<T>> a,
                                                           const std::vector<std::size_t>& piv, std::size_t cols) {
    std::size_t r = a.size();
    T prev(1);
    Divider divexact(prev);
    for (std::size_t k = 0; k < r; ++k) {
        std::size_t pc = piv[k];
        std::size_t s = k;
        while (s < r && a[s][pc] == 0) ++s;
        if (s == r) return std::nullopt;
        std::swap(a[k], a[s]);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == k) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (j == pc) continue;
                if (a[i][pc] == 0 && a[i][j] == 0) continue;
                divexact.update(a[i][j], a[k][pc], a[i][pc], a[k][j]);
            }
            a[i][pc] = T(0);
        }
        prev = a[k][pc];
        divexact = Divider(prev);
    }
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<T>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<T> n(cols);
        n[f] = prev;
        for (std::size_t k = 0; k < r; ++k) n[piv[k]] = -a[k][f];
        out.push_back(std::move(n));
    }
    return out;
}

template <class F>
std::size_t echelon_rank(const std::vector<Vec<F>>& rows, std::size_t cols) {
    Echelon<F> e(cols);
    for (const auto& r : rows) {
        e.add(r);
        if (e.full()) break;
    }
    return e.rank();
}

// a + b*i + c*r2 + d*i*r2 with integer coordinates
struct Z4 {
    std::array<mpz_class, 4> c;

    Z4() = default;
    explicit Z4(long n) { c[0] = n; }

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
    friend bool operator==(const Z4& x, long n) { return n == 0 ? x.is_zero() : x == Z4(n); }
    friend bool operator==(const Z4& x, const Z4& y) { return x.c == y.c; }
    Z4 operator-() const {
        Z4 r;
        for (int k = 0; k < 4; ++k) r.c[k] = -c[k];
        return r;
    }
    friend Z4 operator*(const Z4& a, const Z4& b) {
        Z4 r;
        fma(r, a, b, false);
        return r;
    }
    // acc += x y, or acc -= x y when negate is set
    static void fma(Z4& acc, const Z4& x, const Z4& y, bool negate) {
        struct Term {
            int out, i, j, coeff;
        };
        static constexpr Term terms[16] = {{0, 0, 0, 1},  {0, 1, 1, -1}, {0, 2, 2, 2},  {0, 3, 3, -2},
                                           {1, 0, 1, 1},  {1, 1, 0, 1},  {1, 2, 3, 2},  {1, 3, 2, 2},
                                           {2, 0, 2, 1},  {2, 2, 0, 1},  {2, 1, 3, -1}, {2, 3, 1, -1},
                                           {3, 0, 3, 1},  {3, 3, 0, 1},  {3, 1, 2, 1},  {3, 2, 1, 1}};
        thread_local mpz_class tmp;
        for (const auto& t : terms) {
            const mpz_class& a = x.c[t.i];
            const mpz_class& b = y.c[t.j];
            if (mpz_sgn(a.get_mpz_t()) == 0 || mpz_sgn(b.get_mpz_t()) == 0) continue;
            int c = negate ? -t.coeff : t.coeff;
            mpz_ptr out = acc.c[t.out].get_mpz_t();
            if (c == 1) {
                mpz_addmul(out, a.get_mpz_t(), b.get_mpz_t());
            } else if (c == -1) {
                mpz_submul(out, a.get_mpz_t(), b.get_mpz_t());
            } else {
                mpz_mul_2exp(tmp.get_mpz_t(), a.get_mpz_t(), 1);
                if (c > 0)
                    mpz_addmul(out, tmp.get_mpz_t(), b.get_mpz_t());
                else
                    mpz_submul(out, tmp.get_mpz_t(), b.get_mpz_t());
            }
        }
    }
    // product of the three nontrivial conjugates
    Z4 cofactor() const {
        Z4 s = *this, t = *this, st = *this;
        s.c[1] = -s.c[1];
        s.c[3] = -s.c[3];
        t.c[2] = -t.c[2];
        t.c[3] = -t.c[3];
        st.c[1] = -st.c[1];
        st.c[2] = -st.c[2];
        return s * t * st;
    }
};

// divides by a fixed nonzero divisor known to divide exactly
struct Z4Divider {
    Z4 cof;
    mpz_class norm;
    explicit Z4Divider(const Z4& y) : cof(y.cofactor()), norm((y * cof).c[0]) {}
    // x <- (a x - b y) / divisor
    void update(Z4& x, const Z4& a, const Z4& b, const Z4& y) const {
        Z4 t;
        Z4::fma(t, a, x, false);
        Z4::fma(t, b, y, true);
        x = t * cof;
        for (auto& v : x.c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), norm.get_mpz_t());
    }
};

struct MpzDivider {
    mpz_class d;
    explicit MpzDivider(const mpz_class& y) : d(y) {}
    mutable mpz_class tmp;
    // x <- (a x - b y) / divisor
    void update(mpz_class& x, const mpz_class& a, const mpz_class& b, const mpz_class& y) const {
        mpz_mul(tmp.get_mpz_t(), a.get_mpz_t(), x.get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), b.get_mpz_t(), y.get_mpz_t());
        mpz_divexact(x.get_mpz_t(), tmp.get_mpz_t(), d.get_mpz_t());
    }
};

mpz_class row_denominator(const Vec<Rational>& v) {
    mpz_class l = 1;
    for (const auto& x : v)
        if (!x.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
    return l;
}

mpz_class scaled(const Rational& x, const mpz_class& l) { return x.numerator() * (l / x.denominator()); }

std::vector<mpz_class> integer_row(const Vec<Rational>& v) {
    mpz_class l = row_denominator(v);
    std::vector<mpz_class> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) out[j] = scaled(v[j], l);
    return out;
}

std::vector<Z4> integer_row(const Vec<ExactScalar>& v) {
    mpz_class l = 1;
    for (const auto& x : v)
        for (int k = 0; k < 4; ++k)
            if (!x.coord(k).is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.coord(k).denominator().get_mpz_t());
    std::vector<Z4> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        for (int k = 0; k < 4; ++k)
            if (!v[j].coord(k).is_zero()) out[j].c[k] = scaled(v[j].coord(k), l);
    return out;
}

void addmul(mpz_class& acc, const mpz_class& x, const mpz_class& y) {
    mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
}

void addmul(Z4& acc, const Z4& x, const Z4& y) { Z4::fma(acc, x, y, false); }

void primitive(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v)
        if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v)
            if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

void primitive(std::vector<Z4>& v) {
    mpz_class g = 0;
    for (const auto& x : v)
        for (const auto& c : x.c)
            if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& x : v)
            for (auto& c : x.c)
                if (c != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// rank of rows certified through pivot rows found modulo p, empty if the
// certificate fails
template <class F, class T, class Divider, class Residue>
std::optional<std::size_t> certified_rank(const std::vector<Vec<F>>& rows, std::size_t cols, std::uint64_t p,
                                          const Residue& residue) {
    auto mp = pivots_mod_p(rows, cols, p, residue);
    if (!mp) return std::nullopt;
    std::vector<std::vector<T>> sel;
    for (auto r : mp->rows) sel.push_back(integer_row(rows[r]));
    auto null = bareiss_nullspace<T, Divider>(std::move(sel), mp->cols, cols);
    if (!null) return std::nullopt;
    for (auto& n : *null) primitive(n);
    std::vector<bool> pivot(rows.size(), false);
    for (auto r : mp->rows) pivot[r] = true;
    T s;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (pivot[r]) continue;
        auto v = integer_row(rows[r]);
        for (const auto& n : *null) {
            s = T(0);
            for (std::size_t j = 0; j < cols; ++j)
                if (!(v[j] == 0) && !(n[j] == 0)) addmul(s, v[j], n[j]);
            if (!(s == 0)) return std::nullopt;
        }
    }
    return mp->rows.size();
}

constexpr std::uint64_t kRationalPrime = 2147483647;  // 2^31 - 1
constexpr std::uint64_t kFieldPrime = 2013265921;     // 15 * 2^27 + 1, 1 mod 8

// square roots of -1 and 2 modulo kFieldPrime
std::pair<std::uint64_t, std::uint64_t> field_roots() {
    const std::uint64_t p = kFieldPrime;
    std::uint64_t g = 2;
    while (modp::pow(g, (p - 1) / 2, p) == 1) ++g;
    std::uint64_t z = modp::pow(g, (p - 1) / 8, p);
    std::uint64_t z7 = modp::pow(z, 7, p);
    return {modp::mul(z, z, p), (z + z7) % p};
}

}  // namespace

std::size_t exact_rank(const std::vector<Vec<Rational>>& rows, std::size_t cols) {
    auto residue = [](const Rational& x) { return x.residue(kRationalPrime); };
    if (auto r = certified_rank<Rational, mpz_class, MpzDivider>(rows, cols, kRationalPrime, residue)) return *r;
    return echelon_rank(rows, cols);
}

std::size_t exact_rank(const std::vector<Vec<ExactScalar>>& rows, std::size_t cols) {
    static const auto roots = field_roots();
    const std::uint64_t p = kFieldPrime;
    const std::uint64_t basis[4] = {1, roots.first, roots.second, modp::mul(roots.first, roots.second, p)};
    auto residue = [&](const ExactScalar& x) -> std::optional<std::uint64_t> {
        std::uint64_t acc = 0;
        for (int k = 0; k < 4; ++k) {
            if (x.coord(k).is_zero()) continue;
            auto c = x.coord(k).residue(p);
            if (!c) return std::nullopt;
            acc = (acc + modp::mul(*c, basis[k], p)) % p;
        }
        return acc;
    };
    if (auto r = certified_rank<ExactScalar, Z4, Z4Divider>(rows, cols, p, residue)) return *r;
    return echelon_rank(rows, cols);
}

}  // namespace jorn
