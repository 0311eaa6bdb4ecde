#pragma once

#include "jorn/matrix.hpp"
#include "jorn/ratfunc.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace jorn {

// Structure constants c_ij^k of a commutative algebra with basis e_1..e_n
// (stored 0-based). set() keeps c_ij = c_ji.
template <class F>
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(int n) : n_(n), c_(static_cast<std::size_t>(n * n * n)) {
        if (n < 0 || n > 8) throw std::invalid_argument("tensor dimension out of range");
    }

    int dim() const { return n_; }
    const F& at(int i, int j, int k) const { return c_[idx(i, j, k)]; }
    void set(int i, int j, int k, const F& v) {
        c_[idx(i, j, k)] = v;
        c_[idx(j, i, k)] = v;
    }
    void set_raw(int i, int j, int k, const F& v) { c_[idx(i, j, k)] = v; }

    // e_i * e_j as a coordinate vector
    Vec<F> basis_product(int i, int j) const {
        return Vec<F>(c_.begin() + idx(i, j, 0), c_.begin() + idx(i, j, 0) + n_);
    }

    Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const {
        if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
            throw std::invalid_argument("dimension mismatch");
        Vec<F> out(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < n_; ++j) {
                if (y[j].is_zero()) continue;
                F s = x[i] * y[j];
                for (int k = 0; k < n_; ++k) {
                    const F& c = at(i, j, k);
                    if (!c.is_zero()) out[k] += s * c;
                }
            }
        }
        return out;
    }

    // x * e_j
    Vec<F> multiply_basis(const Vec<F>& x, int j) const {
        Vec<F> out(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            if (x[i].is_zero()) continue;
            for (int k = 0; k < n_; ++k) {
                const F& c = at(i, j, k);
                if (!c.is_zero()) out[k] += x[i] * c;
            }
        }
        return out;
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!v.is_zero()) return false;
        return true;
    }

    template <class G, class Fn>
    Tensor<G> map(Fn fn) const {
        Tensor<G> t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) t.set_raw(i, j, k, fn(at(i, j, k)));
        return t;
    }

    friend bool operator==(const Tensor& a, const Tensor& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

private:
    std::size_t idx(int i, int j, int k) const { return static_cast<std::size_t>((i * n_ + j) * n_ + k); }

    int n_ = 0;
    std::vector<F> c_;
};

template <class F>
Vec<F> unit_vector(int n, int i) {
    Vec<F> v(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(i)] = F(1);
    return v;
}

template <class F>
void axpy(Vec<F>& acc, const F& s, const Vec<F>& v) {
    if (s.is_zero()) return;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) acc[k] += s * v[k];
}

template <class F>
bool is_zero_vec(const Vec<F>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

template <class F>
bool is_commutative(const Tensor<F>& t) {
    int n = t.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!(t.at(i, j, k) == t.at(j, i, k))) return false;
    return true;
}

// Products (e_i e_j) e_k and e_i (e_j e_k) precomputed as vectors.
template <class F>
struct ProductCache {
    explicit ProductCache(const Tensor<F>& t) : n(t.dim()), m(static_cast<std::size_t>(n * n)) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i * n + j)] = t.basis_product(i, j);
    }
    const Vec<F>& operator()(int i, int j) const { return m[static_cast<std::size_t>(i * n + j)]; }
    // v * e_j
    Vec<F> right(const Vec<F>& v, int j) const {
        Vec<F> out(static_cast<std::size_t>(n));
        for (int w = 0; w < n; ++w)
            if (!v[w].is_zero()) axpy(out, v[w], (*this)(w, j));
        return out;
    }
    Vec<F> mul(const Vec<F>& x, const Vec<F>& y) const {
        Vec<F> out(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < n; ++j)
                if (!y[j].is_zero()) axpy(out, x[i] * y[j], (*this)(i, j));
        }
        return out;
    }
    int n;
    std::vector<Vec<F>> m;
};

// Fully polarized Jordan identity on basis triples a<=b<=c and every d:
// sum over r in {a,b,c} of ((x_p x_q) e_d) x_r - (x_p x_q)(e_d x_r) = 0.
template <class F>
bool is_jordan(const Tensor<F>& t) {
    if (!is_commutative(t)) return false;
    int n = t.dim();
    ProductCache<F> pc(t);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c) {
                const std::array<std::array<int, 3>, 3> perms{{{b, c, a}, {a, c, b}, {a, b, c}}};
                for (int d = 0; d < n; ++d) {
                    Vec<F> tot(static_cast<std::size_t>(n));
                    for (const auto& [p, q, r] : perms) {
                        const Vec<F>& pq = pc(p, q);
                        Vec<F> lhs = pc.right(pc.right(pq, d), r);
                        Vec<F> rhs = pc.mul(pq, pc(d, r));
                        for (int k = 0; k < n; ++k) tot[k] += lhs[k] - rhs[k];
                    }
                    if (!is_zero_vec(tot)) return false;
                }
            }
    return true;
}

template <class F>
bool is_associative(const Tensor<F>& t) {
    int n = t.dim();
    ProductCache<F> pc(t);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Vec<F> l = pc.right(pc(a, b), c);
                Vec<F> r = pc.right(pc(b, c), a);
                if (!(l == r)) return false;
            }
    return true;
}

// Rows of g are the new basis vectors in old coordinates.
template <class F>
Tensor<F> apply_basis_change(const Tensor<F>& t, const Matrix<F>& g) {
    int n = t.dim();
    if (static_cast<int>(g.rows()) != n || static_cast<int>(g.cols()) != n)
        throw std::invalid_argument("dimension mismatch");
    Matrix<F> ginv = g.inverse();
    Tensor<F> out(n);
    std::vector<Vec<F>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(g.row(static_cast<std::size_t>(i)));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Vec<F> v = t.multiply(rows[i], rows[j]);
            for (int k = 0; k < n; ++k) {
                F s;
                for (int l = 0; l < n; ++l)
                    if (!v[l].is_zero() && !ginv(l, k).is_zero()) s += v[l] * ginv(l, k);
                out.set(i, j, k, s);
            }
        }
    return out;
}

// apply(apply(t, g), h) == apply(t, compose(g, h))
template <class F>
Matrix<F> compose(const Matrix<F>& g, const Matrix<F>& h) {
    return h * g;
}

template <class F>
Tensor<F> direct_sum(const Tensor<F>& a, const Tensor<F>& b) {
    int na = a.dim(), nb = b.dim();
    Tensor<F> out(na + nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < na; ++k) out.set_raw(i, j, k, a.at(i, j, k));
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < nb; ++k) out.set_raw(na + i, na + j, na + k, b.at(i, j, k));
    return out;
}

template <class F>
Tensor<F> scale(const Tensor<F>& t, const F& s) {
    return t.template map<F>([&](const F& v) { return v * s; });
}

// Subspace of F^n held as a reduced row echelon basis.
template <class F>
class Subspace {
public:
    Subspace() = default;
    Subspace(int n, const std::vector<Vec<F>>& spanning) : n_(n) {
        if (spanning.empty()) return;
        Matrix<F> m = Matrix<F>::from_rows(spanning, static_cast<std::size_t>(n));
        auto piv = m.rref();
        for (std::size_t i = 0; i < piv.size(); ++i) basis_.push_back(m.row(i));
    }
    static Subspace whole(int n) {
        std::vector<Vec<F>> rows;
        for (int i = 0; i < n; ++i) rows.push_back(unit_vector<F>(n, i));
        return Subspace(n, rows);
    }

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec<F>>& basis() const { return basis_; }

    bool contains(const Subspace& other) const {
        std::vector<Vec<F>> rows = basis_;
        rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
        return Subspace(n_, rows).dim() == dim();
    }
    friend Subspace operator+(const Subspace& a, const Subspace& b) {
        std::vector<Vec<F>> rows = a.basis_;
        rows.insert(rows.end(), b.basis_.begin(), b.basis_.end());
        return Subspace(a.n_, rows);
    }
    friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

private:
    int n_ = 0;
    std::vector<Vec<F>> basis_;
};

template <class F>
Subspace<F> subspace_product(const Tensor<F>& t, const Subspace<F>& u, const Subspace<F>& v) {
    std::vector<Vec<F>> rows;
    for (const auto& x : u.basis())
        for (const auto& y : v.basis()) {
            Vec<F> p = t.multiply(x, y);
            if (!is_zero_vec(p)) rows.push_back(std::move(p));
        }
    return Subspace<F>(t.dim(), rows);
}

Tensor<ExactScalar> to_scalar(const Tensor<Rational>& t);
Tensor<RatFunc> to_ratfunc(const Tensor<ExactScalar>& t);
bool is_rational(const Tensor<ExactScalar>& t);
Tensor<Rational> to_rational(const Tensor<ExactScalar>& t);
// c * t with c > 0 chosen so all coordinates are coprime integers
Tensor<ExactScalar> clear_denominators(const Tensor<ExactScalar>& t);
Matrix<ExactScalar> to_scalar(const Matrix<Rational>& m);
Matrix<RatFunc> to_ratfunc(const Matrix<ExactScalar>& m);

std::string format_table(const Tensor<ExactScalar>& t);

}  // namespace jorn
