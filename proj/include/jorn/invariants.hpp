#pragma once

#include "jorn/exact_rank.hpp"
#include "jorn/tensor.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace jorn {

struct NotNilpotent : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotJordan : std::domain_error {
    NotJordan() : std::domain_error("algebra does not satisfy the Jordan identity") {}
};

struct InvariantProfile {
    int dim = 0;
    int ann_dim = 0;
    std::vector<int> power_dims;  // dim J^m for m = 1..nilindex, last entry 0
    int nilindex = 0;
    std::vector<int> nilpotency_type;
    int center_dim = 0;
    int jacobi_dim = 0;
    int der_dim = 0;
    int orbit_dim = 0;
    int z2_dim = 0;
    int b2_dim = 0;
    int h2_dim = 0;
    bool associative = false;

    int square_dim() const { return power_dims.size() > 1 ? power_dims[1] : 0; }
    // dim J^m, 0 beyond the nilindex
    int power_dim(int m) const {
        return m >= 1 && m <= static_cast<int>(power_dims.size()) ? power_dims[static_cast<std::size_t>(m - 1)] : 0;
    }
    friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;
};

template <class F>
std::size_t rank_of(const std::vector<Vec<F>>& rows, std::size_t cols) {
    if constexpr (std::is_same_v<F, Rational> || std::is_same_v<F, ExactScalar>) {
        return exact_rank(rows, cols);
    } else {
        Echelon<F> e(cols);
        for (const auto& r : rows) {
            e.add(r);
            if (e.full()) break;
        }
        return e.rank();
    }
}

template <class F>
Subspace<F> annihilator(const Tensor<F>& t) {
    int n = t.dim();
    std::vector<Vec<F>> rows;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Vec<F> r(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) r[i] = t.at(i, j, k);
            if (!is_zero_vec(r)) rows.push_back(std::move(r));
        }
    if (rows.empty()) return Subspace<F>::whole(n);
    return Subspace<F>(n, Matrix<F>::from_rows(rows, static_cast<std::size_t>(n)).nullspace());
}

template <class F>
int ann_dim(const Tensor<F>& t) {
    return annihilator(t).dim();
}

template <class F>
std::vector<Subspace<F>> power_subspaces(const Tensor<F>& t) {
    int n = t.dim();
    std::vector<Subspace<F>> pw{Subspace<F>::whole(n)};
    if (n == 0) return pw;
    for (int m = 2;; ++m) {
        std::vector<Vec<F>> rows;
        for (int k = 1; k < m; ++k) {
            auto p = subspace_product(t, pw[static_cast<std::size_t>(m - k - 1)], pw[static_cast<std::size_t>(k - 1)]);
            rows.insert(rows.end(), p.basis().begin(), p.basis().end());
        }
        Subspace<F> next(n, rows);
        if (next.dim() > 0 && next.dim() >= pw.back().dim())
            throw NotNilpotent("power chain stabilizes at dimension " + std::to_string(next.dim()));
        pw.push_back(std::move(next));
        if (pw.back().dim() == 0) return pw;
    }
}

template <class F>
std::vector<int> power_dims(const Tensor<F>& t) {
    std::vector<int> out;
    for (const auto& s : power_subspaces(t)) out.push_back(s.dim());
    return out;
}

// associators (e_a e_b) e_c - e_a (e_b e_c)
template <class F>
std::vector<Vec<F>> associators(const Tensor<F>& t) {
    int n = t.dim();
    ProductCache<F> pc(t);
    std::vector<Vec<F>> as(static_cast<std::size_t>(n * n * n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Vec<F> l = pc.right(pc(a, b), c);
                Vec<F> r = pc.right(pc(b, c), a);
                for (int k = 0; k < n; ++k) l[k] -= r[k];
                as[static_cast<std::size_t>((a * n + b) * n + c)] = std::move(l);
            }
    return as;
}

template <class F>
int center_dim(const Tensor<F>& t) {
    int n = t.dim();
    auto as = associators(t);
    auto A = [&](int a, int b, int c) -> const Vec<F>& { return as[static_cast<std::size_t>((a * n + b) * n + c)]; };
    std::vector<Vec<F>> rows;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int slot = 0; slot < 3; ++slot)
                for (int k = 0; k < n; ++k) {
                    Vec<F> r(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) {
                        const Vec<F>& v = slot == 0 ? A(i, x, y) : slot == 1 ? A(x, i, y) : A(x, y, i);
                        r[i] = v[k];
                    }
                    if (!is_zero_vec(r)) rows.push_back(std::move(r));
                }
    return n - static_cast<int>(rank_of(rows, static_cast<std::size_t>(n)));
}

template <class F>
int jacobi_dim(const Tensor<F>& t) {
    int n = t.dim();
    ProductCache<F> pc(t);
    std::vector<Vec<F>> rows;
    for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y) {
            // column i holds e_i(xy) - (e_i x)y - x(e_i y)
            std::vector<Vec<F>> cols;
            for (int i = 0; i < n; ++i) {
                Vec<F> v = pc.right(pc(x, y), i);
                Vec<F> a = pc.right(pc(i, x), y);
                Vec<F> b = pc.right(pc(i, y), x);
                for (int k = 0; k < n; ++k) v[k] -= a[k] + b[k];
                cols.push_back(std::move(v));
            }
            for (int k = 0; k < n; ++k) {
                Vec<F> r(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) r[i] = cols[i][k];
                if (!is_zero_vec(r)) rows.push_back(std::move(r));
            }
        }
    return n - static_cast<int>(rank_of(rows, static_cast<std::size_t>(n)));
}

// Rows of the derivation system in the unknowns D_ab (D e_a = sum_b D_ab e_b).
template <class F>
std::vector<Vec<F>> derivation_rows(const Tensor<F>& t) {
    int n = t.dim();
    std::vector<Vec<F>> rows;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Vec<F> r(static_cast<std::size_t>(n * n));
                for (int a = 0; a < n; ++a) r[a * n + k] += t.at(i, j, a);
                for (int b = 0; b < n; ++b) {
                    r[i * n + b] -= t.at(b, j, k);
                    r[j * n + b] -= t.at(i, b, k);
                }
                if (!is_zero_vec(r)) rows.push_back(std::move(r));
            }
    return rows;
}

template <class F>
int der_dim(const Tensor<F>& t) {
    int n = t.dim();
    return n * n - static_cast<int>(rank_of(derivation_rows(t), static_cast<std::size_t>(n * n)));
}

template <class F>
int orbit_dim(const Tensor<F>& t) {
    return t.dim() * t.dim() - der_dim(t);
}

// Unknowns of a symmetric bilinear map h: h_{uv}^w with u <= v.
struct CochainIndex {
    explicit CochainIndex(int n) : n(n), pair(static_cast<std::size_t>(n * n)) {
        int p = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u; v < n; ++v) {
                pair[static_cast<std::size_t>(u * n + v)] = p;
                pair[static_cast<std::size_t>(v * n + u)] = p;
                ++p;
            }
        pairs = p;
    }
    int unknown(int p, int w) const { return p * n + w; }
    int size() const { return pairs * n; }
    int n;
    int pairs;
    std::vector<int> pair;
};

namespace detail {

// pair weights of h(A, B) = sum_{u<=v} s_uv h_{uv}
template <class F>
Vec<F> sym_weights(const CochainIndex& ci, const Vec<F>& a, const Vec<F>& b) {
    int n = ci.n;
    Vec<F> s(static_cast<std::size_t>(ci.pairs));
    for (int u = 0; u < n; ++u) {
        if (a[u].is_zero()) continue;
        for (int v = 0; v < n; ++v)
            if (!b[v].is_zero()) s[ci.pair[static_cast<std::size_t>(u * n + v)]] += a[u] * b[v];
    }
    return s;
}

// adds sign * s_p * M[w][k] to block[k][unknown(p, w)]
template <class F>
void add_term(const CochainIndex& ci, std::vector<Vec<F>>& block, const Vec<F>& s, const std::vector<Vec<F>>& M, bool negate) {
    int n = ci.n;
    for (int p = 0; p < ci.pairs; ++p) {
        if (s[p].is_zero()) continue;
        for (int w = 0; w < n; ++w)
            for (int k = 0; k < n; ++k) {
                const F& m = M[w][k];
                if (m.is_zero()) continue;
                F v = s[p] * m;
                if (negate) {
                    block[k][ci.unknown(p, w)] -= v;
                } else {
                    block[k][ci.unknown(p, w)] += v;
                }
            }
    }
}

}  // namespace detail

// Symmetric bilinear h with mu + s*h satisfying the polarized Jordan
// identity to first order in s.
template <class F>
int z2_dim(const Tensor<F>& t) {
    int n = t.dim();
    CochainIndex ci(n);
    ProductCache<F> pc(t);
    auto unit = [&](int i) { return unit_vector<F>(n, i); };
    std::vector<Vec<F>> ident(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) ident[w] = unit(w);
    // right multiplication map R_v as rows w -> e_w v
    auto right = [&](const Vec<F>& v) {
        std::vector<Vec<F>> M(static_cast<std::size_t>(n));
        for (int w = 0; w < n; ++w) M[w] = pc.mul(unit(w), v);
        return M;
    };
    std::vector<std::vector<Vec<F>>> R(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) R[r] = right(unit(r));

    std::vector<Vec<F>> rows;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c) {
                const std::array<std::array<int, 3>, 3> perms{{{b, c, a}, {a, c, b}, {a, b, c}}};
                for (int y = 0; y < n; ++y) {
                    std::vector<Vec<F>> block(static_cast<std::size_t>(n), Vec<F>(static_cast<std::size_t>(ci.size())));
                    for (const auto& [p, q, r] : perms) {
                        const Vec<F>& pq = pc(p, q);
                        Vec<F> pqy = pc.right(pq, y);
                        const Vec<F>& yr = pc(y, r);
                        Vec<F> ep = unit(p), eq = unit(q), ey = unit(y), er = unit(r);
                        Vec<F> s_pq = detail::sym_weights(ci, ep, eq);
                        // ((pq) y) r
                        detail::add_term(ci, block, detail::sym_weights(ci, pqy, er), ident, false);
                        detail::add_term(ci, block, detail::sym_weights(ci, pq, ey), R[r], false);
                        std::vector<Vec<F>> Ryr(static_cast<std::size_t>(n));
                        for (int w = 0; w < n; ++w) Ryr[w] = pc.right(R[y][w], r);
                        detail::add_term(ci, block, s_pq, Ryr, false);
                        // (pq)(y r)
                        detail::add_term(ci, block, detail::sym_weights(ci, pq, yr), ident, true);
                        detail::add_term(ci, block, s_pq, right(yr), true);
                        detail::add_term(ci, block, detail::sym_weights(ci, ey, er), right(pq), true);
                    }
                    for (auto& row : block)
                        if (!is_zero_vec(row)) rows.push_back(std::move(row));
                }
            }
    return ci.size() - static_cast<int>(rank_of(rows, static_cast<std::size_t>(ci.size())));
}

// Coboundary df(x, y) = f(x) y + x f(y) - f(xy) of the elementary maps
// f = E_ab, as vectors over (pair, component).
template <class F>
std::vector<Vec<F>> coboundaries(const Tensor<F>& t) {
    int n = t.dim();
    CochainIndex ci(n);
    ProductCache<F> pc(t);
    std::vector<Vec<F>> out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto f = [&](const Vec<F>& x) {
                Vec<F> r(static_cast<std::size_t>(n));
                r[b] = x[a];
                return r;
            };
            Vec<F> v(static_cast<std::size_t>(ci.size()));
            for (int u = 0; u < n; ++u)
                for (int w = u; w < n; ++w) {
                    Vec<F> x = unit_vector<F>(n, u), y = unit_vector<F>(n, w);
                    Vec<F> d = pc.mul(f(x), y);
                    Vec<F> e = pc.mul(x, f(y));
                    Vec<F> g = f(pc(u, w));
                    int p = ci.pair[static_cast<std::size_t>(u * n + w)];
                    for (int k = 0; k < n; ++k) v[ci.unknown(p, k)] = d[k] + e[k] - g[k];
                }
            out.push_back(std::move(v));
        }
    return out;
}

template <class F>
int b2_dim(const Tensor<F>& t) {
    CochainIndex ci(t.dim());
    return static_cast<int>(rank_of(coboundaries(t), static_cast<std::size_t>(ci.size())));
}

template <class F>
int h2_dim(const Tensor<F>& t) {
    return z2_dim(t) - b2_dim(t);
}

template <class F>
InvariantProfile compute_profile(const Tensor<F>& t) {
    if (!is_jordan(t)) throw NotJordan();
    InvariantProfile p;
    int n = t.dim();
    p.dim = n;
    p.ann_dim = ann_dim(t);
    p.power_dims = power_dims(t);
    p.nilindex = static_cast<int>(p.power_dims.size());
    for (std::size_t m = 0; m + 1 < p.power_dims.size(); ++m)
        p.nilpotency_type.push_back(p.power_dims[m] - p.power_dims[m + 1]);
    p.center_dim = center_dim(t);
    p.jacobi_dim = jacobi_dim(t);
    p.der_dim = der_dim(t);
    p.orbit_dim = n * n - p.der_dim;
    p.z2_dim = z2_dim(t);
    p.b2_dim = b2_dim(t);
    if (p.b2_dim != n * n - p.der_dim)
        throw std::logic_error("coboundary rank " + std::to_string(p.b2_dim) + " differs from n^2 - der");
    p.h2_dim = p.z2_dim - p.b2_dim;
    p.associative = is_associative(t);
    return p;
}

// Uses the rational instantiation when every constant is rational.
InvariantProfile invariant_profile(const Tensor<ExactScalar>& t);

std::string format_profile(const InvariantProfile& p);
std::string format_dims(const std::vector<int>& v);

}  // namespace jorn
