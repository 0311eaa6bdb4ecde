#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jorn {

struct SingularMatrix : std::domain_error {
    SingularMatrix() : std::domain_error("singular matrix") {}
};

template <class F>
using Vec = std::vector<F>;

// Dense row-major matrix over an exact field F.
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }
    static Matrix from_rows(const std::vector<Vec<F>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    F& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Vec<F> row(std::size_t i) const { return Vec<F>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.c_ != y.r_) throw std::invalid_argument("dimension mismatch");
        Matrix z(x.r_, y.c_);
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t k = 0; k < x.c_; ++k) {
                const F& v = x(i, k);
                if (v.is_zero()) continue;
                for (std::size_t j = 0; j < y.c_; ++j)
                    if (!y(k, j).is_zero()) z(i, j) += v * y(k, j);
            }
        return z;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> piv;
        std::size_t r = 0;
        for (std::size_t col = 0; col < c_ && r < r_; ++col) {
            std::size_t p = r;
            while (p < r_ && (*this)(p, col).is_zero()) ++p;
            if (p == r_) continue;
            swap_rows(p, r);
            F inv = F(1) / (*this)(r, col);
            for (std::size_t j = col; j < c_; ++j)
                if (!(*this)(r, j).is_zero()) (*this)(r, j) *= inv;
            for (std::size_t i = 0; i < r_; ++i) {
                if (i == r || (*this)(i, col).is_zero()) continue;
                F f = (*this)(i, col);
                for (std::size_t j = col; j < c_; ++j)
                    if (!(*this)(r, j).is_zero()) (*this)(i, j) -= f * (*this)(r, j);
            }
            piv.push_back(col);
            ++r;
        }
        return piv;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    // Basis of {x : M x = 0}, one vector per free column.
    std::vector<Vec<F>> nullspace() const {
        Matrix m = *this;
        auto piv = m.rref();
        std::vector<bool> is_piv(c_, false);
        for (auto p : piv) is_piv[p] = true;
        std::vector<Vec<F>> out;
        for (std::size_t f = 0; f < c_; ++f) {
            if (is_piv[f]) continue;
            Vec<F> v(c_);
            v[f] = F(1);
            for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
            out.push_back(std::move(v));
        }
        return out;
    }

    F det() const {
        if (r_ != c_) throw std::invalid_argument("determinant of non-square matrix");
        Matrix m = *this;
        F d(1);
        for (std::size_t col = 0; col < c_; ++col) {
            std::size_t p = col;
            while (p < r_ && m(p, col).is_zero()) ++p;
            if (p == r_) return F(0);
            if (p != col) {
                m.swap_rows(p, col);
                d = -d;
            }
            const F piv = m(col, col);
            d *= piv;
            F inv = F(1) / piv;
            for (std::size_t i = col + 1; i < r_; ++i) {
                if (m(i, col).is_zero()) continue;
                F f = m(i, col) * inv;
                for (std::size_t j = col; j < c_; ++j)
                    if (!m(col, j).is_zero()) m(i, j) -= f * m(col, j);
            }
        }
        return d;
    }

    Matrix inverse() const {
        if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
        std::size_t n = r_;
        Matrix aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = F(1);
        }
        auto piv = aug.rref();
        if (piv.size() < n || piv[n - 1] != n - 1) throw SingularMatrix();
        Matrix inv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
        return inv;
    }

    template <class G, class Fn>
    Matrix<G> map(Fn fn) const {
        Matrix<G> m(r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(i, j) = fn((*this)(i, j));
        return m;
    }

private:
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<F> a_;
};

// Row echelon basis grown one vector at a time. Suited to tall systems
// where rows arrive from a generator and only the rank matters.
template <class F>
class Echelon {
public:
    explicit Echelon(std::size_t cols) : cols_(cols), pivot_row_(cols, npos) {}

    // returns true when v was independent of the rows added so far
    bool add(Vec<F> v) {
        for (std::size_t col = 0; col < cols_; ++col) {
            if (v[col].is_zero()) continue;
            std::size_t r = pivot_row_[col];
            if (r == npos) {
                F inv = F(1) / v[col];
                for (std::size_t j = col; j < cols_; ++j)
                    if (!v[j].is_zero()) v[j] *= inv;
                pivot_row_[col] = rows_.size();
                rows_.push_back(std::move(v));
                return true;
            }
            F f = v[col];
            const Vec<F>& b = rows_[r];
            for (std::size_t j = col; j < cols_; ++j)
                if (!b[j].is_zero()) v[j] -= f * b[j];
        }
        return false;
    }

    std::size_t rank() const { return rows_.size(); }
    bool full() const { return rows_.size() == cols_; }
    const std::vector<Vec<F>>& rows() const { return rows_; }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t cols_;
    std::vector<std::size_t> pivot_row_;
    std::vector<Vec<F>> rows_;
};

}  // namespace jorn
