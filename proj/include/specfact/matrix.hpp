#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "specfact/errors.hpp"

namespace specfact {

/// Dense row-major matrix over any exact ring-like value type.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0)) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw math_error("ragged matrix initializer");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    /// Upper-left n x n block.
    Matrix leading(std::size_t n) const {
        Matrix out(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) out(r, c) = (*this)(r, c);
        return out;
    }

    template <class F>
    auto map(F&& f) const {
        using U = decltype(f(a_.front()));
        Matrix<U> out(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = f((*this)(r, c));
        return out;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw math_error("matrix shape mismatch in product");
        Matrix out(x.rows_, y.cols_);
        for (std::size_t r = 0; r < x.rows_; ++r)
            for (std::size_t c = 0; c < y.cols_; ++c) {
                T acc(0);
                for (std::size_t k = 0; k < x.cols_; ++k) acc = acc + x(r, k) * y(k, c);
                out(r, c) = acc;
            }
        return out;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw math_error("matrix shape mismatch in sum");
        Matrix out = x;
        for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] = out.a_[k] + y.a_[k];
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

namespace detail {
template <class T>
bool entry_is_zero(const T& x) {
    return x == T(0);
}
}  // namespace detail

/// Solves A X = B for square nonsingular A by Gaussian elimination, taking the
/// first nonzero entry of each column as pivot. Throws inconsistent_input on
/// a singular A.
template <class T>
Matrix<T> solve(Matrix<T> a, Matrix<T> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) throw math_error("solve: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && detail::entry_is_zero(a(piv, col))) ++piv;
        if (piv == n) throw inconsistent_input("singular coefficient system");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
            for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(piv, c), b(col, c));
        }
        const T inv = T(1) / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (detail::entry_is_zero(a(r, col))) continue;
            const T f = a(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) a(r, c) = a(r, c) - f * a(col, c);
            for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) = b(r, c) - f * b(col, c);
        }
    }
    Matrix<T> x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t r = n; r-- > 0;) {
            T acc = b(r, c);
            for (std::size_t k = r + 1; k < n; ++k) acc = acc - a(r, k) * x(k, c);
            x(r, c) = acc / a(r, r);
        }
    }
    return x;
}

/// Some solution of A x = b (free variables set to zero), or nullopt when the
/// system is inconsistent. A may be rectangular.
template <class T>
std::optional<std::vector<T>> solve_any(Matrix<T> a, std::vector<T> b) {
    const std::size_t rows = a.rows(), cols = a.cols();
    if (b.size() != rows) throw math_error("solve_any: shape mismatch");
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && detail::entry_is_zero(a(piv, col))) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            for (std::size_t c = 0; c < cols; ++c) std::swap(a(piv, c), a(r, c));
            std::swap(b[piv], b[r]);
        }
        const T inv = T(1) / a(r, col);
        for (std::size_t c = col; c < cols; ++c) a(r, c) = a(r, c) * inv;
        b[r] = b[r] * inv;
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || detail::entry_is_zero(a(rr, col))) continue;
            const T f = a(rr, col);
            for (std::size_t c = col; c < cols; ++c) a(rr, c) = a(rr, c) - f * a(r, c);
            b[rr] = b[rr] - f * b[r];
        }
        pivot_cols.push_back(col);
        ++r;
    }
    for (std::size_t rr = r; rr < rows; ++rr)
        if (!detail::entry_is_zero(b[rr])) return std::nullopt;
    std::vector<T> x(cols, T(0));
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = b[k];
    return x;
}

/// Determinant by fraction-field elimination.
template <class T>
T determinant(Matrix<T> a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw math_error("determinant of a non-square matrix");
    T det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && detail::entry_is_zero(a(piv, col))) ++piv;
        if (piv == n) return T(0);
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
            det = -det;
        }
        det = det * a(col, col);
        const T inv = T(1) / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (detail::entry_is_zero(a(r, col))) continue;
            const T f = a(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) a(r, c) = a(r, c) - f * a(col, c);
        }
    }
    return det;
}

}  // namespace specfact
