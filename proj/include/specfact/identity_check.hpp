#pragma once

// Exact verification of rational-function matrix identities by evaluation.
// If h * D is a polynomial of degree at most B for a known D, and h vanishes at
// B + 1 points where D does not, then h is identically zero. The bounds below
// only count degrees, so no polynomial gcd is ever taken.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "specfact/matrix.hpp"
#include "specfact/ratfun.hpp"

namespace specfact {

namespace detail {

template <ExactField K>
int excess(const RationalFunction<K>& f) {
    return f.num().degree() - f.den().degree();
}

// count integer points 2, 3, ... avoiding every root of the given denominators
template <ExactField K>
std::vector<K> sample_points(std::size_t count, const std::vector<const Poly<K>*>& dens) {
    std::vector<K> pts;
    for (long x = 2; pts.size() < count; ++x) {
        const K p(x);
        bool ok = true;
        for (const auto* d : dens)
            if (scalar_is_zero((*d)(p))) {
                ok = false;
                break;
            }
        if (ok) pts.push_back(p);
    }
    return pts;
}

template <ExactField K>
void collect_dens(const Matrix<RationalFunction<K>>& m, std::vector<const Poly<K>*>& out) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c).den().degree() > 0) out.push_back(&m(r, c).den());
}

}  // namespace detail

/// Entries (i, j) where x1 * y1 and x2 * y2 differ, as rational-function matrices.
template <ExactField K>
std::vector<std::pair<std::size_t, std::size_t>> product_mismatches(const Matrix<RationalFunction<K>>& x1,
                                                                    const Matrix<RationalFunction<K>>& y1,
                                                                    const Matrix<RationalFunction<K>>& x2,
                                                                    const Matrix<RationalFunction<K>>& y2) {
    if (x1.cols() != y1.rows() || x2.cols() != y2.rows() || x1.rows() != x2.rows() || y1.cols() != y2.cols())
        throw math_error("matrix shape mismatch in identity check");
    const std::size_t rows = x1.rows(), cols = y1.cols();
    int bound = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            int dtot = 0, top = 0;
            auto side = [&](const Matrix<RationalFunction<K>>& x, const Matrix<RationalFunction<K>>& y) {
                for (std::size_t k = 0; k < x.cols(); ++k) {
                    dtot += x(i, k).den().degree() + y(k, j).den().degree();
                    if (!x(i, k).is_zero() && !y(k, j).is_zero())
                        top = std::max(top, detail::excess(x(i, k)) + detail::excess(y(k, j)));
                }
            };
            side(x1, y1);
            side(x2, y2);
            bound = std::max(bound, dtot + top);
        }
    std::vector<const Poly<K>*> dens;
    for (const auto* m : {&x1, &y1, &x2, &y2}) detail::collect_dens(*m, dens);
    std::vector<std::vector<bool>> bad(rows, std::vector<bool>(cols, false));
    for (const K& p : detail::sample_points<K>(static_cast<std::size_t>(bound) + 1, dens)) {
        auto at = [&p](const RationalFunction<K>& f) { return f(p); };
        const Matrix<K> lhs = x1.map(at) * y1.map(at), rhs = x2.map(at) * y2.map(at);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (!(lhs(i, j) == rhs(i, j))) bad[i][j] = true;
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (bad[i][j]) out.emplace_back(i, j);
    return out;
}

/// x * y == z as rational-function matrices.
template <ExactField K>
bool product_equals(const Matrix<RationalFunction<K>>& x, const Matrix<RationalFunction<K>>& y,
                    const Matrix<RationalFunction<K>>& z) {
    if (z.rows() != x.rows() || z.cols() != y.cols()) throw math_error("matrix shape mismatch in identity check");
    return product_mismatches(x, y, z, Matrix<RationalFunction<K>>::identity(z.cols())).empty();
}

/// det x == c.
template <ExactField K>
bool determinant_equals(const Matrix<RationalFunction<K>>& x, const RationalFunction<K>& c) {
    if (x.rows() != x.cols()) throw math_error("determinant of a non-square matrix");
    int dtot = c.den().degree(), top = c.is_zero() ? 0 : detail::excess(c), sum = 0;
    bool zero_row = false;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        int row_max = 0;
        bool any = false;
        for (std::size_t j = 0; j < x.cols(); ++j) {
            dtot += x(i, j).den().degree();
            if (x(i, j).is_zero()) continue;
            row_max = any ? std::max(row_max, detail::excess(x(i, j))) : detail::excess(x(i, j));
            any = true;
        }
        if (!any) zero_row = true;
        sum += row_max;
    }
    if (zero_row) return c.is_zero();
    const int bound = dtot + std::max({top, sum, 0});
    std::vector<const Poly<K>*> dens;
    detail::collect_dens(x, dens);
    if (c.den().degree() > 0) dens.push_back(&c.den());
    for (const K& p : detail::sample_points<K>(static_cast<std::size_t>(bound) + 1, dens)) {
        Matrix<K> v = x.map([&p](const RationalFunction<K>& f) { return f(p); });
        if (!(determinant(v) == c(p))) return false;
    }
    return true;
}

}  // namespace specfact
