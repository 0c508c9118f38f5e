#pragma once

// Powers of power series and the transfer matrices that map the coefficients of
// a reflected-pole expansion  u(z) = sum_l conj(c_l) z^l / (1 - conj(b) z)^l
// to the Taylor coefficients of u at a point a.

#include <cstddef>
#include <deque>
#include <mutex>
#include <span>
#include <vector>

#include "specfact/errors.hpp"
#include "specfact/matrix.hpp"
#include "specfact/ratfun.hpp"

namespace specfact {

/// First 'count' coefficients of (sum_k base[k] w^k)^power, built by repeated
/// Cauchy products starting from the constant series 1.
template <ExactField K>
std::vector<K> series_power(std::span<const K> base, unsigned power, std::size_t count) {
    std::vector<K> cur(count, K(0));
    if (count == 0) return cur;
    cur[0] = K(1);
    for (unsigned l = 0; l < power; ++l) {
        std::vector<K> next(count, K(0));
        for (std::size_t k = 0; k < count; ++k) {
            K acc(0);
            for (std::size_t j = 0; j <= k; ++j) {
                if (j >= base.size()) break;
                acc = acc + cur[k - j] * base[j];
            }
            next[k] = acc;
        }
        cur = std::move(next);
    }
    return cur;
}

template <ExactField K>
struct TransferMatrix {
    K a;  // expansion point
    K b;  // pole of the tilde-side function
    std::size_t rows = 0;  // L
    std::size_t cols = 0;  // N
    Matrix<K> entries;     // (k, l-1) = coefficient k of (z/(1 - conj(b) z))^l at a
};

/// Taylor coefficients at a of z/(1 - conj(b) z), by exact series division in w = z - a.
template <ExactField K>
std::vector<K> reflected_kernel_series(const K& a, const K& b, std::size_t count) {
    const K bc = conj(b);
    std::vector<K> num{a, K(1)};
    std::vector<K> den{K(1) - bc * a, -bc};
    if (scalar_is_zero(den[0])) throw math_error("expansion point coincides with the reflected pole");
    return series_divide(num, den, count);
}

template <ExactField K>
TransferMatrix<K> transfer_matrix(const K& a, const K& b, std::size_t rows, std::size_t cols) {
    TransferMatrix<K> t{a, b, rows, cols, Matrix<K>(rows, cols)};
    const std::vector<K> base = reflected_kernel_series(a, b, rows);
    for (std::size_t l = 1; l <= cols; ++l) {
        std::vector<K> p = series_power<K>(base, static_cast<unsigned>(l), rows);
        for (std::size_t k = 0; k < rows; ++k) t.entries(k, l - 1) = p[k];
    }
    return t;
}

/// Taylor coefficients c_0..c_{L-1} at a; the caller passes already conjugated coefficients.
template <ExactField K>
std::vector<K> apply_transfer(const TransferMatrix<K>& t, std::span<const K> reflected) {
    if (reflected.size() != t.cols) throw math_error("transfer matrix: coefficient count mismatch");
    std::vector<K> out(t.rows, K(0));
    for (std::size_t k = 0; k < t.rows; ++k)
        for (std::size_t l = 0; l < t.cols; ++l) out[k] = out[k] + t.entries(k, l) * reflected[l];
    return out;
}

/// Memo of transfer matrices keyed by (a, b, L, N); safe to share across threads.
template <ExactField K>
class TransferCache {
public:
    const TransferMatrix<K>& get(const K& a, const K& b, std::size_t rows, std::size_t cols) {
        std::lock_guard<std::mutex> lock(mutex_);
        for (const auto& t : store_)
            if (t.rows == rows && t.cols == cols && t.a == a && t.b == b) return t;
        store_.push_back(transfer_matrix(a, b, rows, cols));
        return store_.back();
    }

private:
    std::mutex mutex_;
    std::deque<TransferMatrix<K>> store_;
};

}  // namespace specfact
