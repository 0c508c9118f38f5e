#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <utility>
#include <vector>

#include "specfact/errors.hpp"
#include "specfact/field_tower.hpp"

namespace specfact {

// Scalar hooks for plain rationals, so the polynomial layer can be exercised over Q
// without a tower.
inline mpq_class conj(const mpq_class& x) { return x; }
inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline bool canonical_less(const mpq_class& a, const mpq_class& b) { return a < b; }
inline bool in_open_disk(const mpq_class& a) { return abs(a) < 1; }

/// Exact field usable as a coefficient domain.
template <class K>
concept ExactField = std::regular<K> && requires(const K& a, const K& b) {
    K(0);
    K(1);
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { conj(a) } -> std::convertible_to<K>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { canonical_less(a, b) } -> std::convertible_to<bool>;
};

// Class scopes below declare their own is_zero(); this routes to the scalar hook.
template <class K>
bool scalar_is_zero(const K& x) {
    return is_zero(x);
}

/// Dense polynomial with ascending coefficients; the zero polynomial has no coefficients.
template <ExactField K>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(const K& constant) {
        if (!scalar_is_zero(constant)) c_.push_back(constant);
    }

    /// c * z^k
    static Poly monomial(const K& c, std::size_t k) {
        std::vector<K> v(k + 1, K(0));
        v[k] = c;
        return Poly(std::move(v));
    }
    static Poly z() { return monomial(K(1), 1); }
    /// z - a
    static Poly linear(const K& a) { return Poly(std::vector<K>{-a, K(1)}); }

    const std::vector<K>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_constant() const { return c_.size() <= 1; }
    K coeff(std::size_t k) const { return k < c_.size() ? c_[k] : K(0); }
    const K& lead() const {
        if (c_.empty()) throw math_error("leading coefficient of the zero polynomial");
        return c_.back();
    }

    K operator()(const K& x) const {
        K acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly monic() const {
        if (c_.empty()) return *this;
        K l = lead();
        std::vector<K> v(c_);
        for (auto& c : v) c = c / l;
        return Poly(std::move(v));
    }

    Poly scaled(const K& s) const {
        std::vector<K> v(c_);
        for (auto& c : v) c = c * s;
        return Poly(std::move(v));
    }

    /// p(z + a)
    Poly shifted(const K& a) const {
        Poly acc;
        const Poly step = linear(-a);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * step + Poly(*it);
        return acc;
    }

    /// z^deg * conj(p)(1/z): coefficients reversed and conjugated.
    Poly reflected() const {
        std::vector<K> v;
        v.reserve(c_.size());
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v.push_back(conj(*it));
        return Poly(std::move(v));
    }

    Poly conjugated() const {
        std::vector<K> v;
        for (const auto& c : c_) v.push_back(conj(c));
        return Poly(std::move(v));
    }

    Poly operator-() const {
        std::vector<K> v(c_);
        for (auto& c : v) c = -c;
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] = a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] = v[k] + b.c_[k];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (scalar_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(v));
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && scalar_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<K> c_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
template <ExactField K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) throw math_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly<K>(), a};
    std::vector<K> rem(a.coeffs());
    std::vector<K> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), K(0));
    const K inv_lead = K(1) / b.lead();
    const auto db = static_cast<std::size_t>(b.degree());
    for (std::size_t k = quot.size(); k-- > 0;) {
        K q = rem[k + db] * inv_lead;
        quot[k] = q;
        if (is_zero(q)) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] = rem[k + j] - q * b.coeffs()[j];
    }
    rem.resize(db);
    return {Poly<K>(std::move(quot)), Poly<K>(std::move(rem))};
}

/// Exact quotient; throws when b does not divide a.
template <ExactField K>
Poly<K> exact_div(const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw math_error("inexact polynomial division");
    return q;
}

/// Monic gcd (zero when both arguments are zero).
template <ExactField K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

template <ExactField K>
Poly<K> lcm(const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<K>();
    return (exact_div(a, gcd(a, b)) * b).monic();
}

template <ExactField K>
Poly<K> pow(const Poly<K>& p, unsigned e) {
    Poly<K> acc(K(1)), base = p;
    while (e) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

/// Multiplicity of a as a root of p (p must be nonzero).
template <ExactField K>
int root_multiplicity(Poly<K> p, const K& a) {
    if (p.is_zero()) throw math_error("root multiplicity in the zero polynomial");
    int mult = 0;
    const Poly<K> lin = Poly<K>::linear(a);
    while (p.degree() >= 1 && is_zero(p(a))) {
        p = divmod(p, lin).first;
        ++mult;
    }
    return mult;
}

}  // namespace specfact
