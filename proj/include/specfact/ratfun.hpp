#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "specfact/errors.hpp"
#include "specfact/poly.hpp"

namespace specfact {

/// Rational function num/den kept canonical: gcd(num, den) = 1, den monic, 0 = 0/1.
/// Equality of rational functions is therefore equality of the two polynomials.
template <ExactField K>
class RationalFunction {
public:
    RationalFunction() : den_(K(1)) {}
    RationalFunction(const K& c) : num_(c), den_(K(1)) {}
    explicit RationalFunction(Poly<K> p) : num_(std::move(p)), den_(K(1)) {}
    RationalFunction(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw math_error("rational function with zero denominator");
        canonicalize();
    }

    static RationalFunction z() { return RationalFunction(Poly<K>::z()); }

    /// num/den when the caller already knows gcd(num, den) = 1; only the leading
    /// coefficient of den is normalized.
    static RationalFunction from_coprime(Poly<K> num, Poly<K> den) {
        if (den.is_zero()) throw math_error("rational function with zero denominator");
        return RationalFunction(std::move(num), std::move(den), monic_tag{});
    }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return is_polynomial() && num_.is_constant(); }
    K constant_value() const {
        if (!is_constant()) throw math_error("rational function is not constant");
        return num_.coeff(0);
    }

    K operator()(const K& x) const {
        K d = den_(x);
        if (is_zero_scalar(d)) throw math_error("evaluation at a pole");
        return num_(x) / d;
    }

    RationalFunction operator-() const { return RationalFunction(-num_, den_, canonical_tag{}); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        Poly<K> g = gcd(a.den_, b.den_);
        Poly<K> ad = exact_div(a.den_, g), bd = exact_div(b.den_, g);
        return RationalFunction(a.num_ * bd + b.num_ * ad, a.den_ * bd);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return RationalFunction();
        if (a.is_constant()) return b.scaled(a.constant_value());
        if (b.is_constant()) return a.scaled(b.constant_value());
        // cross-cancellation keeps the product canonical without a full gcd of the products
        Poly<K> g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        Poly<K> n = exact_div(a.num_, g1) * exact_div(b.num_, g2);
        Poly<K> d = exact_div(a.den_, g2) * exact_div(b.den_, g1);
        return RationalFunction(std::move(n), std::move(d), monic_tag{});
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw math_error("division by the zero rational function");
        return a * b.reciprocal();
    }
    RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
    RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
    RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
    RationalFunction& operator/=(const RationalFunction& b) { return *this = *this / b; }

    RationalFunction reciprocal() const {
        if (is_zero()) throw math_error("division by the zero rational function");
        return RationalFunction(den_, num_, monic_tag{});
    }

    RationalFunction scaled(const K& s) const {
        if (is_zero_scalar(s)) return RationalFunction();
        return RationalFunction(num_.scaled(s), den_, canonical_tag{});
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    struct canonical_tag {};
    struct monic_tag {};
    RationalFunction(Poly<K> n, Poly<K> d, canonical_tag) : num_(std::move(n)), den_(std::move(d)) {}
    // coprime already, only the leading coefficient needs normalizing
    RationalFunction(Poly<K> n, Poly<K> d, monic_tag) : num_(std::move(n)), den_(std::move(d)) { normalize_lead(); }

    static bool is_zero_scalar(const K& x) { return scalar_is_zero(x); }

    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Poly<K>(K(1));
            return;
        }
        if (den_.degree() > 0) {
            Poly<K> g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        normalize_lead();
    }

    void normalize_lead() {
        if (num_.is_zero()) {
            den_ = Poly<K>(K(1));
            return;
        }
        K l = den_.lead();
        if (l == K(1)) return;
        K inv = K(1) / l;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }

    Poly<K> num_;
    Poly<K> den_;
};

/// f~(z) = conj(f(1/conj z)).
template <ExactField K>
RationalFunction<K> tilde(const RationalFunction<K>& f) {
    if (f.is_zero()) return f;
    // conj p(1/z) = z^-deg p * reflected(p). Reflection keeps num and den coprime and
    // neither reflected polynomial vanishes at 0, so the power of z cannot cancel.
    const int shift = f.den().degree() - f.num().degree();
    Poly<K> n = f.num().reflected(), d = f.den().reflected();
    if (shift > 0) n = n * Poly<K>::monomial(K(1), static_cast<std::size_t>(shift));
    if (shift < 0) d = d * Poly<K>::monomial(K(1), static_cast<std::size_t>(-shift));
    return RationalFunction<K>::from_coprime(std::move(n), std::move(d));
}

/// First 'count' coefficients of num/den as power series, den[0] != 0.
template <ExactField K>
std::vector<K> series_divide(const std::vector<K>& num, const std::vector<K>& den, std::size_t count) {
    if (den.empty() || is_zero(den[0])) throw math_error("series division by a series with zero constant term");
    std::vector<K> q(count, K(0));
    const K inv0 = K(1) / den[0];
    for (std::size_t k = 0; k < count; ++k) {
        K acc = k < num.size() ? num[k] : K(0);
        for (std::size_t j = 1; j <= k && j < den.size(); ++j) acc = acc - den[j] * q[k - j];
        q[k] = acc * inv0;
    }
    return q;
}

/// Order of the pole of f at a (0 when f is analytic there).
template <ExactField K>
int pole_order_at(const RationalFunction<K>& f, const K& a) {
    return root_multiplicity(f.den(), a);
}

/// c_k^+{f, a} for k < count.
template <ExactField K>
std::vector<K> taylor_coeffs(const RationalFunction<K>& f, const K& a, std::size_t count) {
    if (is_zero(f.den()(a))) throw math_error("taylor expansion requested at a pole");
    return series_divide(f.num().shifted(a).coeffs(), f.den().shifted(a).coeffs(), count);
}

/// [c_{-1}, ..., c_{-bound}] of the Laurent expansion of f at a, zero padded.
template <ExactField K>
std::vector<K> principal_part(const RationalFunction<K>& f, const K& a, int bound) {
    if (bound < 0) throw math_error("negative principal part bound");
    std::vector<K> out(static_cast<std::size_t>(bound), K(0));
    if (f.is_zero()) return out;
    Poly<K> den = f.den().shifted(a);
    int mult = 0;
    while (mult < static_cast<int>(den.coeffs().size()) && is_zero(den.coeffs()[static_cast<std::size_t>(mult)]))
        ++mult;
    if (mult > bound)
        throw math_error("pole of order " + std::to_string(mult) + " exceeds bound " + std::to_string(bound));
    if (mult == 0 || bound == 0) return out;
    // f = g / (w^mult) with g analytic at w = 0, w = z - a.
    std::vector<K> reduced(den.coeffs().begin() + mult, den.coeffs().end());
    std::vector<K> g = series_divide(f.num().shifted(a).coeffs(), reduced, static_cast<std::size_t>(mult));
    for (int j = 1; j <= mult; ++j) out[static_cast<std::size_t>(j - 1)] = g[static_cast<std::size_t>(mult - j)];
    return out;
}

/// A pole location with its order.
template <ExactField K>
struct PoleSpec {
    K location;
    int order = 1;

    friend bool operator==(const PoleSpec&, const PoleSpec&) = default;
};

/// coeffs[l-1] multiplies (z - pole)^-l.
template <ExactField K>
struct PoleTerm {
    K pole;
    std::vector<K> coeffs;

    int order() const { return static_cast<int>(coeffs.size()); }
    friend bool operator==(const PoleTerm&, const PoleTerm&) = default;
};

/// entire + sum over terms of coeffs[l-1]/(z-pole)^l, poles distinct and in canonical order.
template <ExactField K>
struct PartialFraction {
    Poly<K> entire;
    std::vector<PoleTerm<K>> terms;

    bool is_zero() const { return entire.is_zero() && terms.empty(); }
    friend bool operator==(const PartialFraction&, const PartialFraction&) = default;
};

template <ExactField K>
void sort_poles(std::vector<PoleTerm<K>>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](const PoleTerm<K>& a, const PoleTerm<K>& b) { return canonical_less(a.pole, b.pole); });
}

template <ExactField K>
void sort_poles(std::vector<PoleSpec<K>>& poles) {
    std::sort(poles.begin(), poles.end(),
              [](const PoleSpec<K>& a, const PoleSpec<K>& b) { return canonical_less(a.location, b.location); });
}

template <ExactField K>
RationalFunction<K> pf_to_ratfn(const PartialFraction<K>& p) {
    // With distinct poles and nonzero top coefficients every pole keeps its full order,
    // so the sum over the product denominator is already in lowest terms.
    bool coprime = true;
    for (std::size_t k = 0; k < p.terms.size(); ++k) {
        const auto& t = p.terms[k];
        if (t.coeffs.empty() || scalar_is_zero(t.coeffs.back())) coprime = false;
        for (std::size_t j = 0; j < k; ++j)
            if (p.terms[j].pole == t.pole) coprime = false;
    }
    Poly<K> num = p.entire, den(K(1));
    for (const auto& t : p.terms) {
        // sum_l c_l (z-a)^(N-l) / (z-a)^N
        const int n = t.order();
        Poly<K> tn;
        const Poly<K> lin = Poly<K>::linear(t.pole);
        for (int l = 1; l <= n; ++l) tn = tn * lin + Poly<K>(t.coeffs[static_cast<std::size_t>(l - 1)]);
        const Poly<K> td = pow(lin, static_cast<unsigned>(n));
        num = num * td + tn * den;
        den = den * td;
    }
    if (coprime) return RationalFunction<K>::from_coprime(std::move(num), std::move(den));
    return RationalFunction<K>(std::move(num), std::move(den));
}

/// [c_{-1}, ..., c_{-bound}] at a of phi * g, where g is analytic at a; the Laurent
/// coefficients of phi come straight from its term at a.
template <ExactField K>
std::vector<K> principal_part_of_product(const PartialFraction<K>& phi, const RationalFunction<K>& g, const K& a,
                                         int bound) {
    std::vector<K> out(static_cast<std::size_t>(std::max(bound, 0)), K(0));
    const PoleTerm<K>* term = nullptr;
    for (const auto& t : phi.terms)
        if (t.pole == a) term = &t;
    if (!term || g.is_zero()) return out;
    const int n = term->order();
    if (n > bound) throw math_error("pole of order " + std::to_string(n) + " exceeds bound " + std::to_string(bound));
    const std::vector<K> tg = taylor_coeffs(g, a, static_cast<std::size_t>(n));
    for (int q = 1; q <= n; ++q) {
        K acc(0);
        for (int p = 0; q + p <= n; ++p)
            acc = acc + term->coeffs[static_cast<std::size_t>(q + p - 1)] * tg[static_cast<std::size_t>(p)];
        out[static_cast<std::size_t>(q - 1)] = acc;
    }
    return out;
}

/// f = f_plus + f_minus, f_minus carrying the principal parts at the listed in-disk poles.
/// A listed pole may be absent from f or of lower order; a higher actual order is an error.
template <ExactField K>
std::pair<RationalFunction<K>, PartialFraction<K>> split_plus_minus(const RationalFunction<K>& f,
                                                                     const std::vector<PoleSpec<K>>& poles) {
    PartialFraction<K> minus;
    for (const auto& p : poles) {
        if (!in_open_disk(p.location)) throw input_error("listed pole is not inside the open unit disk");
        if (p.order < 1) throw input_error("pole order must be positive");
        for (const auto& t : minus.terms)
            if (t.pole == p.location) throw input_error("pole listed twice");
        const int actual = pole_order_at(f, p.location);
        if (actual > p.order)
            throw inconsistent_input("pole data inconsistent with denominator: actual order " +
                                     std::to_string(actual) + " exceeds listed order " + std::to_string(p.order));
        if (actual == 0) continue;
        std::vector<K> c = principal_part(f, p.location, actual);
        minus.terms.push_back({p.location, std::move(c)});
    }
    sort_poles(minus.terms);
    RationalFunction<K> plus = f - pf_to_ratfn(minus);
    return {plus, minus};
}

/// Full partial-fraction form of f; every pole of f must be listed.
template <ExactField K>
PartialFraction<K> ratfn_to_pf(const RationalFunction<K>& f, const std::vector<PoleSpec<K>>& poles) {
    PartialFraction<K> out;
    for (const auto& p : poles) {
        const int actual = pole_order_at(f, p.location);
        if (actual > p.order) throw inconsistent_input("pole data inconsistent with denominator");
        if (actual == 0) continue;
        out.terms.push_back({p.location, principal_part(f, p.location, actual)});
    }
    sort_poles(out.terms);
    RationalFunction<K> rest = f - pf_to_ratfn(out);
    if (!rest.is_polynomial()) throw inconsistent_input("function has poles that are not listed");
    out.entire = rest.num();
    return out;
}

}  // namespace specfact
