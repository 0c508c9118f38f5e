#pragma once

// Exact arithmetic in towers Q(s1)(s2)...(sK)(i) where each s_k is the positive
// square root of an element of the field below it, optionally topped by the
// imaginary unit.
//
// Elements are dense coordinate vectors over the power-product basis. Bit j of a
// basis index selects the (j+1)-th adjoined root; when the tower is gaussian the
// highest bit selects i, so the first half of the coordinates is the real part
// and the second half the imaginary part.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specfact/errors.hpp"

namespace specfact {

using Rational = mpq_class;
using Coords = std::vector<Rational>;

class FieldDescriptor;
class FieldElement;
using FieldPtr = std::shared_ptr<const FieldDescriptor>;

/// Closed rational interval [lo, hi].
struct Interval {
    Rational lo;
    Rational hi;
};

namespace detail {

inline bool all_zero(std::span<const Rational> x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& q) { return sgn(q) == 0; });
}

inline void add_into(std::span<Rational> acc, std::span<const Rational> x) {
    for (std::size_t k = 0; k < x.size(); ++k) acc[k] += x[k];
}

// radicands[L-1] is the radicand of level L, a coordinate vector of size 2^(L-1).
inline Coords tower_mul(const std::vector<Coords>& radicands, std::span<const Rational> x,
                        std::span<const Rational> y, std::size_t level) {
    if (level == 0) return Coords{x[0] * y[0]};
    const std::size_t h = std::size_t{1} << (level - 1);
    Coords out(2 * h);
    if (all_zero(x) || all_zero(y)) return out;
    auto x0 = x.first(h), x1 = x.subspan(h), y0 = y.first(h), y1 = y.subspan(h);
    const bool x1z = all_zero(x1), y1z = all_zero(y1);
    std::span<Rational> lo(out.data(), h), hi(out.data() + h, h);
    add_into(lo, tower_mul(radicands, x0, y0, level - 1));
    if (!x1z && !y1z) {
        Coords b = tower_mul(radicands, x1, y1, level - 1);
        add_into(lo, tower_mul(radicands, radicands[level - 1], b, level - 1));
    }
    if (!y1z) add_into(hi, tower_mul(radicands, x0, y1, level - 1));
    if (!x1z) add_into(hi, tower_mul(radicands, x1, y0, level - 1));
    return out;
}

inline Coords tower_inv(const std::vector<Coords>& radicands, std::span<const Rational> x,
                        std::size_t level) {
    if (level == 0) {
        if (sgn(x[0]) == 0) throw math_error("division by zero");
        return Coords{1 / x[0]};
    }
    const std::size_t h = std::size_t{1} << (level - 1);
    auto x0 = x.first(h), x1 = x.subspan(h);
    // (x0 + x1 s)^-1 = (x0 - x1 s) / (x0^2 - r x1^2)
    Coords norm = tower_mul(radicands, x0, x0, level - 1);
    if (!all_zero(x1)) {
        Coords sq = tower_mul(radicands, x1, x1, level - 1);
        Coords rs = tower_mul(radicands, radicands[level - 1], sq, level - 1);
        for (std::size_t k = 0; k < h; ++k) norm[k] -= rs[k];
    }
    Coords ninv = tower_inv(radicands, norm, level - 1);
    Coords out(2 * h);
    Coords lo = tower_mul(radicands, x0, ninv, level - 1);
    Coords hi = tower_mul(radicands, x1, ninv, level - 1);
    for (std::size_t k = 0; k < h; ++k) {
        out[k] = lo[k];
        out[h + k] = -hi[k];
    }
    return out;
}

inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

// Some square root of x inside the field of the given level, if one exists.
inline std::optional<Coords> tower_sqrt(const std::vector<Coords>& radicands,
                                        std::span<const Rational> x, std::size_t level) {
    if (level == 0) {
        auto r = rational_sqrt(x[0]);
        if (!r) return std::nullopt;
        return Coords{*r};
    }
    const std::size_t h = std::size_t{1} << (level - 1);
    const Coords& t = radicands[level - 1];
    auto r0 = x.first(h), r1 = x.subspan(h);
    auto assemble = [h](const Coords& y0, const Coords& y1) {
        Coords out(2 * h);
        std::copy(y0.begin(), y0.end(), out.begin());
        std::copy(y1.begin(), y1.end(), out.begin() + static_cast<std::ptrdiff_t>(h));
        return out;
    };
    const Coords zero(h);
    if (all_zero(r1)) {
        if (auto y0 = tower_sqrt(radicands, r0, level - 1)) return assemble(*y0, zero);
        Coords q = tower_mul(radicands, r0, tower_inv(radicands, t, level - 1), level - 1);
        if (auto y1 = tower_sqrt(radicands, q, level - 1)) return assemble(zero, *y1);
        return std::nullopt;
    }
    // (y0 + y1 s)^2 = r0 + r1 s  <=>  2 y0 y1 = r1,  y0^2 + t y1^2 = r0.
    // With Y = y1^2:  t Y^2 - r0 Y + r1^2/4 = 0.
    Coords disc = tower_mul(radicands, r0, r0, level - 1);
    {
        Coords r1sq = tower_mul(radicands, r1, r1, level - 1);
        Coords tr = tower_mul(radicands, t, r1sq, level - 1);
        for (std::size_t k = 0; k < h; ++k) disc[k] -= tr[k];
    }
    auto d = tower_sqrt(radicands, disc, level - 1);
    if (!d) return std::nullopt;
    Coords inv2t = tower_inv(radicands, t, level - 1);
    for (auto& q : inv2t) q /= 2;
    for (int sign : {1, -1}) {
        Coords num(r0.begin(), r0.end());
        for (std::size_t k = 0; k < h; ++k) num[k] += sign * (*d)[k];
        Coords big_y = tower_mul(radicands, num, inv2t, level - 1);
        if (all_zero(big_y)) continue;
        auto y1 = tower_sqrt(radicands, big_y, level - 1);
        if (!y1) continue;
        Coords y0 = tower_mul(radicands, r1, tower_inv(radicands, *y1, level - 1), level - 1);
        for (auto& q : y0) q /= 2;
        return assemble(y0, *y1);
    }
    return std::nullopt;
}

inline Interval interval_add(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

inline Interval interval_mul(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

inline Interval interval_scale(const Interval& a, const Rational& c) {
    if (sgn(c) >= 0) return {a.lo * c, a.hi * c};
    return {a.hi * c, a.lo * c};
}

inline mpz_class floor_of(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline mpz_class ceil_of(const Rational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Dyadic enclosure of sqrt over [lo, hi] with 'bits' fractional bits; lo < 0 is clamped.
inline Interval interval_sqrt(const Interval& a, unsigned bits) {
    mpz_class scale = mpz_class(1) << (2 * bits);
    mpz_class unit = mpz_class(1) << bits;
    Interval out;
    if (sgn(a.lo) <= 0) {
        out.lo = 0;
    } else {
        mpz_class n = floor_of(a.lo * scale), r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        out.lo = Rational(r, unit);
    }
    mpz_class n = ceil_of(a.hi * scale), r;
    if (sgn(n) < 0) n = 0;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) r += 1;
    out.hi = Rational(r, unit);
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

// x is a real coordinate vector of size 2^roots.size().
inline Interval enclose(std::span<const Rational> x, const std::vector<Interval>& roots) {
    Interval acc{0, 0};
    for (std::size_t idx = 0; idx < x.size(); ++idx) {
        if (sgn(x[idx]) == 0) continue;
        Interval mono{1, 1};
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (idx & (std::size_t{1} << j)) mono = interval_mul(mono, roots[j]);
        acc = interval_add(acc, interval_scale(mono, x[idx]));
    }
    return acc;
}

inline std::vector<Interval> root_enclosures(const std::vector<Coords>& real_radicands, unsigned bits) {
    std::vector<Interval> roots;
    for (const auto& r : real_radicands) roots.push_back(interval_sqrt(enclose(r, roots), bits));
    return roots;
}

// Sign of a nonzero-or-zero real element under the positive-root embedding.
inline int real_sign(const std::vector<Coords>& real_radicands, std::span<const Rational> x) {
    if (all_zero(x)) return 0;
    if (real_radicands.empty()) return sgn(x[0]);
    for (unsigned bits = 32; bits <= (1u << 20); bits *= 2) {
        Interval box = enclose(x, root_enclosures(real_radicands, bits));
        if (sgn(box.lo) > 0) return 1;
        if (sgn(box.hi) < 0) return -1;
    }
    throw internal_error("sign refinement did not terminate");
}

inline Interval real_enclosure(const std::vector<Coords>& real_radicands, std::span<const Rational> x,
                               const Rational& width) {
    if (real_radicands.empty()) return {x[0], x[0]};
    for (unsigned bits = 32; bits <= (1u << 20); bits *= 2) {
        Interval box = enclose(x, root_enclosures(real_radicands, bits));
        if (box.hi - box.lo <= width) return box;
    }
    throw internal_error("decimal refinement did not terminate");
}

inline std::string monomial_name(std::size_t idx, std::size_t real_levels, bool gaussian) {
    std::string out;
    for (std::size_t j = 0; j < real_levels; ++j) {
        if (idx & (std::size_t{1} << j)) {
            if (!out.empty()) out += "*";
            out += "s" + std::to_string(j + 1);
        }
    }
    if (gaussian && (idx & (std::size_t{1} << real_levels))) {
        if (!out.empty()) out += "*";
        out += "i";
    }
    return out;
}

// Renders in the element grammar with a common denominator, e.g. "(35-7*s1)/20".
inline std::string render_coords(std::span<const Rational> x, std::size_t real_levels, bool gaussian) {
    mpz_class den = 1;
    for (const auto& q : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::string body;
    int terms = 0;
    for (std::size_t idx = 0; idx < x.size(); ++idx) {
        if (sgn(x[idx]) == 0) continue;
        mpz_class n = x[idx].get_num() * (den / x[idx].get_den());
        std::string mono = monomial_name(idx, real_levels, gaussian);
        std::string mag;
        mpz_class a = abs(n);
        if (mono.empty())
            mag = a.get_str();
        else if (a == 1)
            mag = mono;
        else
            mag = a.get_str() + "*" + mono;
        if (sgn(n) < 0)
            body += "-" + mag;
        else
            body += (terms ? "+" : "") + mag;
        ++terms;
    }
    if (terms == 0) return "0";
    if (den == 1) return body;
    if (terms == 1) return body + "/" + den.get_str();
    return "(" + body + ")/" + den.get_str();
}

inline std::string render_decimal(const Rational& q, int digits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class n = floor_of(q * scale + Rational(1, 2));
    std::string sign = sgn(n) < 0 ? "-" : "";
    n = abs(n);
    std::string s = n.get_str();
    if (digits == 0) return sign + s;
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return sign + s;
}

}  // namespace detail

/// A tower of real quadratic extensions over Q, optionally with i adjoined on top.
/// Build one with adjoin_sqrt / adjoin_i; a null FieldPtr stands for Q itself.
class FieldDescriptor {
public:
    static FieldPtr adjoin_sqrt(const FieldPtr& base, const FieldElement& radicand);
    static FieldPtr adjoin_i(const FieldPtr& base);

    std::size_t real_levels() const { return radicands_.size() - (gaussian_ ? 1 : 0); }
    std::size_t levels() const { return radicands_.size(); }
    std::size_t dimension() const { return std::size_t{1} << levels(); }
    bool gaussian() const { return gaussian_; }

    /// Radicand of every level, the imaginary layer (radicand -1) included.
    const std::vector<Coords>& radicands() const { return radicands_; }
    std::vector<Coords> real_radicands() const {
        return {radicands_.begin(), radicands_.begin() + static_cast<std::ptrdiff_t>(real_levels())};
    }

    /// "Q(sqrt 5)(sqrt (3-s1))(i)"
    std::string name() const {
        std::string out = "Q";
        for (std::size_t k = 0; k < real_levels(); ++k) {
            std::string r = detail::render_coords(radicands_[k], k, false);
            bool simple = r.find_first_of("+-*/") == std::string::npos;
            out += simple ? "(sqrt " + r + ")" : "(sqrt (" + r + "))";
        }
        if (gaussian_) out += "(i)";
        return out;
    }

    friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
        return a.gaussian_ == b.gaussian_ && a.radicands_ == b.radicands_;
    }

private:
    FieldDescriptor(std::vector<Coords> radicands, bool gaussian)
        : radicands_(std::move(radicands)), gaussian_(gaussian) {}

    std::vector<Coords> radicands_;
    bool gaussian_ = false;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

/// Immutable element of a FieldDescriptor tower. Elements built from integers or
/// rationals carry no descriptor and combine with elements of any tower.
class FieldElement {
public:
    FieldElement() : coords_{Rational(0)} {}
    FieldElement(int v) : coords_{Rational(v)} {}
    FieldElement(long v) : coords_{Rational(v)} {}
    FieldElement(const Rational& q) : coords_{q} {}
    FieldElement(long num, long den) : coords_{Rational(num, den)} { coords_[0].canonicalize(); }

    FieldElement(FieldPtr field, Coords coords) : field_(std::move(field)), coords_(std::move(coords)) {
        const std::size_t dim = field_ ? field_->dimension() : 1;
        if (coords_.size() != dim) throw math_error("coordinate count does not match the field dimension");
        for (auto& q : coords_) q.canonicalize();
    }

    /// The k-th adjoined square root, 1-based.
    static FieldElement root(const FieldPtr& field, std::size_t k) {
        if (!field || k == 0 || k > field->real_levels()) throw math_error("no such adjoined root s" + std::to_string(k));
        Coords c(field->dimension());
        c[std::size_t{1} << (k - 1)] = 1;
        return FieldElement(field, std::move(c));
    }

    static FieldElement imaginary_unit(const FieldPtr& field) {
        if (!field || !field->gaussian()) throw math_error("field has no imaginary unit");
        Coords c(field->dimension());
        c[std::size_t{1} << field->real_levels()] = 1;
        return FieldElement(field, std::move(c));
    }

    const FieldPtr& field() const { return field_; }
    const Coords& coords() const { return coords_; }

    bool is_zero() const { return detail::all_zero(coords_); }

    bool is_rational() const { return detail::all_zero(std::span<const Rational>(coords_).subspan(1)); }
    const Rational& rational_value() const {
        if (!is_rational()) throw math_error("element is not rational");
        return coords_[0];
    }

    bool is_real() const {
        if (!field_ || !field_->gaussian()) return true;
        return detail::all_zero(std::span<const Rational>(coords_).subspan(coords_.size() / 2));
    }

    FieldElement real_part() const {
        if (!field_ || !field_->gaussian()) return *this;
        Coords c(coords_.size());
        std::copy(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(c.size() / 2), c.begin());
        return FieldElement(field_, std::move(c));
    }

    FieldElement imag_part() const {
        if (!field_ || !field_->gaussian()) return FieldElement(field_, Coords(coords_.size()));
        Coords c(coords_.size());
        std::copy(coords_.begin() + static_cast<std::ptrdiff_t>(c.size() / 2), coords_.end(), c.begin());
        return FieldElement(field_, std::move(c));
    }

    FieldElement conj() const {
        if (!field_ || !field_->gaussian()) return *this;
        FieldElement out = *this;
        for (std::size_t k = coords_.size() / 2; k < coords_.size(); ++k) out.coords_[k] = -out.coords_[k];
        return out;
    }

    FieldElement inverse() const {
        if (is_zero()) throw math_error("division by zero");
        if (!field_) return FieldElement(field_, Coords{1 / coords_[0]});
        return FieldElement(field_, detail::tower_inv(field_->radicands(), coords_, field_->levels()));
    }

    /// Sign under the positive-root real embedding; 0 iff the element is zero.
    int sign() const {
        if (!is_real()) throw math_error("sign of a non-real element");
        if (!field_) return sgn(coords_[0]);
        std::span<const Rational> re(coords_.data(), std::size_t{1} << field_->real_levels());
        return detail::real_sign(field_->real_radicands(), re);
    }

    std::string to_string() const {
        if (!field_) return detail::render_coords(coords_, 0, false);
        return detail::render_coords(coords_, field_->real_levels(), field_->gaussian());
    }

    /// Decimal approximation with 'digits' places; correct to within one unit in the last place.
    std::string to_decimal(int digits) const {
        Rational width(1);
        for (int k = 0; k <= digits; ++k) width /= 10;
        auto approx = [&](const FieldElement& re) {
            if (!re.field_) return re.coords_[0];
            std::span<const Rational> c(re.coords_.data(), std::size_t{1} << re.field_->real_levels());
            Interval box = detail::real_enclosure(re.field_->real_radicands(), c, width);
            return Rational((box.lo + box.hi) / 2);
        };
        std::string out = detail::render_decimal(approx(real_part()), digits);
        if (!is_real()) {
            Rational im = approx(imag_part());
            out += (sgn(im) < 0 ? " - " : " + ") + detail::render_decimal(abs(im), digits) + "*i";
        }
        return out;
    }

    FieldElement operator-() const {
        FieldElement out = *this;
        for (auto& q : out.coords_) q = -q;
        return out;
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        auto f = common_field(a, b);
        Coords x = a.promoted(f), y = b.promoted(f);
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += y[k];
        return FieldElement(f, std::move(x), raw_tag{});
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        auto f = common_field(a, b);
        Coords x = a.promoted(f), y = b.promoted(f);
        for (std::size_t k = 0; k < x.size(); ++k) x[k] -= y[k];
        return FieldElement(f, std::move(x), raw_tag{});
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        auto f = common_field(a, b);
        if (!f) return FieldElement(f, Coords{a.coords_[0] * b.coords_[0]}, raw_tag{});
        if (a.is_rational() || b.is_rational()) {
            const Rational& s = a.is_rational() ? a.coords_[0] : b.coords_[0];
            Coords x = (a.is_rational() ? b : a).promoted(f);
            for (auto& q : x) q *= s;
            return FieldElement(f, std::move(x), raw_tag{});
        }
        return FieldElement(f, detail::tower_mul(f->radicands(), a.promoted(f), b.promoted(f), f->levels()), raw_tag{});
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        if (b.is_zero()) throw math_error("division by zero");
        if (b.is_rational()) {
            FieldElement out = a;
            for (auto& q : out.coords_) q /= b.coords_[0];
            if (!out.field_ && b.field_) out = FieldElement(b.field_, out.promoted(b.field_), raw_tag{});
            return out;
        }
        return a * b.inverse();
    }

    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
    FieldElement& operator/=(const FieldElement& b) { return *this = *this / b; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        auto f = common_field(a, b);
        return a.promoted(f) == b.promoted(f);
    }

    /// Lexicographic coordinate order; fixes the canonical order of poles.
    friend bool canonical_less(const FieldElement& a, const FieldElement& b) {
        auto f = common_field(a, b);
        Coords x = a.promoted(f), y = b.promoted(f);
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    }

private:
    struct raw_tag {};
    FieldElement(FieldPtr f, Coords c, raw_tag) : field_(std::move(f)), coords_(std::move(c)) {}

    static FieldPtr common_field(const FieldElement& a, const FieldElement& b) {
        if (!a.field_) return b.field_;
        if (!b.field_) return a.field_;
        if (same_field(a.field_, b.field_)) return a.field_;
        // rational values are compatible with every tower
        if (a.is_rational()) return b.field_;
        if (b.is_rational()) return a.field_;
        throw math_error("elements belong to different fields");
    }

    Coords promoted(const FieldPtr& f) const {
        const std::size_t dim = f ? f->dimension() : 1;
        if (coords_.size() == dim) return coords_;
        Coords out(dim);
        if (coords_.size() < dim) {
            std::copy(coords_.begin(), coords_.end(), out.begin());
        } else {
            out[0] = coords_[0];  // rational element of a foreign tower
        }
        return out;
    }

    FieldPtr field_;
    Coords coords_;
};

inline FieldElement conj(const FieldElement& x) { return x.conj(); }
inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline int sign_real(const FieldElement& x) { return x.sign(); }

/// |a| < 1 under the designated embedding.
inline bool in_open_disk(const FieldElement& a) { return (FieldElement(1) - a * a.conj()).real_part().sign() > 0; }

/// Some square root inside the element's own field, if one exists.
inline std::optional<FieldElement> try_sqrt(const FieldElement& x) {
    if (!x.field()) {
        auto r = detail::rational_sqrt(x.coords()[0]);
        if (!r) return std::nullopt;
        return FieldElement(*r);
    }
    auto c = detail::tower_sqrt(x.field()->radicands(), x.coords(), x.field()->levels());
    if (!c) return std::nullopt;
    return FieldElement(x.field(), std::move(*c));
}

inline FieldPtr FieldDescriptor::adjoin_sqrt(const FieldPtr& base, const FieldElement& radicand) {
    if (base && base->gaussian()) throw input_error("real square roots must be adjoined below the imaginary unit");
    if (radicand.field() && !same_field(radicand.field(), base) && !radicand.is_rational())
        throw input_error("radicand does not belong to the base field");
    std::vector<Coords> rads = base ? base->radicands() : std::vector<Coords>{};
    const std::size_t dim = std::size_t{1} << rads.size();
    Coords r(dim);
    if (radicand.field() && same_field(radicand.field(), base))
        r = radicand.coords();
    else
        r[0] = radicand.coords()[0];
    if (detail::real_sign(rads, r) <= 0)
        throw input_error("radicand " + detail::render_coords(r, rads.size(), false) + " is not positive");
    if (detail::tower_sqrt(rads, r, rads.size()))
        throw input_error("radicand " + detail::render_coords(r, rads.size(), false) +
                          " is already a square in the field below");
    rads.push_back(std::move(r));
    return FieldPtr(new FieldDescriptor(std::move(rads), false));
}

inline FieldPtr FieldDescriptor::adjoin_i(const FieldPtr& base) {
    if (base && base->gaussian()) throw input_error("imaginary unit adjoined twice");
    std::vector<Coords> rads = base ? base->radicands() : std::vector<Coords>{};
    Coords minus_one(std::size_t{1} << rads.size());
    minus_one[0] = -1;
    rads.push_back(std::move(minus_one));
    return FieldPtr(new FieldDescriptor(std::move(rads), true));
}

}  // namespace specfact
