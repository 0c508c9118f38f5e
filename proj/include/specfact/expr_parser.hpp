#pragma once

// Text forms of fields, field elements and rational functions.
//
//   field   := "Q" ( "(sqrt " radicand ")" )* [ "(i)" ]
//   expr    := term (("+" | "-") term)*
//   term    := unary (("*" | "/") unary)*
//   unary   := ("-" | "+") unary | power
//   power   := atom ["^" ["-"] integer]
//   atom    := integer | "s" integer | "i" | "z" | "(" expr ")"
//
// A radicand is an expr over the levels below it. Renderings produced here parse
// back to identical values.

#include <cctype>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "specfact/errors.hpp"
#include "specfact/types.hpp"

namespace specfact {

/// Syntax error at a 1-based column of the parsed text.
class parse_error : public input_error {
public:
    parse_error(const std::string& what, std::size_t column)
        : input_error("column " + std::to_string(column) + ": " + what), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, FieldPtr field, bool allow_z) : text_(text), field_(std::move(field)), allow_z_(allow_z) {}

    RatFn parse_all() {
        skip();
        if (at_end()) fail("empty expression");
        RatFn v = expr();
        skip();
        if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return v;
    }

    // Used by the field parser: parse one expr and stop at the closing ')'.
    RatFn parse_prefix(std::size_t& pos) {
        pos_ = pos;
        RatFn v = expr();
        skip();
        pos = pos_;
        return v;
    }

private:
    std::string_view text_;
    FieldPtr field_;
    bool allow_z_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos_ + 1); }
    bool at_end() const { return pos_ >= text_.size(); }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits() {
        skip();
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return std::string(text_.substr(start, pos_ - start));
    }

    RatFn expr() {
        RatFn v = term();
        for (;;) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    RatFn term() {
        RatFn v = unary();
        for (;;) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                const std::size_t where = pos_;
                RatFn d = unary();
                if (d.is_zero()) {
                    pos_ = where;
                    fail("division by zero");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    RatFn unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RatFn power() {
        RatFn base = atom();
        if (!accept('^')) return base;
        const bool negative = accept('-');
        const std::string e = digits();
        if (e.size() > 4) fail("exponent too large");
        const int n = std::stoi(e);
        if (negative && base.is_zero()) fail("zero to a negative power");
        RatFn out(FieldElement(1));
        for (int k = 0; k < n; ++k) out *= base;
        return negative ? out.reciprocal() : out;
    }

    RatFn atom() {
        skip();
        if (at_end()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return RatFn(FieldElement(Rational(mpz_class(digits()))));
        if (c == '(') {
            ++pos_;
            RatFn v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (c == 's') {
            ++pos_;
            const std::size_t where = pos_;
            const std::string k = digits();
            const std::size_t level = k.size() > 3 ? 0 : static_cast<std::size_t>(std::stoul(k));
            if (!field_ || level == 0 || level > field_->real_levels()) {
                pos_ = where;
                fail("no adjoined root s" + k + " in this field");
            }
            return RatFn(FieldElement::root(field_, level));
        }
        if (c == 'i') {
            if (!field_ || !field_->gaussian()) fail("i is not in this field");
            ++pos_;
            return RatFn(FieldElement::imaginary_unit(field_));
        }
        if (c == 'z') {
            if (!allow_z_) fail("z is not allowed here");
            ++pos_;
            return RatFn::z();
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

inline bool top_level_sum(const std::string& s) {
    int depth = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const char c = s[k];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && k > 0 && (c == '+' || c == '-')) return true;
    }
    return false;
}

inline std::string poly_string(const Pol& p, const std::function<std::string(const FieldElement&)>& coeff) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
        const FieldElement& c = p.coeffs()[k];
        if (c.is_zero()) continue;
        std::string cs = coeff(c);
        const std::string zk = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
        std::string t;
        const bool wrap = top_level_sum(cs);
        if (wrap) cs = "(" + cs + ")";
        if (zk.empty())
            t = cs;
        else if (cs == "1")
            t = zk;
        else if (cs == "-1")
            t = "-" + zk;
        else
            t = cs + "*" + zk;
        if (out.empty())
            out = t;
        else if (t[0] == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out;
}

}  // namespace detail

/// "Q", "Q(sqrt 5)(sqrt (3-s1))", "Q(sqrt 2)(i)", ...
inline FieldPtr parse_field(std::string_view text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto word = [&](std::string_view w) {
        skip();
        if (text.substr(pos, w.size()) == w) {
            pos += w.size();
            return true;
        }
        return false;
    };
    if (!word("Q")) throw parse_error("field must start with Q", pos + 1);
    FieldPtr field;
    for (;;) {
        skip();
        if (pos >= text.size()) break;
        const std::size_t open = pos;
        if (!word("(")) throw parse_error("expected '(' to adjoin an element", pos + 1);
        if (word("sqrt")) {
            if (field && field->gaussian()) throw parse_error("square roots must be adjoined below i", open + 1);
            detail::ExprParser p(text, field, false);
            const RatFn r = p.parse_prefix(pos);
            if (!word(")")) throw parse_error("expected ')'", pos + 1);
            try {
                field = FieldDescriptor::adjoin_sqrt(field, r.constant_value());
            } catch (const input_error& e) {
                throw parse_error(e.what(), open + 1);
            } catch (const math_error& e) {
                throw parse_error(e.what(), open + 1);
            }
        } else if (word("i")) {
            if (!word(")")) throw parse_error("expected ')'", pos + 1);
            if (field && field->gaussian()) throw parse_error("i adjoined twice", open + 1);
            field = FieldDescriptor::adjoin_i(field);
        } else {
            throw parse_error("expected 'sqrt' or 'i'", pos + 1);
        }
    }
    return field;
}

inline std::string render_field(const FieldPtr& field) { return field ? field->name() : "Q"; }

inline RatFn parse_ratfn(std::string_view text, const FieldPtr& field) {
    return detail::ExprParser(text, field, true).parse_all();
}

inline FieldElement parse_element(std::string_view text, const FieldPtr& field) {
    return detail::ExprParser(text, field, false).parse_all().constant_value();
}

inline std::string render_element(const FieldElement& x) { return x.to_string(); }

inline std::string render_poly(const Pol& p) {
    return detail::poly_string(p, [](const FieldElement& c) { return c.to_string(); });
}

inline std::string render_ratfn(const RatFn& f) {
    if (f.is_polynomial()) return render_poly(f.num());
    std::string n = render_poly(f.num()), d = render_poly(f.den());
    if (detail::top_level_sum(n) || n.find('*') != std::string::npos || n.find('/') != std::string::npos) n = "(" + n + ")";
    return n + "/(" + d + ")";
}

/// Decimal rendering of x; within one unit in the last of 'digits' places.
inline std::string render_element_decimal(const FieldElement& x, int digits) { return x.to_decimal(digits); }

inline std::string render_ratfn_decimal(const RatFn& f, int digits) {
    auto coeff = [digits](const FieldElement& c) { return c.to_decimal(digits); };
    const std::string n = detail::poly_string(f.num(), coeff);
    if (f.is_polynomial()) return n;
    return "(" + n + ")/(" + detail::poly_string(f.den(), coeff) + ")";
}

}  // namespace specfact
