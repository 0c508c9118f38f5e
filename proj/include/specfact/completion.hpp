#pragma once

// Completion of a unit-norm row (v_1, ..., v_{m-1}, tilde(v_m)) of rational
// functions, v_i analytic in the disk, to a paraunitary matrix. The row is
// treated as the first column V_1 of V = U W, where U comes from the phi row
//   phi_i = [(tilde(v_i) - h_i) / v_m]^-,   sum_i h_i v_i = 1,
// and W is a constant unitary matrix with first column V_1(1).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specfact/errors.hpp"
#include "specfact/identity_check.hpp"
#include "specfact/jl_construct.hpp"
#include "specfact/types.hpp"

namespace specfact {

struct UnitRow {
    std::size_t m = 0;
    std::vector<RatFn> v;  // v_1, ..., v_m, all analytic in the disk
    std::vector<std::vector<Pole>> reflected_poles;  // in-disk poles of tilde(v_i)
    std::vector<Pole> vm_disk_zeros;                 // in-disk zeros of v_m

    /// (v_1, ..., v_{m-1}, tilde(v_m))
    std::vector<RatFn> displayed() const {
        std::vector<RatFn> out(v.begin(), v.end());
        if (!out.empty()) out.back() = tilde(out.back());
        return out;
    }
};

/// Builds a UnitRow from the displayed row and checks every annotation by exact
/// division: reflected_poles[i] against the denominator of displayed entry i
/// (tilde(v_i) for i < m, the last entry itself for i = m), vm_disk_zeros against
/// the numerator of v_m.
inline UnitRow make_unit_row(const std::vector<RatFn>& displayed, std::vector<std::vector<Pole>> reflected_poles,
                             std::vector<Pole> vm_disk_zeros) {
    UnitRow row;
    row.m = displayed.size();
    if (row.m == 0) throw input_error("empty row");
    if (reflected_poles.empty()) reflected_poles.resize(row.m);
    if (reflected_poles.size() != row.m) throw input_error("reflected_poles must have one list per entry");
    for (std::size_t i = 0; i < row.m; ++i) row.v.push_back(i + 1 < row.m ? displayed[i] : tilde(displayed[i]));
    for (std::size_t i = 0; i < row.m; ++i) {
        const RatFn vt = tilde(row.v[i]);
        for (const auto& p : reflected_poles[i]) {
            if (!in_open_disk(p.location))
                throw input_error("pole " + p.location.to_string() + " is not inside the open unit disk");
            const int actual = pole_order_at(vt, p.location);
            if (actual != p.order)
                throw inconsistent_input("reflected entry " + std::to_string(i + 1) + " has a pole of order " +
                                         std::to_string(actual) + " at " + p.location.to_string() + ", declared " +
                                         std::to_string(p.order));
        }
    }
    for (const auto& p : vm_disk_zeros) {
        if (!in_open_disk(p.location))
            throw input_error("zero " + p.location.to_string() + " is not inside the open unit disk");
        const int actual = row.v.back().is_zero() ? 0 : root_multiplicity(row.v.back().num(), p.location);
        if (actual != p.order)
            throw inconsistent_input("v_m has a zero of order " + std::to_string(actual) + " at " +
                                     p.location.to_string() + ", declared " + std::to_string(p.order));
    }
    row.reflected_poles = std::move(reflected_poles);
    row.vm_disk_zeros = std::move(vm_disk_zeros);
    return row;
}

/// sum_i v_i tilde(v_i) = 1
inline bool verify_unit_row(const UnitRow& row) {
    if (row.v.size() != row.m || row.m == 0) return false;
    RatMatrix x(1, row.m), y(row.m, 1);
    for (std::size_t i = 0; i < row.m; ++i) {
        x(0, i) = row.v[i];
        y(i, 0) = tilde(row.v[i]);
    }
    return product_equals(x, y, RatMatrix::identity(1));
}

struct CoronaSolution {
    std::vector<Pol> h;
    int degree = 0;
    bool large_degree = false;  // escalation went past degree 5
};

/// Polynomials h_i of degree <= d with sum_i h_i p_i = target, for the least d <= max_degree.
inline std::optional<CoronaSolution> solve_bezout(const std::vector<Pol>& p, const Pol& target, int max_degree) {
    if (p.empty()) throw input_error("empty polynomial family");
    int pmax = -1;
    for (const auto& q : p) pmax = std::max(pmax, q.degree());
    for (int d = 0; d <= max_degree; ++d) {
        const std::size_t per = static_cast<std::size_t>(d) + 1;
        const std::size_t rows = static_cast<std::size_t>(std::max(pmax + d, target.degree()) + 1);
        ScalarMatrix a(rows, per * p.size());
        std::vector<FieldElement> b(rows, FieldElement(0));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t k = 0; k < per; ++k)
                for (std::size_t j = 0; j < p[i].coeffs().size(); ++j) a(j + k, i * per + k) = p[i].coeffs()[j];
        for (std::size_t j = 0; j < target.coeffs().size(); ++j) b[j] = target.coeffs()[j];
        auto x = solve_any(a, b);
        if (!x) continue;
        CoronaSolution sol;
        sol.degree = d;
        sol.large_degree = d > 5;
        for (std::size_t i = 0; i < p.size(); ++i)
            sol.h.push_back(Pol(std::vector<FieldElement>(x->begin() + static_cast<std::ptrdiff_t>(i * per),
                                                          x->begin() + static_cast<std::ptrdiff_t>((i + 1) * per))));
        return sol;
    }
    return std::nullopt;
}

/// Default escalation cap: deg Q + max_i deg(p_i Q_i).
inline int default_corona_cap(const UnitRow& row) {
    Pol q(FieldElement(1));
    for (const auto& v : row.v) q = lcm(q, v.den());
    int top = 0;
    for (const auto& v : row.v)
        if (!v.is_zero()) top = std::max(top, v.num().degree() + q.degree() - v.den().degree());
    return q.degree() + top;
}

/// Polynomials h with sum_i h_i v_i = 1, found after clearing denominators.
/// A negative max_degree selects default_corona_cap.
inline CoronaSolution solve_corona(const UnitRow& row, int max_degree = -1) {
    if (max_degree < 0) max_degree = default_corona_cap(row);
    Pol q(FieldElement(1));
    for (const auto& v : row.v) q = lcm(q, v.den());
    std::vector<Pol> p;
    for (const auto& v : row.v) p.push_back(v.num() * exact_div(q, v.den()));
    auto sol = solve_bezout(p, q, max_degree);
    if (!sol)
        throw inconsistent_input("corona condition not certifiable up to degree " + std::to_string(max_degree) +
                                 " (the entries may share a zero in the disk)");
    RatFn check;
    for (std::size_t i = 0; i < row.m; ++i) check += RatFn(sol->h[i]) * row.v[i];
    if (!(check == RatFn(FieldElement(1)))) throw internal_error("corona solution does not satisfy sum h_i v_i = 1");
    return *sol;
}

/// Every in-disk point where a condition of the completion system can have a pole.
inline std::vector<FieldElement> completion_points(const UnitRow& row) {
    std::vector<FieldElement> pts;
    auto add = [&pts](const FieldElement& a) {
        for (const auto& x : pts)
            if (x == a) return;
        pts.push_back(a);
    };
    for (const auto& list : row.reflected_poles)
        for (const auto& p : list) add(p.location);
    for (const auto& p : row.vm_disk_zeros) add(p.location);
    return pts;
}

/// phi_i = [(tilde(v_i) - h_i) / v_m]^-, checked against every condition of the system.
inline PhiRow build_phi_row(const UnitRow& row, const CoronaSolution& h) {
    if (row.m < 2) throw input_error("completion needs at least two entries");
    if (h.h.size() != row.m) throw math_error("corona solution has the wrong length");
    const RatFn& vm = row.v.back();
    PhiRow out;
    out.m = row.m;
    // v_m = 0 leaves phi = 0 as the only candidate; the check below decides
    if (vm.is_zero()) out.phis.assign(row.m - 1, PFrac());
    for (std::size_t i = 0; i + 1 < row.m && !vm.is_zero(); ++i) {
        const RatFn f = (tilde(row.v[i]) - RatFn(h.h[i])) / vm;
        std::vector<FieldElement> cands;
        for (const auto& p : row.reflected_poles[i]) cands.push_back(p.location);
        for (const auto& p : row.vm_disk_zeros)
            if (std::find(cands.begin(), cands.end(), p.location) == cands.end()) cands.push_back(p.location);
        std::vector<Pole> poles;
        for (const auto& a : cands) {
            const int n = pole_order_at(f, a);
            if (n > 0) poles.push_back({a, n});
        }
        out.phis.push_back(split_plus_minus(f, poles).second);
    }
    std::string where;
    if (!column_conditions_hold(out, row.displayed(), completion_points(row), &where))
        throw inconsistent_input("phi row does not solve the completion conditions (" + where +
                                 "); the in-disk pole or zero data is incomplete");
    return out;
}

namespace detail {

inline void check_completion_constant(const ScalarMatrix& w, const std::vector<FieldElement>& c) {
    if (!(w * adjoint(w) == ScalarMatrix::identity(c.size()))) throw internal_error("completion W is not unitary");
    for (std::size_t r = 0; r < c.size(); ++r)
        if (!(w(r, 0) == c[r])) throw internal_error("completion W has the wrong first column");
}

inline void check_unit_vector(const std::vector<FieldElement>& c) {
    if (c.empty()) throw input_error("empty vector");
    FieldElement norm(0);
    for (const auto& x : c) norm += x * conj(x);
    if (!(norm == FieldElement(1))) throw input_error("vector does not have unit norm");
}

}  // namespace detail

/// Constant unitary W with first column c = (c_1, c'):
///   W = [[c_1, -c'^*], [c', (1 + conj(c_1)) / (1 - |c_1|^2) c' c'^* - I]].
/// For real c this is the reflection exchanging e_1 and c with columns 2..m negated.
/// When c' = 0, W = diag(c_1, conj(c_1), 1, ..., 1).
inline ScalarMatrix unitary_completion_constant(const std::vector<FieldElement>& c) {
    detail::check_unit_vector(c);
    const std::size_t m = c.size();
    ScalarMatrix w = ScalarMatrix::identity(m);
    const FieldElement rest = FieldElement(1) - c[0] * conj(c[0]);
    if (rest.is_zero()) {
        w(0, 0) = c[0];
        if (m > 1) w(1, 1) = conj(c[0]);
    } else {
        const FieldElement nu = (FieldElement(1) + conj(c[0])) / rest;
        w(0, 0) = c[0];
        for (std::size_t k = 1; k < m; ++k) {
            w(k, 0) = c[k];
            w(0, k) = -conj(c[k]);
            for (std::size_t l = 1; l < m; ++l) w(k, l) = nu * c[k] * conj(c[l]) - (k == l ? 1 : 0);
        }
    }
    detail::check_completion_constant(w, c);
    return w;
}

/// Cayley alternative with det W = 1: W = (I - A)(I + A)^-1 for the skew-Hermitian A
/// supported on the first row and column,
///   A_k1 = -c_k / (1 + c_1),  A_1k = conj(c_k) / (1 + conj(c_1)),  A_11 = (conj(c_1) - c_1) / |1 + c_1|^2.
/// For c = -e_1, W = diag(-1, -1, 1, ..., 1).
inline ScalarMatrix cayley_completion_constant(const std::vector<FieldElement>& c) {
    detail::check_unit_vector(c);
    const std::size_t m = c.size();
    ScalarMatrix w;
    const FieldElement one_plus = FieldElement(1) + c[0];
    if (one_plus.is_zero()) {
        w = ScalarMatrix::identity(m);
        w(0, 0) = -1;
        if (m > 1) w(1, 1) = -1;
    } else {
        ScalarMatrix a(m, m);
        a(0, 0) = (conj(c[0]) - c[0]) / (one_plus * conj(one_plus));
        for (std::size_t k = 1; k < m; ++k) {
            a(k, 0) = -c[k] / one_plus;
            a(0, k) = conj(c[k]) / conj(one_plus);
        }
        ScalarMatrix minus = ScalarMatrix::identity(m), plus = ScalarMatrix::identity(m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t k = 0; k < m; ++k) {
                minus(r, k) -= a(r, k);
                plus(r, k) += a(r, k);
            }
        // W^T solves (I + A)^T W^T = (I - A)^T
        w = solve(plus.transposed(), minus.transposed()).transposed();
    }
    detail::check_completion_constant(w, c);
    return w;
}

struct CompletionResult {
    CoronaSolution h;
    bool corona_skipped = false;
    PhiRow phi;
    RatMatrix U;
    ScalarMatrix W;
    RatMatrix V;    // first column is the given row
    RatMatrix V_T;  // first row is the given row
    Certificate certificate;
};

inline CompletionResult complete(const UnitRow& row, int max_degree = -1) {
    if (row.m < 2) throw input_error("completion needs at least two entries");
    if (!verify_unit_row(row)) throw inconsistent_input("row does not satisfy sum v_i tilde(v_i) = 1");
    CompletionResult res;
    if (row.vm_disk_zeros.empty()) {
        // v_m has no zeros in the disk, so h = 0 already works
        res.corona_skipped = true;
        res.h.h.assign(row.m, Pol());
    } else {
        res.h = solve_corona(row, max_degree);
    }
    res.phi = build_phi_row(row, res.h);
    res.U = construct_paraunitary(res.phi).U;
    const std::vector<RatFn> shown = row.displayed();
    std::vector<FieldElement> c;
    for (const auto& f : shown) c.push_back(f(FieldElement(1)));
    res.W = unitary_completion_constant(c);
    res.V = res.U * constant_matrix(res.W);
    res.V_T = res.V.transposed();

    bool first = true;
    for (std::size_t i = 0; i < row.m; ++i) first = first && res.V(i, 0) == shown[i];
    res.certificate.add("first column of V is the given row", first);
    res.certificate.add("V*tilde(V) = I", product_equals(res.V, tilde(res.V), RatMatrix::identity(row.m)));
    const FieldElement det_w = determinant(res.W);
    res.certificate.add("det V is a unimodular constant",
                        det_w * conj(det_w) == FieldElement(1) && determinant_equals(res.V, RatFn(det_w)));
    if (!res.certificate.passed())
        throw certificate_error("completion certificate failed: " + res.certificate.first_failure());
    return res;
}

}  // namespace specfact
