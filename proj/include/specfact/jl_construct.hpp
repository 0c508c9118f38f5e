#pragma once

// Exact construction of the unique paraunitary U with det U = 1, U(1) = I and
// F U analytic in the disk, where F is the identity with its last row replaced by
// (phi_1, ..., phi_{m-1}, 1) and every phi_i has its poles inside the disk.
//
// Column j of U is found from one linear system in the partial-fraction
// coefficients of the tilde-side entries:
//   tilde(u_i) = C_i + sum_{k,l} C_ikl / (z - a_ik)^l          (i < m, poles of phi_i)
//   tilde(u_m) = C_m + sum_{k,l} C_mkl / (z - a_mk)^l          (merged poles)
// The equations are U(1) e_j = e_j, followed by the vanishing of the principal
// parts of phi_i u_m - tilde(u_i) at every pole of phi_i, followed by the
// vanishing of the principal parts of sum_i phi_i u_i + tilde(u_m) at every
// merged pole.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "specfact/errors.hpp"
#include "specfact/identity_check.hpp"
#include "specfact/taylor_kernel.hpp"
#include "specfact/types.hpp"

namespace specfact {

/// phi_1..phi_{m-1} in partial-fraction form, entire parts zero.
struct PhiRow {
    std::size_t m = 1;
    std::vector<PFrac> phis;
};

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Outcome of the exact identities verified after a construction.
struct Certificate {
    std::vector<Check> checks;

    void add(std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok, std::move(detail)});
    }
    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
        return {};
    }
};

/// Flat indexing of the unknowns C_i and C_ikl.
struct UnknownLayout {
    std::size_t m = 1;
    /// poles[i] for i < m-1 are the poles of phi_{i+1}; poles[m-1] are the merged poles.
    std::vector<std::vector<Pole>> poles;
    std::vector<std::size_t> constant_index;
    std::vector<std::vector<std::size_t>> block_start;  // index of C_{ik1}
    std::size_t unknowns = 0;

    const std::vector<Pole>& merged() const { return poles[m - 1]; }
    std::size_t index(std::size_t i, std::size_t k, std::size_t l) const { return block_start[i][k] + l - 1; }
};

/// The coefficient system shared by all columns: rows x unknowns plus one right-hand
/// side per column. When doubled, unknown 2n is Re C_n and 2n+1 is Im C_n.
struct JLSystem {
    ScalarMatrix matrix;
    ScalarMatrix rhs;
    bool doubled = false;
};

struct ParaunitaryResult {
    RatMatrix U;
    UnknownLayout layout;
    std::vector<std::vector<FieldElement>> coefficients;  // per column, in layout order
    Certificate certificate;
};

inline void validate(const PhiRow& row) {
    if (row.m < 1) throw input_error("matrix size must be positive");
    if (row.phis.size() + 1 != row.m) throw input_error("phi row must have m-1 entries");
    for (std::size_t i = 0; i < row.phis.size(); ++i) {
        const auto& phi = row.phis[i];
        if (!phi.entire.is_zero()) throw input_error("phi_" + std::to_string(i + 1) + " has a nonzero entire part");
        for (std::size_t k = 0; k < phi.terms.size(); ++k) {
            const auto& t = phi.terms[k];
            if (t.coeffs.empty() || is_zero(t.coeffs.back()))
                throw input_error("phi_" + std::to_string(i + 1) + " has a pole term with zero top coefficient");
            if (!in_open_disk(t.pole))
                throw input_error("pole " + t.pole.to_string() + " of phi_" + std::to_string(i + 1) +
                                  " is not inside the open unit disk");
            for (std::size_t q = 0; q < k; ++q)
                if (phi.terms[q].pole == t.pole) throw input_error("repeated pole in phi_" + std::to_string(i + 1));
        }
    }
}

inline RatMatrix f_matrix(const PhiRow& row) {
    RatMatrix f = RatMatrix::identity(row.m);
    for (std::size_t i = 0; i + 1 < row.m; ++i) f(row.m - 1, i) = pf_to_ratfn(row.phis[i]);
    return f;
}

/// Merges the poles of all phi_i (keeping the maximal order) and lays out the unknowns.
inline UnknownLayout merge_poles(const PhiRow& row) {
    validate(row);
    UnknownLayout lay;
    lay.m = row.m;
    lay.poles.resize(row.m);
    std::vector<Pole> merged;
    for (std::size_t i = 0; i + 1 < row.m; ++i) {
        for (const auto& t : row.phis[i].terms) {
            lay.poles[i].push_back({t.pole, t.order()});
            bool found = false;
            for (auto& p : merged)
                if (p.location == t.pole) {
                    p.order = std::max(p.order, t.order());
                    found = true;
                }
            if (!found) merged.push_back({t.pole, t.order()});
        }
        sort_poles(lay.poles[i]);
    }
    sort_poles(merged);
    lay.poles[row.m - 1] = std::move(merged);

    std::size_t next = 0;
    lay.constant_index.resize(row.m);
    lay.block_start.resize(row.m);
    for (std::size_t i = 0; i < row.m; ++i) {
        lay.constant_index[i] = next++;
        for (const auto& p : lay.poles[i]) {
            lay.block_start[i].push_back(next);
            next += static_cast<std::size_t>(p.order);
        }
    }
    lay.unknowns = next;
    return lay;
}

namespace detail {

// Coefficients of phi_i at a given pole, zero padded to 'len', or empty if phi_i has no pole there.
inline std::vector<FieldElement> gamma_at(const PFrac& phi, const FieldElement& a, std::size_t len) {
    for (const auto& t : phi.terms) {
        if (t.pole == a) {
            std::vector<FieldElement> g(std::max(len, t.coeffs.size()), FieldElement(0));
            std::copy(t.coeffs.begin(), t.coeffs.end(), g.begin());
            return g;
        }
    }
    return {};
}

// Adds  sum_{p} gamma_{q+p} c_p{u_i, a}  for q = 1..len into row_base..row_base+len-1 of 'conj_coeffs',
// where u_i = conj(C_i) + sum_tau sum_l conj(C_i,tau,l) z^l/(1 - conj(a_tau) z)^l.
inline void add_hankel_times_taylor(ScalarMatrix& conj_coeffs, std::size_t row_base, const std::vector<FieldElement>& gamma,
                                    std::size_t len, const UnknownLayout& lay, std::size_t i, const FieldElement& a,
                                    TransferCache<FieldElement>& cache) {
    for (std::size_t q = 1; q <= len; ++q) {
        const std::size_t row = row_base + q - 1;
        // p = 0 constant term
        conj_coeffs(row, lay.constant_index[i]) += gamma[q - 1];
        for (std::size_t tau = 0; tau < lay.poles[i].size(); ++tau) {
            const Pole& b = lay.poles[i][tau];
            const auto& t = cache.get(a, b.location, len, static_cast<std::size_t>(b.order));
            for (std::size_t l = 1; l <= static_cast<std::size_t>(b.order); ++l) {
                FieldElement acc(0);
                for (std::size_t p = 0; q + p <= len; ++p) acc += gamma[q + p - 1] * t.entries(p, l - 1);
                if (!acc.is_zero()) conj_coeffs(row, lay.index(i, tau, l)) += acc;
            }
        }
    }
}

inline bool field_is_gaussian(const PhiRow& row) {
    for (const auto& phi : row.phis)
        for (const auto& t : phi.terms) {
            if (t.pole.field() && t.pole.field()->gaussian()) return true;
            for (const auto& c : t.coeffs)
                if (c.field() && c.field()->gaussian()) return true;
        }
    return false;
}

}  // namespace detail

/// The coefficient system with every column's right-hand side e_j.
inline JLSystem build_system(const UnknownLayout& lay, const PhiRow& row) {
    const std::size_t n = lay.unknowns, m = lay.m;
    ScalarMatrix plain(n, n), conjd(n, n), rhs(n, m);
    TransferCache<FieldElement> cache;
    std::size_t r = 0;

    // u_i(1) = conj(C_i) + sum conj(C_ikl)/(1 - conj(a_ik))^l = delta_ij
    for (std::size_t i = 0; i < m; ++i, ++r) {
        conjd(r, lay.constant_index[i]) = 1;
        for (std::size_t k = 0; k < lay.poles[i].size(); ++k) {
            const FieldElement base = (FieldElement(1) - conj(lay.poles[i][k].location)).inverse();
            FieldElement w = base;
            for (std::size_t l = 1; l <= static_cast<std::size_t>(lay.poles[i][k].order); ++l, w *= base)
                conjd(r, lay.index(i, k, l)) = w;
        }
        rhs(r, i) = 1;
    }

    // principal parts of phi_i u_m - tilde(u_i) at each pole of phi_i
    for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t k = 0; k < lay.poles[i].size(); ++k) {
            const Pole& a = lay.poles[i][k];
            const auto len = static_cast<std::size_t>(a.order);
            auto gamma = detail::gamma_at(row.phis[i], a.location, len);
            detail::add_hankel_times_taylor(conjd, r, gamma, len, lay, m - 1, a.location, cache);
            for (std::size_t q = 1; q <= len; ++q) plain(r + q - 1, lay.index(i, k, q)) -= 1;
            r += len;
        }
    }

    // principal parts of sum_i phi_i u_i + tilde(u_m) at each merged pole
    for (std::size_t k = 0; k < lay.merged().size(); ++k) {
        const Pole& a = lay.merged()[k];
        const auto len = static_cast<std::size_t>(a.order);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            auto gamma = detail::gamma_at(row.phis[i], a.location, len);
            if (gamma.empty()) continue;
            detail::add_hankel_times_taylor(conjd, r, gamma, len, lay, i, a.location, cache);
        }
        for (std::size_t q = 1; q <= len; ++q) plain(r + q - 1, lay.index(m - 1, k, q)) += 1;
        r += len;
    }
    if (r != n) throw internal_error("equation count differs from unknown count");

    JLSystem sys;
    if (!detail::field_is_gaussian(row)) {
        // real data: conj(C) = C
        sys.matrix = plain + conjd;
        sys.rhs = std::move(rhs);
        return sys;
    }
    // a z + b conj(z) = c  with z = x + i y
    sys.doubled = true;
    sys.matrix = ScalarMatrix(2 * n, 2 * n);
    sys.rhs = ScalarMatrix(2 * n, m);
    for (std::size_t row_i = 0; row_i < n; ++row_i) {
        for (std::size_t col = 0; col < n; ++col) {
            const FieldElement &a = plain(row_i, col), &b = conjd(row_i, col);
            const FieldElement ar = a.real_part(), ai = a.imag_part(), br = b.real_part(), bi = b.imag_part();
            sys.matrix(row_i, 2 * col) = ar + br;
            sys.matrix(row_i, 2 * col + 1) = bi - ai;
            sys.matrix(n + row_i, 2 * col) = ai + bi;
            sys.matrix(n + row_i, 2 * col + 1) = ar - br;
        }
        for (std::size_t j = 0; j < m; ++j) {
            sys.rhs(row_i, j) = rhs(row_i, j).real_part();
            sys.rhs(n + row_i, j) = rhs(row_i, j).imag_part();
        }
    }
    return sys;
}

/// The system for column j (0-based) alone.
inline JLSystem build_column_system(const UnknownLayout& lay, const PhiRow& row, std::size_t j) {
    if (j >= lay.m) throw input_error("column index out of range");
    JLSystem all = build_system(lay, row);
    ScalarMatrix rhs(all.rhs.rows(), 1);
    for (std::size_t r = 0; r < rhs.rows(); ++r) rhs(r, 0) = all.rhs(r, j);
    all.rhs = std::move(rhs);
    return all;
}

/// One solution vector (in layout order) per right-hand side column.
inline std::vector<std::vector<FieldElement>> solve_system(const JLSystem& sys) {
    ScalarMatrix x = solve(sys.matrix, sys.rhs);
    std::vector<std::vector<FieldElement>> out;
    for (std::size_t c = 0; c < x.cols(); ++c) {
        std::vector<FieldElement> col;
        if (!sys.doubled) {
            for (std::size_t r = 0; r < x.rows(); ++r) col.push_back(x(r, c));
        } else {
            for (std::size_t r = 0; r < x.rows(); r += 2) {
                const FieldElement& re = x(r, c);
                const FieldElement& im = x(r + 1, c);
                if (im.is_zero()) {
                    col.push_back(re);
                } else {
                    col.push_back(re + im * FieldElement::imaginary_unit(im.field()));
                }
            }
        }
        out.push_back(std::move(col));
    }
    return out;
}

/// tilde-side function C_i + sum_{k,l} C_ikl/(z - a_ik)^l for unknown group i.
inline PFrac tilde_side(const UnknownLayout& lay, std::size_t i, const std::vector<FieldElement>& c) {
    PFrac pf;
    pf.entire = Pol(c[lay.constant_index[i]]);
    for (std::size_t k = 0; k < lay.poles[i].size(); ++k) {
        PoleTerm<FieldElement> t{lay.poles[i][k].location, {}};
        for (std::size_t l = 1; l <= static_cast<std::size_t>(lay.poles[i][k].order); ++l)
            t.coeffs.push_back(c[lay.index(i, k, l)]);
        while (!t.coeffs.empty() && t.coeffs.back().is_zero()) t.coeffs.pop_back();
        if (!t.coeffs.empty()) pf.terms.push_back(std::move(t));
    }
    return pf;
}

namespace detail {

inline bool all_zero_coeffs(const std::vector<FieldElement>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline std::vector<FieldElement> add_coeffs(std::vector<FieldElement> a, const std::vector<FieldElement>& b) {
    if (a.size() < b.size()) a.resize(b.size(), FieldElement(0));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k];
    return a;
}

inline int phi_order_at(const PhiRow& row, const FieldElement& a) {
    int n = 0;
    for (const auto& phi : row.phis)
        for (const auto& t : phi.terms)
            if (t.pole == a) n = std::max(n, t.order());
    return n;
}

}  // namespace detail

/// Principal parts of every condition of the system
///   phi_i x_m - tilde(x_i) (i < m),   sum_i phi_i x_i + tilde(x_m)
/// vanish at each of 'points', where (x_1, ..., x_{m-1}, tilde(x_m)) is 'hat_column'
/// and x_1, ..., x_{m-1}, x_m are analytic at those points.
inline bool column_conditions_hold(const PhiRow& row, const std::vector<RatFn>& hat_column,
                                   const std::vector<FieldElement>& points, std::string* where = nullptr) {
    const std::size_t m = row.m;
    if (hat_column.size() != m) throw math_error("column length mismatch");
    const RatFn xm = tilde(hat_column[m - 1]);
    for (const auto& a : points) {
        auto fail = [&](std::size_t c) {
            if (where) *where = "condition " + std::to_string(c + 1) + " has a pole at " + a.to_string();
            return false;
        };
        const int bound = std::max({detail::phi_order_at(row, a), pole_order_at(hat_column[m - 1], a), 0});
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const RatFn ti = tilde(hat_column[i]);
            const int own = pole_order_at(ti, a);
            std::vector<FieldElement> pp = principal_part_of_product(row.phis[i], xm, a, std::max(bound, own));
            std::vector<FieldElement> t = principal_part(ti, a, own);
            for (auto& x : t) x = -x;
            if (!detail::all_zero_coeffs(detail::add_coeffs(pp, t))) return fail(i);
        }
        std::vector<FieldElement> last = principal_part(hat_column[m - 1], a, bound);
        for (std::size_t i = 0; i + 1 < m; ++i)
            last = detail::add_coeffs(last, principal_part_of_product(row.phis[i], hat_column[i], a, bound));
        if (!detail::all_zero_coeffs(last)) return fail(m - 1);
    }
    return true;
}

inline Certificate certify_paraunitary(const PhiRow& row, const UnknownLayout& lay, const RatMatrix& u) {
    Certificate cert;
    const std::size_t m = row.m;
    const RatMatrix id = RatMatrix::identity(m);
    const RatMatrix ut = tilde(u);
    cert.add("U*tilde(U) = I", product_equals(u, ut, id));
    cert.add("det U = 1", determinant_equals(u, RatFn(FieldElement(1))));
    bool normalized = true;
    try {
        normalized = evaluate(u, FieldElement(1)) == ScalarMatrix::identity(m);
    } catch (const math_error&) {
        normalized = false;
    }
    cert.add("U(1) = I", normalized);
    // Gram function of columns i, j is entry (j, i) of tilde(U) U
    cert.add("column Gram functions constant", product_equals(ut, u, id));

    std::vector<FieldElement> points;
    for (const auto& p : lay.merged()) points.push_back(p.location);
    bool cols = true;
    std::string where;
    for (std::size_t j = 0; j < m && cols; ++j) {
        std::vector<RatFn> hat;
        for (std::size_t i = 0; i < m; ++i) hat.push_back(u(i, j));
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (const auto& a : points)
                if (pole_order_at(u(i, j), a) != 0) {
                    cols = false;
                    where = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") has a pole at " +
                            a.to_string();
                }
        if (cols && !column_conditions_hold(row, hat, points, &where)) {
            cols = false;
            where = "column " + std::to_string(j + 1) + ": " + where;
        }
    }
    cert.add("columns solve the analyticity conditions (F*U analytic)", cols, cols ? "" : where);
    return cert;
}

/// Builds U column by column; throws internal_error if any certificate check fails.
inline ParaunitaryResult construct_paraunitary(const PhiRow& row) {
    ParaunitaryResult res;
    res.layout = merge_poles(row);
    const UnknownLayout& lay = res.layout;
    const std::size_t m = row.m;
    res.U = RatMatrix(m, m);
    res.coefficients = solve_system(build_system(lay, row));
    for (std::size_t j = 0; j < m; ++j) {
        const auto& c = res.coefficients[j];
        for (std::size_t i = 0; i + 1 < m; ++i) res.U(i, j) = tilde(pf_to_ratfn(tilde_side(lay, i, c)));
        res.U(m - 1, j) = pf_to_ratfn(tilde_side(lay, m - 1, c));
    }
    res.certificate = certify_paraunitary(row, lay, res.U);
    if (!res.certificate.passed())
        throw certificate_error("paraunitary certificate failed: " + res.certificate.first_failure());
    return res;
}

}  // namespace specfact
