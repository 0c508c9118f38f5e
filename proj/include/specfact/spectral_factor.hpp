#pragma once

// Spectral factor S+ = M U_2 ... U_r of a lower-triangular factor M, one
// paraunitary stage per row. Stage m splits zeta_i / f_m (zeta_i = row m of the
// current product, f_m = M(m, m)) into analytic and in-disk parts and feeds the
// in-disk parts to construct_paraunitary.

#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "specfact/errors.hpp"
#include "specfact/identity_check.hpp"
#include "specfact/jl_construct.hpp"
#include "specfact/types.hpp"

namespace specfact {

/// In-disk poles of the strictly lower entry (row, col) of M, 0-based.
struct EntryPoles {
    std::size_t row = 0;
    std::size_t col = 0;
    std::vector<Pole> poles;
};

struct TriangularFactor {
    RatMatrix M;
    std::vector<EntryPoles> pole_data;
};

struct StageResult {
    std::size_t m = 0;  // 1-based stage index
    PhiRow phi;
    std::vector<RatFn> plus_parts;
    ParaunitaryResult paraunitary;
    RatMatrix embedded;  // U_m padded with the identity
};

struct FactorizationResult {
    RatMatrix S_plus;
    std::vector<StageResult> stages;
    Certificate certificate;
};

struct EntryDiff {
    std::size_t row = 0;
    std::size_t col = 0;
    RatFn expected;
    RatFn actual;
};

inline void validate(const TriangularFactor& tf) {
    const std::size_t r = tf.M.rows();
    if (r == 0 || tf.M.cols() != r) throw input_error("triangular factor must be a nonempty square matrix");
    for (std::size_t i = 0; i < r; ++i) {
        if (tf.M(i, i).is_zero()) throw input_error("diagonal entry " + std::to_string(i + 1) + " is zero");
        for (std::size_t j = i + 1; j < r; ++j)
            if (!tf.M(i, j).is_zero())
                throw input_error("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  ") above the diagonal is nonzero");
    }
    for (const auto& e : tf.pole_data) {
        if (e.row >= r || e.col >= e.row) throw input_error("pole data must refer to a strictly lower entry");
        for (const auto& p : e.poles) {
            if (!in_open_disk(p.location))
                throw input_error("pole " + p.location.to_string() + " is not inside the open unit disk");
            const int actual = pole_order_at(tf.M(e.row, e.col), p.location);
            if (actual != p.order)
                throw inconsistent_input("entry (" + std::to_string(e.row + 1) + "," + std::to_string(e.col + 1) +
                                         ") has a pole of order " + std::to_string(actual) + " at " +
                                         p.location.to_string() + ", declared " + std::to_string(p.order));
        }
    }
}

/// In-disk pole candidates for stage m (1-based): declared poles of row m of M and
/// the merged poles of every earlier stage, each with the order found in zeta_i / f_m.
inline std::pair<PhiRow, std::vector<RatFn>> split_bottom_row(const RatMatrix& prev, std::size_t m,
                                                              const std::vector<FieldElement>& candidates) {
    if (m < 2 || m > prev.rows()) throw input_error("stage index out of range");
    const RatFn& fm = prev(m - 1, m - 1);
    if (fm.is_zero()) throw input_error("diagonal entry is zero");
    PhiRow row;
    row.m = m;
    std::vector<RatFn> plus;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const RatFn ratio = prev(m - 1, i) / fm;
        std::vector<Pole> poles;
        for (const auto& a : candidates) {
            const int n = pole_order_at(ratio, a);
            if (n > 0) poles.push_back({a, n});
        }
        auto [p, minus] = split_plus_minus(ratio, poles);
        row.phis.push_back(std::move(minus));
        plus.push_back(std::move(p));
    }
    return {std::move(row), std::move(plus)};
}

inline RatMatrix embed(const RatMatrix& u, std::size_t r) {
    RatMatrix out = RatMatrix::identity(r);
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) = u(i, j);
    return out;
}

inline FactorizationResult factorize(const TriangularFactor& tf, bool expect_polynomial = false) {
    validate(tf);
    const std::size_t r = tf.M.rows();
    FactorizationResult res;
    RatMatrix cur = tf.M;
    std::vector<FieldElement> earlier;
    auto add_candidate = [](std::vector<FieldElement>& v, const FieldElement& a) {
        for (const auto& x : v)
            if (x == a) return;
        v.push_back(a);
    };
    for (std::size_t m = 2; m <= r; ++m) {
        std::vector<FieldElement> candidates = earlier;
        for (const auto& e : tf.pole_data)
            if (e.row == m - 1)
                for (const auto& p : e.poles) add_candidate(candidates, p.location);
        StageResult stage;
        stage.m = m;
        std::tie(stage.phi, stage.plus_parts) = split_bottom_row(cur, m, candidates);
        stage.paraunitary = construct_paraunitary(stage.phi);
        for (const auto& p : stage.paraunitary.layout.merged()) add_candidate(earlier, p.location);
        stage.embedded = embed(stage.paraunitary.U, r);
        // only the leading m columns change
        RatMatrix next = cur;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                RatFn acc;
                for (std::size_t k = 0; k < m; ++k)
                    if (!cur(i, k).is_zero() && !stage.paraunitary.U(k, j).is_zero())
                        acc += cur(i, k) * stage.paraunitary.U(k, j);
                next(i, j) = acc;
            }
        cur = std::move(next);
        const RatMatrix lead = cur.leading(m), mlead = tf.M.leading(m);
        res.certificate.add("stage " + std::to_string(m) + ": leading block times its tilde unchanged",
                            product_mismatches(lead, tilde(lead), mlead, tilde(mlead)).empty());
        res.stages.push_back(std::move(stage));
    }
    res.S_plus = cur;

    res.certificate.add("S+ tilde(S+) = M tilde(M)",
                        product_mismatches(res.S_plus, tilde(res.S_plus), tf.M, tilde(tf.M)).empty());
    RatFn det_m(FieldElement(1));
    for (std::size_t i = 0; i < r; ++i) det_m *= tf.M(i, i);
    res.certificate.add("det S+ = det M", determinant_equals(res.S_plus, det_m));
    try {
        res.certificate.add("S+(1) = M(1)", evaluate(res.S_plus, FieldElement(1)) == evaluate(tf.M, FieldElement(1)));
    } catch (const math_error&) {
        res.certificate.add("S+(1) = M(1)", true, "M has a pole at 1; not evaluated");
    }
    if (expect_polynomial) {
        std::string where;
        for (std::size_t i = 0; i < r && where.empty(); ++i)
            for (std::size_t j = 0; j < r && where.empty(); ++j)
                if (!res.S_plus(i, j).is_polynomial())
                    where = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        if (!where.empty())
            throw inconsistent_input("spectral factor " + where +
                                     " is not a polynomial; M is not a lower-upper factor of a polynomial matrix");
        res.certificate.add("S+ entries are polynomials", true);
    }
    if (!res.certificate.passed())
        throw certificate_error("spectral factor certificate failed: " + res.certificate.first_failure());
    return res;
}

/// Entries where S differs from S+ tilde(S+); empty when the factorization reproduces S.
inline std::vector<EntryDiff> verify_against_S(const FactorizationResult& result, const RatMatrix& s) {
    const RatMatrix& sp = result.S_plus;
    if (s.rows() != sp.rows() || s.cols() != sp.cols()) throw input_error("S has the wrong size");
    const RatMatrix spt = tilde(sp);
    std::vector<EntryDiff> out;
    for (const auto& [i, j] : product_mismatches(sp, spt, s, RatMatrix::identity(s.cols()))) {
        RatFn actual;
        for (std::size_t k = 0; k < sp.cols(); ++k) actual += sp(i, k) * spt(k, j);
        out.push_back({i, j, s(i, j), actual});
    }
    return out;
}

}  // namespace specfact
