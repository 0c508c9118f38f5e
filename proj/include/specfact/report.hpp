#pragma once

// Runs a parsed problem and renders the outcome. Exact rendering is authoritative;
// decimal rendering is labeled as an approximation.

#include <chrono>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "specfact/completion.hpp"
#include "specfact/expr_parser.hpp"
#include "specfact/identity_check.hpp"
#include "specfact/jl_construct.hpp"
#include "specfact/problem.hpp"
#include "specfact/spectral_factor.hpp"

namespace specfact {

struct NamedMatrix {
    std::string name;
    RatMatrix value;
};

struct Report {
    std::string task;
    FieldPtr field;
    std::vector<NamedMatrix> results;
    std::vector<Check> checks;
    std::vector<std::string> diffs;
    std::vector<std::string> notes;
    double millis = 0;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const RatMatrix* find(const std::string& name) const {
        for (const auto& r : results)
            if (r.name == name) return &r.value;
        return nullptr;
    }
};

namespace detail {

inline std::string entry_name(const std::string& m, std::size_t i, std::size_t j) {
    return m + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

inline void compare_expectation(Report& rep, const std::string& name, const RatMatrix& expected) {
    const RatMatrix* got = rep.find(name);
    if (!got) {
        rep.checks.push_back({"expected " + name, false, "the task produced no " + name});
        return;
    }
    if (got->rows() != expected.rows() || got->cols() != expected.cols()) {
        rep.checks.push_back({"expected " + name, false,
                              "size " + std::to_string(expected.rows()) + "x" + std::to_string(expected.cols()) +
                                  " expected, " + std::to_string(got->rows()) + "x" + std::to_string(got->cols()) +
                                  " computed"});
        return;
    }
    std::size_t bad = 0;
    for (std::size_t i = 0; i < expected.rows(); ++i)
        for (std::size_t j = 0; j < expected.cols(); ++j)
            if (!((*got)(i, j) == expected(i, j))) {
                ++bad;
                rep.diffs.push_back(entry_name(name, i, j) + ": expected " + render_ratfn(expected(i, j)) +
                                    ", computed " + render_ratfn((*got)(i, j)));
            }
    rep.checks.push_back({"expected " + name, bad == 0, bad ? std::to_string(bad) + " entries differ" : ""});
}

inline RatMatrix row_matrix(const std::vector<RatFn>& v) {
    RatMatrix m(1, v.size());
    for (std::size_t k = 0; k < v.size(); ++k) m(0, k) = v[k];
    return m;
}

inline void add_certificate(Report& rep, const Certificate& c, const std::string& prefix = {}) {
    for (const auto& ch : c.checks) rep.checks.push_back({prefix + ch.name, ch.passed, ch.detail});
}

}  // namespace detail

/// Runs the problem's task, then compares every expected result.
inline Report run(const ProblemFile& p) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.task = p.task;
    rep.field = p.field;
    if (p.task == "factor-f") {
        ParaunitaryResult res = construct_paraunitary(p.phi);
        rep.results.push_back({"U", res.U});
        detail::add_certificate(rep, res.certificate);
    } else if (p.task == "spectral") {
        FactorizationResult res = factorize(p.factor, p.options.expect_polynomial);
        rep.results.push_back({"S_plus", res.S_plus});
        RatMatrix u = RatMatrix::identity(p.factor.M.rows());
        for (const auto& s : res.stages) {
            rep.results.push_back({"U_" + std::to_string(s.m), s.paraunitary.U});
            u = u * s.embedded;
        }
        rep.results.push_back({"U", u});
        detail::add_certificate(rep, res.certificate);
        if (p.S) {
            const auto diffs = verify_against_S(res, *p.S);
            for (const auto& d : diffs)
                rep.diffs.push_back(detail::entry_name("S", d.row, d.col) + ": given " + render_ratfn(d.expected) +
                                    ", S+ tilde(S+) gives " + render_ratfn(d.actual));
            rep.checks.push_back({"S+ tilde(S+) = S", diffs.empty(),
                                  diffs.empty() ? "" : std::to_string(diffs.size()) + " entries differ"});
        }
    } else if (p.task == "complete") {
        if (!verify_unit_row(p.unit_row))
            throw inconsistent_input("$.row: the row does not satisfy sum v_i tilde(v_i) = 1");
        CompletionResult res = complete(p.unit_row, p.options.max_degree.value_or(-1));
        std::vector<RatFn> phis;
        for (const auto& f : res.phi.phis) phis.push_back(pf_to_ratfn(f));
        rep.results.push_back({"phi", detail::row_matrix(phis)});
        rep.results.push_back({"W", constant_matrix(res.W)});
        rep.results.push_back({"V", res.V});
        rep.results.push_back({"V_T", res.V_T});
        if (res.corona_skipped) {
            rep.notes.push_back("v_m has no zeros in the disk; corona step skipped (h = 0)");
        } else {
            std::vector<RatFn> h;
            for (const auto& x : res.h.h) h.push_back(RatFn(x));
            rep.results.push_back({"h", detail::row_matrix(h)});
            rep.notes.push_back("corona solution found at degree " + std::to_string(res.h.degree));
            if (res.h.large_degree) rep.notes.push_back("corona degree exceeds 5");
        }
        detail::add_certificate(rep, res.certificate);
    } else if (p.task == "verify") {
        if (p.S) {
            const auto bad = product_mismatches(*p.S_plus, tilde(*p.S_plus), *p.S, RatMatrix::identity(p.S->cols()));
            const RatMatrix spt = tilde(*p.S_plus);
            for (const auto& [i, j] : bad) {
                RatFn actual;
                for (std::size_t k = 0; k < p.S_plus->cols(); ++k) actual += (*p.S_plus)(i, k) * spt(k, j);
                rep.diffs.push_back(detail::entry_name("S", i, j) + ": given " + render_ratfn((*p.S)(i, j)) +
                                    ", S_plus tilde(S_plus) gives " + render_ratfn(actual));
            }
            rep.checks.push_back({"S_plus tilde(S_plus) = S", bad.empty(),
                                  bad.empty() ? "" : std::to_string(bad.size()) + " entries differ"});
        }
        if (p.U) {
            const RatMatrix id = RatMatrix::identity(p.U->rows());
            const auto bad = product_mismatches(*p.U, tilde(*p.U), id, id);
            for (const auto& [i, j] : bad) rep.diffs.push_back(detail::entry_name("U tilde(U)", i, j) + " differs from I");
            rep.checks.push_back({"U tilde(U) = I", bad.empty(), ""});
        }
    }
    for (const auto& [name, m] : p.expect) detail::compare_expectation(rep, name, m);
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/// mode is "exact", "decimal" or "both".
inline std::string render_report(const Report& rep, const std::string& mode, int precision) {
    std::string out;
    out += "task " + rep.task + "\n";
    out += "field " + render_field(rep.field) + "\n";
    auto matrices = [&](bool exact) {
        for (const auto& r : rep.results)
            for (std::size_t i = 0; i < r.value.rows(); ++i)
                for (std::size_t j = 0; j < r.value.cols(); ++j)
                    out += detail::entry_name(r.name, i, j) + " = " +
                           (exact ? render_ratfn(r.value(i, j)) : render_ratfn_decimal(r.value(i, j), precision)) +
                           "\n";
    };
    if (mode == "exact" || mode == "both") matrices(true);
    if (mode == "decimal" || mode == "both") {
        out += "# non-authoritative decimal rendering, " + std::to_string(precision) + " digits\n";
        matrices(false);
    }
    for (const auto& n : rep.notes) out += "note " + n + "\n";
    for (const auto& c : rep.checks)
        out += std::string(c.passed ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") +
               "\n";
    for (const auto& d : rep.diffs) out += "diff " + d + "\n";
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", rep.millis);
    out += std::string("time ") + ms + " ms\n";
    out += std::string("status ") + (rep.passed() ? "ok" : "failed") + "\n";
    return out;
}

}  // namespace specfact
