#pragma once

// Problem files: JSON objects whose element literals are strings in the
// expression grammar of expr_parser.hpp.
//
//   {
//     "field": "Q(sqrt 5)(sqrt (3-s1))",
//     "task": "factor-f" | "spectral" | "complete" | "verify",
//     ... task payload ...,
//     "options": {"expect_polynomial": bool, "max_degree": int,
//                 "render": "exact" | "decimal" | "both", "precision": int},
//     "expect": {"<result name>": [[...], ...], ...}
//   }
//
// Payloads (matrix rows and entries are 1-based in pole annotations):
//   factor-f  "phi": [{"f": expr, "poles": [{"at": expr, "order": n}, ...]}, ...]
//   spectral  "M": matrix, "poles": [{"entry": [i, j], "at": expr, "order": n}, ...], "S": matrix (optional)
//   complete  "row": [expr, ...], "reflected_poles": [[pole, ...], ...], "vm_disk_zeros": [pole, ...]
//   verify    "S" with "S_plus", and/or "U"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "specfact/completion.hpp"
#include "specfact/errors.hpp"
#include "specfact/expr_parser.hpp"
#include "specfact/jl_construct.hpp"
#include "specfact/spectral_factor.hpp"

namespace specfact {

struct Options {
    bool expect_polynomial = false;
    std::optional<int> max_degree;
    std::string render = "exact";
    int precision = 12;
};

struct ProblemFile {
    FieldPtr field;
    std::string task;

    // factor-f
    PhiRow phi;
    std::vector<RatFn> phi_functions;

    // spectral
    TriangularFactor factor;
    std::optional<RatMatrix> S;

    // complete
    std::vector<RatFn> row;
    UnitRow unit_row;

    // verify
    std::optional<RatMatrix> S_plus;
    std::optional<RatMatrix> U;

    Options options;
    std::map<std::string, RatMatrix> expect;
};

/// Result names a task produces, and so the keys its "expect" block may use.
inline std::vector<std::string> result_names(const std::string& task) {
    if (task == "factor-f") return {"U"};
    if (task == "spectral") return {"S_plus", "U"};
    if (task == "complete") return {"phi", "W", "V", "V_T"};
    return {};
}

namespace detail {

using nlohmann::json;

inline std::string with_path(const std::string& path, const std::string& what) { return path + ": " + what; }

inline void only_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw input_error(with_path(path, "expected an object"));
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw input_error(with_path(path, "unknown key \"" + k + "\""));
}

inline const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw input_error(with_path(path, "missing key \"" + key + "\""));
    return j.at(key);
}

inline std::string literal(const json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw input_error(with_path(path, "expected an expression string"));
}

inline RatFn ratfn_at(const json& j, const std::string& path, const FieldPtr& f) {
    const std::string s = literal(j, path);
    try {
        return parse_ratfn(s, f);
    } catch (const parse_error& e) {
        throw input_error(with_path(path, std::string(e.what()) + " in \"" + s + "\""));
    } catch (const math_error& e) {
        throw input_error(with_path(path, std::string(e.what()) + " in \"" + s + "\""));
    }
}

inline FieldElement element_at(const json& j, const std::string& path, const FieldPtr& f) {
    const RatFn v = ratfn_at(j, path, f);
    if (!v.is_constant()) throw input_error(with_path(path, "expected a constant, found a function of z"));
    return v.constant_value();
}

inline RatMatrix matrix_at(const json& j, const std::string& path, const FieldPtr& f) {
    if (!j.is_array() || j.empty()) throw input_error(with_path(path, "expected a nonempty array of rows"));
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].empty())
            throw input_error(with_path(path + "[" + std::to_string(r) + "]", "expected a nonempty array"));
        if (r == 0) cols = j[r].size();
        if (j[r].size() != cols) throw input_error(with_path(path + "[" + std::to_string(r) + "]", "ragged matrix"));
    }
    RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = ratfn_at(j[r][c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]", f);
    return m;
}

inline Pole pole_at(const json& j, const std::string& path, const FieldPtr& f, const std::set<std::string>& extra = {}) {
    std::set<std::string> keys{"at", "order"};
    keys.insert(extra.begin(), extra.end());
    only_keys(j, path, keys);
    Pole p;
    p.location = element_at(need(j, "at", path), path + ".at", f);
    p.order = 1;
    if (j.contains("order")) {
        if (!j["order"].is_number_integer() || j["order"].get<long long>() < 1 || j["order"].get<long long>() > 64)
            throw input_error(with_path(path + ".order", "expected a positive integer"));
        p.order = j["order"].get<int>();
    }
    if (!in_open_disk(p.location))
        throw input_error(with_path(path, "pole " + p.location.to_string() + " is not inside the open unit disk"));
    return p;
}

inline std::vector<Pole> pole_list_at(const json& j, const std::string& path, const FieldPtr& f) {
    if (!j.is_array()) throw input_error(with_path(path, "expected an array of poles"));
    std::vector<Pole> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        Pole p = pole_at(j[k], path + "[" + std::to_string(k) + "]", f);
        for (const auto& q : out)
            if (q.location == p.location)
                throw input_error(with_path(path + "[" + std::to_string(k) + "]", "pole listed twice"));
        out.push_back(p);
    }
    return out;
}

// semantic errors from the library, tagged with the payload they came from
template <class F>
auto tagged(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const inconsistent_input& e) {
        throw inconsistent_input(with_path(path, e.what()));
    } catch (const input_error& e) {
        throw input_error(with_path(path, e.what()));
    } catch (const math_error& e) {
        throw input_error(with_path(path, e.what()));
    }
}

inline void parse_factor_f(const json& j, ProblemFile& p) {
    const json& phis = need(j, "phi", "$");
    if (!phis.is_array() || phis.empty()) throw input_error("$.phi: expected a nonempty array");
    p.phi.m = phis.size() + 1;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const std::string path = "$.phi[" + std::to_string(i) + "]";
        only_keys(phis[i], path, {"f", "poles"});
        const RatFn f = ratfn_at(need(phis[i], "f", path), path + ".f", p.field);
        const std::vector<Pole> poles =
            phis[i].contains("poles") ? pole_list_at(phis[i]["poles"], path + ".poles", p.field) : std::vector<Pole>{};
        PFrac pf = tagged(path, [&] { return ratfn_to_pf(f, poles); });
        if (!pf.entire.is_zero())
            throw inconsistent_input(with_path(path, "phi must vanish at infinity (nonzero polynomial part)"));
        p.phi_functions.push_back(f);
        p.phi.phis.push_back(std::move(pf));
    }
    tagged("$.phi", [&] {
        validate(p.phi);
        return 0;
    });
}

inline void parse_spectral(const json& j, ProblemFile& p) {
    p.factor.M = matrix_at(need(j, "M", "$"), "$.M", p.field);
    if (j.contains("poles")) {
        const json& poles = j["poles"];
        if (!poles.is_array()) throw input_error("$.poles: expected an array");
        for (std::size_t k = 0; k < poles.size(); ++k) {
            const std::string path = "$.poles[" + std::to_string(k) + "]";
            const Pole pole = pole_at(poles[k], path, p.field, {"entry"});
            const json& e = need(poles[k], "entry", path);
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw input_error(with_path(path + ".entry", "expected [row, column]"));
            const long long r = e[0].get<long long>(), c = e[1].get<long long>();
            if (r < 1 || c < 1 || static_cast<std::size_t>(r) > p.factor.M.rows() || c >= r)
                throw input_error(with_path(path + ".entry", "must name a strictly lower entry of M"));
            auto it = std::find_if(p.factor.pole_data.begin(), p.factor.pole_data.end(), [&](const EntryPoles& x) {
                return x.row == static_cast<std::size_t>(r - 1) && x.col == static_cast<std::size_t>(c - 1);
            });
            if (it == p.factor.pole_data.end()) {
                p.factor.pole_data.push_back({static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1), {}});
                it = p.factor.pole_data.end() - 1;
            }
            for (const auto& q : it->poles)
                if (q.location == pole.location) throw input_error(with_path(path, "pole listed twice"));
            it->poles.push_back(pole);
        }
    }
    tagged("$.M", [&] {
        validate(p.factor);
        return 0;
    });
    if (j.contains("S")) {
        p.S = matrix_at(j["S"], "$.S", p.field);
        if (p.S->rows() != p.factor.M.rows() || p.S->cols() != p.factor.M.cols())
            throw input_error("$.S: size differs from M");
    }
}

inline void parse_complete(const json& j, ProblemFile& p) {
    const json& row = need(j, "row", "$");
    if (!row.is_array() || row.empty()) throw input_error("$.row: expected a nonempty array");
    for (std::size_t i = 0; i < row.size(); ++i)
        p.row.push_back(ratfn_at(row[i], "$.row[" + std::to_string(i) + "]", p.field));
    std::vector<std::vector<Pole>> refl;
    if (j.contains("reflected_poles")) {
        const json& r = j["reflected_poles"];
        if (!r.is_array() || r.size() != row.size())
            throw input_error("$.reflected_poles: expected one pole list per row entry");
        for (std::size_t i = 0; i < r.size(); ++i)
            refl.push_back(pole_list_at(r[i], "$.reflected_poles[" + std::to_string(i) + "]", p.field));
    }
    std::vector<Pole> zeros;
    if (j.contains("vm_disk_zeros")) zeros = pole_list_at(j["vm_disk_zeros"], "$.vm_disk_zeros", p.field);
    p.unit_row = tagged("$.row", [&] { return make_unit_row(p.row, refl, zeros); });
}

inline void parse_verify(const json& j, ProblemFile& p) {
    if (j.contains("S") != j.contains("S_plus")) throw input_error("$: \"S\" and \"S_plus\" must be given together");
    if (!j.contains("S") && !j.contains("U")) throw input_error("$: nothing to verify (give S with S_plus, or U)");
    if (j.contains("S")) {
        p.S = matrix_at(j["S"], "$.S", p.field);
        p.S_plus = matrix_at(j["S_plus"], "$.S_plus", p.field);
        if (p.S->rows() != p.S_plus->rows() || p.S->cols() != p.S_plus->rows() || p.S_plus->rows() != p.S_plus->cols())
            throw input_error("$.S_plus: sizes of S and S_plus do not match");
    }
    if (j.contains("U")) {
        p.U = matrix_at(j["U"], "$.U", p.field);
        if (p.U->rows() != p.U->cols()) throw input_error("$.U: expected a square matrix");
    }
}

inline void parse_options(const json& j, Options& o) {
    only_keys(j, "$.options", {"expect_polynomial", "max_degree", "render", "precision"});
    if (j.contains("expect_polynomial")) {
        if (!j["expect_polynomial"].is_boolean()) throw input_error("$.options.expect_polynomial: expected a boolean");
        o.expect_polynomial = j["expect_polynomial"].get<bool>();
    }
    if (j.contains("max_degree")) {
        if (!j["max_degree"].is_number_integer() || j["max_degree"].get<long long>() < 0 ||
            j["max_degree"].get<long long>() > 1000)
            throw input_error("$.options.max_degree: expected an integer in [0, 1000]");
        o.max_degree = j["max_degree"].get<int>();
    }
    if (j.contains("render")) {
        if (!j["render"].is_string()) throw input_error("$.options.render: expected a string");
        o.render = j["render"].get<std::string>();
        if (o.render != "exact" && o.render != "decimal" && o.render != "both")
            throw input_error("$.options.render: expected exact, decimal or both");
    }
    if (j.contains("precision")) {
        if (!j["precision"].is_number_integer() || j["precision"].get<long long>() < 0 ||
            j["precision"].get<long long>() > 1000)
            throw input_error("$.options.precision: expected an integer in [0, 1000]");
        o.precision = j["precision"].get<int>();
    }
}

inline std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline ProblemFile parse_problem(std::string_view text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::string what = e.what();
        const std::size_t at = what.find("parse error");
        throw input_error("syntax error at " + detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                          (at == std::string::npos ? what : what.substr(at)));
    }
    if (!j.is_object()) throw input_error("$: a problem file is a JSON object");
    ProblemFile p;
    const std::string task = detail::literal(detail::need(j, "task", "$"), "$.task");
    std::set<std::string> keys{"field", "task", "options", "expect"};
    if (task == "factor-f")
        keys.insert("phi");
    else if (task == "spectral")
        keys.insert({"M", "poles", "S"});
    else if (task == "complete")
        keys.insert({"row", "reflected_poles", "vm_disk_zeros"});
    else if (task == "verify")
        keys.insert({"S", "S_plus", "U"});
    else
        throw input_error("$.task: unknown task \"" + task + "\"");
    detail::only_keys(j, "$", keys);
    p.task = task;

    const json& fj = detail::need(j, "field", "$");
    if (!fj.is_string()) throw input_error("$.field: expected a string");
    try {
        p.field = parse_field(fj.get<std::string>());
    } catch (const parse_error& e) {
        throw input_error(detail::with_path("$.field", e.what()));
    }

    if (j.contains("options")) detail::parse_options(j["options"], p.options);
    if (task == "factor-f") detail::parse_factor_f(j, p);
    if (task == "spectral") detail::parse_spectral(j, p);
    if (task == "complete") detail::parse_complete(j, p);
    if (task == "verify") detail::parse_verify(j, p);

    if (j.contains("expect")) {
        const json& e = j["expect"];
        const std::vector<std::string> names = result_names(task);
        detail::only_keys(e, "$.expect", std::set<std::string>(names.begin(), names.end()));
        for (const auto& [k, v] : e.items()) {
            // "phi" is a single row; accept it flat
            if (k == "phi" && v.is_array() && !v.empty() && !v[0].is_array())
                p.expect[k] = detail::matrix_at(json::array({v}), "$.expect.phi", p.field);
            else
                p.expect[k] = detail::matrix_at(v, "$.expect." + k, p.field);
        }
    }
    return p;
}

namespace detail {

inline json matrix_json(const RatMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(render_ratfn(m(r, c)));
        out.push_back(row);
    }
    return out;
}

inline json pole_json(const Pole& p) { return json{{"at", render_element(p.location)}, {"order", p.order}}; }

inline bool same_poles(const std::vector<Pole>& a, const std::vector<Pole>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!(a[k].location == b[k].location) || a[k].order != b[k].order) return false;
    return true;
}

}  // namespace detail

/// Problem file text for p; parse_problem(render_problem(p)) equals p.
inline std::string render_problem(const ProblemFile& p) {
    using nlohmann::json;
    json j;
    j["field"] = render_field(p.field);
    j["task"] = p.task;
    if (p.task == "factor-f") {
        json phis = json::array();
        for (std::size_t i = 0; i < p.phi.phis.size(); ++i) {
            json poles = json::array();
            for (const auto& t : p.phi.phis[i].terms) poles.push_back(detail::pole_json({t.pole, t.order()}));
            phis.push_back(json{{"f", render_ratfn(pf_to_ratfn(p.phi.phis[i]))}, {"poles", poles}});
        }
        j["phi"] = phis;
    } else if (p.task == "spectral") {
        j["M"] = detail::matrix_json(p.factor.M);
        json poles = json::array();
        for (const auto& e : p.factor.pole_data)
            for (const auto& q : e.poles) {
                json x = detail::pole_json(q);
                x["entry"] = json::array({e.row + 1, e.col + 1});
                poles.push_back(x);
            }
        j["poles"] = poles;
        if (p.S) j["S"] = detail::matrix_json(*p.S);
    } else if (p.task == "complete") {
        json row = json::array(), refl = json::array(), zeros = json::array();
        for (const auto& f : p.row) row.push_back(render_ratfn(f));
        for (const auto& list : p.unit_row.reflected_poles) {
            json l = json::array();
            for (const auto& q : list) l.push_back(detail::pole_json(q));
            refl.push_back(l);
        }
        for (const auto& q : p.unit_row.vm_disk_zeros) zeros.push_back(detail::pole_json(q));
        j["row"] = row;
        j["reflected_poles"] = refl;
        j["vm_disk_zeros"] = zeros;
    } else if (p.task == "verify") {
        if (p.S) j["S"] = detail::matrix_json(*p.S);
        if (p.S_plus) j["S_plus"] = detail::matrix_json(*p.S_plus);
        if (p.U) j["U"] = detail::matrix_json(*p.U);
    }
    json o;
    o["expect_polynomial"] = p.options.expect_polynomial;
    if (p.options.max_degree) o["max_degree"] = *p.options.max_degree;
    o["render"] = p.options.render;
    o["precision"] = p.options.precision;
    j["options"] = o;
    if (!p.expect.empty()) {
        json e;
        for (const auto& [k, m] : p.expect) e[k] = detail::matrix_json(m);
        j["expect"] = e;
    }
    return j.dump(2) + "\n";
}

inline bool operator==(const ProblemFile& a, const ProblemFile& b) {
    if (!same_field(a.field, b.field) || a.task != b.task) return false;
    if (a.phi.m != b.phi.m || a.phi_functions != b.phi_functions || a.phi.phis.size() != b.phi.phis.size())
        return false;
    for (std::size_t i = 0; i < a.phi.phis.size(); ++i) {
        const auto &x = a.phi.phis[i].terms, &y = b.phi.phis[i].terms;
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (!(x[k].pole == y[k].pole) || x[k].coeffs != y[k].coeffs) return false;
    }
    if (!(a.factor.M == b.factor.M) || a.factor.pole_data.size() != b.factor.pole_data.size()) return false;
    for (std::size_t k = 0; k < a.factor.pole_data.size(); ++k) {
        const auto &x = a.factor.pole_data[k], &y = b.factor.pole_data[k];
        if (x.row != y.row || x.col != y.col || !detail::same_poles(x.poles, y.poles)) return false;
    }
    if (a.S != b.S || a.S_plus != b.S_plus || a.U != b.U) return false;
    if (a.row != b.row || a.unit_row.v != b.unit_row.v ||
        a.unit_row.reflected_poles.size() != b.unit_row.reflected_poles.size() ||
        !detail::same_poles(a.unit_row.vm_disk_zeros, b.unit_row.vm_disk_zeros))
        return false;
    for (std::size_t i = 0; i < a.unit_row.reflected_poles.size(); ++i)
        if (!detail::same_poles(a.unit_row.reflected_poles[i], b.unit_row.reflected_poles[i])) return false;
    const Options &oa = a.options, &ob = b.options;
    if (oa.expect_polynomial != ob.expect_polynomial || oa.max_degree != ob.max_degree || oa.render != ob.render ||
        oa.precision != ob.precision)
        return false;
    if (a.expect.size() != b.expect.size()) return false;
    for (const auto& [k, m] : a.expect) {
        auto it = b.expect.find(k);
        if (it == b.expect.end() || !(it->second == m)) return false;
    }
    return true;
}

}  // namespace specfact
