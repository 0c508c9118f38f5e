#pragma once

// Command-line driver: specfact {factor-f|spectral|complete|verify} FILE [flags].
//
// exit status: 0 all checks pass, 1 a certificate or expectation failed,
//              2 input error, 3 internal error

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "specfact/errors.hpp"
#include "specfact/problem.hpp"
#include "specfact/report.hpp"

namespace specfact {

enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_input = 2, exit_internal = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliFlags {
    std::string file;
    std::optional<std::string> render;
    std::optional<int> precision;
    std::optional<int> max_degree;
    bool expect_polynomial = false;
};

inline int run_file(const std::string& command, const CliFlags& flags, std::ostream& out) {
    ProblemFile p = parse_problem(read_file(flags.file));
    if (command == "verify") {
        if (p.expect.empty() && p.task != "verify")
            throw input_error("$: nothing to verify; add an \"expect\" block or use task verify");
    } else if (p.task != command) {
        throw input_error("$.task: file is a " + p.task + " problem, not " + command);
    }
    if (flags.render) p.options.render = *flags.render;
    if (flags.precision) p.options.precision = *flags.precision;
    if (flags.max_degree) p.options.max_degree = *flags.max_degree;
    if (flags.expect_polynomial) p.options.expect_polynomial = true;

    const Report rep = run(p);
    out << render_report(rep, p.options.render, p.options.precision);
    return rep.passed() ? exit_ok : exit_check_failed;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact matrix spectral factorization and paraunitary completion"};
    app.require_subcommand(1);
    detail::CliFlags flags;
    const char* commands[][2] = {{"factor-f", "build the paraunitary matrix of a phi row"},
                                 {"spectral", "spectral factor of a lower-triangular factor M"},
                                 {"complete", "complete a unit-norm row to a paraunitary matrix"},
                                 {"verify", "run a problem and compare its expect block"}};
    for (const auto& [name, text] : commands) {
        CLI::App* sub = app.add_subcommand(name, text);
        sub->add_option("file", flags.file, "problem file (JSON)")->required();
        sub->add_option("--render", flags.render, "exact, decimal or both")
            ->check(CLI::IsMember({"exact", "decimal", "both"}));
        sub->add_option("--precision", flags.precision, "decimal digits")->check(CLI::Range(0, 1000));
        sub->add_option("--max-degree", flags.max_degree, "corona degree cap")->check(CLI::Range(0, 1000));
        sub->add_flag("--expect-polynomial", flags.expect_polynomial, "require a polynomial spectral factor");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_input;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return detail::run_file(command, flags, out);
    } catch (const certificate_error& e) {
        err << "certificate failure: " << e.what() << "\n";
        return exit_check_failed;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

}  // namespace specfact
