#pragma once

#include <string>

#include "lagrangian.hpp"
#include "ritz.hpp"

namespace fracvar {

// Flat key-value problem description: one "key = value" per line, '#'
// comments, blank lines ignored.  Required keys a, b, alpha, y_a, y_b,
// lagrangian; optional solver (auto | quadratic | general, default auto),
// m (default 3), quad_n (default 0 = automatic).
struct ProblemSpec {
    double a = 0.0;
    double b = 1.0;
    double alpha = 0.5;
    double y_a = 0.0;
    double y_b = 1.0;
    std::string lagrangian_key;
    std::string solver = "auto";
    int m = 3;
    int quad_n = 0;
};

// Throws ParseError carrying byte offset plus 1-based line/column.
ProblemSpec parse_problem_text(const std::string& text);

// Reads and parses a file; unreadable paths raise IoError.
ProblemSpec load_problem_file(const std::string& path);

// Instantiates the variational problem; a bad lagrangian key raises
// ParseError located at the offending character of the file value.
VariationalProblem make_problem(const ProblemSpec& spec);

// Solver name after resolving "auto": "quadratic" when the integrand
// belongs to the closed-form quadratic family, "general" otherwise.
std::string resolved_solver(const ProblemSpec& spec);

// Solves the described problem with the solver it names.
SolveResult solve_spec(const ProblemSpec& spec);

// Deterministic flat key-value result document (17 significant digits,
// LF line endings).
std::string format_result(const ProblemSpec& spec, const SolveResult& result);

// Writes text verbatim; failures raise IoError.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fracvar
