#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracvar/fracvar.h"

namespace {

struct ProblemDeleter {
    void operator()(fracvar_problem* p) const { fracvar_problem_destroy(p); }
};
struct ResultDeleter {
    void operator()(fracvar_result* r) const { fracvar_result_destroy(r); }
};
struct ReportDeleter {
    void operator()(fracvar_report* r) const { fracvar_report_destroy(r); }
};
using ProblemPtr = std::unique_ptr<fracvar_problem, ProblemDeleter>;
using ResultPtr = std::unique_ptr<fracvar_result, ResultDeleter>;
using ReportPtr = std::unique_ptr<fracvar_report, ReportDeleter>;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int exit_for(fracvar_status status) {
    switch (status) {
        case FRACVAR_OK:
            return 0;
        case FRACVAR_INVALID_ARGUMENT:
        case FRACVAR_DOMAIN:
        case FRACVAR_PARSE:
            return 2;
        case FRACVAR_IO:
            return 3;
        default:
            return 1;
    }
}

int fail(fracvar_status status) {
    std::cerr << "error: " << fracvar_last_error() << "\n";
    return exit_for(status);
}

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

bool read_quad_override(std::optional<int>& quad, std::string& error) {
    const char* raw = std::getenv("FRACVAR_QUAD_N");
    if (raw == nullptr || *raw == '\0') return true;
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value <= 0 || value > 1000000) {
        error = "FRACVAR_QUAD_N must be a positive integer, got '" +
                std::string(raw) + "'";
        return false;
    }
    quad = static_cast<int>(value);
    return true;
}

std::string join_coefficients(const fracvar_result* result) {
    int count = 0;
    if (fracvar_result_coefficient_count(result, &count) != FRACVAR_OK) {
        return "";
    }
    std::string joined;
    for (int i = 0; i < count; ++i) {
        double c = 0.0;
        if (fracvar_result_coefficient(result, i, &c) != FRACVAR_OK) break;
        if (i > 0) joined += ",";
        joined += fmt(c);
    }
    return joined;
}

void print_report_rows(const fracvar_report* report, const char* prefix) {
    int rows = 0;
    if (fracvar_report_size(report, &rows) != FRACVAR_OK) return;
    for (int i = 0; i < rows; ++i) {
        const char* name = nullptr;
        const char* detail = nullptr;
        int passed = 0;
        int exercised = 0;
        if (fracvar_report_name(report, i, &name) != FRACVAR_OK ||
            fracvar_report_detail(report, i, &detail) != FRACVAR_OK ||
            fracvar_report_passed(report, i, &passed) != FRACVAR_OK ||
            fracvar_report_exercised(report, i, &exercised) != FRACVAR_OK) {
            return;
        }
        const char* verdict =
            exercised == 0 ? "skip" : (passed != 0 ? "pass" : "fail");
        std::cout << prefix << " " << name << " = " << verdict;
        if (detail[0] != '\0') std::cout << " (" << detail << ")";
        std::cout << "\n";
    }
}

struct Solved {
    double value = 0.0;
    int converged = 0;
    int residual_constant = 0;
    double residual_k = 0.0;
    double residual_max_deviation = 0.0;
};

fracvar_status read_solved(const fracvar_result* result, Solved& out) {
    fracvar_status status = fracvar_result_value(result, &out.value);
    if (status != FRACVAR_OK) return status;
    status = fracvar_result_converged(result, &out.converged);
    if (status != FRACVAR_OK) return status;
    status = fracvar_result_residual_constant(result, &out.residual_constant);
    if (status != FRACVAR_OK) return status;
    status = fracvar_result_residual_k(result, &out.residual_k);
    if (status != FRACVAR_OK) return status;
    return fracvar_result_residual_max_deviation(result,
                                                 &out.residual_max_deviation);
}

int run_example1(double alpha, int m, const std::optional<int>& quad) {
    fracvar_problem* raw_problem = nullptr;
    fracvar_status status = fracvar_problem_example1(alpha, &raw_problem);
    if (status != FRACVAR_OK) return fail(status);
    ProblemPtr problem(raw_problem);

    status = fracvar_problem_set_modes(problem.get(), m);
    if (status != FRACVAR_OK) return fail(status);
    if (quad) {
        status = fracvar_problem_set_quad_n(problem.get(), *quad);
        if (status != FRACVAR_OK) return fail(status);
    }

    fracvar_result* raw_result = nullptr;
    status = fracvar_solve(problem.get(), &raw_result);
    if (status != FRACVAR_OK) return fail(status);
    ResultPtr result(raw_result);

    Solved solved;
    status = read_solved(result.get(), solved);
    if (status != FRACVAR_OK) return fail(status);

    double target = 0.0;
    status = fracvar_gamma(alpha + 1.0, &target);
    if (status != FRACVAR_OK) return fail(status);
    const double abs_error = std::fabs(solved.value - target);

    double sup_distance = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = static_cast<double>(i) / 1000.0;
        double y = 0.0;
        status = fracvar_result_eval(result.get(), t, &y);
        if (status != FRACVAR_OK) return fail(status);
        sup_distance = std::max(sup_distance, std::fabs(y - std::pow(t, alpha)));
    }

    fracvar_report* raw_report = nullptr;
    status = fracvar_verify_minimizer(problem.get(), result.get(), 200,
                                      &raw_report);
    if (status != FRACVAR_OK) return fail(status);
    ReportPtr report(raw_report);
    int certified = 0;
    status = fracvar_report_all_passed(report.get(), &certified);
    if (status != FRACVAR_OK) return fail(status);

    std::cout << "alpha = " << fmt(alpha) << "\n";
    std::cout << "modes = " << m << "\n";
    std::cout << "coefficients = " << join_coefficients(result.get()) << "\n";
    std::cout << "value = " << fmt(solved.value) << "\n";
    std::cout << "gamma_alpha_plus_1 = " << fmt(target) << "\n";
    std::cout << "abs_error = " << fmt(abs_error) << "\n";
    std::cout << "sup_distance = " << fmt(sup_distance) << "\n";
    std::cout << "residual_k = " << fmt(solved.residual_k) << "\n";
    std::cout << "residual_max_deviation = "
              << fmt(solved.residual_max_deviation) << "\n";
    print_report_rows(report.get(), "verify");

    const bool value_ok = abs_error <= 1e-8;
    const bool trajectory_ok = sup_distance <= 1e-8;
    std::cout << "check converged = " << (solved.converged ? "pass" : "fail")
              << "\n";
    std::cout << "check value_matches_gamma = "
              << (value_ok ? "pass" : "fail") << "\n";
    std::cout << "check trajectory_matches_power = "
              << (trajectory_ok ? "pass" : "fail") << "\n";
    std::cout << "check residual_constant = "
              << (solved.residual_constant ? "pass" : "fail") << "\n";
    std::cout << "check minimality_certificate = "
              << (certified ? "pass" : "fail") << "\n";

    const bool all = solved.converged != 0 && value_ok && trajectory_ok &&
                     solved.residual_constant != 0 && certified != 0;
    std::cout << "result = " << (all ? "pass" : "fail") << "\n";
    if (all) return 0;
    return solved.converged != 0 ? 1 : 4;
}

int run_example2(double alpha) {
    int has_solution = 0;
    double forced_k = 0.0;
    double value = 0.0;
    double divergent_t = 0.0;
    double divergent_value = 0.0;
    char summary[1024];
    const fracvar_status status = fracvar_obstruction(
        alpha, &has_solution, &forced_k, &value, &divergent_t,
        &divergent_value, summary, sizeof summary);
    if (status != FRACVAR_OK) return fail(status);

    std::cout << "alpha = " << fmt(alpha) << "\n";
    if (has_solution != 0) {
        std::cout << "outcome = minimizer y(t) = t\n";
        std::cout << "value = " << fmt(value) << "\n";
    } else {
        std::cout << "outcome = no minimizer in F\n";
        std::cout << "forced_k = " << fmt(forced_k) << "\n";
        std::cout << "divergent_sample_t = " << fmt(divergent_t) << "\n";
        std::cout << "divergent_sample_value = " << fmt(divergent_value)
                  << "\n";
    }
    std::cout << "summary = " << summary << "\n";
    return 0;
}

bool parse_alpha_list(const std::string& text, std::vector<double>& out,
                      std::string& error) {
    std::string trimmed = text;
    const auto strip = [](std::string& s) {
        const std::size_t first = s.find_first_not_of(" \t");
        if (first == std::string::npos) {
            s.clear();
            return;
        }
        const std::size_t last = s.find_last_not_of(" \t");
        s = s.substr(first, last - first + 1);
    };
    strip(trimmed);
    if (trimmed.empty()) return true;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = trimmed.find(',', pos);
        std::string token = trimmed.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        strip(token);
        if (token.empty()) {
            error = "empty entry in alpha list";
            return false;
        }
        char* end = nullptr;
        const double value = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(value)) {
            error = "expected a number in the alpha list, got '" + token + "'";
            return false;
        }
        if (!(value > 0.0) || value > 1.0) {
            error = "alpha must lie in (0, 1], got " + token;
            return false;
        }
        out.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return true;
}

int run_sweep(const std::string& alphas_text, int m, const std::string& out,
              const std::optional<int>& quad) {
    std::vector<double> alphas;
    std::string parse_message;
    if (!parse_alpha_list(alphas_text, alphas, parse_message)) {
        return usage_error(parse_message);
    }

    std::string body = "alpha,value,gamma_alpha_plus_1,abs_error,"
                       "residual_max_deviation,converged\n";
    bool all_converged = true;
    for (const double alpha : alphas) {
        fracvar_problem* raw_problem = nullptr;
        fracvar_status status = fracvar_problem_example1(alpha, &raw_problem);
        if (status != FRACVAR_OK) return fail(status);
        ProblemPtr problem(raw_problem);
        status = fracvar_problem_set_modes(problem.get(), m);
        if (status != FRACVAR_OK) return fail(status);
        if (quad) {
            status = fracvar_problem_set_quad_n(problem.get(), *quad);
            if (status != FRACVAR_OK) return fail(status);
        }

        fracvar_result* raw_result = nullptr;
        status = fracvar_solve(problem.get(), &raw_result);
        if (status != FRACVAR_OK) return fail(status);
        ResultPtr result(raw_result);

        Solved solved;
        status = read_solved(result.get(), solved);
        if (status != FRACVAR_OK) return fail(status);
        double target = 0.0;
        status = fracvar_gamma(alpha + 1.0, &target);
        if (status != FRACVAR_OK) return fail(status);

        body += fmt(alpha) + "," + fmt(solved.value) + "," + fmt(target) +
                "," + fmt(std::fabs(solved.value - target)) + "," +
                fmt(solved.residual_max_deviation) + "," +
                (solved.converged ? "true" : "false") + "\n";
        all_converged = all_converged && solved.converged != 0;
    }

    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) {
        std::cerr << "error: cannot open '" << out << "' for writing\n";
        return 3;
    }
    file << body;
    file.flush();
    if (!file) {
        std::cerr << "error: writing '" << out << "' failed\n";
        return 3;
    }
    std::cout << "wrote " << alphas.size() << " row"
              << (alphas.size() == 1 ? "" : "s") << " to " << out << "\n";
    return all_converged ? 0 : 4;
}

int run_verify(const std::string& suite) {
    fracvar_report* raw_report = nullptr;
    const fracvar_status status =
        fracvar_verify_suite(suite.c_str(), &raw_report);
    if (status != FRACVAR_OK) return fail(status);
    ReportPtr report(raw_report);

    print_report_rows(report.get(), "property");
    int all_passed = 0;
    if (fracvar_report_all_passed(report.get(), &all_passed) != FRACVAR_OK) {
        return 1;
    }
    std::cout << "suite = " << (all_passed ? "pass" : "fail") << "\n";
    return all_passed ? 0 : 1;
}

int run_solve(const std::string& spec_path, const std::string& out,
              const std::optional<int>& quad) {
    fracvar_problem* raw_problem = nullptr;
    fracvar_status status =
        fracvar_problem_from_file(spec_path.c_str(), &raw_problem);
    if (status != FRACVAR_OK) return fail(status);
    ProblemPtr problem(raw_problem);

    if (quad) {
        int file_quad = 0;
        status = fracvar_problem_quad_n(problem.get(), &file_quad);
        if (status != FRACVAR_OK) return fail(status);
        if (file_quad == 0) {
            status = fracvar_problem_set_quad_n(problem.get(), *quad);
            if (status != FRACVAR_OK) return fail(status);
        }
    }

    fracvar_result* raw_result = nullptr;
    status = fracvar_solve(problem.get(), &raw_result);
    if (status != FRACVAR_OK) return fail(status);
    ResultPtr result(raw_result);

    status = fracvar_result_write_file(result.get(), out.c_str());
    if (status != FRACVAR_OK) return fail(status);

    Solved solved;
    status = read_solved(result.get(), solved);
    if (status != FRACVAR_OK) return fail(status);
    std::cout << "solved: value = " << fmt(solved.value) << ", converged = "
              << (solved.converged ? "true" : "false")
              << ", residual_max_deviation = "
              << fmt(solved.residual_max_deviation) << ", wrote " << out
              << "\n";
    return solved.converged != 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional variational problem toolkit"};
    app.require_subcommand(1);

    double alpha1 = 0.5;
    int m1 = 3;
    CLI::App* example1 =
        app.add_subcommand("example1", "solve the power-law benchmark");
    example1->add_option("--alpha", alpha1, "derivative order in (0, 1]")
        ->required();
    example1->add_option("--m", m1, "trial modes beyond the boundary curve");

    double alpha2 = 0.5;
    CLI::App* example2 = app.add_subcommand(
        "example2", "analyze the unweighted kinetic-action problem");
    example2->add_option("--alpha", alpha2, "derivative order in (0, 1]")
        ->required();

    std::string alphas_text;
    int m_sweep = 3;
    std::string sweep_out;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "tabulate the benchmark across derivative orders");
    sweep->add_option("--alphas", alphas_text,
                      "comma-separated derivative orders")
        ->required();
    sweep->add_option("--m", m_sweep, "trial modes beyond the boundary curve");
    sweep->add_option("--out", sweep_out, "CSV output path")->required();

    std::string suite;
    CLI::App* verify =
        app.add_subcommand("verify", "run a property suite");
    verify->add_option("--suite", suite, "ops, lemma, byparts, or all")
        ->required();

    std::string spec_path;
    std::string solve_out;
    CLI::App* solve =
        app.add_subcommand("solve", "solve a problem described in a file");
    solve->add_option("--spec", spec_path, "problem description path")
        ->required();
    solve->add_option("--out", solve_out, "result output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::optional<int> quad;
    std::string quad_error;
    if (!read_quad_override(quad, quad_error)) return usage_error(quad_error);

    if (example1->parsed()) return run_example1(alpha1, m1, quad);
    if (example2->parsed()) return run_example2(alpha2);
    if (sweep->parsed()) return run_sweep(alphas_text, m_sweep, sweep_out, quad);
    if (verify->parsed()) return run_verify(suite);
    if (solve->parsed()) return run_solve(spec_path, solve_out, quad);
    return 2;
}
