#include "fracvar/fracvar.h"

#include <cstring>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "problem_file.hpp"
#include "quadrature.hpp"
#include "ritz.hpp"
#include "special_functions.hpp"
#include "verify.hpp"

struct fracvar_problem {
    fracvar::ProblemSpec spec;
};

struct fracvar_result {
    fracvar::ProblemSpec spec;
    fracvar::SolveResult solved;
};

struct fracvar_report {
    struct Row {
        std::string name;
        bool passed;
        bool exercised;
        std::string detail;
    };
    std::vector<Row> rows;
    bool all_passed;
};

namespace {

thread_local std::string g_last_error;

template <typename Body>
fracvar_status guarded(Body&& body) noexcept {
    try {
        body();
        g_last_error.clear();
        return FRACVAR_OK;
    } catch (const fracvar::ParseError& e) {
        if (e.line > 0) {
            g_last_error = "line " + std::to_string(e.line) + ", column " +
                           std::to_string(e.column) + ": " + e.what();
        } else {
            g_last_error = "offset " + std::to_string(e.offset) + ": " +
                           std::string(e.what());
        }
        return FRACVAR_PARSE;
    } catch (const fracvar::IoError& e) {
        g_last_error = e.what();
        return FRACVAR_IO;
    } catch (const fracvar::EvaluationError& e) {
        g_last_error = e.what();
        return FRACVAR_EVALUATION;
    } catch (const fracvar::DegeneracyError& e) {
        g_last_error = e.what();
        return FRACVAR_SINGULAR;
    } catch (const fracvar::AdmissibilityError& e) {
        g_last_error = e.what();
        return FRACVAR_DOMAIN;
    } catch (const fracvar::RepresentationError& e) {
        g_last_error = e.what();
        return FRACVAR_DOMAIN;
    } catch (const fracvar::DomainError& e) {
        g_last_error = e.what();
        return FRACVAR_DOMAIN;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FRACVAR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return FRACVAR_INTERNAL;
    }
}

fracvar_status invalid(const char* message) noexcept {
    g_last_error = message;
    return FRACVAR_INVALID_ARGUMENT;
}

fracvar_status report_row(const fracvar_report* rep, int index,
                          const fracvar_report::Row** row) noexcept {
    if (rep == nullptr) return invalid("report handle is NULL");
    if (index < 0 || index >= static_cast<int>(rep->rows.size())) {
        return invalid("report index out of range");
    }
    *row = &rep->rows[static_cast<std::size_t>(index)];
    return FRACVAR_OK;
}

}  // namespace

extern "C" {

const char* fracvar_version(void) { return FRACVAR_VERSION; }

const char* fracvar_last_error(void) { return g_last_error.c_str(); }

fracvar_status fracvar_gamma(double x, double* out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    return guarded([&] { *out = fracvar::gamma_fn(x); });
}

fracvar_status fracvar_log_gamma(double x, double* out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    return guarded([&] { *out = fracvar::log_gamma(x); });
}

fracvar_status fracvar_beta(double x, double y, double* out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    return guarded([&] { *out = fracvar::beta_fn(x, y); });
}

fracvar_status fracvar_jacobi_rule(int n, double exp_right, double exp_left,
                                   double* nodes, double* weights) {
    if (nodes == nullptr || weights == nullptr) {
        return invalid("nodes/weights pointers are NULL");
    }
    return guarded([&] {
        const fracvar::JacobiRule rule =
            fracvar::build_jacobi_rule(n, exp_right, exp_left);
        for (int i = 0; i < rule.n; ++i) {
            nodes[i] = rule.nodes[static_cast<std::size_t>(i)];
            weights[i] = rule.weights[static_cast<std::size_t>(i)];
        }
    });
}

fracvar_status fracvar_problem_create(double a, double b, double alpha,
                                      double y_a, double y_b,
                                      const char* lagrangian,
                                      fracvar_problem** out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    if (lagrangian == nullptr) return invalid("lagrangian key is NULL");
    return guarded([&] {
        fracvar::ProblemSpec spec;
        spec.a = a;
        spec.b = b;
        spec.alpha = alpha;
        spec.y_a = y_a;
        spec.y_b = y_b;
        spec.lagrangian_key = lagrangian;
        fracvar::make_problem(spec);  // validate everything up front
        *out = new fracvar_problem{std::move(spec)};
    });
}

fracvar_status fracvar_problem_from_file(const char* path,
                                         fracvar_problem** out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    if (path == nullptr) return invalid("path is NULL");
    return guarded(
        [&] { *out = new fracvar_problem{fracvar::load_problem_file(path)}; });
}

fracvar_status fracvar_problem_example1(double alpha, fracvar_problem** out) {
    return fracvar_problem_create(0.0, 1.0, alpha, 0.0, 1.0, "v2", out);
}

fracvar_status fracvar_problem_set_solver(fracvar_problem* p,
                                          const char* solver) {
    if (p == nullptr) return invalid("problem handle is NULL");
    if (solver == nullptr) return invalid("solver name is NULL");
    const std::string name(solver);
    if (name != "auto" && name != "quadratic" && name != "general") {
        return invalid("solver must be 'auto', 'quadratic', or 'general'");
    }
    p->spec.solver = name;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_problem_set_modes(fracvar_problem* p, int modes) {
    if (p == nullptr) return invalid("problem handle is NULL");
    if (modes < 0) return invalid("modes must be nonnegative");
    p->spec.m = modes;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_problem_set_quad_n(fracvar_problem* p, int quad_n) {
    if (p == nullptr) return invalid("problem handle is NULL");
    if (quad_n < 0) return invalid("quad_n must be nonnegative");
    p->spec.quad_n = quad_n;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_problem_quad_n(const fracvar_problem* p, int* out) {
    if (p == nullptr) return invalid("problem handle is NULL");
    if (out == nullptr) return invalid("output pointer is NULL");
    *out = p->spec.quad_n;
    g_last_error.clear();
    return FRACVAR_OK;
}

void fracvar_problem_destroy(fracvar_problem* p) { delete p; }

fracvar_status fracvar_solve(const fracvar_problem* p, fracvar_result** out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    if (p == nullptr) return invalid("problem handle is NULL");
    return guarded([&] {
        *out = new fracvar_result{p->spec, fracvar::solve_spec(p->spec)};
    });
}

fracvar_status fracvar_result_value(const fracvar_result* r, double* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    *out = r->solved.value;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_result_converged(const fracvar_result* r, int* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    *out = r->solved.converged ? 1 : 0;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_result_iterations(const fracvar_result* r, int* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    *out = r->solved.iterations;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_result_coefficient_count(const fracvar_result* r,
                                                int* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    *out = static_cast<int>(r->solved.coefficients.size());
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_result_coefficient(const fracvar_result* r, int index,
                                          double* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    if (index < 0 ||
        index >= static_cast<int>(r->solved.coefficients.size())) {
        return invalid("coefficient index out of range");
    }
    *out = r->solved.coefficients[static_cast<std::size_t>(index)];
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_result_residual_k(const fracvar_result* r,
                                         double* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    *out = r->solved.residual.k_estimate;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_result_residual_max_deviation(const fracvar_result* r,
                                                     double* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    *out = r->solved.residual.max_deviation;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_result_residual_constant(const fracvar_result* r,
                                                int* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    *out = r->solved.residual.constant ? 1 : 0;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_result_eval(const fracvar_result* r, double t,
                                   double* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    return guarded([&] { *out = r->solved.trajectory.value_at(t); });
}

fracvar_status fracvar_result_eval_caputo(const fracvar_result* r, double t,
                                          double* out) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    return guarded([&] { *out = r->solved.trajectory.caputo_at(t); });
}

fracvar_status fracvar_result_write_file(const fracvar_result* r,
                                         const char* path) {
    if (r == nullptr) return invalid("result handle is NULL");
    if (path == nullptr) return invalid("path is NULL");
    return guarded([&] {
        fracvar::write_text_file(path,
                                 fracvar::format_result(r->spec, r->solved));
    });
}

void fracvar_result_destroy(fracvar_result* r) { delete r; }

fracvar_status fracvar_verify_minimizer(const fracvar_problem* p,
                                        const fracvar_result* r, int trials,
                                        fracvar_report** out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    if (p == nullptr) return invalid("problem handle is NULL");
    if (r == nullptr) return invalid("result handle is NULL");
    if (trials < 0) return invalid("trials must be nonnegative");
    return guarded([&] {
        const fracvar::MinimizerReport report = fracvar::verify_minimizer(
            fracvar::make_problem(p->spec), r->solved, trials);
        auto handle = std::make_unique<fracvar_report>();
        for (const fracvar::MinimizerCheck& check : report.checks) {
            handle->rows.push_back({check.name, check.passed, check.exercised,
                                    check.detail});
        }
        handle->all_passed = report.all_passed;
        *out = handle.release();
    });
}

fracvar_status fracvar_verify_suite(const char* suite, fracvar_report** out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    if (suite == nullptr) return invalid("suite name is NULL");
    return guarded([&] {
        const std::vector<fracvar::PropertyResult> results =
            fracvar::run_suite(suite);
        auto handle = std::make_unique<fracvar_report>();
        handle->all_passed = true;
        for (const fracvar::PropertyResult& r : results) {
            handle->rows.push_back({r.name, r.passed, true, r.detail});
            if (!r.passed) handle->all_passed = false;
        }
        *out = handle.release();
    });
}

fracvar_status fracvar_report_size(const fracvar_report* rep, int* out) {
    if (rep == nullptr) return invalid("report handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    *out = static_cast<int>(rep->rows.size());
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_report_name(const fracvar_report* rep, int index,
                                   const char** out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    const fracvar_report::Row* row = nullptr;
    const fracvar_status status = report_row(rep, index, &row);
    if (status != FRACVAR_OK) return status;
    *out = row->name.c_str();
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_report_passed(const fracvar_report* rep, int index,
                                     int* out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    const fracvar_report::Row* row = nullptr;
    const fracvar_status status = report_row(rep, index, &row);
    if (status != FRACVAR_OK) return status;
    *out = row->passed ? 1 : 0;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_report_exercised(const fracvar_report* rep, int index,
                                        int* out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    const fracvar_report::Row* row = nullptr;
    const fracvar_status status = report_row(rep, index, &row);
    if (status != FRACVAR_OK) return status;
    *out = row->exercised ? 1 : 0;
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_report_detail(const fracvar_report* rep, int index,
                                     const char** out) {
    if (out == nullptr) return invalid("out pointer is NULL");
    const fracvar_report::Row* row = nullptr;
    const fracvar_status status = report_row(rep, index, &row);
    if (status != FRACVAR_OK) return status;
    *out = row->detail.c_str();
    g_last_error.clear();
    return FRACVAR_OK;
}

fracvar_status fracvar_report_all_passed(const fracvar_report* rep, int* out) {
    if (rep == nullptr) return invalid("report handle is NULL");
    if (out == nullptr) return invalid("out pointer is NULL");
    *out = rep->all_passed ? 1 : 0;
    g_last_error.clear();
    return FRACVAR_OK;
}

void fracvar_report_destroy(fracvar_report* rep) { delete rep; }

fracvar_status fracvar_obstruction(double alpha, int* has_solution,
                                   double* forced_k, double* minimizer_value,
                                   double* divergent_t,
                                   double* divergent_value, char* summary_buf,
                                   size_t summary_cap) {
    return guarded([&] {
        const fracvar::ObstructionReport report =
            fracvar::unweighted_obstruction(fracvar::FracOrder(alpha));
        if (has_solution != nullptr) {
            *has_solution = report.has_solution ? 1 : 0;
        }
        if (forced_k != nullptr) *forced_k = report.forced_k;
        if (minimizer_value != nullptr) {
            *minimizer_value = report.minimizer_value;
        }
        if (divergent_t != nullptr) *divergent_t = report.divergent_sample_t;
        if (divergent_value != nullptr) {
            *divergent_value = report.divergent_sample_value;
        }
        if (summary_buf != nullptr && summary_cap > 0) {
            const std::size_t n =
                std::min(summary_cap - 1, report.summary.size());
            std::memcpy(summary_buf, report.summary.data(), n);
            summary_buf[n] = '\0';
        }
    });
}

}  // extern "C"
