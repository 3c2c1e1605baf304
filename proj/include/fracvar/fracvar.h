/* C interface to the fractional variational toolkit.
 *
 * Every function returns a fracvar_status; out parameters are written only
 * on FRACVAR_OK.  fracvar_last_error() describes the most recent failure on
 * the calling thread.  Handles are created and destroyed in pairs; passing
 * NULL where a handle or out pointer is required yields
 * FRACVAR_INVALID_ARGUMENT.
 */
#ifndef FRACVAR_H
#define FRACVAR_H

#include <stddef.h>

#if defined(_WIN32)
#define FRACVAR_API __declspec(dllexport)
#else
#define FRACVAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define FRACVAR_VERSION "1.0.0"

typedef enum fracvar_status {
    FRACVAR_OK = 0,
    FRACVAR_INVALID_ARGUMENT = 1, /* NULL handle, bad count, out of range */
    FRACVAR_DOMAIN = 2,           /* mathematical precondition violated */
    FRACVAR_PARSE = 3,            /* expression or problem text rejected */
    FRACVAR_IO = 4,               /* file unreadable or unwritable */
    FRACVAR_EVALUATION = 5,       /* non-finite value during evaluation */
    FRACVAR_SINGULAR = 6,         /* linear algebra lost positive definiteness */
    FRACVAR_INTERNAL = 7
} fracvar_status;

/* Library version string (FRACVAR_VERSION of the built library). */
FRACVAR_API const char* fracvar_version(void);

/* Message for the last failing call on this thread; empty string if none. */
FRACVAR_API const char* fracvar_last_error(void);

/* --- special function spot values ----------------------------------- */

FRACVAR_API fracvar_status fracvar_gamma(double x, double* out);
FRACVAR_API fracvar_status fracvar_log_gamma(double x, double* out);
FRACVAR_API fracvar_status fracvar_beta(double x, double y, double* out);

/* Gauss-Jacobi rule for the weight (1-x)^exp_right (1+x)^exp_left on
 * (-1, 1): fills nodes[0..n) ascending and weights[0..n). */
FRACVAR_API fracvar_status fracvar_jacobi_rule(int n, double exp_right,
                                               double exp_left, double* nodes,
                                               double* weights);

/* --- problems -------------------------------------------------------- */

typedef struct fracvar_problem fracvar_problem;

/* Minimize the weighted functional of the integrand named by
 * `lagrangian` ("v2", "quadratic:c_vv,c_uu,c_u,c_v,c_0", or
 * "expr:<expression in t, u, v>") over paths on [a, b] with y(a) = y_a,
 * y(b) = y_b and Caputo derivative order alpha in (0, 1]. */
FRACVAR_API fracvar_status fracvar_problem_create(double a, double b,
                                                  double alpha, double y_a,
                                                  double y_b,
                                                  const char* lagrangian,
                                                  fracvar_problem** out);

/* Reads a flat key-value problem file (keys a, b, alpha, y_a, y_b,
 * lagrangian, and optional solver/m/quad_n). */
FRACVAR_API fracvar_status fracvar_problem_from_file(const char* path,
                                                     fracvar_problem** out);

/* The power-family benchmark on [0, 1] with y(0) = 0, y(1) = 1 and
 * integrand v^2, whose minimizer is t^alpha with value Gamma(alpha + 1). */
FRACVAR_API fracvar_status fracvar_problem_example1(double alpha,
                                                    fracvar_problem** out);

/* Solver selection: "auto" (default; exact normal equations when the
 * integrand is quadratic, simplex descent otherwise), "quadratic", or
 * "general". */
FRACVAR_API fracvar_status fracvar_problem_set_solver(fracvar_problem* p,
                                                      const char* solver);
/* Number of trial modes beyond the boundary interpolant (default 3). */
FRACVAR_API fracvar_status fracvar_problem_set_modes(fracvar_problem* p,
                                                     int modes);
/* Fixed quadrature node count; 0 restores the automatic choice. */
FRACVAR_API fracvar_status fracvar_problem_set_quad_n(fracvar_problem* p,
                                                      int quad_n);
FRACVAR_API fracvar_status fracvar_problem_quad_n(const fracvar_problem* p,
                                                  int* out);

FRACVAR_API void fracvar_problem_destroy(fracvar_problem* p);

/* --- solving --------------------------------------------------------- */

typedef struct fracvar_result fracvar_result;

/* Runs the problem's solver.  Returns FRACVAR_OK even when the iteration
 * budget ran out; query fracvar_result_converged. */
FRACVAR_API fracvar_status fracvar_solve(const fracvar_problem* p,
                                         fracvar_result** out);

FRACVAR_API fracvar_status fracvar_result_value(const fracvar_result* r,
                                                double* out);
FRACVAR_API fracvar_status fracvar_result_converged(const fracvar_result* r,
                                                    int* out);
FRACVAR_API fracvar_status fracvar_result_iterations(const fracvar_result* r,
                                                     int* out);
FRACVAR_API fracvar_status fracvar_result_coefficient_count(
    const fracvar_result* r, int* out);
FRACVAR_API fracvar_status fracvar_result_coefficient(const fracvar_result* r,
                                                      int index, double* out);
/* Stationarity report of the solved path: the constant estimate, the
 * worst deviation from it, and the verdict at the solver tolerance. */
FRACVAR_API fracvar_status fracvar_result_residual_k(const fracvar_result* r,
                                                     double* out);
FRACVAR_API fracvar_status fracvar_result_residual_max_deviation(
    const fracvar_result* r, double* out);
FRACVAR_API fracvar_status fracvar_result_residual_constant(
    const fracvar_result* r, int* out);
/* Solved path and its Caputo derivative at t in [a, b]. */
FRACVAR_API fracvar_status fracvar_result_eval(const fracvar_result* r,
                                               double t, double* out);
FRACVAR_API fracvar_status fracvar_result_eval_caputo(const fracvar_result* r,
                                                      double t, double* out);
/* Deterministic key-value result document. */
FRACVAR_API fracvar_status fracvar_result_write_file(const fracvar_result* r,
                                                     const char* path);

FRACVAR_API void fracvar_result_destroy(fracvar_result* r);

/* --- checks and reports ---------------------------------------------- */

typedef struct fracvar_report fracvar_report;

/* Post-hoc certificates for a solve: stationarity constancy, vanishing
 * first variation, and (for convex v-only integrands) nonnegative gaps
 * against `trials` random competitors. */
FRACVAR_API fracvar_status fracvar_verify_minimizer(const fracvar_problem* p,
                                                    const fracvar_result* r,
                                                    int trials,
                                                    fracvar_report** out);

/* Property suites over randomized inputs: "ops", "lemma", "byparts", or
 * "all". */
FRACVAR_API fracvar_status fracvar_verify_suite(const char* suite,
                                                fracvar_report** out);

FRACVAR_API fracvar_status fracvar_report_size(const fracvar_report* rep,
                                               int* out);
/* Returned strings stay owned by the report handle. */
FRACVAR_API fracvar_status fracvar_report_name(const fracvar_report* rep,
                                               int index, const char** out);
FRACVAR_API fracvar_status fracvar_report_passed(const fracvar_report* rep,
                                                 int index, int* out);
/* 0 when a check did not apply to this problem; such rows do not count
 * against fracvar_report_all_passed. */
FRACVAR_API fracvar_status fracvar_report_exercised(const fracvar_report* rep,
                                                    int index, int* out);
FRACVAR_API fracvar_status fracvar_report_detail(const fracvar_report* rep,
                                                 int index, const char** out);
FRACVAR_API fracvar_status fracvar_report_all_passed(const fracvar_report* rep,
                                                     int* out);

FRACVAR_API void fracvar_report_destroy(fracvar_report* rep);

/* --- the unweighted nonexistence example ------------------------------ */

/* Analysis of  integral_0^1 (cD^alpha y)^2 dt -> min, y(0)=0, y(1)=1.
 * For alpha < 1 there is no admissible minimizer: has_solution = 0,
 * forced_k = 0, and divergent_value samples the classical candidate's
 * unbounded derivative (1-t)^(alpha-1) at t = divergent_t.  For alpha = 1
 * the classical solution y = t with value 1 is reported.  Any out pointer
 * may be NULL; summary_buf (if given) receives a NUL-terminated
 * explanation truncated to summary_cap. */
FRACVAR_API fracvar_status fracvar_obstruction(double alpha,
                                               int* has_solution,
                                               double* forced_k,
                                               double* minimizer_value,
                                               double* divergent_t,
                                               double* divergent_value,
                                               char* summary_buf,
                                               size_t summary_cap);

#ifdef __cplusplus
}
#endif

#endif /* FRACVAR_H */
