#pragma once

#include <string>
#include <vector>

#include "euler_lagrange.hpp"
#include "lagrangian.hpp"

namespace fracvar {

// Trial space for the direct method: an interpolant carrying the boundary
// values plus modes vanishing at both endpoints, all powers of the scaled
// left distance with exponents alpha, alpha+1, ..., so the minimizer of
// the power family lies in the span.
struct RitzBasis {
    PowerSum boundary;
    std::vector<PowerSum> modes;
};
RitzBasis build_ritz_basis(const VariationalProblem& prob, int modes);

struct SolverSettings {
    int modes = 3;
    int quad_n = 0;  // 0 picks the exact path or the doubling quadrature
    // Simplex termination (general path only).
    double x_tol = 1e-9;
    double f_tol = 1e-12;
    int max_iter = 5000;
    double initial_step = 0.1;
    // Stationarity report.
    int residual_samples = 33;
    int residual_quad_n = 96;
    double residual_tol = 1e-6;
};

struct SolveResult {
    std::vector<double> coefficients;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    ResidualReport residual;
    Trajectory trajectory;
};

// Minimizes the weighted functional over the trial space.  The quadratic
// family assembles the normal equations from exact inner products and
// solves them by Cholesky (DegeneracyError if the curvature is not
// positive definite).  Always converged, zero iterations.
SolveResult solve_quadratic(const VariationalProblem& prob,
                            const SolverSettings& settings = {});

// Derivative-free Nelder-Mead descent on the mode coefficients for
// arbitrary integrands.  converged reflects whether the simplex collapsed
// below x_tol/f_tol within max_iter iterations.
SolveResult solve_general(const VariationalProblem& prob,
                          const SolverSettings& settings = {});

// Post-hoc certificates for a solve: the stationarity report verdict, the
// vanishing first variation along held-out directions, and (for convex
// v-only integrands) nonnegative gaps against random admissible
// competitors.
struct MinimizerCheck {
    std::string name;
    bool passed = false;
    bool exercised = false;
    std::string detail;
};
struct MinimizerReport {
    std::vector<MinimizerCheck> checks;
    bool all_passed = false;
};
MinimizerReport verify_minimizer(const VariationalProblem& prob,
                                 const SolveResult& result, int trials);

}  // namespace fracvar
