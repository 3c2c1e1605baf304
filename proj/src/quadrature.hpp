#pragma once

#include <functional>

#include "power_sum.hpp"

namespace fracvar {

// Gauss-Jacobi rule on (-1, 1) for the weight (1-x)^exp_right * (1+x)^exp_left.
// Nodes ascending, weights positive; exact for polynomial integrands of
// degree <= 2n - 1 against that weight.
struct JacobiRule {
    int n;
    double exp_right;
    double exp_left;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Golub-Welsch construction: the three-term recurrence of the Jacobi
// polynomials feeds a symmetric tridiagonal eigenproblem solved by QL with
// implicit shifts.  Requires n >= 1 and both exponents > -1.
JacobiRule build_jacobi_rule(int n, double exp_right, double exp_left);

// (1/Gamma(alpha)) * integral_a^b (b-t)^(alpha-1) f(t) dt with an n-point
// rule mapped onto [a, b].  The weight is folded into the rule, so f itself
// is sampled only at interior points.  A non-finite sample raises
// EvaluationError carrying the node location.
double weighted_integral(const std::function<double(double)>& f, Interval iv,
                         FracOrder alpha, int n);

// Same integral with n doubling through 64, 128, 256, 512 until two
// successive values agree to 1e-10 relative; returns the last value.
double weighted_integral_auto(const std::function<double(double)>& f,
                              Interval iv, FracOrder alpha);

// Plain integral_a^b f(t) dt by an n-point Gauss-Legendre rule.
double plain_integral(const std::function<double(double)>& f, Interval iv,
                      int n);

// Quadrature route to the weighted product integral
//   (1/Gamma(alpha)) * integral_a^b (b-t)^weight_exp * p(t) * q(t) dt:
// each term pair keeps its fractional exponent parts inside a Jacobi weight
// and integrates the leftover polynomial part with the rule.  Independent of
// the beta-identity route, which it cross-checks.  Exact once 2n - 1 covers
// the largest integer exponent part.
double weighted_inner_product_quadrature(const PowerSum& p, const PowerSum& q,
                                         double weight_exp, FracOrder alpha,
                                         int n);

}  // namespace fracvar
