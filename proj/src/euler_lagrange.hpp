#pragma once

#include <span>
#include <string>
#include <vector>

#include "lagrangian.hpp"

namespace fracvar {

// Samples of the stationarity map
//   r(t) = (b-t)^(1-alpha) I_right^alpha[(b-s)^(alpha-1) L_u](t) + L_v(t)
// (both partials composed with the trajectory), which is constant along a
// stationary path.  k_estimate is the sample mean, max_deviation the
// largest distance from it, and constant the verdict at the stored
// tolerance (relative to max(1, |k|)).
struct ResidualReport {
    std::vector<double> sample_ts;
    std::vector<double> values;
    double k_estimate = 0.0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool constant = false;
};

// Chebyshev-spaced samples over [a, b]; the first map term is evaluated by
// the grid kernel transform on resampled partials, so it works for exact
// and grid trajectories alike.
ResidualReport integral_form_residual(const VariationalProblem& prob,
                                      const Trajectory& y,
                                      int sample_count = 33, int quad_n = 96,
                                      double tol = 1e-6);

// Pointwise values of the differentiated stationarity map
//   (b-t)^(alpha-1) L_u(t) + D_right^alpha[(b-s)^(alpha-1) L_v(s)](t)
// at sample points in [a, b), which vanish along a stationary path.  Needs
// an exact trajectory and a quadratic integrand whose composed L_v
// reanchors to the right endpoint (integer exponents); throws
// RepresentationError pointing at the integral form otherwise.
std::vector<double> differential_form_residual(const VariationalProblem& prob,
                                               const Trajectory& y,
                                               std::span<const double> ts);

// The fundamental-lemma witness for a non-constant multiplier f: a
// variation eta vanishing at both endpoints with cD eta = f - k, where k
// is the weighted average that makes eta(b) = 0.
struct EtaConstruction {
    Trajectory eta;
    double k;
};
EtaConstruction dubois_reymond_eta(const PowerSum& f, FracOrder alpha);

// (1/Gamma(alpha)) integral_a^b (b-t)^(alpha-1) f(t) cD eta(t) dt, exact.
double variation_pairing(const PowerSum& f, const Trajectory& eta,
                         FracOrder alpha);

// Directional derivative of the weighted functional at y along eta,
// computed two independent ways: the first-order expansion integral and a
// central difference of the functional itself.
struct FirstVariation {
    double analytic;
    double central;
};
FirstVariation first_variation(const VariationalProblem& prob,
                               const Trajectory& y, const Trajectory& eta,
                               double eps = 1e-5, int quad_n = 0);

// Why  integral_a^b (cD^alpha y)^2 dt -> min, y(a)=0, y(b)=1  has no
// admissible solution for alpha < 1: rewriting it as a weighted problem
// forces the stationarity constant to vanish at t = b, which contradicts
// the boundary conditions.  At alpha = 1 the classical solution y = t
// survives.
struct ObstructionReport {
    double alpha = 0.0;
    bool has_solution = false;
    double forced_k = 0.0;          // stationarity constant after the t=b limit
    double minimizer_value = 0.0;   // meaningful only when has_solution
    double divergent_sample_t = 0.0;
    double divergent_sample_value = 0.0;  // (1-t)^(alpha-1) at the sample
    std::string summary;
};
ObstructionReport unweighted_obstruction(FracOrder alpha);

}  // namespace fracvar
