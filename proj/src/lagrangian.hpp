#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "grid_ops.hpp"
#include "power_sum.hpp"

namespace fracvar {

// L(t, u, v) = c_vv v^2 + c_uu u^2 + c_u u + c_v v + c_0, the family whose
// weighted functional reduces to exact beta-identity integrals.
struct QuadraticForm {
    double c_vv = 0.0;
    double c_uu = 0.0;
    double c_u = 0.0;
    double c_v = 0.0;
    double c_0 = 0.0;
};

// Integrand L(t, u, v) with its two partial derivatives in u and v.  A
// quadratic structure, when present, unlocks the exact evaluation path;
// weight_shift and scale describe an extra scale * (b-t)^shift factor that
// is already folded into the callables.
class Lagrangian {
public:
    using Fn = std::function<double(double, double, double)>;

    static Lagrangian v_squared();
    static Lagrangian quadratic(const QuadraticForm& qf);
    static Lagrangian from_expression(const std::string& source);

    // Wraps base as scale * (b-t)^shift * base(t,u,v).  Evaluating the
    // weighted functional of the wrapped integrand with shift = 1 - alpha
    // and scale = Gamma(alpha) reproduces the plain unweighted integral of
    // the base.
    static Lagrangian rescaled(const Lagrangian& base, Interval iv,
                               double shift, double scale);

    double eval(double t, double u, double v) const { return eval_(t, u, v); }
    double d_u(double t, double u, double v) const { return du_(t, u, v); }
    double d_v(double t, double u, double v) const { return dv_(t, u, v); }

    // Registry key that recreates this integrand through make_lagrangian.
    const std::string& key() const { return key_; }
    const std::optional<QuadraticForm>& quadratic_form() const { return qf_; }
    double weight_shift() const { return weight_shift_; }
    double scale() const { return scale_; }

private:
    Lagrangian(std::string key, Fn eval, Fn du, Fn dv,
               std::optional<QuadraticForm> qf)
        : key_(std::move(key)), eval_(std::move(eval)), du_(std::move(du)),
          dv_(std::move(dv)), qf_(qf) {}

    std::string key_;
    Fn eval_;
    Fn du_;
    Fn dv_;
    std::optional<QuadraticForm> qf_;
    double weight_shift_ = 0.0;
    double scale_ = 1.0;
};

// Keys: "v2", "quadratic:c_vv,c_uu,c_u,c_v,c_0", "expr:<expression>".
// Throws ParseError (offset into the key) on anything else.
Lagrangian make_lagrangian(const std::string& key);

struct VariationalProblem {
    Interval interval;
    FracOrder alpha;
    double y_a;
    double y_b;
    Lagrangian lagrangian;
};

// A candidate path together with its Caputo derivative of the problem
// order, either exact (power sum) or sampled (grid).  Construction fails
// unless the derivative exists and stays bounded, which is the membership
// requirement of the admissible class.
class Trajectory {
public:
    static Trajectory from_power_sum(PowerSum y, FracOrder alpha);
    static Trajectory from_grid(GridFn y, FracOrder alpha);

    double order() const { return alpha_.value(); }
    const Interval& interval() const;
    bool is_power_sum() const;

    const PowerSum& power_sum() const;
    const PowerSum& caputo_power_sum() const;
    const GridFn& grid() const;
    const GridFn& caputo_grid() const;

    double value_at(double t) const;
    double caputo_at(double t) const;

private:
    Trajectory(std::variant<PowerSum, GridFn> y,
               std::variant<PowerSum, GridFn> caputo, FracOrder alpha)
        : y_(std::move(y)), caputo_(std::move(caputo)), alpha_(alpha) {}

    std::variant<PowerSum, GridFn> y_;
    std::variant<PowerSum, GridFn> caputo_;
    FracOrder alpha_;
};

// Boundary and membership check against the problem; throws
// AdmissibilityError with the offending endpoint in the message.
void check_admissible(const VariationalProblem& prob, const Trajectory& y);

// The weighted functional
//   (1/Gamma(alpha)) integral_a^b (b-t)^(alpha-1) L(t, y, cD y) dt.
// Exact beta-identity path for power-sum trajectories of quadratic
// integrands; otherwise Gauss-Jacobi with quad_n nodes (quad_n <= 0 doubles
// 64..512 to a 1e-10 relative target).
double evaluate_weighted(const VariationalProblem& prob, const Trajectory& y,
                         int quad_n = 0);

// Plain integral_a^b L(t, y, cD y) dt under the same path selection.
double evaluate_unweighted(const VariationalProblem& prob, const Trajectory& y,
                           int quad_n = 0);

// evaluate_weighted(x) - evaluate_weighted(y), the amount by which a
// competitor exceeds the candidate.  Restricted to integrands without a u
// dependence, where convexity in v makes a nonnegative gap the minimality
// certificate.
double convexity_gap(const VariationalProblem& prob, const Trajectory& y,
                     const Trajectory& x, int quad_n = 0);

// Random power-sum path satisfying the boundary conditions, built from
// exponents {0, alpha, alpha+1, alpha+2, 1, 2}; always admissible.
PowerSum random_competitor(const VariationalProblem& prob,
                           std::mt19937_64& rng);

}  // namespace fracvar
