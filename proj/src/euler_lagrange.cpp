#include "euler_lagrange.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace fracvar {
namespace {

constexpr int kPartialGridCells = 2048;

std::vector<double> chebyshev_points(const Interval& iv, int count) {
    if (count < 2) throw DomainError("need at least 2 sample points");
    const double mid = (iv.a() + iv.b()) / 2.0;
    const double half = iv.length() / 2.0;
    std::vector<double> ts(count);
    for (int j = 0; j < count; ++j) {
        // Descending cosine order flipped so the list ascends from a to b.
        ts[count - 1 - j] = mid + half * std::cos(M_PI * j / (count - 1));
    }
    ts.front() = iv.a();
    ts.back() = iv.b();
    return ts;
}

PowerSum shift_exponents(const PowerSum& p, double delta) {
    std::vector<Term> terms(p.terms().begin(), p.terms().end());
    for (Term& t : terms) t.exponent += delta;
    return PowerSum(p.interval(), p.anchor(), std::move(terms));
}

// L_u and L_v composed with an exact trajectory, as left-anchored sums.
// Only the quadratic family composes inside the class.
struct ComposedPartials {
    PowerSum l_u;
    PowerSum l_v;
};

ComposedPartials compose_partials(const VariationalProblem& prob,
                                  const Trajectory& y) {
    const auto& qf = prob.lagrangian.quadratic_form();
    if (!qf) {
        throw RepresentationError(
            "composing the partial derivatives exactly needs a quadratic "
            "integrand; use the integral form instead");
    }
    if (prob.lagrangian.weight_shift() != 0.0 ||
        prob.lagrangian.scale() != 1.0) {
        throw RepresentationError(
            "composed partials of a rescaled integrand are not in the "
            "power-sum class; use the integral form instead");
    }
    const PowerSum& u = y.power_sum();
    const PowerSum& v = y.caputo_power_sum();
    const PowerSum one = PowerSum::constant(u.interval(), Anchor::Left, 1.0);
    return {u.scaled(2.0 * qf->c_uu) + one.scaled(qf->c_u),
            v.scaled(2.0 * qf->c_vv) + one.scaled(qf->c_v)};
}

}  // namespace

ResidualReport integral_form_residual(const VariationalProblem& prob,
                                      const Trajectory& y, int sample_count,
                                      int quad_n, double tol) {
    check_admissible(prob, y);
    const Lagrangian& L = prob.lagrangian;
    const GridFn l_u = GridFn::sample(prob.interval, kPartialGridCells,
                                      [&](double t) {
                                          return L.d_u(t, y.value_at(t),
                                                       y.caputo_at(t));
                                      });
    ResidualReport report;
    report.sample_ts = chebyshev_points(prob.interval, sample_count);
    report.values.reserve(report.sample_ts.size());
    for (double t : report.sample_ts) {
        const double transform = kernel_transform(l_u, prob.alpha, t, quad_n);
        report.values.push_back(transform +
                                L.d_v(t, y.value_at(t), y.caputo_at(t)));
    }
    double mean = 0.0;
    for (double r : report.values) mean += r;
    mean /= static_cast<double>(report.values.size());
    report.k_estimate = mean;
    for (double r : report.values) {
        report.max_deviation = std::max(report.max_deviation,
                                        std::abs(r - mean));
    }
    report.tolerance = tol;
    report.constant =
        report.max_deviation <= tol * std::max(1.0, std::abs(mean));
    return report;
}

std::vector<double> differential_form_residual(const VariationalProblem& prob,
                                               const Trajectory& y,
                                               std::span<const double> ts) {
    check_admissible(prob, y);
    const double a = prob.alpha.value();
    const Interval& iv = prob.interval;
    for (double t : ts) {
        if (t < iv.a() || t >= iv.b()) {
            std::ostringstream msg;
            msg << "differential form sample " << t << " outside [" << iv.a()
                << ", " << iv.b() << ")";
            throw DomainError(msg.str());
        }
    }
    const ComposedPartials parts = compose_partials(prob, y);
    auto reanchored = try_reanchor(parts.l_v);
    if (!reanchored) {
        throw RepresentationError(
            "the composed L_v does not reanchor to the right endpoint "
            "(non-integer exponents); use the integral form instead");
    }
    // h(s) = (b-s)^(alpha-1) L_v(s), then its right derivative of order
    // alpha; the pole annihilation removes the pure (b-s)^(alpha-1) part.
    const PowerSum h = shift_exponents(*reanchored, a - 1.0);
    const PowerSum dh = right_rl_derivative(h, prob.alpha);
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        out.push_back(std::pow(iv.b() - t, a - 1.0) * parts.l_u.eval(t) +
                      dh.eval(t));
    }
    return out;
}

EtaConstruction dubois_reymond_eta(const PowerSum& f, FracOrder alpha) {
    for (const Term& t : f.terms()) {
        if (t.exponent < -PowerSum::kExponentTol) {
            throw DomainError("the multiplier must be continuous: exponent " +
                              std::to_string(t.exponent));
        }
    }
    const Interval& iv = f.interval();
    const double a = alpha.value();
    const PowerSum integral = left_frac_integral(f, alpha);
    const double g1 = gamma_fn(a + 1.0);
    const double k = integral.eval(iv.b()) * g1 / std::pow(iv.length(), a);
    const PowerSum eta_sum =
        integral - PowerSum::monomial(iv, Anchor::Left, k / g1, a);
    return {Trajectory::from_power_sum(eta_sum, alpha), k};
}

double variation_pairing(const PowerSum& f, const Trajectory& eta,
                         FracOrder alpha) {
    return weighted_inner_product(f, eta.caputo_power_sum(),
                                  alpha.value() - 1.0, alpha);
}

namespace {

void check_vanishing_variation(const VariationalProblem& prob,
                               const Trajectory& eta) {
    if (!(eta.interval() == prob.interval) ||
        eta.order() != prob.alpha.value()) {
        throw AdmissibilityError("variation does not live on the problem");
    }
    const double at_a = eta.value_at(prob.interval.a());
    const double at_b = eta.value_at(prob.interval.b());
    if (std::abs(at_a) > 1e-10 || std::abs(at_b) > 1e-10) {
        std::ostringstream msg;
        msg << "variation endpoints (" << at_a << ", " << at_b
            << ") must vanish";
        throw AdmissibilityError(msg.str());
    }
}

Trajectory displaced(const VariationalProblem& prob, const Trajectory& y,
                     const Trajectory& eta, double eps) {
    if (y.is_power_sum() && eta.is_power_sum()) {
        return Trajectory::from_power_sum(
            y.power_sum() + eta.power_sum().scaled(eps), prob.alpha);
    }
    const int cells = y.is_power_sum() ? eta.grid().cells() : y.grid().cells();
    const GridFn merged =
        GridFn::sample(prob.interval, cells, [&](double t) {
            return y.value_at(t) + eps * eta.value_at(t);
        });
    return Trajectory::from_grid(merged, prob.alpha);
}

}  // namespace

FirstVariation first_variation(const VariationalProblem& prob,
                               const Trajectory& y, const Trajectory& eta,
                               double eps, int quad_n) {
    check_admissible(prob, y);
    check_vanishing_variation(prob, eta);
    if (!(eps > 0.0)) throw DomainError("step must be positive");
    const Lagrangian& L = prob.lagrangian;
    FirstVariation out{};
    if (y.is_power_sum() && eta.is_power_sum() && L.quadratic_form() &&
        L.weight_shift() == 0.0 && L.scale() == 1.0) {
        const ComposedPartials parts = compose_partials(prob, y);
        out.analytic =
            weighted_inner_product(parts.l_u, eta.power_sum(),
                                   prob.alpha.value() - 1.0, prob.alpha) +
            weighted_inner_product(parts.l_v, eta.caputo_power_sum(),
                                   prob.alpha.value() - 1.0, prob.alpha);
    } else {
        auto f = [&](double t) {
            const double u = y.value_at(t);
            const double v = y.caputo_at(t);
            return L.d_u(t, u, v) * eta.value_at(t) +
                   L.d_v(t, u, v) * eta.caputo_at(t);
        };
        out.analytic =
            quad_n > 0
                ? weighted_integral(f, prob.interval, prob.alpha, quad_n)
                : weighted_integral_auto(f, prob.interval, prob.alpha);
    }
    const double plus =
        evaluate_weighted(prob, displaced(prob, y, eta, eps), quad_n);
    const double minus =
        evaluate_weighted(prob, displaced(prob, y, eta, -eps), quad_n);
    out.central = (plus - minus) / (2.0 * eps);
    return out;
}

ObstructionReport unweighted_obstruction(FracOrder alpha) {
    const double a = alpha.value();
    ObstructionReport report;
    report.alpha = a;
    report.divergent_sample_t = 0.99;
    std::ostringstream text;
    if (alpha.is_one()) {
        report.has_solution = true;
        report.forced_k = 1.0;
        report.minimizer_value = 1.0;
        report.divergent_sample_value = 1.0;
        text << "order 1: the stationarity condition y' = k with y(0) = 0, "
                "y(1) = 1 gives y(t) = t, value 1";
    } else {
        report.has_solution = false;
        report.forced_k = 0.0;
        report.divergent_sample_value =
            std::pow(1.0 - report.divergent_sample_t, a - 1.0);
        text << "rewriting int (cD y)^2 dt as the weighted functional of "
             << "gamma(a) (1-t)^(1-a) v^2 makes the stationarity condition "
             << "gamma(a) (1-t)^(1-a) cD y = k; continuity of cD y at t = 1 "
             << "forces k = 0, hence y constant, contradicting y(1) = 1. "
             << "The classical closed-form candidate (defined for a > 1/2) "
             << "has D y(t) = (1-t)^(a-1), unbounded near t = 1";
    }
    report.summary = text.str();
    return report;
}

}  // namespace fracvar
