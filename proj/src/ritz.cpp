#include "ritz.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "power_sum.hpp"

namespace fracvar {

namespace {

// Solves the symmetric positive definite system A x = rhs in place by
// Cholesky factorization.  A is row-major n x n.
std::vector<double> cholesky_solve(std::vector<double> a,
                                   std::vector<double> rhs, int n) {
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) {
        max_diag = std::max(max_diag, std::abs(a[i * n + i]));
    }
    const double floor = 1e-13 * std::max(1.0, max_diag);
    for (int j = 0; j < n; ++j) {
        double pivot = a[j * n + j];
        for (int k = 0; k < j; ++k) {
            pivot -= a[j * n + k] * a[j * n + k];
        }
        if (!(pivot > floor)) {
            throw DegeneracyError(
                "trial-space curvature matrix is not positive definite");
        }
        const double root = std::sqrt(pivot);
        a[j * n + j] = root;
        for (int i = j + 1; i < n; ++i) {
            double sum = a[i * n + j];
            for (int k = 0; k < j; ++k) {
                sum -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = sum / root;
        }
    }
    for (int i = 0; i < n; ++i) {
        double sum = rhs[i];
        for (int k = 0; k < i; ++k) {
            sum -= a[i * n + k] * rhs[k];
        }
        rhs[i] = sum / a[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double sum = rhs[i];
        for (int k = i + 1; k < n; ++k) {
            sum -= a[k * n + i] * rhs[k];
        }
        rhs[i] = sum / a[i * n + i];
    }
    return rhs;
}

PowerSum assemble_path(const RitzBasis& basis,
                       std::span<const double> coeffs) {
    PowerSum y = basis.boundary;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        y = y + basis.modes[j].scaled(coeffs[j]);
    }
    return y;
}

SolveResult finish_result(const VariationalProblem& prob,
                          const SolverSettings& settings,
                          std::vector<double> coeffs, PowerSum y,
                          bool converged, int iterations) {
    Trajectory traj = Trajectory::from_power_sum(std::move(y), prob.alpha);
    SolveResult result{std::move(coeffs),
                       evaluate_weighted(prob, traj, settings.quad_n),
                       converged,
                       iterations,
                       integral_form_residual(prob, traj,
                                              settings.residual_samples,
                                              settings.residual_quad_n,
                                              settings.residual_tol),
                       std::move(traj)};
    return result;
}

}  // namespace

RitzBasis build_ritz_basis(const VariationalProblem& prob, int modes) {
    if (modes < 0) {
        throw DomainError("mode count must be nonnegative");
    }
    const Interval& iv = prob.interval;
    const double alpha = prob.alpha.value();
    const double len = iv.length();

    // s = (t - a) / (b - a); boundary interpolant y_a + (y_b - y_a) s^alpha,
    // modes s^(alpha + k) - s^alpha which vanish at both endpoints.
    const PowerSum base_power =
        PowerSum::monomial(iv, Anchor::Left, std::pow(len, -alpha), alpha);
    RitzBasis basis{PowerSum::constant(iv, Anchor::Left, prob.y_a) +
                        base_power.scaled(prob.y_b - prob.y_a),
                    {}};
    basis.modes.reserve(static_cast<std::size_t>(modes));
    for (int k = 1; k <= modes; ++k) {
        basis.modes.push_back(
            PowerSum::monomial(iv, Anchor::Left, std::pow(len, -(alpha + k)),
                               alpha + k) -
            base_power);
    }
    return basis;
}

SolveResult solve_quadratic(const VariationalProblem& prob,
                            const SolverSettings& settings) {
    const auto& qf = prob.lagrangian.quadratic_form();
    if (!qf) {
        throw DomainError(
            "quadratic solver needs a quadratic integrand; use the general "
            "solver");
    }
    const RitzBasis basis = build_ritz_basis(prob, settings.modes);
    const int m = static_cast<int>(basis.modes.size());
    if (m == 0) {
        return finish_result(prob, settings, {}, basis.boundary, true, 0);
    }

    const double w = prob.alpha.value() - 1.0 + prob.lagrangian.weight_shift();
    const double scale = prob.lagrangian.scale();
    const auto inner = [&](const PowerSum& p, const PowerSum& q) {
        return weighted_inner_product(p, q, w, prob.alpha);
    };

    const PowerSum caputo_boundary =
        left_caputo_derivative(basis.boundary, prob.alpha);
    std::vector<PowerSum> caputo_modes;
    caputo_modes.reserve(basis.modes.size());
    for (const PowerSum& mode : basis.modes) {
        caputo_modes.push_back(left_caputo_derivative(mode, prob.alpha));
    }
    const PowerSum one = PowerSum::constant(prob.interval, Anchor::Left, 1.0);

    // Hessian and gradient at zero coefficients of the quadratic model
    // value(c) = value(0) + g.c + c.A c / 2.
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> g(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < m; ++j) {
        for (int k = j; k < m; ++k) {
            const double entry =
                scale * (2.0 * qf->c_vv * inner(caputo_modes[j],
                                                caputo_modes[k]) +
                         2.0 * qf->c_uu * inner(basis.modes[j],
                                                basis.modes[k]));
            a[static_cast<std::size_t>(j) * m + k] = entry;
            a[static_cast<std::size_t>(k) * m + j] = entry;
        }
        g[static_cast<std::size_t>(j)] =
            scale * (2.0 * qf->c_vv * inner(caputo_boundary, caputo_modes[j]) +
                     2.0 * qf->c_uu * inner(basis.boundary, basis.modes[j]) +
                     qf->c_u * inner(basis.modes[j], one) +
                     qf->c_v * inner(caputo_modes[j], one));
    }

    std::vector<double> rhs(g);
    for (double& v : rhs) {
        v = -v;
    }
    std::vector<double> coeffs = cholesky_solve(std::move(a), std::move(rhs), m);
    PowerSum y = assemble_path(basis, coeffs);
    return finish_result(prob, settings, std::move(coeffs), std::move(y), true,
                         0);
}

SolveResult solve_general(const VariationalProblem& prob,
                          const SolverSettings& settings) {
    const RitzBasis basis = build_ritz_basis(prob, settings.modes);
    const int m = static_cast<int>(basis.modes.size());
    if (m == 0) {
        return finish_result(prob, settings, {}, basis.boundary, true, 0);
    }

    // A fixed-size rule keeps the objective a smooth function of the
    // coefficients; the adaptive path switches node counts between nearby
    // candidates and that jitter stalls the simplex.
    const int objective_n = settings.quad_n > 0 ? settings.quad_n : 128;
    const auto objective = [&](const std::vector<double>& c) {
        try {
            Trajectory traj =
                Trajectory::from_power_sum(assemble_path(basis, c), prob.alpha);
            const double value = evaluate_weighted(prob, traj, objective_n);
            return std::isfinite(value)
                       ? value
                       : std::numeric_limits<double>::infinity();
        } catch (const EvaluationError&) {
            return std::numeric_limits<double>::infinity();
        } catch (const DomainError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    // Nelder-Mead with the standard reflection 1, expansion 2,
    // contraction 1/2, shrink 1/2 coefficients.
    std::vector<std::vector<double>> simplex(static_cast<std::size_t>(m) + 1,
                                             std::vector<double>(m, 0.0));
    for (int j = 0; j < m; ++j) {
        simplex[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(j)] =
            settings.initial_step;
    }
    std::vector<double> values(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        values[i] = objective(simplex[i]);
    }

    const auto order = [&] {
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            idx[i] = i;
        }
        std::sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) {
            return values[l] < values[r];
        });
        std::vector<std::vector<double>> sx;
        std::vector<double> sv;
        sx.reserve(idx.size());
        sv.reserve(idx.size());
        for (std::size_t i : idx) {
            sx.push_back(std::move(simplex[i]));
            sv.push_back(values[i]);
        }
        simplex = std::move(sx);
        values = std::move(sv);
    };

    bool converged = false;
    int iterations = 0;
    while (iterations < settings.max_iter) {
        order();
        double spread = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            for (int j = 0; j < m; ++j) {
                spread = std::max(spread,
                                  std::abs(simplex[i][static_cast<std::size_t>(
                                               j)] -
                                           simplex[0][static_cast<std::size_t>(
                                               j)]));
            }
        }
        if (spread <= settings.x_tol &&
            std::abs(values.back() - values.front()) <= settings.f_tol) {
            converged = true;
            break;
        }
        ++iterations;

        std::vector<double> centroid(static_cast<std::size_t>(m), 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i) {
            for (int j = 0; j < m; ++j) {
                centroid[static_cast<std::size_t>(j)] +=
                    simplex[i][static_cast<std::size_t>(j)] / m;
            }
        }
        const auto blend = [&](double t) {
            std::vector<double> x(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) {
                const std::size_t u = static_cast<std::size_t>(j);
                x[u] = centroid[u] + t * (centroid[u] - simplex.back()[u]);
            }
            return x;
        };

        std::vector<double> reflected = blend(1.0);
        const double f_reflected = objective(reflected);
        if (f_reflected < values.front()) {
            std::vector<double> expanded = blend(2.0);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                simplex.back() = std::move(expanded);
                values.back() = f_expanded;
            } else {
                simplex.back() = std::move(reflected);
                values.back() = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[values.size() - 2]) {
            simplex.back() = std::move(reflected);
            values.back() = f_reflected;
            continue;
        }
        const bool outside = f_reflected < values.back();
        std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
        const double f_contracted = objective(contracted);
        if (f_contracted < (outside ? f_reflected : values.back())) {
            simplex.back() = std::move(contracted);
            values.back() = f_contracted;
            continue;
        }
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            for (int j = 0; j < m; ++j) {
                const std::size_t u = static_cast<std::size_t>(j);
                simplex[i][u] =
                    simplex[0][u] + 0.5 * (simplex[i][u] - simplex[0][u]);
            }
            values[i] = objective(simplex[i]);
        }
    }
    order();

    PowerSum y = assemble_path(basis, simplex.front());
    return finish_result(prob, settings, std::move(simplex.front()),
                         std::move(y), converged, iterations);
}

MinimizerReport verify_minimizer(const VariationalProblem& prob,
                                 const SolveResult& result, int trials) {
    MinimizerReport report;
    const double value_scale = std::max(1.0, std::abs(result.value));

    {
        MinimizerCheck check{"residual_constant", result.residual.constant,
                             true, ""};
        std::ostringstream detail;
        detail << std::scientific << std::setprecision(3)
               << "max deviation " << result.residual.max_deviation
               << " from k = " << result.residual.k_estimate << " (tol "
               << result.residual.tolerance << ")";
        check.detail = detail.str();
        report.checks.push_back(std::move(check));
    }

    {
        const RitzBasis directions = build_ritz_basis(prob, 3);
        double max_analytic = 0.0;
        double max_central = 0.0;
        for (const PowerSum& mode : directions.modes) {
            Trajectory eta = Trajectory::from_power_sum(mode, prob.alpha);
            const FirstVariation fv =
                first_variation(prob, result.trajectory, eta);
            max_analytic = std::max(max_analytic, std::abs(fv.analytic));
            max_central = std::max(max_central, std::abs(fv.central));
        }
        MinimizerCheck check{"first_variation_vanishes",
                             max_analytic <= 5e-6 * value_scale &&
                                 max_central <= 1e-4 * value_scale,
                             true, ""};
        std::ostringstream detail;
        detail << std::scientific << std::setprecision(3) << "max |analytic| "
               << max_analytic << ", max |central| " << max_central
               << " over 3 directions";
        check.detail = detail.str();
        report.checks.push_back(std::move(check));
    }

    {
        const auto& qf = prob.lagrangian.quadratic_form();
        const bool convex_v_only =
            qf && qf->c_uu == 0.0 && qf->c_u == 0.0 && qf->c_vv >= 0.0;
        MinimizerCheck check{"convexity_gap_nonnegative", false,
                             convex_v_only && trials > 0, ""};
        if (check.exercised) {
            std::mt19937_64 rng(12345);
            double min_gap = std::numeric_limits<double>::infinity();
            for (int i = 0; i < trials; ++i) {
                Trajectory competitor = Trajectory::from_power_sum(
                    random_competitor(prob, rng), prob.alpha);
                min_gap = std::min(min_gap,
                                   convexity_gap(prob, result.trajectory,
                                                 competitor));
            }
            check.passed = min_gap >= -1e-9 * value_scale;
            std::ostringstream detail;
            detail << std::scientific << std::setprecision(3) << "min gap "
                   << min_gap << " over " << trials << " competitors";
            check.detail = detail.str();
        } else {
            check.detail = convex_v_only
                               ? "no competitor trials requested"
                               : "integrand outside the convex v-only family";
        }
        report.checks.push_back(std::move(check));
    }

    report.all_passed = true;
    for (const MinimizerCheck& check : report.checks) {
        if (check.exercised && !check.passed) {
            report.all_passed = false;
        }
    }
    return report;
}

}  // namespace fracvar
