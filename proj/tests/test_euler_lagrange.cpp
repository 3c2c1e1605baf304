#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "euler_lagrange.hpp"
#include "special_functions.hpp"

using namespace fracvar;

namespace {

const Interval kUnit{0.0, 1.0};

VariationalProblem power_problem(double alpha) {
    return {kUnit, FracOrder(alpha), 0.0, 1.0, Lagrangian::v_squared()};
}

Trajectory power_minimizer(double alpha) {
    return Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, alpha),
        FracOrder(alpha));
}

// Random path vanishing at both endpoints, the variation class.
PowerSum random_variation(double alpha, std::mt19937_64& rng) {
    VariationalProblem zero_ends = power_problem(alpha);
    zero_ends.y_b = 0.0;
    return random_competitor(zero_ends, rng);
}

}  // namespace

TEST_CASE("the stationarity map is constant along the power minimizer") {
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
        const VariationalProblem prob = power_problem(alpha);
        const ResidualReport report =
            integral_form_residual(prob, power_minimizer(alpha));
        CHECK(report.constant);
        // L_u = 0 and L_v = 2 gamma(alpha + 1) exactly, so the samples sit
        // on the constant to rounding.
        CHECK(report.k_estimate ==
              doctest::Approx(2.0 * gamma_fn(alpha + 1.0)).epsilon(1e-12));
        CHECK(report.max_deviation <= 1e-10);
        CHECK(report.sample_ts.front() == 0.0);
        CHECK(report.sample_ts.back() == 1.0);
    }
}

TEST_CASE("the straight line fails the constancy test at order one half") {
    const VariationalProblem prob = power_problem(0.5);
    const Trajectory line = Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, 1.0), prob.alpha);
    const ResidualReport report = integral_form_residual(prob, line);
    CHECK(!report.constant);
    // The map equals 2 t^0.5 / gamma(1.5), spanning [0, 2.2568]; any mean
    // leaves a deviation of at least a quarter of the range.
    CHECK(report.max_deviation >= 0.5);
    for (std::size_t i = 0; i < report.sample_ts.size(); ++i) {
        const double expected = 2.0 * std::sqrt(report.sample_ts[i]) /
                                gamma_fn(1.5);
        CHECK(report.values[i] == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("a u-dependent integrand exercises the kernel transform term") {
    // L = v^2 + u: along t^alpha the map is
    // gamma(alpha)/gamma(2 alpha) (1-t)^alpha + 2 gamma(alpha + 1).
    for (double alpha : {0.25, 0.5, 0.75}) {
        VariationalProblem prob = power_problem(alpha);
        prob.lagrangian = Lagrangian::quadratic({1.0, 0.0, 1.0, 0.0, 0.0});
        const ResidualReport report =
            integral_form_residual(prob, power_minimizer(alpha));
        CHECK(!report.constant);
        const double front = gamma_fn(alpha) / gamma_fn(2.0 * alpha);
        for (std::size_t i = 0; i < report.sample_ts.size(); ++i) {
            const double expected =
                front * std::pow(1.0 - report.sample_ts[i], alpha) +
                2.0 * gamma_fn(alpha + 1.0);
            CHECK(report.values[i] ==
                  doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("differential form vanishes along the power minimizer") {
    const std::vector<double> ts{0.0, 0.12, 0.5, 0.83, 0.999};
    for (double alpha : {0.25, 0.5, 0.75}) {
        const VariationalProblem prob = power_problem(alpha);
        // L_v along the path is constant, so the whole map collapses to the
        // annihilated (b-s)^(alpha-1) derivative.
        const std::vector<double> r =
            differential_form_residual(prob, power_minimizer(alpha), ts);
        for (double v : r) {
            CHECK(std::abs(v) <= 1e-12);
        }
    }
}

TEST_CASE("differential form reports the closed-form defect off stationarity") {
    const double alpha = 0.5;
    VariationalProblem prob = power_problem(alpha);
    prob.y_b = 2.0;
    const PowerSum path =
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, alpha) +
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, alpha + 1.0);
    const Trajectory y = Trajectory::from_power_sum(path, prob.alpha);
    const std::vector<double> ts{0.0, 0.25, 0.5, 0.75};
    const std::vector<double> r = differential_form_residual(prob, y, ts);
    // cD y = gamma(a+1) + gamma(a+2) t; the t part contributes
    // -2 gamma(a+2) gamma(a+1) after the right derivative, which for
    // a = 1/2 is -3 pi / 4.
    const double expected = -3.0 * M_PI / 4.0;
    for (double v : r) {
        CHECK(v == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("differential form rejects paths it cannot represent") {
    const VariationalProblem prob = power_problem(0.5);
    const Trajectory line = Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, 1.0), prob.alpha);
    const std::vector<double> ts{0.5};
    // L_v along the line is t^0.5-like: no right-endpoint rewrite exists.
    CHECK_THROWS_AS(differential_form_residual(prob, line, ts),
                    RepresentationError);

    const std::vector<double> bad{1.0};
    CHECK_THROWS_AS(
        differential_form_residual(prob, power_minimizer(0.5), bad),
        DomainError);
}

TEST_CASE("pairing a constant against admissible variations gives zero") {
    std::mt19937_64 rng(987654321);
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
        const PowerSum f = PowerSum::constant(kUnit, Anchor::Left, 2.7);
        for (int i = 0; i < 50; ++i) {
            const Trajectory eta = Trajectory::from_power_sum(
                random_variation(alpha, rng), FracOrder(alpha));
            CHECK(std::abs(variation_pairing(f, eta, FracOrder(alpha))) <=
                  1e-10);
        }
    }
}

TEST_CASE("the witness variation pins down non-constant multipliers") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const double alpha = 0.25 + 0.7 * (i / 19.0);
        std::vector<Term> terms{{coeff(rng), 0.0},
                                {coeff(rng), alpha},
                                {1.0 + std::abs(coeff(rng)), 1.0},
                                {coeff(rng), 2.0}};
        const PowerSum f(kUnit, Anchor::Left, std::move(terms));
        const EtaConstruction witness =
            dubois_reymond_eta(f, FracOrder(alpha));

        CHECK(std::abs(witness.eta.value_at(0.0)) <= 1e-10);
        CHECK(std::abs(witness.eta.value_at(1.0)) <= 1e-10);

        // cD eta reproduces f - k termwise.
        const PowerSum defect =
            witness.eta.caputo_power_sum() -
            (f - PowerSum::constant(kUnit, Anchor::Left, witness.k));
        CHECK(defect.magnitude() <= 1e-10 * std::max(1.0, f.magnitude()));

        // The pairing equals the weighted norm of f - k: positive, and the
        // exact inner product to rounding.
        const PowerSum centered =
            f - PowerSum::constant(kUnit, Anchor::Left, witness.k);
        const double norm2 = weighted_inner_product(
            centered, centered, alpha - 1.0, FracOrder(alpha));
        const double pairing =
            variation_pairing(f, witness.eta, FracOrder(alpha));
        CHECK(pairing > 0.0);
        CHECK(pairing == doctest::Approx(norm2).epsilon(1e-8));
    }
}

TEST_CASE("witness constant for the identity multiplier is two thirds") {
    const PowerSum f = PowerSum::monomial(kUnit, Anchor::Left, 1.0, 1.0);
    const EtaConstruction witness = dubois_reymond_eta(f, FracOrder(0.5));
    CHECK(witness.k == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("first variation vanishes at the minimizer and not elsewhere") {
    const VariationalProblem prob = power_problem(0.5);
    std::mt19937_64 rng(13579);
    const Trajectory eta = Trajectory::from_power_sum(
        random_variation(0.5, rng), prob.alpha);

    const FirstVariation at_min =
        first_variation(prob, power_minimizer(0.5), eta);
    CHECK(std::abs(at_min.analytic) <= 1e-12);
    CHECK(std::abs(at_min.central) <= 1e-8);

    const Trajectory line = Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, 1.0), prob.alpha);
    const FirstVariation off = first_variation(prob, line, eta);
    CHECK(std::abs(off.analytic) > 1e-3);
    CHECK(off.central ==
          doctest::Approx(off.analytic)
              .epsilon(1e-6 * std::max(1.0, std::abs(off.analytic))));
}

TEST_CASE("first variation through quadrature matches the central difference") {
    const VariationalProblem prob{kUnit, FracOrder(0.6), 0.0, 1.0,
                                  Lagrangian::from_expression("v^2 + u^2")};
    std::mt19937_64 rng(2468);
    const Trajectory eta = Trajectory::from_power_sum(
        random_variation(0.6, rng), prob.alpha);
    const FirstVariation fv =
        first_variation(prob, power_minimizer(0.6), eta);
    CHECK(fv.central == doctest::Approx(fv.analytic).epsilon(1e-5));
}

TEST_CASE("variations with loose endpoints are rejected") {
    const VariationalProblem prob = power_problem(0.5);
    const Trajectory not_a_variation = power_minimizer(0.5);
    CHECK_THROWS_AS(first_variation(prob, power_minimizer(0.5),
                                    not_a_variation),
                    AdmissibilityError);
}

TEST_CASE("the unweighted problem admits no minimizer below order one") {
    for (double alpha : {0.25, 0.5, 0.75}) {
        const ObstructionReport report =
            unweighted_obstruction(FracOrder(alpha));
        CHECK(!report.has_solution);
        CHECK(report.forced_k == 0.0);
        CHECK(report.divergent_sample_t == 0.99);
        CHECK(report.divergent_sample_value ==
              doctest::Approx(std::pow(0.01, alpha - 1.0)).epsilon(1e-12));
        CHECK(report.summary.find("k = 0") != std::string::npos);
    }
    const ObstructionReport classical = unweighted_obstruction(FracOrder(1.0));
    CHECK(classical.has_solution);
    CHECK(classical.forced_k == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(classical.minimizer_value == doctest::Approx(1.0).epsilon(1e-12));
}
