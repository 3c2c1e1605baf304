#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "lagrangian.hpp"
#include "special_functions.hpp"

using namespace fracvar;

namespace {

const Interval kUnit{0.0, 1.0};

VariationalProblem power_problem(double alpha) {
    return {kUnit, FracOrder(alpha), 0.0, 1.0, Lagrangian::v_squared()};
}

Trajectory power_minimizer(const VariationalProblem& prob) {
    return Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, prob.alpha.value()),
        prob.alpha);
}

}  // namespace

TEST_CASE("built-in integrand families evaluate and differentiate") {
    const Lagrangian v2 = Lagrangian::v_squared();
    CHECK(v2.key() == "v2");
    CHECK(v2.eval(0.3, 5.0, -2.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(v2.d_u(0.3, 5.0, -2.0) == 0.0);
    CHECK(v2.d_v(0.3, 5.0, -2.0) == doctest::Approx(-4.0).epsilon(1e-15));
    REQUIRE(v2.quadratic_form().has_value());
    CHECK(v2.quadratic_form()->c_vv == 1.0);
    CHECK(v2.quadratic_form()->c_uu == 0.0);

    const QuadraticForm qf{1.5, -0.25, 2.0, -1.0, 0.75};
    const Lagrangian quad = Lagrangian::quadratic(qf);
    const double t = 0.4, u = -1.2, v = 0.9;
    CHECK(quad.eval(t, u, v) ==
          doctest::Approx(1.5 * v * v - 0.25 * u * u + 2.0 * u - 1.0 * v +
                          0.75)
              .epsilon(1e-15));
    CHECK(quad.d_u(t, u, v) ==
          doctest::Approx(-0.5 * u + 2.0).epsilon(1e-15));
    CHECK(quad.d_v(t, u, v) == doctest::Approx(3.0 * v - 1.0).epsilon(1e-15));
}

TEST_CASE("expression integrands carry numeric partials") {
    const Lagrangian L = Lagrangian::from_expression("t + u*v^2");
    CHECK(!L.quadratic_form().has_value());
    CHECK(L.eval(0.5, 2.0, 3.0) == doctest::Approx(18.5).epsilon(1e-15));
    CHECK(L.d_u(0.5, 2.0, 3.0) == doctest::Approx(9.0).epsilon(1e-8));
    CHECK(L.d_v(0.5, 2.0, 3.0) == doctest::Approx(12.0).epsilon(1e-8));
}

TEST_CASE("registry keys round-trip every family") {
    const Lagrangian quad =
        Lagrangian::quadratic({1.25, -0.5, 0.0, 3.0, -2.5});
    const Lagrangian back = make_lagrangian(quad.key());
    CHECK(back.key() == quad.key());
    REQUIRE(back.quadratic_form().has_value());
    CHECK(back.quadratic_form()->c_vv == 1.25);
    CHECK(back.quadratic_form()->c_uu == -0.5);
    CHECK(back.quadratic_form()->c_v == 3.0);
    CHECK(back.quadratic_form()->c_0 == -2.5);

    const Lagrangian expr = Lagrangian::from_expression("sin(t) + u * v");
    const Lagrangian expr_back = make_lagrangian(expr.key());
    CHECK(expr_back.key() == expr.key());
    CHECK(expr_back.eval(0.7, 1.1, -0.3) ==
          doctest::Approx(expr.eval(0.7, 1.1, -0.3)).epsilon(1e-15));

    CHECK(make_lagrangian("v2").key() == "v2");
}

TEST_CASE("registry rejects malformed keys with located errors") {
    CHECK_THROWS_AS(make_lagrangian("bogus"), ParseError);
    CHECK_THROWS_AS(make_lagrangian("quadratic:1,2"), ParseError);
    CHECK_THROWS_AS(make_lagrangian("quadratic:1,2,three,4,5"), ParseError);
    CHECK_THROWS_AS(make_lagrangian("expr:1+"), ParseError);
    try {
        make_lagrangian("expr:1+");
    } catch (const ParseError& e) {
        // Offset points into the full key, past the "expr:" prefix.
        CHECK(e.offset >= 5);
    }
}

TEST_CASE("rescaling folds the weight factor into the callables") {
    const Lagrangian base = Lagrangian::v_squared();
    const double alpha = 0.5;
    const Lagrangian wrapped =
        Lagrangian::rescaled(base, kUnit, 1.0 - alpha, gamma_fn(alpha));
    CHECK(wrapped.weight_shift() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(wrapped.scale() ==
          doctest::Approx(gamma_fn(alpha)).epsilon(1e-15));
    REQUIRE(wrapped.quadratic_form().has_value());
    const double t = 0.36, v = -1.7;
    CHECK(wrapped.eval(t, 0.0, v) ==
          doctest::Approx(gamma_fn(alpha) * std::sqrt(1.0 - t) * v * v)
              .epsilon(1e-14));
    CHECK(wrapped.d_v(t, 0.0, v) ==
          doctest::Approx(gamma_fn(alpha) * std::sqrt(1.0 - t) * 2.0 * v)
              .epsilon(1e-14));
    CHECK_THROWS_AS(Lagrangian::rescaled(base, kUnit, -0.5, 1.0), DomainError);
    CHECK_THROWS_AS(Lagrangian::rescaled(base, kUnit, 0.5, 0.0), DomainError);
}

TEST_CASE("trajectories expose the path and its fractional derivative") {
    const double alpha = 0.6;
    const Trajectory y = Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, alpha),
        FracOrder(alpha));
    CHECK(y.is_power_sum());
    CHECK(y.value_at(0.49) == doctest::Approx(std::pow(0.49, alpha)));
    CHECK(y.caputo_at(0.3) ==
          doctest::Approx(gamma_fn(alpha + 1.0)).epsilon(1e-14));
    CHECK(y.caputo_power_sum().terms().size() == 1);
    CHECK_THROWS_AS(y.grid(), RepresentationError);

    // Right-anchored polynomials reanchor; fractional right powers do not.
    const Trajectory flipped = Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Right, 1.0, 2.0), FracOrder(alpha));
    CHECK(flipped.value_at(0.25) == doctest::Approx(0.5625).epsilon(1e-12));
    CHECK_THROWS_AS(
        Trajectory::from_power_sum(
            PowerSum::monomial(kUnit, Anchor::Right, 1.0, 0.5),
            FracOrder(alpha)),
        RepresentationError);
}

TEST_CASE("paths with unbounded fractional derivatives are rejected") {
    // cD^0.5 of t^0.3 behaves like t^(-0.2) near 0: outside the class.
    CHECK_THROWS_AS(
        Trajectory::from_power_sum(
            PowerSum::monomial(kUnit, Anchor::Left, 1.0, 0.3),
            FracOrder(0.5)),
        AdmissibilityError);
    // The borderline exponent alpha itself stays admissible.
    CHECK_NOTHROW(Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, 0.5), FracOrder(0.5)));
}

TEST_CASE("admissibility checks interval, order, and boundary values") {
    const VariationalProblem prob = power_problem(0.5);
    CHECK_NOTHROW(check_admissible(prob, power_minimizer(prob)));

    const Trajectory wrong_order = Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, 1.0), FracOrder(0.75));
    CHECK_THROWS_AS(check_admissible(prob, wrong_order), AdmissibilityError);

    const Trajectory wrong_interval = Trajectory::from_power_sum(
        PowerSum::monomial(Interval(0.0, 2.0), Anchor::Left, 1.0, 0.5),
        FracOrder(0.5));
    CHECK_THROWS_AS(check_admissible(prob, wrong_interval),
                    AdmissibilityError);

    const Trajectory wrong_end = Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 0.5, 0.5), FracOrder(0.5));
    CHECK_THROWS_AS(check_admissible(prob, wrong_end), AdmissibilityError);
}

TEST_CASE("the power path attains the gamma value of the weighted integral") {
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
        const VariationalProblem prob = power_problem(alpha);
        const double value =
            evaluate_weighted(prob, power_minimizer(prob));
        CHECK(value ==
              doctest::Approx(gamma_fn(alpha + 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("order one reduces the weighted functional to the classical one") {
    VariationalProblem prob = power_problem(1.0);
    prob.y_b = 1.0;
    const Trajectory y = Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, 2.0), FracOrder(1.0));
    // cD^1 t^2 = 2t, so the functional is integral of 4 t^2.
    CHECK(evaluate_weighted(prob, y) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("exact beta path agrees with the quadrature path") {
    const double alpha = 0.6;
    const PowerSum path =
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, alpha) +
        PowerSum::monomial(kUnit, Anchor::Left, 0.3, 2.0);
    const Trajectory y =
        Trajectory::from_power_sum(path, FracOrder(alpha));
    const double y_b = path.eval(1.0);

    const QuadraticForm qf{1.3, 0.7, -0.4, 0.2, 0.05};
    const VariationalProblem exact_prob{kUnit, FracOrder(alpha), 0.0, y_b,
                                        Lagrangian::quadratic(qf)};
    const VariationalProblem quad_prob{
        kUnit, FracOrder(alpha), 0.0, y_b,
        Lagrangian::from_expression(
            "1.3*v^2 + 0.7*u^2 - 0.4*u + 0.2*v + 0.05")};
    const double exact = evaluate_weighted(exact_prob, y);
    const double numeric = evaluate_weighted(quad_prob, y);
    CHECK(numeric == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("grid trajectories approximate the exact functional value") {
    const double alpha = 0.5;
    VariationalProblem prob = power_problem(alpha);
    const PowerSum path = PowerSum::monomial(kUnit, Anchor::Left, 1.0, 2.0);
    prob.y_b = 1.0;
    const double exact = evaluate_weighted(
        prob, Trajectory::from_power_sum(path, prob.alpha));
    const Trajectory grid = Trajectory::from_grid(
        GridFn::sample(kUnit, 2048, [&](double t) { return path.eval(t); }),
        prob.alpha);
    CHECK(evaluate_weighted(prob, grid) ==
          doctest::Approx(exact).epsilon(5e-4));
}

TEST_CASE("rescaled weighted functional equals the plain integral") {
    // gamma(alpha) (b-t)^(1-alpha) v^2 under the weighted functional is the
    // unweighted integral of (cD y)^2: the rewriting behind the
    // nonexistence example.
    for (double alpha : {0.25, 0.5, 0.75}) {
        const VariationalProblem base = power_problem(alpha);
        const VariationalProblem wrapped{
            kUnit, FracOrder(alpha), 0.0, 1.0,
            Lagrangian::rescaled(Lagrangian::v_squared(), kUnit, 1.0 - alpha,
                                 gamma_fn(alpha))};
        const PowerSum path =
            PowerSum::monomial(kUnit, Anchor::Left, 0.4, alpha) +
            PowerSum::monomial(kUnit, Anchor::Left, 0.6, alpha + 1.0);
        const Trajectory y = Trajectory::from_power_sum(path, base.alpha);
        const double plain = evaluate_unweighted(base, y);
        const double weighted = evaluate_weighted(wrapped, y);
        CHECK(weighted == doctest::Approx(plain).epsilon(1e-13));
    }
}

TEST_CASE("unweighted evaluation matches direct quadrature") {
    const double alpha = 0.75;
    const VariationalProblem prob = power_problem(alpha);
    const Trajectory y = power_minimizer(prob);
    // cD y is the constant gamma(alpha + 1), so the plain integral of v^2
    // is its square.
    const double expected = gamma_fn(alpha + 1.0) * gamma_fn(alpha + 1.0);
    CHECK(evaluate_unweighted(prob, y) ==
          doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("convexity gap against the straight line is the frozen value") {
    const VariationalProblem prob = power_problem(0.5);
    const Trajectory best = power_minimizer(prob);
    const Trajectory line = Trajectory::from_power_sum(
        PowerSum::monomial(kUnit, Anchor::Left, 1.0, 1.0), prob.alpha);
    // Weighted value of the straight line: 16 / (3 pi sqrt(pi)).
    CHECK(evaluate_weighted(prob, line) ==
          doctest::Approx(0.95779798466755499568).epsilon(1e-13));
    CHECK(convexity_gap(prob, best, line) ==
          doctest::Approx(0.071571059214796982).epsilon(1e-12));

    const VariationalProblem with_u{kUnit, FracOrder(0.5), 0.0, 1.0,
                                    Lagrangian::quadratic({1, 1, 0, 0, 0})};
    CHECK_THROWS_AS(convexity_gap(with_u, best, line), DomainError);
}

TEST_CASE("random competitors satisfy the boundary data and stay admissible") {
    std::mt19937_64 rng(20240817);
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
        VariationalProblem prob = power_problem(alpha);
        prob.y_a = -0.5;
        prob.y_b = 2.0;
        for (int i = 0; i < 25; ++i) {
            const PowerSum candidate = random_competitor(prob, rng);
            CHECK(candidate.eval(0.0) ==
                  doctest::Approx(-0.5).epsilon(1e-12));
            CHECK(candidate.eval(1.0) == doctest::Approx(2.0).epsilon(1e-12));
            CHECK_NOTHROW(check_admissible(
                prob, Trajectory::from_power_sum(candidate, prob.alpha)));
        }
    }
}
