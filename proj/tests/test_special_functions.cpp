#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "errors.hpp"
#include "special_functions.hpp"

using namespace fracvar;

namespace {

void check_rel(double got, double want, double rel) {
    CHECK(std::abs(got - want) <= rel * std::abs(want));
}

}  // namespace

TEST_CASE("gamma matches high-precision reference values") {
    // References computed with 50-digit arithmetic and frozen here.
    check_rel(gamma_fn(0.5), 1.7724538509055160273, 1e-14);
    check_rel(gamma_fn(0.25), 3.6256099082219083119, 1e-14);
    check_rel(gamma_fn(0.75), 1.2254167024651776451, 1e-14);
    check_rel(gamma_fn(1.25), 0.90640247705547707798, 1e-14);
    check_rel(gamma_fn(1.5), 0.88622692545275801365, 1e-14);
    check_rel(gamma_fn(1.75), 0.91906252684888323385, 1e-14);
    check_rel(gamma_fn(2.5), 1.3293403881791370205, 1e-14);
    check_rel(gamma_fn(10.3), 716430.68906237524455, 1e-13);
    check_rel(gamma_fn(50.0), 6.0828186403426756087e62, 1e-13);
    check_rel(gamma_fn(0.001), 999.42377248459546612, 1e-13);
}

TEST_CASE("gamma at positive integers is the factorial") {
    double factorial = 1.0;
    for (int n = 1; n <= 12; ++n) {
        check_rel(gamma_fn(static_cast<double>(n)), factorial, 1e-14);
        factorial *= n;
    }
}

TEST_CASE("gamma on the negative axis via reflection") {
    check_rel(gamma_fn(-0.5), -3.5449077018110320546, 1e-13);
    check_rel(gamma_fn(-1.5), 2.3632718012073547031, 1e-13);
    check_rel(gamma_fn(-2.7), -0.93108278483896378099, 1e-13);
}

TEST_CASE("gamma rejects its poles") {
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-7.0), DomainError);
}

TEST_CASE("gamma satisfies the recurrence on random arguments") {
    std::mt19937_64 rng(20260822u);
    std::uniform_real_distribution<double> draw(0.1, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = draw(rng);
        const double lhs = gamma_fn(x + 1.0);
        const double rhs = x * gamma_fn(x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
}

TEST_CASE("log_gamma matches reference values and the exp of it is gamma") {
    check_rel(log_gamma(0.5), 0.57236494292470008707, 1e-14);
    check_rel(log_gamma(10.0), 12.801827480081469611, 1e-14);
    check_rel(log_gamma(0.001), 6.9071788853838536825, 1e-14);
    check_rel(log_gamma(123.456), 469.60554712992946873, 1e-14);

    std::mt19937_64 rng(77001u);
    std::uniform_real_distribution<double> draw(0.05, 30.0);
    for (int i = 0; i < 500; ++i) {
        const double x = draw(rng);
        check_rel(std::exp(log_gamma(x)), gamma_fn(x), 1e-12);
    }
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
}

TEST_CASE("beta matches reference values") {
    check_rel(beta_fn(0.5, 0.5), 3.1415926535897932385, 1e-13);
    check_rel(beta_fn(1.5, 0.5), 1.5707963267948966192, 1e-13);
    check_rel(beta_fn(2.0, 3.0), 0.083333333333333333333, 1e-13);
    check_rel(beta_fn(0.3, 2.7), 2.310517136083305227, 1e-13);
    check_rel(beta_fn(4.5, 3.25), 0.0096971825506030365364, 1e-13);
}

TEST_CASE("beta symmetry and the unit-argument identity") {
    std::mt19937_64 rng(5150u);
    std::uniform_real_distribution<double> draw(0.05, 8.0);
    for (int i = 0; i < 300; ++i) {
        const double x = draw(rng);
        const double y = draw(rng);
        check_rel(beta_fn(x, y), beta_fn(y, x), 1e-13);
        check_rel(beta_fn(x, 1.0), 1.0 / x, 1e-12);
    }
    CHECK_THROWS_AS(beta_fn(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(beta_fn(1.0, -0.5), DomainError);
}
