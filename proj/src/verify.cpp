#include "verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "errors.hpp"
#include "euler_lagrange.hpp"
#include "grid_ops.hpp"
#include "lagrangian.hpp"
#include "power_sum.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace fracvar {
namespace {

struct Tracker {
    double worst = 0.0;
    int trials = 0;
    bool ok = true;

    void absolute(double err, double tol) {
        worst = std::max(worst, err);
        ++trials;
        if (!(err <= tol)) ok = false;
    }
    void relative(double err, double scale, double tol) {
        absolute(err / std::max(1.0, scale), tol);
    }
    PropertyResult result(const std::string& name) const {
        std::ostringstream detail;
        detail << std::scientific;
        detail.precision(3);
        detail << "worst error " << worst << " over " << trials << " trials";
        return {name, ok, detail.str()};
    }
};

void run_property(std::vector<PropertyResult>& out, const std::string& name,
                  const std::function<PropertyResult()>& body) {
    try {
        out.push_back(body());
    } catch (const std::exception& e) {
        out.push_back({name, false, std::string("threw: ") + e.what()});
    }
}

Interval random_interval(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> start(-2.0, 2.0);
    std::uniform_real_distribution<double> len(0.5, 3.0);
    const double a = start(rng);
    return {a, a + len(rng)};
}

double random_alpha(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.05, 0.98)(rng);
}

PowerSum random_power_sum(Interval iv, Anchor anchor, std::mt19937_64& rng,
                          double min_exp = 0.0, double max_exp = 3.0) {
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> expo(min_exp, max_exp);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::vector<Term> terms;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        terms.push_back({coeff(rng), expo(rng)});
    }
    return PowerSum(iv, anchor, std::move(terms));
}

double coefficientwise_distance(const PowerSum& p, const PowerSum& q) {
    const PowerSum diff = p - q;
    return diff.magnitude() /
           std::max({1.0, p.magnitude(), q.magnitude()});
}

// --- ops ---------------------------------------------------------------

PropertyResult prop_power_rule_integral() {
    // The Gamma-ratio image of the fractional integral against the
    // quadrature route, which builds the same number from Jacobi nodes.
    std::mt19937_64 rng(101);
    Tracker track;
    for (int i = 0; i < 20; ++i) {
        const Interval iv = random_interval(rng);
        const FracOrder alpha(random_alpha(rng));
        const PowerSum f = random_power_sum(iv, Anchor::Left, rng);
        const double t =
            iv.a() + iv.length() *
                         std::uniform_real_distribution<double>(0.3, 1.0)(rng);
        const Interval head(iv.a(), t);
        const PowerSum shrunk(
            head, Anchor::Left,
            std::vector<Term>(f.terms().begin(), f.terms().end()));
        const PowerSum one = PowerSum::constant(head, Anchor::Left, 1.0);
        const double via_rule = weighted_inner_product_quadrature(
            shrunk, one, alpha.value() - 1.0, alpha, 16);
        const double via_gamma = left_frac_integral(f, alpha).eval(t);
        track.relative(std::abs(via_rule - via_gamma), std::abs(via_gamma),
                       1e-10);
    }
    return track.result("power_rule_integral");
}

PropertyResult prop_power_rule_derivative() {
    // D^alpha as the classical derivative of the (1-alpha)-integral,
    // compared termwise against the direct Gamma-ratio rule.
    std::mt19937_64 rng(102);
    Tracker track;
    for (int i = 0; i < 100; ++i) {
        const Interval iv = random_interval(rng);
        const double alpha = random_alpha(rng);
        const PowerSum f = random_power_sum(iv, Anchor::Left, rng, 0.1, 3.0);
        const PowerSum lifted = left_frac_integral(f, FracOrder(1.0 - alpha));
        std::vector<Term> classical;
        for (const Term& term : lifted.terms()) {
            classical.push_back({term.coeff * term.exponent,
                                 term.exponent - 1.0});
        }
        const PowerSum expected(iv, Anchor::Left, std::move(classical));
        const PowerSum direct = left_rl_derivative(f, FracOrder(alpha));
        track.absolute(coefficientwise_distance(direct, expected), 1e-12);
    }
    return track.result("power_rule_derivative");
}

PropertyResult prop_derivative_inverts_integral() {
    std::mt19937_64 rng(103);
    Tracker track;
    for (int i = 0; i < 100; ++i) {
        const Interval iv = random_interval(rng);
        const FracOrder alpha(random_alpha(rng));
        const PowerSum left = random_power_sum(iv, Anchor::Left, rng);
        track.absolute(
            coefficientwise_distance(
                left_rl_derivative(left_frac_integral(left, alpha), alpha),
                left),
            1e-12);
        const PowerSum right = random_power_sum(iv, Anchor::Right, rng);
        track.absolute(
            coefficientwise_distance(
                right_rl_derivative(right_frac_integral(right, alpha), alpha),
                right),
            1e-12);
    }
    return track.result("derivative_inverts_integral");
}

PropertyResult prop_integral_caputo_identity() {
    // I^alpha cD^alpha f = f - f(a).
    std::mt19937_64 rng(104);
    Tracker track;
    for (int i = 0; i < 100; ++i) {
        const Interval iv = random_interval(rng);
        const FracOrder alpha(random_alpha(rng));
        const PowerSum f = random_power_sum(iv, Anchor::Left, rng);
        const PowerSum recovered =
            left_frac_integral(left_caputo_derivative(f, alpha), alpha);
        const PowerSum shifted =
            f - PowerSum::constant(iv, Anchor::Left, f.eval(iv.a()));
        track.absolute(coefficientwise_distance(recovered, shifted), 1e-12);
    }
    return track.result("integral_caputo_identity");
}

PropertyResult prop_linearity() {
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> weight(-3.0, 3.0);
    Tracker track;
    for (int i = 0; i < 100; ++i) {
        const Interval iv = random_interval(rng);
        const FracOrder alpha(random_alpha(rng));
        const PowerSum f = random_power_sum(iv, Anchor::Left, rng);
        const PowerSum g = random_power_sum(iv, Anchor::Left, rng);
        const double c1 = weight(rng);
        const double c2 = weight(rng);
        const PowerSum combo = f.scaled(c1) + g.scaled(c2);
        track.absolute(
            coefficientwise_distance(
                left_frac_integral(combo, alpha),
                left_frac_integral(f, alpha).scaled(c1) +
                    left_frac_integral(g, alpha).scaled(c2)),
            1e-12);
        track.absolute(
            coefficientwise_distance(
                left_rl_derivative(combo, alpha),
                left_rl_derivative(f, alpha).scaled(c1) +
                    left_rl_derivative(g, alpha).scaled(c2)),
            1e-12);
        track.absolute(
            coefficientwise_distance(
                left_caputo_derivative(combo, alpha),
                left_caputo_derivative(f, alpha).scaled(c1) +
                    left_caputo_derivative(g, alpha).scaled(c2)),
            1e-12);
    }
    return track.result("linearity");
}

PropertyResult prop_order_one_classical() {
    std::mt19937_64 rng(106);
    Tracker track;
    for (int i = 0; i < 100; ++i) {
        const Interval iv = random_interval(rng);
        const PowerSum f = random_power_sum(iv, Anchor::Left, rng, 0.1, 3.0);
        std::vector<Term> anti;
        std::vector<Term> deriv;
        for (const Term& term : f.terms()) {
            anti.push_back({term.coeff / (term.exponent + 1.0),
                            term.exponent + 1.0});
            deriv.push_back({term.coeff * term.exponent,
                             term.exponent - 1.0});
        }
        track.absolute(
            coefficientwise_distance(left_frac_integral(f, FracOrder(1.0)),
                                     PowerSum(iv, Anchor::Left,
                                              std::move(anti))),
            1e-12);
        track.absolute(
            coefficientwise_distance(left_rl_derivative(f, FracOrder(1.0)),
                                     PowerSum(iv, Anchor::Left,
                                              std::move(deriv))),
            1e-12);
    }
    return track.result("order_one_classical");
}

PropertyResult prop_semigroup() {
    std::mt19937_64 rng(107);
    Tracker track;
    for (int i = 0; i < 100; ++i) {
        const Interval iv = random_interval(rng);
        const double a =
            std::uniform_real_distribution<double>(0.05, 0.9)(rng);
        const double b =
            std::uniform_real_distribution<double>(0.05, 1.0 - a)(rng);
        const PowerSum left = random_power_sum(iv, Anchor::Left, rng);
        track.absolute(
            coefficientwise_distance(
                left_frac_integral(left_frac_integral(left, FracOrder(a)),
                                   FracOrder(b)),
                left_frac_integral(left, FracOrder(a + b))),
            1e-12);
        const PowerSum right = random_power_sum(iv, Anchor::Right, rng);
        track.absolute(
            coefficientwise_distance(
                right_frac_integral(right_frac_integral(right, FracOrder(a)),
                                    FracOrder(b)),
                right_frac_integral(right, FracOrder(a + b))),
            1e-12);
    }
    return track.result("semigroup");
}

PropertyResult prop_pole_annihilation() {
    std::mt19937_64 rng(108);
    Tracker track;
    for (int i = 0; i < 50; ++i) {
        const Interval iv = random_interval(rng);
        const double alpha = random_alpha(rng);
        const PowerSum pole =
            PowerSum::monomial(iv, Anchor::Right, 2.5, alpha - 1.0);
        track.absolute(
            right_rl_derivative(pole, FracOrder(alpha)).magnitude(), 0.0);
        const PowerSum mirror =
            PowerSum::monomial(iv, Anchor::Left, -1.5, alpha - 1.0);
        track.absolute(
            left_rl_derivative(mirror, FracOrder(alpha)).magnitude(), 0.0);
    }
    bool rejects = false;
    try {
        right_rl_derivative(PowerSum::monomial(Interval(0.0, 1.0),
                                               Anchor::Right, 1.0, -0.5),
                            FracOrder(0.9));
    } catch (const RepresentationError&) {
        rejects = true;
    }
    PropertyResult out = track.result("pole_annihilation");
    if (!rejects) {
        out.passed = false;
        out.detail += "; derivative below the representable class was "
                      "not rejected";
    }
    return out;
}

PropertyResult prop_grid_matches_exact() {
    Tracker track;
    const Interval iv(0.0, 1.0);
    for (double alpha : {0.3, 0.7}) {
        const PowerSum f =
            PowerSum::monomial(iv, Anchor::Left, 1.0, alpha) +
            PowerSum::monomial(iv, Anchor::Left, 0.5, 2.0);
        const GridFn samples =
            GridFn::sample(iv, 1024, [&](double t) { return f.eval(t); });
        const GridFn caputo = caputo_left_grid(samples, FracOrder(alpha));
        const PowerSum caputo_exact =
            left_caputo_derivative(f, FracOrder(alpha));
        const GridFn integral = rl_left_integral_grid(samples,
                                                      FracOrder(alpha));
        const PowerSum integral_exact = left_frac_integral(f,
                                                           FracOrder(alpha));
        // Interior protocol: the fractional power keeps the first cells a
        // fixed distance from the continuum, so the comparison starts at
        // t = 0.05.
        double worst_caputo = 0.0;
        double worst_integral = 0.0;
        for (int i = 0; i <= 1024; ++i) {
            const double t = i / 1024.0;
            if (t < 0.05) continue;
            worst_integral = std::max(
                worst_integral, std::abs(integral(t) - integral_exact.eval(t)));
            worst_caputo = std::max(
                worst_caputo, std::abs(caputo(t) - caputo_exact.eval(t)));
        }
        track.absolute(worst_caputo, 1e-3);
        track.absolute(worst_integral, 1e-3);
    }
    return track.result("grid_matches_exact");
}

PropertyResult prop_jacobi_exactness() {
    Tracker track;
    const struct {
        int n;
        double er;
        double el;
    } cases[] = {{8, -0.5, 0.0}, {16, 0.3, -0.2}, {32, 2.0, 1.0}};
    for (const auto& c : cases) {
        const JacobiRule rule = build_jacobi_rule(c.n, c.er, c.el);
        for (int k = 0; k <= 2 * c.n - 1; ++k) {
            double acc = 0.0;
            for (int i = 0; i < rule.n; ++i) {
                acc += rule.weights[i] * std::pow(1.0 + rule.nodes[i], k);
            }
            const double exact = std::pow(2.0, c.er + c.el + k + 1.0) *
                                 beta_fn(c.el + k + 1.0, c.er + 1.0);
            track.relative(std::abs(acc - exact), std::abs(exact), 1e-12);
        }
    }
    track.relative(std::abs(beta_fn(1.5, 0.5) - M_PI / 2.0), M_PI / 2.0,
                   1e-12);
    return track.result("jacobi_exactness");
}

// --- lemma -------------------------------------------------------------

PropertyResult prop_constant_multiplier_orthogonal() {
    std::mt19937_64 rng(201);
    Tracker track;
    const Interval iv(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double alpha = 0.2 + 0.8 * (i / 49.0);
        const VariationalProblem zero_ends{iv, FracOrder(alpha), 0.0, 0.0,
                                           Lagrangian::v_squared()};
        const Trajectory eta = Trajectory::from_power_sum(
            random_competitor(zero_ends, rng), zero_ends.alpha);
        const PowerSum f = PowerSum::constant(iv, Anchor::Left, 2.7);
        track.absolute(std::abs(variation_pairing(f, eta, zero_ends.alpha)),
                       1e-10);
    }
    return track.result("constant_multiplier_orthogonal");
}

PropertyResult prop_witness_detects_nonconstant() {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    Tracker track;
    const Interval iv(0.0, 1.0);
    bool positive = true;
    for (int i = 0; i < 20; ++i) {
        const double alpha = 0.25 + 0.7 * (i / 19.0);
        std::vector<Term> terms{{coeff(rng), 0.0},
                                {coeff(rng), alpha},
                                {1.0 + std::abs(coeff(rng)), 1.0}};
        const PowerSum f(iv, Anchor::Left, std::move(terms));
        const EtaConstruction witness =
            dubois_reymond_eta(f, FracOrder(alpha));
        const PowerSum centered =
            f - PowerSum::constant(iv, Anchor::Left, witness.k);
        const double norm2 = weighted_inner_product(
            centered, centered, alpha - 1.0, FracOrder(alpha));
        const double pairing =
            variation_pairing(f, witness.eta, FracOrder(alpha));
        if (!(pairing > 0.0)) positive = false;
        track.relative(std::abs(pairing - norm2), std::abs(norm2), 1e-8);
    }
    PropertyResult out = track.result("witness_detects_nonconstant");
    if (!positive) {
        out.passed = false;
        out.detail += "; a pairing failed to be strictly positive";
    }
    return out;
}

// --- byparts -----------------------------------------------------------

struct PartsSides {
    double left_beta;
    double right_beta;
    double left_quad;
    double right_quad;
};

// Both sides of  int f D_left g = int g D_right f  for f = I_right phi,
// g = I_left psi: once through the exact mixed-anchor product integral and
// once through plain quadrature.
PartsSides parts_sides(const PowerSum& phi, const PowerSum& psi,
                       FracOrder alpha) {
    const Interval iv = phi.interval();
    const PowerSum f = right_frac_integral(phi, alpha);
    const PowerSum g = left_frac_integral(psi, alpha);
    const PowerSum dg = left_rl_derivative(g, alpha);
    const PowerSum df = right_rl_derivative(f, alpha);
    PartsSides sides{};
    sides.left_beta = beta_product_integral(f, dg, 0.0);
    sides.right_beta = beta_product_integral(g, df, 0.0);
    sides.left_quad = plain_integral(
        [&](double x) { return f.eval(x) * dg.eval(x); }, iv, 768);
    sides.right_quad = plain_integral(
        [&](double x) { return g.eval(x) * df.eval(x); }, iv, 768);
    return sides;
}

PropertyResult prop_byparts_canonical() {
    const PowerSum one =
        PowerSum::constant(Interval(0.0, 1.0), Anchor::Right, 1.0);
    const PowerSum one_left =
        PowerSum::constant(Interval(0.0, 1.0), Anchor::Left, 1.0);
    const PartsSides sides = parts_sides(one, one_left, FracOrder(0.5));
    const double expected = 0.75225277806367504926;
    Tracker track;
    track.absolute(std::abs(sides.left_beta - expected), 1e-6);
    track.absolute(std::abs(sides.right_beta - expected), 1e-6);
    track.absolute(std::abs(sides.left_quad - expected), 1e-6);
    track.absolute(std::abs(sides.right_quad - expected), 1e-6);
    return track.result("byparts_canonical");
}

PropertyResult prop_byparts_random() {
    std::mt19937_64 rng(301);
    std::uniform_real_distribution<double> expo(0.5, 2.0);
    std::uniform_real_distribution<double> coeff(0.5, 2.0);
    std::uniform_real_distribution<double> sign(0.0, 1.0);
    Tracker track;
    for (int i = 0; i < 10; ++i) {
        std::uniform_real_distribution<double> start(-1.0, 1.0);
        std::uniform_real_distribution<double> len(0.5, 2.0);
        const double a = start(rng);
        const Interval iv(a, a + len(rng));
        const FracOrder alpha(
            std::uniform_real_distribution<double>(0.1, 0.95)(rng));
        const double cp = (sign(rng) < 0.5 ? -1.0 : 1.0) * coeff(rng);
        const double cq = (sign(rng) < 0.5 ? -1.0 : 1.0) * coeff(rng);
        const PowerSum phi =
            PowerSum::monomial(iv, Anchor::Right, cp, expo(rng));
        const PowerSum psi =
            PowerSum::monomial(iv, Anchor::Left, cq, expo(rng));
        const PartsSides sides = parts_sides(phi, psi, alpha);
        const double scale = std::max(1.0, std::abs(sides.left_beta));
        track.absolute(std::abs(sides.left_beta - sides.right_beta) / scale,
                       1e-6);
        track.absolute(std::abs(sides.left_quad - sides.left_beta) / scale,
                       1e-6);
        track.absolute(std::abs(sides.right_quad - sides.right_beta) / scale,
                       1e-6);
    }
    return track.result("byparts_random");
}

void append_ops(std::vector<PropertyResult>& out) {
    run_property(out, "power_rule_integral", prop_power_rule_integral);
    run_property(out, "power_rule_derivative", prop_power_rule_derivative);
    run_property(out, "derivative_inverts_integral",
                 prop_derivative_inverts_integral);
    run_property(out, "integral_caputo_identity",
                 prop_integral_caputo_identity);
    run_property(out, "linearity", prop_linearity);
    run_property(out, "order_one_classical", prop_order_one_classical);
    run_property(out, "semigroup", prop_semigroup);
    run_property(out, "pole_annihilation", prop_pole_annihilation);
    run_property(out, "grid_matches_exact", prop_grid_matches_exact);
    run_property(out, "jacobi_exactness", prop_jacobi_exactness);
}

void append_lemma(std::vector<PropertyResult>& out) {
    run_property(out, "constant_multiplier_orthogonal",
                 prop_constant_multiplier_orthogonal);
    run_property(out, "witness_detects_nonconstant",
                 prop_witness_detects_nonconstant);
}

void append_byparts(std::vector<PropertyResult>& out) {
    run_property(out, "byparts_canonical", prop_byparts_canonical);
    run_property(out, "byparts_random", prop_byparts_random);
}

}  // namespace

std::vector<PropertyResult> run_suite(const std::string& suite) {
    std::vector<PropertyResult> out;
    if (suite == "ops") {
        append_ops(out);
    } else if (suite == "lemma") {
        append_lemma(out);
    } else if (suite == "byparts") {
        append_byparts(out);
    } else if (suite == "all") {
        append_ops(out);
        append_lemma(out);
        append_byparts(out);
    } else {
        throw DomainError("unknown suite '" + suite +
                          "' (expected ops, lemma, byparts, or all)");
    }
    return out;
}

}  // namespace fracvar
