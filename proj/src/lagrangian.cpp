#include "lagrangian.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

#include "errors.hpp"
#include "expr.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace fracvar {
namespace {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_real(std::string_view text, std::size_t base_offset) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        std::ostringstream msg;
        msg << "malformed number '" << text << "' at offset " << base_offset;
        throw ParseError(msg.str(), base_offset);
    }
    return value;
}

}  // namespace

Lagrangian Lagrangian::v_squared() {
    QuadraticForm qf;
    qf.c_vv = 1.0;
    auto eval = [](double, double, double v) { return v * v; };
    auto du = [](double, double, double) { return 0.0; };
    auto dv = [](double, double, double v) { return 2.0 * v; };
    return Lagrangian("v2", eval, du, dv, qf);
}

Lagrangian Lagrangian::quadratic(const QuadraticForm& qf) {
    const std::string key = "quadratic:" + format_real(qf.c_vv) + "," +
                            format_real(qf.c_uu) + "," + format_real(qf.c_u) +
                            "," + format_real(qf.c_v) + "," +
                            format_real(qf.c_0);
    auto eval = [qf](double, double u, double v) {
        return qf.c_vv * v * v + qf.c_uu * u * u + qf.c_u * u + qf.c_v * v +
               qf.c_0;
    };
    auto du = [qf](double, double u, double) {
        return 2.0 * qf.c_uu * u + qf.c_u;
    };
    auto dv = [qf](double, double, double v) {
        return 2.0 * qf.c_vv * v + qf.c_v;
    };
    return Lagrangian(key, eval, du, dv, qf);
}

Lagrangian Lagrangian::from_expression(const std::string& source) {
    const auto parsed =
        std::make_shared<expr::Expression>(expr::Expression::parse(source));
    auto eval = [parsed](double t, double u, double v) {
        return parsed->eval(t, u, v);
    };
    auto du = [parsed](double t, double u, double v) {
        const double h = 1e-6 * std::max(1.0, std::abs(u));
        return (parsed->eval(t, u + h, v) - parsed->eval(t, u - h, v)) /
               (2.0 * h);
    };
    auto dv = [parsed](double t, double u, double v) {
        const double h = 1e-6 * std::max(1.0, std::abs(v));
        return (parsed->eval(t, u, v + h) - parsed->eval(t, u, v - h)) /
               (2.0 * h);
    };
    return Lagrangian("expr:" + parsed->to_string(), eval, du, dv,
                      std::nullopt);
}

Lagrangian Lagrangian::rescaled(const Lagrangian& base, Interval iv,
                                double shift, double scale) {
    if (!(shift >= 0.0) || !(scale > 0.0)) {
        throw DomainError("rescaling needs shift >= 0 and scale > 0");
    }
    const double b = iv.b();
    auto factor = [b, shift, scale](double t) {
        return shift == 0.0 ? scale : scale * std::pow(b - t, shift);
    };
    auto base_eval = base.eval_;
    auto base_du = base.du_;
    auto base_dv = base.dv_;
    auto eval = [factor, base_eval](double t, double u, double v) {
        return factor(t) * base_eval(t, u, v);
    };
    auto du = [factor, base_du](double t, double u, double v) {
        return factor(t) * base_du(t, u, v);
    };
    auto dv = [factor, base_dv](double t, double u, double v) {
        return factor(t) * base_dv(t, u, v);
    };
    Lagrangian out("rescaled(" + base.key_ + ")", eval, du, dv, base.qf_);
    out.weight_shift_ = base.weight_shift_ + shift;
    out.scale_ = base.scale_ * scale;
    return out;
}

Lagrangian make_lagrangian(const std::string& key) {
    if (key == "v2") return Lagrangian::v_squared();
    constexpr std::string_view kQuadratic = "quadratic:";
    constexpr std::string_view kExpr = "expr:";
    if (key.starts_with(kQuadratic)) {
        std::string_view rest = std::string_view(key).substr(kQuadratic.size());
        double coeffs[5];
        std::size_t offset = kQuadratic.size();
        for (int i = 0; i < 5; ++i) {
            const std::size_t comma = rest.find(',');
            if ((i < 4) == (comma == std::string_view::npos)) {
                throw ParseError("quadratic key needs 5 comma-separated "
                                 "coefficients",
                                 offset);
            }
            const std::string_view piece =
                i < 4 ? rest.substr(0, comma) : rest;
            coeffs[i] = parse_real(piece, offset);
            if (i < 4) {
                rest = rest.substr(comma + 1);
                offset += comma + 1;
            }
        }
        return Lagrangian::quadratic(
            {coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]});
    }
    if (key.starts_with(kExpr)) {
        try {
            return Lagrangian::from_expression(key.substr(kExpr.size()));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), e.offset + kExpr.size());
        }
    }
    throw ParseError("unknown lagrangian key '" + key +
                         "' (expected v2, quadratic:..., or expr:...)",
                     0);
}

Trajectory Trajectory::from_power_sum(PowerSum y, FracOrder alpha) {
    if (y.anchor() == Anchor::Right) {
        auto flipped = try_reanchor(y);
        if (!flipped) {
            throw RepresentationError(
                "trajectory must be expressible in powers of the distance to "
                "the left endpoint");
        }
        y = std::move(*flipped);
    }
    PowerSum caputo = left_caputo_derivative(y, alpha);
    for (const Term& t : caputo.terms()) {
        if (t.exponent < -PowerSum::kExponentTol) {
            std::ostringstream msg;
            msg << "caputo derivative is unbounded at the left endpoint "
                   "(exponent "
                << t.exponent << "); the path leaves the admissible class";
            throw AdmissibilityError(msg.str());
        }
    }
    return Trajectory(std::move(y), std::move(caputo), alpha);
}

Trajectory Trajectory::from_grid(GridFn y, FracOrder alpha) {
    GridFn caputo = caputo_left_grid(y, alpha);
    return Trajectory(std::move(y), std::move(caputo), alpha);
}

const Interval& Trajectory::interval() const {
    return is_power_sum() ? std::get<PowerSum>(y_).interval()
                          : std::get<GridFn>(y_).interval();
}

bool Trajectory::is_power_sum() const {
    return std::holds_alternative<PowerSum>(y_);
}

const PowerSum& Trajectory::power_sum() const {
    if (!is_power_sum()) {
        throw RepresentationError("trajectory is grid-backed");
    }
    return std::get<PowerSum>(y_);
}

const PowerSum& Trajectory::caputo_power_sum() const {
    if (!is_power_sum()) {
        throw RepresentationError("trajectory is grid-backed");
    }
    return std::get<PowerSum>(caputo_);
}

const GridFn& Trajectory::grid() const {
    if (is_power_sum()) {
        throw RepresentationError("trajectory is exact, not grid-backed");
    }
    return std::get<GridFn>(y_);
}

const GridFn& Trajectory::caputo_grid() const {
    if (is_power_sum()) {
        throw RepresentationError("trajectory is exact, not grid-backed");
    }
    return std::get<GridFn>(caputo_);
}

double Trajectory::value_at(double t) const {
    return is_power_sum() ? std::get<PowerSum>(y_).eval(t)
                          : std::get<GridFn>(y_)(t);
}

double Trajectory::caputo_at(double t) const {
    return is_power_sum() ? std::get<PowerSum>(caputo_).eval(t)
                          : std::get<GridFn>(caputo_)(t);
}

void check_admissible(const VariationalProblem& prob, const Trajectory& y) {
    if (!(y.interval() == prob.interval)) {
        throw AdmissibilityError("trajectory interval does not match the "
                                 "problem interval");
    }
    if (y.order() != prob.alpha.value()) {
        std::ostringstream msg;
        msg << "trajectory order " << y.order() << " does not match problem "
            << "order " << prob.alpha.value();
        throw AdmissibilityError(msg.str());
    }
    const double at_a = y.value_at(prob.interval.a());
    const double at_b = y.value_at(prob.interval.b());
    const auto check_end = [](double got, double want, const char* side) {
        if (std::abs(got - want) > 1e-9 * std::max(1.0, std::abs(want))) {
            std::ostringstream msg;
            msg << side << " boundary value " << got << " does not match "
                << want;
            throw AdmissibilityError(msg.str());
        }
    };
    check_end(at_a, prob.y_a, "left");
    check_end(at_b, prob.y_b, "right");
}

namespace {

// Exact value of  integral_a^b (b-t)^w L(t, y, cD y) dt  for the quadratic
// family via the beta identity.
double quadratic_beta_value(const QuadraticForm& qf, const Trajectory& y,
                            double w) {
    const PowerSum& u = y.power_sum();
    const PowerSum& v = y.caputo_power_sum();
    const PowerSum one = PowerSum::constant(u.interval(), Anchor::Left, 1.0);
    double acc = 0.0;
    if (qf.c_vv != 0.0) acc += qf.c_vv * beta_product_integral(v, v, w);
    if (qf.c_uu != 0.0) acc += qf.c_uu * beta_product_integral(u, u, w);
    if (qf.c_u != 0.0) acc += qf.c_u * beta_product_integral(u, one, w);
    if (qf.c_v != 0.0) acc += qf.c_v * beta_product_integral(v, one, w);
    if (qf.c_0 != 0.0) acc += qf.c_0 * beta_product_integral(one, one, w);
    return acc;
}

}  // namespace

double evaluate_weighted(const VariationalProblem& prob, const Trajectory& y,
                         int quad_n) {
    check_admissible(prob, y);
    const Lagrangian& L = prob.lagrangian;
    const double a = prob.alpha.value();
    if (y.is_power_sum() && L.quadratic_form()) {
        return L.scale() *
               quadratic_beta_value(*L.quadratic_form(), y,
                                    a - 1.0 + L.weight_shift()) /
               gamma_fn(a);
    }
    auto f = [&](double t) {
        return L.eval(t, y.value_at(t), y.caputo_at(t));
    };
    return quad_n > 0 ? weighted_integral(f, prob.interval, prob.alpha, quad_n)
                      : weighted_integral_auto(f, prob.interval, prob.alpha);
}

double evaluate_unweighted(const VariationalProblem& prob, const Trajectory& y,
                           int quad_n) {
    check_admissible(prob, y);
    const Lagrangian& L = prob.lagrangian;
    if (y.is_power_sum() && L.quadratic_form()) {
        return L.scale() *
               quadratic_beta_value(*L.quadratic_form(), y, L.weight_shift());
    }
    auto f = [&](double t) {
        return L.eval(t, y.value_at(t), y.caputo_at(t));
    };
    if (quad_n > 0) return plain_integral(f, prob.interval, quad_n);
    double prev = plain_integral(f, prob.interval, 64);
    for (int n = 128; n <= 512; n *= 2) {
        const double cur = plain_integral(f, prob.interval, n);
        if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) {
            return cur;
        }
        prev = cur;
    }
    return prev;
}

double convexity_gap(const VariationalProblem& prob, const Trajectory& y,
                     const Trajectory& x, int quad_n) {
    const auto& qf = prob.lagrangian.quadratic_form();
    if (!qf || qf->c_uu != 0.0 || qf->c_u != 0.0 || qf->c_vv < 0.0) {
        throw DomainError(
            "the convexity certificate needs a quadratic integrand that is "
            "convex in v and free of u");
    }
    return evaluate_weighted(prob, x, quad_n) -
           evaluate_weighted(prob, y, quad_n);
}

PowerSum random_competitor(const VariationalProblem& prob,
                           std::mt19937_64& rng) {
    const double a = prob.alpha.value();
    const Interval& iv = prob.interval;
    const double len = iv.length();
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::vector<Term> terms{{prob.y_a, 0.0}};
    for (double e : {a, a + 1.0, a + 2.0, 1.0, 2.0}) {
        terms.push_back({coeff(rng) / std::pow(len, e), e});
    }
    PowerSum base(iv, Anchor::Left, std::move(terms));
    // A multiple of ((t-a)/len)^a repairs the right boundary value without
    // touching the left one.
    const double gap = prob.y_b - base.eval(iv.b());
    return base + PowerSum::monomial(iv, Anchor::Left, gap / std::pow(len, a),
                                     a);
}

}  // namespace fracvar
