#include "power_sum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "special_functions.hpp"

namespace fracvar {

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 1.0) {
        std::ostringstream msg;
        msg << "fractional order must lie in (0, 1], got " << alpha;
        throw DomainError(msg.str());
    }
}

bool FracOrder::is_one() const { return alpha_ == 1.0; }

Interval::Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        std::ostringstream msg;
        msg << "invalid interval [" << a << ", " << b << "]";
        throw DomainError(msg.str());
    }
}

PowerSum::PowerSum(Interval iv, Anchor anchor, std::vector<Term> terms)
    : interval_(iv), anchor_(anchor), terms_(std::move(terms)) {
    for (const Term& t : terms_) {
        if (!std::isfinite(t.coeff) || !std::isfinite(t.exponent)) {
            throw DomainError("power sum term must be finite");
        }
        if (!(t.exponent > -1.0)) {
            std::ostringstream msg;
            msg << "power sum exponent must exceed -1, got " << t.exponent;
            throw DomainError(msg.str());
        }
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.exponent < y.exponent; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const Term& t : terms_) {
        if (!merged.empty() &&
            t.exponent - merged.back().exponent <= kExponentTol) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0.0; });
    terms_ = std::move(merged);
}

PowerSum PowerSum::zero(Interval iv, Anchor anchor) {
    return PowerSum(iv, anchor, {});
}

PowerSum PowerSum::constant(Interval iv, Anchor anchor, double c) {
    return PowerSum(iv, anchor, {{c, 0.0}});
}

PowerSum PowerSum::monomial(Interval iv, Anchor anchor, double coeff,
                            double exponent) {
    return PowerSum(iv, anchor, {{coeff, exponent}});
}

double PowerSum::coefficient(double exponent, double tol) const {
    for (const Term& t : terms_) {
        if (std::abs(t.exponent - exponent) <= tol) return t.coeff;
    }
    return 0.0;
}

double PowerSum::eval(double t) const {
    const double slack =
        1e-12 * std::max({1.0, std::abs(interval_.a()), std::abs(interval_.b())});
    if (t < interval_.a() - slack || t > interval_.b() + slack) {
        std::ostringstream msg;
        msg << "evaluation point " << t << " outside [" << interval_.a() << ", "
            << interval_.b() << "]";
        throw DomainError(msg.str());
    }
    double base = anchor_ == Anchor::Left ? t - interval_.a() : interval_.b() - t;
    if (base <= 0.0) {
        double value = 0.0;
        for (const Term& term : terms_) {
            if (term.exponent < -kExponentTol) {
                std::ostringstream msg;
                msg << "singular endpoint value: exponent " << term.exponent
                    << " at t = " << t;
                throw EvaluationError(msg.str(), t);
            }
            if (std::abs(term.exponent) <= kExponentTol) value += term.coeff;
        }
        return value;
    }
    double value = 0.0;
    for (const Term& term : terms_) {
        value += term.coeff * std::pow(base, term.exponent);
    }
    return value;
}

double PowerSum::magnitude() const {
    double m = 0.0;
    for (const Term& t : terms_) {
        m = std::max(m, std::abs(t.coeff) *
                            std::pow(interval_.length(), t.exponent));
    }
    return m;
}

namespace {

void require_compatible(const PowerSum& p, const PowerSum& q) {
    if (!(p.interval() == q.interval())) {
        throw DomainError("power sums live on different intervals");
    }
    if (p.anchor() != q.anchor()) {
        throw DomainError("power sums have different anchors; reanchor first");
    }
}

void require_anchor(const PowerSum& p, Anchor expected, const char* op) {
    if (p.anchor() != expected) {
        std::ostringstream msg;
        msg << op << " needs a sum anchored at the "
            << (expected == Anchor::Left ? "left" : "right")
            << " endpoint; use try_reanchor first";
        throw RepresentationError(msg.str());
    }
}

PowerSum frac_integral_impl(const PowerSum& p, FracOrder alpha) {
    std::vector<Term> out;
    out.reserve(p.terms().size());
    for (const Term& t : p.terms()) {
        const double ratio =
            gamma_fn(t.exponent + 1.0) / gamma_fn(t.exponent + 1.0 + alpha.value());
        out.push_back({t.coeff * ratio, t.exponent + alpha.value()});
    }
    return PowerSum(p.interval(), p.anchor(), std::move(out));
}

PowerSum rl_derivative_impl(const PowerSum& p, FracOrder alpha) {
    std::vector<Term> out;
    out.reserve(p.terms().size());
    for (const Term& t : p.terms()) {
        // Gamma pole: the image coefficient 1/Gamma(e + 1 - alpha) vanishes
        // identically when e = alpha - 1.  Detected by an explicit exponent
        // test, not by floating-point overflow.
        if (std::abs(t.exponent - (alpha.value() - 1.0)) <= PowerSum::kExponentTol) {
            continue;
        }
        const double out_exp = t.exponent - alpha.value();
        if (!(out_exp > -1.0)) {
            std::ostringstream msg;
            msg << "derivative of exponent " << t.exponent << " at order "
                << alpha.value() << " leaves the representable class (image exponent "
                << out_exp << ")";
            throw RepresentationError(msg.str());
        }
        const double ratio =
            gamma_fn(t.exponent + 1.0) / gamma_fn(t.exponent + 1.0 - alpha.value());
        out.push_back({t.coeff * ratio, out_exp});
    }
    return PowerSum(p.interval(), p.anchor(), std::move(out));
}

PowerSum caputo_impl(const PowerSum& p, FracOrder alpha) {
    std::vector<Term> shifted;
    shifted.reserve(p.terms().size());
    for (const Term& t : p.terms()) {
        if (t.exponent < -PowerSum::kExponentTol) {
            std::ostringstream msg;
            msg << "caputo derivative needs a finite anchor value; exponent "
                << t.exponent << " is singular there";
            throw DomainError(msg.str());
        }
        // Dropping the exponent-0 term subtracts the anchor value.
        if (std::abs(t.exponent) <= PowerSum::kExponentTol) continue;
        shifted.push_back(t);
    }
    return rl_derivative_impl(PowerSum(p.interval(), p.anchor(), std::move(shifted)),
                              alpha);
}

}  // namespace

PowerSum PowerSum::operator+(const PowerSum& rhs) const {
    require_compatible(*this, rhs);
    std::vector<Term> all(terms_.begin(), terms_.end());
    all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
    return PowerSum(interval_, anchor_, std::move(all));
}

PowerSum PowerSum::operator-(const PowerSum& rhs) const {
    return *this + rhs.scaled(-1.0);
}

PowerSum PowerSum::scaled(double factor) const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    for (Term& t : out) t.coeff *= factor;
    return PowerSum(interval_, anchor_, std::move(out));
}

PowerSum left_frac_integral(const PowerSum& p, FracOrder alpha) {
    require_anchor(p, Anchor::Left, "left integral");
    return frac_integral_impl(p, alpha);
}

PowerSum right_frac_integral(const PowerSum& p, FracOrder alpha) {
    require_anchor(p, Anchor::Right, "right integral");
    return frac_integral_impl(p, alpha);
}

PowerSum left_rl_derivative(const PowerSum& p, FracOrder alpha) {
    require_anchor(p, Anchor::Left, "left derivative");
    return rl_derivative_impl(p, alpha);
}

PowerSum right_rl_derivative(const PowerSum& p, FracOrder alpha) {
    require_anchor(p, Anchor::Right, "right derivative");
    return rl_derivative_impl(p, alpha);
}

PowerSum left_caputo_derivative(const PowerSum& p, FracOrder alpha) {
    require_anchor(p, Anchor::Left, "left caputo derivative");
    return caputo_impl(p, alpha);
}

PowerSum right_caputo_derivative(const PowerSum& p, FracOrder alpha) {
    require_anchor(p, Anchor::Right, "right caputo derivative");
    return caputo_impl(p, alpha);
}

std::optional<PowerSum> try_reanchor(const PowerSum& p, double tol) {
    const double len = p.interval().length();
    std::vector<Term> out;
    for (const Term& t : p.terms()) {
        const double rounded = std::round(t.exponent);
        if (rounded < 0.0 || std::abs(t.exponent - rounded) > tol) {
            return std::nullopt;
        }
        const int m = static_cast<int>(rounded);
        // (d)^m = (len - d')^m expanded binomially, d' the opposite distance.
        double binom = 1.0;
        for (int k = 0; k <= m; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            out.push_back({t.coeff * sign * binom * std::pow(len, m - k),
                           static_cast<double>(k)});
            binom = binom * (m - k) / (k + 1.0);
        }
    }
    const Anchor flipped =
        p.anchor() == Anchor::Left ? Anchor::Right : Anchor::Left;
    return PowerSum(p.interval(), flipped, std::move(out));
}

double beta_product_integral(const PowerSum& p, const PowerSum& q,
                             double weight_exp) {
    if (!(p.interval() == q.interval())) {
        throw DomainError("power sums live on different intervals");
    }
    const double len = p.interval().length();
    double value = 0.0;
    for (const Term& tp : p.terms()) {
        for (const Term& tq : q.terms()) {
            double left_exp = 0.0;
            double right_exp = weight_exp;
            (p.anchor() == Anchor::Left ? left_exp : right_exp) += tp.exponent;
            (q.anchor() == Anchor::Left ? left_exp : right_exp) += tq.exponent;
            if (left_exp <= -1.0 + PowerSum::kExponentTol ||
                right_exp <= -1.0 + PowerSum::kExponentTol) {
                std::ostringstream msg;
                msg << "divergent product integral: combined exponents ("
                    << left_exp << ", " << right_exp << ")";
                throw DomainError(msg.str());
            }
            value += tp.coeff * tq.coeff *
                     std::pow(len, left_exp + right_exp + 1.0) *
                     beta_fn(left_exp + 1.0, right_exp + 1.0);
        }
    }
    return value;
}

double weighted_inner_product(const PowerSum& p, const PowerSum& q,
                              double weight_exp, FracOrder alpha) {
    return beta_product_integral(p, q, weight_exp) / gamma_fn(alpha.value());
}

}  // namespace fracvar
