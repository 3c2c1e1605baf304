#pragma once

#include <optional>
#include <span>
#include <vector>

namespace fracvar {

// Fractional order restricted to (0, 1].  Order 1 recovers the classical
// derivative and integral.
class FracOrder {
public:
    explicit FracOrder(double alpha);
    double value() const { return alpha_; }
    bool is_one() const;

private:
    double alpha_;
};

class Interval {
public:
    Interval(double a, double b);  // requires finite a < b
    double a() const { return a_; }
    double b() const { return b_; }
    double length() const { return b_ - a_; }
    bool operator==(const Interval&) const = default;

private:
    double a_;
    double b_;
};

// Which endpoint the powers are measured from: Left terms are
// coeff * (t - a)^exponent, Right terms are coeff * (b - t)^exponent.
enum class Anchor { Left, Right };

struct Term {
    double coeff;
    double exponent;
};

// Finite sum of real powers of the distance to one endpoint, the exact
// representation on which the fractional operators act in closed form.
//
// Canonical form: exponents strictly greater than -1, sorted ascending,
// distinct up to kExponentTol, no zero coefficients.  Construction
// canonicalizes whatever it is given.
class PowerSum {
public:
    static constexpr double kExponentTol = 1e-12;

    PowerSum(Interval iv, Anchor anchor, std::vector<Term> terms);
    static PowerSum zero(Interval iv, Anchor anchor);
    static PowerSum constant(Interval iv, Anchor anchor, double c);
    static PowerSum monomial(Interval iv, Anchor anchor, double coeff,
                             double exponent);

    const Interval& interval() const { return interval_; }
    Anchor anchor() const { return anchor_; }
    std::span<const Term> terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Coefficient of the term whose exponent matches within tol, else 0.
    double coefficient(double exponent, double tol = 1e-9) const;

    // Pointwise value.  Throws DomainError outside [a, b] and
    // EvaluationError at an endpoint where a negative exponent blows up.
    double eval(double t) const;

    // Largest |coeff * length^exponent| over the terms, a scale for
    // relative comparisons.
    double magnitude() const;

    PowerSum operator+(const PowerSum& rhs) const;
    PowerSum operator-(const PowerSum& rhs) const;
    PowerSum scaled(double factor) const;

private:
    Interval interval_;
    Anchor anchor_;
    std::vector<Term> terms_;
};

// Riemann-Liouville integral of order alpha from the anchor endpoint.
// Input must be anchored on the matching side; use try_reanchor first
// otherwise.
PowerSum left_frac_integral(const PowerSum& p, FracOrder alpha);
PowerSum right_frac_integral(const PowerSum& p, FracOrder alpha);

// Riemann-Liouville derivative.  Terms whose exponent sits on the Gamma
// pole (exponent == alpha - 1 within kExponentTol) are annihilated
// exactly; a term whose image would fall outside the representable class
// raises RepresentationError.
PowerSum left_rl_derivative(const PowerSum& p, FracOrder alpha);
PowerSum right_rl_derivative(const PowerSum& p, FracOrder alpha);

// Caputo derivative: subtract the value at the anchor, then the RL
// derivative.  Requires all exponents >= 0 so that value to exist.
PowerSum left_caputo_derivative(const PowerSum& p, FracOrder alpha);
PowerSum right_caputo_derivative(const PowerSum& p, FracOrder alpha);

// Rewrite in powers of the opposite endpoint distance.  Possible exactly
// when every exponent is a nonnegative integer (within tol); returns
// nullopt otherwise.
std::optional<PowerSum> try_reanchor(const PowerSum& p, double tol = 1e-12);

// Exact value of  integral_a^b (b-t)^weight_exp * p(t) * q(t) dt  through
// the beta identity.  p and q may be anchored on either side (they must
// share the interval).  Throws DomainError if any term pair makes the
// integral divergent.
double beta_product_integral(const PowerSum& p, const PowerSum& q,
                             double weight_exp);

// (1/Gamma(alpha)) * beta_product_integral(p, q, weight_exp).
double weighted_inner_product(const PowerSum& p, const PowerSum& q,
                              double weight_exp, FracOrder alpha);

}  // namespace fracvar
