#include "quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "errors.hpp"
#include "special_functions.hpp"

namespace fracvar {
namespace {

// Symmetric tridiagonal QL with implicit shifts.  d is the diagonal, e the
// subdiagonal (e[i] couples d[i] and d[i+1], e[n-1] ignored), z a vector
// rotated along; on return d holds ascending eigenvalues and z the first
// eigenvector components.  Extended precision keeps the node and weight
// error a safe margin under the certification tolerances.
void ql_implicit(std::vector<long double>& d, std::vector<long double>& e,
                 std::vector<long double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    const long double prec = std::numeric_limits<long double>::epsilon();
    e[n - 1] = 0.0L;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m < n - 1 &&
                   std::abs(e[m]) > prec * (std::abs(d[m]) + std::abs(d[m + 1]))) {
                ++m;
            }
            if (m == l) break;
            if (++iter > 30) {
                throw DomainError("quadrature eigen iteration failed to converge");
            }
            long double p = d[l];
            long double g = (d[l + 1] - p) / (2.0L * e[l]);
            long double r = std::sqrt(g * g + 1.0L);
            g = d[m] - p + e[l] / (g + std::copysign(r, g));
            long double s = 1.0L;
            long double c = 1.0L;
            p = 0.0L;
            for (int i = m - 1; i >= l; --i) {
                long double f = s * e[i];
                const long double b = c * e[i];
                if (std::abs(g) <= std::abs(f)) {
                    c = g / f;
                    r = std::sqrt(c * c + 1.0L);
                    e[i + 1] = f * r;
                    s = 1.0L / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = std::sqrt(s * s + 1.0L);
                    e[i + 1] = g * r;
                    c = 1.0L / r;
                    s *= c;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0L * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0L;
        }
    }
    for (int i = 1; i < n; ++i) {
        for (int j = i; j > 0 && d[j - 1] > d[j]; --j) {
            std::swap(d[j - 1], d[j]);
            std::swap(z[j - 1], z[j]);
        }
    }
}

double map_node(const Interval& iv, double x) {
    return iv.a() + iv.length() * (1.0 + x) / 2.0;
}

double sample_checked(const std::function<double(double)>& f, double t) {
    const double value = f(t);
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "integrand not finite at t = " << t;
        throw EvaluationError(msg.str(), t);
    }
    return value;
}

}  // namespace

JacobiRule build_jacobi_rule(int n, double exp_right, double exp_left) {
    if (n < 1 || n > 4096) {
        std::ostringstream msg;
        msg << "rule size must lie in [1, 4096], got " << n;
        throw DomainError(msg.str());
    }
    if (!(exp_right > -1.0) || !(exp_left > -1.0)) {
        std::ostringstream msg;
        msg << "jacobi exponents must exceed -1, got (" << exp_right << ", "
            << exp_left << ")";
        throw DomainError(msg.str());
    }
    const long double ga = exp_right;
    const long double de = exp_left;
    const long double ab = ga + de;
    // Zeroth moment of the weight over (-1, 1).
    const long double zemu =
        std::pow(2.0L, ab + 1.0L) *
        static_cast<long double>(beta_fn(exp_right + 1.0, exp_left + 1.0));
    std::vector<long double> diag(n), sub(n), z(n, 0.0L);
    {
        const long double abi = 2.0L + ab;
        diag[0] = (de - ga) / abi;
        sub[0] = std::sqrt(4.0L * (1.0L + ga) * (1.0L + de) /
                           ((abi + 1.0L) * abi * abi));
    }
    const long double a2b2 = (de - ga) * (de + ga);
    for (int i = 2; i <= n; ++i) {
        long double abi = 2.0L * i + ab;
        diag[i - 1] = a2b2 / ((abi - 2.0L) * abi);
        abi *= abi;
        sub[i - 1] = std::sqrt(4.0L * i * (i + ga) * (i + de) * (i + ab) /
                               ((abi - 1.0L) * abi));
    }
    z[0] = std::sqrt(zemu);
    ql_implicit(diag, sub, z);
    JacobiRule rule{n, exp_right, exp_left, {}, {}};
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes.push_back(static_cast<double>(diag[i]));
        rule.weights.push_back(static_cast<double>(z[i] * z[i]));
    }
    return rule;
}

double weighted_integral(const std::function<double(double)>& f, Interval iv,
                         FracOrder alpha, int n) {
    const JacobiRule rule = build_jacobi_rule(n, alpha.value() - 1.0, 0.0);
    const double half = iv.length() / 2.0;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += rule.weights[i] * sample_checked(f, map_node(iv, rule.nodes[i]));
    }
    return acc * std::pow(half, alpha.value()) / gamma_fn(alpha.value());
}

double weighted_integral_auto(const std::function<double(double)>& f,
                              Interval iv, FracOrder alpha) {
    double prev = weighted_integral(f, iv, alpha, 64);
    for (int n = 128; n <= 512; n *= 2) {
        const double cur = weighted_integral(f, iv, alpha, n);
        if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) {
            return cur;
        }
        prev = cur;
    }
    return prev;
}

double plain_integral(const std::function<double(double)>& f, Interval iv,
                      int n) {
    const JacobiRule rule = build_jacobi_rule(n, 0.0, 0.0);
    const double half = iv.length() / 2.0;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += rule.weights[i] * sample_checked(f, map_node(iv, rule.nodes[i]));
    }
    return acc * half;
}

double weighted_inner_product_quadrature(const PowerSum& p, const PowerSum& q,
                                         double weight_exp, FracOrder alpha,
                                         int n) {
    if (!(p.interval() == q.interval())) {
        throw DomainError("power sums live on different intervals");
    }
    const double half = p.interval().length() / 2.0;
    std::map<std::pair<double, double>, JacobiRule> rules;
    double total = 0.0;
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
            // Fractional exponent parts ride in the Jacobi weight; the
            // integer parts stay in the integrand as a polynomial the rule
            // integrates exactly.
            const double ml = std::max(0.0, std::floor(left_exp));
            const double mr = std::max(0.0, std::floor(right_exp));
            const double frac_l = left_exp - ml;
            const double frac_r = right_exp - mr;
            auto [it, inserted] =
                rules.try_emplace({frac_r, frac_l}, JacobiRule{});
            if (inserted) it->second = build_jacobi_rule(n, frac_r, frac_l);
            const JacobiRule& rule = it->second;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += rule.weights[i] * std::pow(1.0 - rule.nodes[i], mr) *
                       std::pow(1.0 + rule.nodes[i], ml);
            }
            total += tp.coeff * tq.coeff *
                     std::pow(half, left_exp + right_exp + 1.0) * acc;
        }
    }
    return total / gamma_fn(alpha.value());
}

}  // namespace fracvar
