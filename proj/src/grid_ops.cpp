#include "grid_ops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace fracvar {

GridFn::GridFn(Interval iv, std::vector<double> values)
    : interval_(iv), values_(std::move(values)) {
    if (values_.size() < 3) {
        throw DomainError("grid needs at least 2 cells");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw DomainError("grid value must be finite");
    }
}

GridFn GridFn::sample(Interval iv, int cells,
                      const std::function<double(double)>& f) {
    if (cells < 2) throw DomainError("grid needs at least 2 cells");
    std::vector<double> values(cells + 1);
    const double h = iv.length() / cells;
    for (int i = 0; i <= cells; ++i) {
        const double t = (i == cells) ? iv.b() : iv.a() + h * i;
        values[i] = f(t);
    }
    return GridFn(iv, std::move(values));
}

double GridFn::operator()(double t) const {
    const double slack =
        1e-12 * std::max({1.0, std::abs(interval_.a()), std::abs(interval_.b())});
    if (t < interval_.a() - slack || t > interval_.b() + slack) {
        std::ostringstream msg;
        msg << "interpolation point " << t << " outside [" << interval_.a()
            << ", " << interval_.b() << "]";
        throw DomainError(msg.str());
    }
    const double h = step();
    const double u = (t - interval_.a()) / h;
    const int i = std::clamp(static_cast<int>(std::floor(u)), 0, cells() - 1);
    const double frac = u - i;
    return values_[i] + (values_[i + 1] - values_[i]) * frac;
}

GridFn caputo_left_grid(const GridFn& y, FracOrder alpha) {
    const int n = y.cells();
    const double h = y.step();
    std::vector<double> out(n + 1, 0.0);
    if (alpha.is_one()) {
        out[0] = (y.values()[1] - y.values()[0]) / h;
        for (int i = 1; i < n; ++i) {
            out[i] = (y.values()[i + 1] - y.values()[i - 1]) / (2.0 * h);
        }
        out[n] = (y.values()[n] - y.values()[n - 1]) / h;
        return GridFn(y.interval(), std::move(out));
    }
    const double a = alpha.value();
    std::vector<double> kernel(n + 1);
    for (int k = 0; k <= n; ++k) {
        kernel[k] = std::pow(static_cast<double>(k), 1.0 - a);
    }
    const double scale = std::pow(h, -a) / gamma_fn(2.0 - a);
    // Node 0 keeps the scheme's limit value 0: the derivative of a function
    // that is merely continuous at the anchor starts from zero memory.
    for (int i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < i; ++j) {
            acc += (y.values()[j + 1] - y.values()[j]) *
                   (kernel[i - j] - kernel[i - j - 1]);
        }
        out[i] = scale * acc;
    }
    return GridFn(y.interval(), std::move(out));
}

GridFn rl_left_integral_grid(const GridFn& y, FracOrder alpha) {
    const int n = y.cells();
    const double h = y.step();
    const double a = alpha.value();
    std::vector<double> pow_a(n + 1), pow_a1(n + 1);
    for (int k = 0; k <= n; ++k) {
        pow_a[k] = std::pow(static_cast<double>(k), a);
        pow_a1[k] = std::pow(static_cast<double>(k), a + 1.0);
    }
    const double scale = std::pow(h, a) / gamma_fn(a + 2.0);
    std::vector<double> out(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        // Product integration of the piecewise-linear interpolant, exact for
        // that interpolant; coefficients are second differences of k^(a+1).
        double acc = (pow_a1[i - 1] - (i - a - 1.0) * pow_a[i]) * y.values()[0];
        for (int j = 1; j < i; ++j) {
            const int k = i - j;
            acc += (pow_a1[k + 1] - 2.0 * pow_a1[k] + pow_a1[k - 1]) *
                   y.values()[j];
        }
        acc += y.values()[i];
        out[i] = scale * acc;
    }
    return GridFn(y.interval(), std::move(out));
}

GridFn rl_right_integral_grid(const GridFn& y, FracOrder alpha) {
    std::vector<double> reversed(y.values().rbegin(), y.values().rend());
    const GridFn mirrored =
        rl_left_integral_grid(GridFn(y.interval(), std::move(reversed)), alpha);
    std::vector<double> out(mirrored.values().rbegin(), mirrored.values().rend());
    return GridFn(y.interval(), std::move(out));
}

double kernel_transform(const GridFn& h, FracOrder alpha, double t, int n) {
    const Interval& iv = h.interval();
    const double slack =
        1e-12 * std::max({1.0, std::abs(iv.a()), std::abs(iv.b())});
    if (t < iv.a() - slack || t > iv.b() + slack) {
        std::ostringstream msg;
        msg << "transform point " << t << " outside [" << iv.a() << ", "
            << iv.b() << "]";
        throw DomainError(msg.str());
    }
    const double rem = iv.b() - t;
    if (rem <= slack) return 0.0;
    const double a = alpha.value();
    const JacobiRule rule = build_jacobi_rule(n, a - 1.0, a - 1.0);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = t + rem * (1.0 + rule.nodes[i]) / 2.0;
        acc += rule.weights[i] * h(s);
    }
    // (b-t)^(1-a) times the mapped integral collapses to (b-t)^a up to the
    // half-length power from the substitution.
    return acc * std::pow(rem, a) / (std::pow(2.0, 2.0 * a - 1.0) * gamma_fn(a));
}

}  // namespace fracvar
