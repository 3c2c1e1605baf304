#pragma once

#include <functional>
#include <span>
#include <vector>

#include "power_sum.hpp"

namespace fracvar {

// Samples of a continuous function on a uniform grid over an interval,
// with piecewise-linear evaluation between nodes.
class GridFn {
public:
    // values.size() must be cells + 1 with cells >= 2; all values finite.
    GridFn(Interval iv, std::vector<double> values);
    static GridFn sample(Interval iv, int cells,
                         const std::function<double(double)>& f);

    const Interval& interval() const { return interval_; }
    int cells() const { return static_cast<int>(values_.size()) - 1; }
    double step() const { return interval_.length() / cells(); }
    double node(int i) const { return interval_.a() + step() * i; }
    std::span<const double> values() const { return values_; }
    double front() const { return values_.front(); }
    double back() const { return values_.back(); }

    // Piecewise-linear interpolation; throws DomainError outside [a, b].
    double operator()(double t) const;

private:
    Interval interval_;
    std::vector<double> values_;
};

// Caputo derivative of order alpha on the grid by the L1 scheme: the
// integrand's derivative is taken piecewise-constant per cell.  Node 0
// carries the scheme's one-sided limit value 0 for alpha < 1.  Order 1
// falls back to central differences (one-sided at the ends).
GridFn caputo_left_grid(const GridFn& y, FracOrder alpha);

// Riemann-Liouville integral from the left endpoint by product
// integration of the piecewise-linear interpolant, which it treats
// exactly.  The right-endpoint mirror reverses, applies, reverses.
GridFn rl_left_integral_grid(const GridFn& y, FracOrder alpha);
GridFn rl_right_integral_grid(const GridFn& y, FracOrder alpha);

// The map  t -> (b-t)^(1-alpha) * I_right^alpha [ (b-s)^(alpha-1) h(s) ](t)
// evaluated by an n-point Gauss-Jacobi rule on [t, b] with both weight
// exponents alpha - 1; h is read through the grid interpolant.  Continuous
// up to t = b where the value is 0.
double kernel_transform(const GridFn& h, FracOrder alpha, double t, int n);

}  // namespace fracvar
