#pragma once

namespace fracvar {

// Gamma function.  Throws DomainError at the poles (x = 0, -1, -2, ...).
double gamma_fn(double x);

// Natural log of Gamma for x > 0.  Throws DomainError otherwise.
double log_gamma(double x);

// Euler beta B(x, y) for x, y > 0, computed in log space so moderate
// arguments cannot overflow.
double beta_fn(double x, double y);

}  // namespace fracvar
