#pragma once

#include <functional>

namespace panet {

//! Adaptive Gauss-Kronrod integral of f over [0, 1] to the given absolute
//! error target. Applies the substitution t = s^3 first, which flattens the
//! t^a (0 < a < 1) endpoint behaviour of the limit-pmf integrands.
double integrate_unit(const std::function<double(double)>& f, double abs_tol);

//! Integral of exp(log_f(u)) over the whole real line for a unimodal log_f
//! (a log-space bump). Locates the mode, expands until the integrand falls
//! below `drop` times the maximum, and integrates on that bracket. Returns
//! the log of the integral, so very large or tiny bumps stay representable.
double log_integral_of_bump(const std::function<double(double)>& log_f,
                            double drop = 1e-14);

}  // namespace panet
