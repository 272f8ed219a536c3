#include "panet/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace panet {

namespace {
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
}

double integrate_unit(const std::function<double(double)>& f, double abs_tol) {
  if (!(abs_tol > 0.0))
    throw std::invalid_argument("integrate_unit: tolerance must be positive");
  auto cubed = [&f](double s) {
    double t = s * s * s;
    return f(t) * 3.0 * s * s;
  };
  // The integrands here are bounded by O(1), so a relative target of
  // abs_tol/4 keeps the absolute error inside abs_tol with margin.
  return GK::integrate(cubed, 0.0, 1.0, 14, abs_tol / 4.0);
}

double log_integral_of_bump(const std::function<double(double)>& log_f,
                            double drop) {
  // The callers' integrands are strictly log-concave, so ternary search on
  // an expanded bracket finds the unique mode.
  double lo = -64.0, hi = 64.0;
  while (log_f(hi) > log_f(hi - 1.0) && hi < 1e6) hi *= 2.0;
  while (log_f(lo) > log_f(lo + 1.0) && lo > -1e6) lo *= 2.0;
  double a = lo, b = hi;
  for (int i = 0; i < 200 && (b - a) > 1e-12 * (1.0 + std::fabs(a)); ++i) {
    double m1 = a + (b - a) / 3.0;
    double m2 = b - (b - a) / 3.0;
    if (log_f(m1) < log_f(m2))
      a = m1;
    else
      b = m2;
  }
  double mode = 0.5 * (a + b);
  double peak = log_f(mode);
  double cutoff = peak + std::log(drop);

  auto expand = [&](double direction) {
    double step = 0.5, u = mode;
    while (log_f(u + direction * step) > cutoff && step < 1e6) {
      u += direction * step;
      step *= 1.5;
    }
    return u + direction * step;
  };
  double left = expand(-1.0);
  double right = expand(+1.0);

  auto shifted = [&](double u) { return std::exp(log_f(u) - peak); };
  double integral = GK::integrate(shifted, left, right, 12, 1e-11);
  return peak + std::log(integral);
}

}  // namespace panet
