#include "panet/theory.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "panet/quadrature.hpp"

namespace panet {

double nb_pmf(double delta, double q, std::uint64_t k) {
  if (!(delta > 0.0))
    throw std::invalid_argument("nb_pmf: shape must be > 0");
  if (!(q > 0.0) || q > 1.0)
    throw std::invalid_argument("nb_pmf: q must be in (0, 1]");
  if (q == 1.0) return k == 0 ? 1.0 : 0.0;
  double kd = static_cast<double>(k);
  return std::exp(std::lgamma(delta + kd) - std::lgamma(delta) -
                  std::lgamma(kd + 1.0) + delta * std::log(q) +
                  kd * std::log1p(-q));
}

double nb_sf(double delta, double q, std::uint64_t k) {
  if (!(delta > 0.0))
    throw std::invalid_argument("nb_sf: shape must be > 0");
  if (!(q > 0.0) || q > 1.0)
    throw std::invalid_argument("nb_sf: q must be in (0, 1]");
  if (q == 1.0) return 0.0;
  return boost::math::ibeta(static_cast<double>(k + 1), delta, 1.0 - q);
}

namespace {

constexpr double kPmfAbsTol = 1e-10;  // inside the 1e-9 contract with margin

double in_mix_exponent(const ModelParams& params) {
  return 1.0 / (1.0 + params.delta_in * params.p);
}

double out_mix_exponent(const ModelParams& params) {
  return (1.0 - params.p) / (1.0 + params.delta_out * params.p);
}

}  // namespace

double joint_limit_pmf(const ModelParams& params, std::uint64_t m,
                       std::uint64_t l) {
  params.validate();
  if (l == 0)
    throw std::invalid_argument(
        "joint_limit_pmf: out-degree is always >= 1; l = 0 is outside the "
        "support");
  double ein = in_mix_exponent(params);
  double eout = out_mix_exponent(params);
  return integrate_unit(
      [&](double t) {
        if (t <= 0.0) return 0.0;
        return nb_pmf(params.delta_in, std::pow(t, ein), m) *
               nb_pmf(1.0 + params.delta_out, std::pow(t, eout), l - 1);
      },
      kPmfAbsTol);
}

double marginal_in_pmf(const ModelParams& params, std::uint64_t m) {
  params.validate();
  double ein = in_mix_exponent(params);
  return integrate_unit(
      [&](double t) {
        if (t <= 0.0) return 0.0;
        return nb_pmf(params.delta_in, std::pow(t, ein), m);
      },
      kPmfAbsTol);
}

double marginal_out_pmf(const ModelParams& params, std::uint64_t l) {
  params.validate();
  if (l == 0)
    throw std::invalid_argument(
        "marginal_out_pmf: out-degree is always >= 1; l = 0 is outside the "
        "support");
  double eout = out_mix_exponent(params);
  return integrate_unit(
      [&](double t) {
        if (t <= 0.0) return 0.0;
        return nb_pmf(1.0 + params.delta_out, std::pow(t, eout), l - 1);
      },
      kPmfAbsTol);
}

PmfGrid joint_limit_grid(const ModelParams& params, std::size_t m_max,
                         std::size_t l_max) {
  PmfGrid grid = PmfGrid::zeros(m_max, l_max);
  double mass = 0.0;
  for (std::size_t m = 0; m <= m_max; ++m)
    for (std::size_t l = 1; l <= l_max; ++l) {
      double v = joint_limit_pmf(params, m, l);
      grid.at(m, l) = v;
      mass += v;
    }
  grid.overflow = std::max(0.0, 1.0 - mass);
  return grid;
}

double joint_limit_box_mass(const ModelParams& params, std::size_t m_max,
                            std::size_t l_max) {
  params.validate();
  if (l_max == 0) return 0.0;
  double ein = in_mix_exponent(params);
  double eout = out_mix_exponent(params);
  return integrate_unit(
      [&](double t) {
        if (t <= 0.0) return 0.0;
        double cdf_in = 1.0 - nb_sf(params.delta_in, std::pow(t, ein), m_max);
        double cdf_out = 1.0 - nb_sf(1.0 + params.delta_out,
                                     std::pow(t, eout), l_max - 1);
        return cdf_in * cdf_out;
      },
      kPmfAbsTol);
}

TailExponents tail_exponents(const ModelParams& params) {
  params.validate();
  if (params.p >= 1.0)
    throw std::invalid_argument(
        "tail_exponents: p = 1 leaves no out-tail (every source is new)");
  return {1.0 + params.delta_in * params.p,
          (1.0 + params.delta_out * params.p) / (1.0 - params.p)};
}

ModelParams delta_from_tail(double p, const TailExponents& tails) {
  if (!(p > 0.0) || p >= 1.0)
    throw std::invalid_argument("delta_from_tail: p must be in (0, 1)");
  double delta_in = (tails.iota_in - 1.0) / p;
  if (!(delta_in > 0.0))
    throw std::invalid_argument(
        "delta_from_tail: iota_in = " + std::to_string(tails.iota_in) +
        " implies delta_in = " + std::to_string(delta_in) +
        ", not strictly positive");
  double delta_out = (tails.iota_out * (1.0 - p) - 1.0) / p;
  if (!(delta_out > 0.0))
    throw std::invalid_argument(
        "delta_from_tail: iota_out = " + std::to_string(tails.iota_out) +
        " implies delta_out = " + std::to_string(delta_out) +
        ", not strictly positive");
  ModelParams params;
  params.p = p;
  params.delta_in = delta_in;
  params.delta_out = delta_out;
  return params;
}

double in_tail_prefactor(const ModelParams& params) {
  double iota = 1.0 + params.delta_in * params.p;
  return iota * std::exp(std::lgamma(params.delta_in + iota) -
                         std::lgamma(params.delta_in));
}

double out_tail_prefactor(const ModelParams& params) {
  double iota = tail_exponents(params).iota_out;
  return iota * std::exp(std::lgamma(1.0 + params.delta_out + iota) -
                         std::lgamma(1.0 + params.delta_out));
}

AngularGrid angular_density(const ModelParams& params,
                            const std::vector<double>& grid) {
  params.validate();
  if (grid.size() < 2)
    throw std::invalid_argument("angular_density: need at least two points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !(grid[i] < 1.0))
      throw std::invalid_argument(
          "angular_density: grid must lie strictly inside (0, 1)");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument(
          "angular_density: grid must be strictly increasing");
  }
  TailExponents tails = tail_exponents(params);
  double a = tails.iota_in / tails.iota_out;
  double radial_exp =
      a - 1.0 + tails.iota_in + params.delta_in + a * params.delta_out;

  std::vector<double> log_density(grid.size());
  double log_prefactor = std::log(params.p / params.delta_out);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double theta = grid[i];
    double in_scale = std::pow(theta, 1.0 / a);
    double out_scale = 1.0 - theta;
    double log_inner = log_integral_of_bump([&](double u) {
      // t^radial_exp * exp(-t*in_scale - t^a*out_scale) dt, with t = e^u.
      return (radial_exp + 1.0) * u - in_scale * std::exp(u) -
             out_scale * std::exp(a * u);
    });
    log_density[i] = log_prefactor +
                     (params.delta_in / a - 1.0) * std::log(theta) +
                     params.delta_out * std::log1p(-theta) + log_inner;
  }

  double peak = *std::max_element(log_density.begin(), log_density.end());
  AngularGrid out;
  out.theta = grid;
  out.density.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.density[i] = std::exp(log_density[i] - peak);
  double trapezoid = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    trapezoid += 0.5 * (grid[i] - grid[i - 1]) *
                 (out.density[i] + out.density[i - 1]);
  if (!(trapezoid > 0.0))
    throw std::runtime_error("angular_density: degenerate density");
  for (double& d : out.density) d /= trapezoid;
  out.normalization = trapezoid * std::exp(peak);
  return out;
}

std::vector<double> interior_grid(std::size_t n) {
  if (n == 0) throw std::invalid_argument("interior_grid: n must be >= 1");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return g;
}

}  // namespace panet
