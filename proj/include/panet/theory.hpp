#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "panet/grids.hpp"
#include "panet/model_params.hpp"

namespace panet {

//! pmf of the negative binomial with shape delta > 0 and success parameter
//! q in (0, 1]: Gamma(delta+k)/(Gamma(delta) k!) * q^delta (1-q)^k. q = 1 is
//! the point mass at 0. Computed through lgamma so large shapes stay finite.
double nb_pmf(double delta, double q, std::uint64_t k);

//! P(NB(delta, q) > k), via the regularized incomplete beta function.
double nb_sf(double delta, double q, std::uint64_t k);

//! Limiting joint pmf of (in-degree, out-degree) of a uniformly chosen node:
//! a mixture of an NB(delta_in, .) count and 1 + NB(1+delta_out, .) count
//! driven by a shared uniform mixing variable, integrated adaptively to
//! absolute error <= 1e-9. l must be >= 1 (out-degrees are never 0).
double joint_limit_pmf(const ModelParams& params, std::uint64_t m,
                       std::uint64_t l);

//! Marginal limit pmfs (m >= 0, l >= 1).
double marginal_in_pmf(const ModelParams& params, std::uint64_t m);
double marginal_out_pmf(const ModelParams& params, std::uint64_t l);

//! joint_limit_pmf tabulated over the box 0..m_max x 0..l_max (the l = 0
//! column is identically zero); overflow holds 1 minus the box mass.
PmfGrid joint_limit_grid(const ModelParams& params, std::size_t m_max,
                         std::size_t l_max);

//! Mass the limit law puts on the box 0..m_max x 1..l_max, computed as one
//! quadrature of the product of NB distribution functions.
double joint_limit_box_mass(const ModelParams& params, std::size_t m_max,
                            std::size_t l_max);

struct TailExponents {
  double iota_in = 0.0;
  double iota_out = 0.0;
};

//! Power-law indices of the marginal tails: iota_in = 1 + delta_in * p and
//! iota_out = (1 + delta_out * p) / (1 - p). Requires p in (0, 1).
TailExponents tail_exponents(const ModelParams& params);

//! Inverts tail_exponents for given p. Throws std::invalid_argument when the
//! implied offset is not strictly positive, naming the offending value.
ModelParams delta_from_tail(double p, const TailExponents& tails);

//! Constants c with marginal pmf ~ c * m^{-(1+iota)}; used to test the
//! far-tail behaviour of the quadratures.
double in_tail_prefactor(const ModelParams& params);
double out_tail_prefactor(const ModelParams& params);

//! Limiting angular density of (I^a, O) on the unit simplex, a = iota_in /
//! iota_out, evaluated on `grid` (every point strictly inside (0,1)) and
//! normalized so its trapezoid integral over the grid is 1. The inner
//! integral over the radial variable is done in log space with the integrand
//! truncated below 1e-14 of its running maximum.
AngularGrid angular_density(const ModelParams& params,
                            const std::vector<double>& grid);

//! Convenience: n points (i + 0.5) / n, strictly inside (0, 1).
std::vector<double> interior_grid(std::size_t n);

}  // namespace panet
