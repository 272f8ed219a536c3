#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace panet {

//! Hill estimator of the tail index from the k largest observations:
//! the reciprocal of the mean log-ratio against the (k+1)-th order statistic
//! (descending). Requires 1 <= k < number of positive entries; throws when
//! the top k+1 values are all equal (the estimate would be 1/0).
double hill_estimator(const std::vector<double>& values, std::size_t k);

//! Kolmogorov-Smirnov distance between the empirical tail of the k largest
//! ratios and the Pareto tail y^{-iota}, sup over y >= 1, evaluated at the
//! jump points from both sides.
double ks_distance(const std::vector<double>& values, std::size_t k,
                   double iota);

struct MinDistanceResult {
  std::size_t k = 0;
  double iota = 0.0;
  double distance = 1.0;
  std::size_t k_scanned = 0;  // how many candidate k were evaluated
};

//! Scans every usable k (1..#positive-1), returning the k minimizing the KS
//! distance under the Hill fit at that k; ties resolve to the smaller k.
//! Requires at least 3 positive distinct values.
MinDistanceResult min_distance_k(const std::vector<double>& values);

//! Node/edge ratio. Throws on zero edges or more nodes than edges.
double estimate_p(std::uint64_t nodes, std::uint64_t edges);

//! Converts a per-day rate to a per-active-hour rate; hours in 1..24.
double rescale_lambda(double lambda_daily, unsigned active_hours);

struct AngularSample {
  std::vector<double> theta;
  double threshold = 0.0;  // radial cut r
  double a = 1.0;          // exponent used on the in-degree
};

//! Peaks-over-threshold angular components theta = I^a / (I^a + O) of the
//! pairs whose radius R = I^a + O exceeds the nearest-rank `quantile` of R.
//! Pairs with I = O = 0 are dropped; 0^a = 0. quantile in (0, 1).
AngularSample angular_samples(
    const std::vector<std::pair<double, double>>& degree_pairs, double a,
    double quantile);

//! Silverman bandwidth 0.9 * min(sd, IQR/1.34) * n^{-1/5}; if the IQR is 0
//! (heavy ties) the sd is used alone. Throws when all samples are equal.
double silverman_bandwidth(const std::vector<double>& samples);

//! Gaussian kernel density on [0, 1] with reflection at both boundaries,
//! evaluated at `grid`. bandwidth empty selects Silverman's rule (needs >= 2
//! distinct samples); an explicit bandwidth accepts any non-empty sample.
std::vector<double> kde_reflected(const std::vector<double>& samples,
                                  const std::vector<double>& grid,
                                  std::optional<double> bandwidth = {});

//! Everything the degree-data fit needs as input. Degree lists may be empty
//! when only published tail indices are available; then iota_override must
//! be set and the k selectors are skipped.
struct FitSummary {
  std::uint64_t node_total = 0;
  std::uint64_t edge_total = 0;
  double lambda_daily = 0.0;
  unsigned active_hours = 24;
  unsigned n_days = 0;
  std::vector<double> in_degrees;
  std::vector<double> out_degrees;
  std::optional<std::pair<double, double>> iota_override;  // (in, out)
};

struct ParamEstimates {
  double lambda_daily = 0.0;
  double lambda_hourly = 0.0;
  double p_hat = 0.0;
  double delta_in_hat = 0.0;
  double delta_out_hat = 0.0;
  double iota_in_hat = 0.0;
  double iota_out_hat = 0.0;
  std::uint64_t n_steps = 0;
  std::size_t k_star_in = 0;   // 0 when the tail index was supplied
  std::size_t k_star_out = 0;
  std::vector<std::string> notes;
};

//! Full parameter-recovery pipeline: p from node/edge counts, tail indices
//! from the minimum-distance Hill fit (or the supplied override), offsets by
//! inverting the tail formulas, hourly rate by rescaling, and the step count
//! n_days * active_hours. Infeasible inversions propagate as errors.
ParamEstimates fit_pipeline(const FitSummary& summary);

}  // namespace panet
