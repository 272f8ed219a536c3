#include "panet/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "panet/theory.hpp"

namespace panet {

namespace {

// Degree values sorted descending, with positives counted and logs cached.
struct TailView {
  std::vector<double> sorted;
  std::vector<double> logs;  // logs of the positive prefix
  std::size_t positive = 0;

  explicit TailView(std::vector<double> values) : sorted(std::move(values)) {
    for (double v : sorted)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(
            "tail estimators: values must be finite and non-negative");
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    while (positive < sorted.size() && sorted[positive] > 0.0) ++positive;
    logs.resize(positive);
    for (std::size_t i = 0; i < positive; ++i) logs[i] = std::log(sorted[i]);
  }
};

double hill_from_view(const TailView& view, std::size_t k,
                      double prefix_log_sum) {
  double log_pivot = view.logs[k];
  double sum = prefix_log_sum - static_cast<double>(k) * log_pivot;
  if (!(sum > 0.0))
    throw std::runtime_error(
        "hill_estimator: top k+1 values are all equal; estimate undefined");
  return static_cast<double>(k) / sum;
}

// Distinct values among the top k with multiplicities, descending. The KS
// sup is attained at the jump points of the empirical tail, checked from
// both sides.
double ks_from_distinct(const std::vector<std::pair<double, std::size_t>>&
                            distinct,  // (log value, count)
                        std::size_t k, double log_pivot, double iota) {
  double kd = static_cast<double>(k);
  double best = 0.0;
  std::size_t above = 0;  // ratios strictly greater than the current jump
  for (const auto& [log_v, count] : distinct) {
    double pareto = std::exp(-iota * (log_v - log_pivot));
    double right = std::fabs(static_cast<double>(above) / kd - pareto);
    double left =
        std::fabs(static_cast<double>(above + count) / kd - pareto);
    best = std::max({best, right, left});
    above += count;
  }
  return best;
}

std::vector<std::pair<double, std::size_t>> distinct_logs(
    const TailView& view, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> distinct;
  for (std::size_t i = 0; i < k; ++i) {
    if (!distinct.empty() && view.sorted[i] == view.sorted[i - 1])
      ++distinct.back().second;
    else
      distinct.emplace_back(view.logs[i], 1);
  }
  return distinct;
}

void check_k(const TailView& view, std::size_t k, const char* who) {
  if (k < 1 || k >= view.positive)
    throw std::invalid_argument(
        std::string(who) + ": k = " + std::to_string(k) +
        " outside 1..#positive-1 (" + std::to_string(view.positive) +
        " positive values)");
}

}  // namespace

double hill_estimator(const std::vector<double>& values, std::size_t k) {
  TailView view(values);
  check_k(view, k, "hill_estimator");
  double prefix = std::accumulate(view.logs.begin(), view.logs.begin() + k, 0.0);
  return hill_from_view(view, k, prefix);
}

double ks_distance(const std::vector<double>& values, std::size_t k,
                   double iota) {
  if (!(iota > 0.0))
    throw std::invalid_argument("ks_distance: iota must be positive");
  TailView view(values);
  check_k(view, k, "ks_distance");
  return ks_from_distinct(distinct_logs(view, k), k, view.logs[k], iota);
}

MinDistanceResult min_distance_k(const std::vector<double>& values) {
  TailView view(values);
  {
    std::size_t distinct_positive = 0;
    for (std::size_t i = 0; i < view.positive; ++i)
      if (i == 0 || view.sorted[i] != view.sorted[i - 1]) ++distinct_positive;
    if (distinct_positive < 3)
      throw std::invalid_argument(
          "min_distance_k: need at least 3 positive distinct values");
  }

  MinDistanceResult best;
  bool found = false;
  double prefix = 0.0;
  // Grown incrementally so the scan costs sum_k(#distinct in top k), not
  // k per candidate.
  std::vector<std::pair<double, std::size_t>> distinct;
  for (std::size_t k = 1; k < view.positive; ++k) {
    if (!distinct.empty() && view.sorted[k - 1] == view.sorted[k - 2])
      ++distinct.back().second;
    else
      distinct.emplace_back(view.logs[k - 1], 1);
    prefix += view.logs[k - 1];
    if (view.sorted[0] == view.sorted[k]) continue;  // Hill undefined here
    double iota = hill_from_view(view, k, prefix);
    double dist = ks_from_distinct(distinct, k, view.logs[k], iota);
    ++best.k_scanned;
    if (!found || dist < best.distance) {
      found = true;
      best.k = k;
      best.iota = iota;
      best.distance = dist;
    }
  }
  if (!found)
    throw std::runtime_error("min_distance_k: no k admits a Hill estimate");
  return best;
}

double estimate_p(std::uint64_t nodes, std::uint64_t edges) {
  if (edges == 0)
    throw std::invalid_argument("estimate_p: edge count is zero");
  if (nodes > edges)
    throw std::invalid_argument(
        "estimate_p: more nodes than edges (" + std::to_string(nodes) + " > " +
        std::to_string(edges) + "); every node needs an incident edge");
  return static_cast<double>(nodes) / static_cast<double>(edges);
}

double rescale_lambda(double lambda_daily, unsigned active_hours) {
  if (active_hours < 1 || active_hours > 24)
    throw std::invalid_argument("rescale_lambda: active_hours outside 1..24");
  if (!(lambda_daily >= 0.0))
    throw std::invalid_argument("rescale_lambda: negative daily rate");
  return lambda_daily / static_cast<double>(active_hours);
}

AngularSample angular_samples(
    const std::vector<std::pair<double, double>>& degree_pairs, double a,
    double quantile) {
  if (!(a > 0.0))
    throw std::invalid_argument("angular_samples: exponent a must be > 0");
  if (!(quantile > 0.0) || !(quantile < 1.0))
    throw std::invalid_argument("angular_samples: quantile outside (0, 1)");
  std::vector<double> theta, radius;
  theta.reserve(degree_pairs.size());
  radius.reserve(degree_pairs.size());
  for (const auto& [in, out] : degree_pairs) {
    if (!(in >= 0.0) || !(out >= 0.0))
      throw std::invalid_argument("angular_samples: negative degree");
    if (in == 0.0 && out == 0.0) continue;  // isolated rows carry no angle
    double powered = std::pow(in, a);       // 0^a = 0 by convention
    double r = powered + out;
    theta.push_back(powered / r);
    radius.push_back(r);
  }
  if (radius.empty())
    throw std::invalid_argument("angular_samples: no usable degree pairs");

  std::vector<double> sorted = radius;
  std::sort(sorted.begin(), sorted.end());
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(quantile * static_cast<double>(sorted.size())));
  double threshold = sorted[rank - 1];  // nearest-rank quantile

  AngularSample result;
  result.threshold = threshold;
  result.a = a;
  for (std::size_t i = 0; i < radius.size(); ++i)
    if (radius[i] > threshold) result.theta.push_back(theta[i]);
  return result;
}

namespace {

double quantile_type7(const std::vector<double>& sorted, double q) {
  double pos = q * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(const std::vector<double>& samples) {
  if (samples.size() < 2)
    throw std::invalid_argument(
        "silverman_bandwidth: need at least 2 samples");
  double n = static_cast<double>(samples.size());
  double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  double sd = std::sqrt(ss / (n - 1.0));
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  double iqr = quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25);
  double sigma = std::min(sd, iqr / 1.34);
  if (sigma == 0.0) sigma = sd;  // heavy ties: fall back to the sd
  if (!(sigma > 0.0))
    throw std::invalid_argument(
        "silverman_bandwidth: degenerate sample (all values equal)");
  return 0.9 * sigma * std::pow(n, -0.2);
}

std::vector<double> kde_reflected(const std::vector<double>& samples,
                                  const std::vector<double>& grid,
                                  std::optional<double> bandwidth) {
  if (samples.empty())
    throw std::invalid_argument("kde_reflected: empty sample");
  for (double s : samples)
    if (!(s >= 0.0) || !(s <= 1.0))
      throw std::invalid_argument("kde_reflected: samples must lie in [0,1]");
  double h = bandwidth ? *bandwidth : silverman_bandwidth(samples);
  if (!(h > 0.0))
    throw std::invalid_argument("kde_reflected: bandwidth must be positive");

  const double norm =
      1.0 / (h * std::sqrt(2.0 * M_PI) * static_cast<double>(samples.size()));
  std::vector<double> density(grid.size(), 0.0);
  auto kernel = [&](double z) { return std::exp(-0.5 * z * z / (h * h)); };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double x = grid[i];
    double acc = 0.0;
    for (double s : samples)
      // Mass leaking past 0 and 1 is folded back, so the density still
      // integrates to 1 on [0, 1].
      acc += kernel(x - s) + kernel(x + s) + kernel(2.0 - x - s);
    density[i] = acc * norm;
  }
  return density;
}

ParamEstimates fit_pipeline(const FitSummary& summary) {
  ParamEstimates est;
  est.p_hat = estimate_p(summary.node_total, summary.edge_total);
  est.lambda_daily = summary.lambda_daily;
  est.lambda_hourly = rescale_lambda(summary.lambda_daily,
                                     summary.active_hours);
  est.n_steps = static_cast<std::uint64_t>(summary.n_days) *
                summary.active_hours;

  if (summary.iota_override) {
    est.iota_in_hat = summary.iota_override->first;
    est.iota_out_hat = summary.iota_override->second;
    est.notes.push_back("tail indices supplied externally (no k-selection)");
  } else {
    if (summary.in_degrees.empty() || summary.out_degrees.empty())
      throw std::invalid_argument(
          "fit_pipeline: need degree lists or an explicit tail-index pair");
    MinDistanceResult in_fit = min_distance_k(summary.in_degrees);
    MinDistanceResult out_fit = min_distance_k(summary.out_degrees);
    est.iota_in_hat = in_fit.iota;
    est.iota_out_hat = out_fit.iota;
    est.k_star_in = in_fit.k;
    est.k_star_out = out_fit.k;
    est.notes.push_back(
        "tail indices from minimum-distance Hill fit, k* = (" +
        std::to_string(in_fit.k) + ", " + std::to_string(out_fit.k) + ")");
  }

  ModelParams inverted = delta_from_tail(
      est.p_hat, TailExponents{est.iota_in_hat, est.iota_out_hat});
  est.delta_in_hat = inverted.delta_in;
  est.delta_out_hat = inverted.delta_out;
  est.notes.push_back("p_hat = " + std::to_string(summary.node_total) + "/" +
                      std::to_string(summary.edge_total));
  return est;
}

}  // namespace panet
