#pragma once

#include <cstdint>
#include <vector>

namespace panet {

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

//! Pearson chi-square of observed counts against expected probabilities.
//! Cells with expected count below `min_expected` are pooled into their
//! neighbour so the asymptotic p-value (upper gamma tail) stays valid.
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& expected_probs,
                               double min_expected = 5.0);

struct KsTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

//! Two-sample Kolmogorov-Smirnov test (asymptotic p-value, ties allowed;
//! with ties the p-value is conservative).
KsTestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

//! Asymptotic Kolmogorov survival function Q(t) = 2 sum (-1)^{j-1} e^{-2 j^2 t^2}.
double kolmogorov_sf(double t);

//! Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace panet
