#include "panet/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace panet {

double RngStream::u01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be >= 1");
  std::uint64_t x, r;
  do {
    x = engine_();
    r = x % n;
  } while (x - r > std::uint64_t(0) - n);  // reject the incomplete block
  return r;
}

bool RngStream::bernoulli(double prob) {
  if (prob < 0.0 || prob > 1.0)
    throw std::invalid_argument("bernoulli: probability outside [0, 1]");
  return u01() < prob;
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0))
    throw std::invalid_argument("exponential: rate must be positive");
  return -std::log1p(-u01()) / rate;
}

namespace {

std::uint64_t poisson_inversion(double mean, RngStream& rng) {
  double p = std::exp(-mean);
  double cdf = p;
  double u = rng.u01();
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (p < 1e-300 && k > mean) break;  // float underflow guard
  }
  return k;
}

// Hoermann's PTRS transformed-rejection sampler, exact for mean >= ~10.
std::uint64_t poisson_ptrs(double mean, RngStream& rng) {
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    double u = rng.u01() - 0.5;
    double v = rng.u01();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * log_mean - mean - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

}  // namespace

std::uint64_t RngStream::poisson(double mean) {
  if (!(mean > 0.0))
    throw std::invalid_argument("poisson: mean must be positive");
  if (mean < 30.0) return poisson_inversion(mean, *this);
  return poisson_ptrs(mean, *this);
}

std::uint64_t RngStream::derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace panet
