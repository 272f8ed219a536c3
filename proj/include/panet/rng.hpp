#pragma once

#include <cstdint>
#include <random>

namespace panet {

//! Deterministic random stream used by every sampling routine in the library.
//!
//! Wraps std::mt19937_64 (whose output sequence is pinned by the standard) and
//! implements the few distributions we need directly, so that a given seed
//! produces the same draw sequence on every platform and standard library.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  //! Uniform double in [0, 1) with 53 random bits.
  double u01();

  //! Uniform integer in [0, n). Requires n >= 1; unbiased (rejection).
  std::uint64_t uniform_below(std::uint64_t n);

  //! Bernoulli draw, P(true) = prob (prob in [0, 1]).
  bool bernoulli(double prob);

  //! Exponential with the given rate (> 0).
  double exponential(double rate);

  //! Poisson draw; sequential inversion for small means, PTRS transformed
  //! rejection for mean >= 30. Requires mean > 0.
  std::uint64_t poisson(double mean);

  //! Derives an independent child seed for replication `index` of a run.
  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace panet
