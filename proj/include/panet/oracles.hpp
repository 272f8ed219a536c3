#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "panet/model_params.hpp"
#include "panet/rng.hpp"
#include "panet/sim.hpp"

namespace panet {

//! Exact distribution over end states of the sequential model after a few
//! steps. A state is the full labeled degree sequence ((I_1,O_1),...),
//! which identifies the graph up to edge multiplicity placement.
using DegreeSequence = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

struct ExactDistribution {
  std::map<DegreeSequence, double> probability;
  double total() const;
};

//! Dynamic-programming enumeration of the sequential model. Intended for
//! cross-checking simulators; n_steps above `max_steps` (default 4) throws
//! because the state space explodes.
ExactDistribution enumerate_traditional(const ModelParams& params,
                                        unsigned n_steps,
                                        unsigned max_steps = 4);

//! Continuous-time competing-clock run of the birth-immigration embedding
//! whose jump skeleton reproduces the sequential model's degrees: the first
//! in-process immigrates at rate 1 + delta_in (plus the initial unit), later
//! ones at delta_in; out-processes all at 1 + delta_out, jumping only on
//! steps that do not spawn a node.
struct EmbeddingResult {
  std::vector<std::uint64_t> in_deg;   // 1-based, [0] unused
  std::vector<std::uint64_t> out_deg;
  std::vector<double> in_gaps;         // waiting time before each in-jump
  std::vector<double> in_rates;        // total rate active during that gap
};

EmbeddingResult simulate_bi_embedding(const ModelParams& params,
                                      std::uint64_t n_steps,
                                      std::uint64_t seed);

//! Growth diagnostics for the batched model: cumulative products that track
//! the expected degree growth of early nodes, and the slope of log-product
//! against log-step fitted by least squares over the second half. The slopes
//! approach 1/(1+delta_in p) and (1-p)/(1+delta_out p). Traces shorter than
//! 100 steps throw.
struct GrowthDiagnostic {
  std::vector<double> log_in_product;   // index k = after k+1 factors
  std::vector<double> log_out_product;
  double slope_in = 0.0;
  double slope_out = 0.0;
};

GrowthDiagnostic growth_product(const SimTrace& trace,
                                const ModelParams& params);

}  // namespace panet
