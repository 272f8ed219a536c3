#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "panet/degree_state.hpp"
#include "panet/grids.hpp"
#include "panet/model_params.hpp"
#include "panet/rng.hpp"

namespace panet {

//! Per-step history of a simulation: edge totals and node counts after each
//! step, plus full degree copies at any requested checkpoint steps.
struct SimTrace {
  std::vector<std::uint64_t> edge_totals;  // edge_totals[k] = T after step k+1
  std::vector<NodeId> node_counts;
  std::map<std::uint64_t,
           std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>>
      checkpoints;  // step -> (in_deg, out_deg) copies

  std::uint64_t steps() const { return edge_totals.size(); }
};

//! One edge of the sequential model. The in-target is drawn against the
//! pre-step weights, then a Bernoulli(p) coin decides between spawning a new
//! source node and drawing an existing source (also against pre-step
//! weights). Nothing is mutated until both draws are done.
void step_traditional(DegreeState& state, const ModelParams& params,
                      RngStream& rng);

//! Optional instrumentation for one batch of the batched model.
struct BatchLog {
  WeightSnapshot frozen;
  std::uint64_t batch_size = 0;
  struct Edge {
    NodeId source;
    NodeId target;
    bool spawned;
  };
  std::vector<Edge> edges;
};

//! One batch of the batched model: the batch size is 1 + Poisson(lambda) and
//! every edge in the batch samples against the weights frozen at the batch
//! boundary, so nodes and degree increments created mid-batch carry no weight
//! until the next batch. Returns the batch size.
std::uint64_t step_poisson(DegreeState& state, const ModelParams& params,
                           RngStream& rng, BatchLog* log = nullptr);

//! Runs n_steps sequential steps from the single-node self-loop start.
//! params.lambda is ignored. checkpoint_steps (ascending, optional) selects
//! steps after which full degree copies are stored in the trace.
DegreeState simulate_traditional(
    const ModelParams& params, std::uint64_t n_steps, std::uint64_t seed,
    SimTrace* trace = nullptr,
    const std::vector<std::uint64_t>& checkpoint_steps = {});

//! Runs n_steps batches. Throws std::invalid_argument if params.lambda is
//! not set.
DegreeState simulate_poisson(
    const ModelParams& params, std::uint64_t n_steps, std::uint64_t seed,
    SimTrace* trace = nullptr,
    const std::vector<std::uint64_t>& checkpoint_steps = {});

//! Empirical joint in/out-degree frequencies over 0..m_max x 0..l_max; mass
//! from nodes outside the box lands in `overflow`, so the grid total is 1.
PmfGrid joint_degree_counts(const DegreeState& state, std::size_t m_max,
                            std::size_t l_max);

}  // namespace panet
