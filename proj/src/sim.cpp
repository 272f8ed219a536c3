#include "panet/sim.hpp"

#include <stdexcept>

namespace panet {

void step_traditional(DegreeState& state, const ModelParams& params,
                      RngStream& rng) {
  // Both draws look at the pre-step weights; the state mutates only after.
  NodeId target = sample_in_target(state, params.delta_in, rng);
  if (rng.bernoulli(params.p)) {
    state.spawn_node_with_edge(target);
  } else {
    NodeId source = sample_out_source(state, params.delta_out, rng);
    state.record_edge(source, target);
  }
}

std::uint64_t step_poisson(DegreeState& state, const ModelParams& params,
                           RngStream& rng, BatchLog* log) {
  if (!params.lambda)
    throw std::invalid_argument("step_poisson: params.lambda is required");
  std::uint64_t batch = 1 + rng.poisson(*params.lambda);
  // Every edge in the batch samples against the boundary snapshot, so
  // mid-batch nodes and degree increments stay weightless until next batch.
  WeightSnapshot frozen = state.snapshot();
  if (log) {
    log->frozen = frozen;
    log->batch_size = batch;
    log->edges.clear();
  }
  for (std::uint64_t e = 0; e < batch; ++e) {
    bool spawn = rng.bernoulli(params.p);
    NodeId target = sample_in_target(state, params.delta_in, rng, frozen);
    NodeId source;
    if (spawn) {
      source = state.spawn_node_with_edge(target);
    } else {
      source = sample_out_source(state, params.delta_out, rng, frozen);
      state.record_edge(source, target);
    }
    if (log) log->edges.push_back({source, target, spawn});
  }
  return batch;
}

namespace {

template <typename StepFn>
DegreeState run_simulation(const ModelParams& params, std::uint64_t n_steps,
                           std::uint64_t seed, SimTrace* trace,
                           const std::vector<std::uint64_t>& checkpoint_steps,
                           StepFn&& step) {
  params.validate();
  DegreeState state;
  RngStream rng(seed);
  if (trace) {
    trace->edge_totals.reserve(n_steps);
    trace->node_counts.reserve(n_steps);
  }
  std::size_t next_checkpoint = 0;
  for (std::uint64_t k = 1; k <= n_steps; ++k) {
    step(state, rng);
    if (trace) {
      trace->edge_totals.push_back(state.edge_total());
      trace->node_counts.push_back(state.node_count());
      while (next_checkpoint < checkpoint_steps.size() &&
             checkpoint_steps[next_checkpoint] == k) {
        trace->checkpoints.emplace(
            k, std::make_pair(state.in_degrees(), state.out_degrees()));
        ++next_checkpoint;
      }
    }
  }
  return state;
}

}  // namespace

DegreeState simulate_traditional(
    const ModelParams& params, std::uint64_t n_steps, std::uint64_t seed,
    SimTrace* trace, const std::vector<std::uint64_t>& checkpoint_steps) {
  return run_simulation(params, n_steps, seed, trace, checkpoint_steps,
                        [&params](DegreeState& s, RngStream& rng) {
                          step_traditional(s, params, rng);
                        });
}

DegreeState simulate_poisson(
    const ModelParams& params, std::uint64_t n_steps, std::uint64_t seed,
    SimTrace* trace, const std::vector<std::uint64_t>& checkpoint_steps) {
  if (!params.lambda)
    throw std::invalid_argument("simulate_poisson: params.lambda is required");
  return run_simulation(params, n_steps, seed, trace, checkpoint_steps,
                        [&params](DegreeState& s, RngStream& rng) {
                          step_poisson(s, params, rng);
                        });
}

PmfGrid joint_degree_counts(const DegreeState& state, std::size_t m_max,
                            std::size_t l_max) {
  PmfGrid grid = PmfGrid::zeros(m_max, l_max);
  double weight = 1.0 / static_cast<double>(state.node_count());
  for (NodeId v = 1; v <= state.node_count(); ++v) {
    std::uint64_t m = state.in_degree(v);
    std::uint64_t l = state.out_degree(v);
    if (m <= m_max && l <= l_max)
      grid.at(m, l) += weight;
    else
      grid.overflow += weight;
  }
  return grid;
}

}  // namespace panet
