#include "panet/degree_state.hpp"

#include <stdexcept>
#include <string>

namespace panet {

DegreeState::DegreeState()
    : node_count_(1),
      edge_total_(1),
      in_deg_{0, 1},
      out_deg_{0, 1},
      in_endpoints_{1},
      out_endpoints_{1} {}

void DegreeState::record_edge(NodeId source, NodeId target) {
  if (source == 0 || source > node_count_)
    throw std::out_of_range("record_edge: source id " +
                            std::to_string(source) + " not in 1.." +
                            std::to_string(node_count_));
  if (target == 0 || target > node_count_)
    throw std::out_of_range("record_edge: target id " +
                            std::to_string(target) + " not in 1.." +
                            std::to_string(node_count_));
  ++in_deg_[target];
  ++out_deg_[source];
  in_endpoints_.push_back(target);
  out_endpoints_.push_back(source);
  ++edge_total_;
}

NodeId DegreeState::spawn_node_with_edge(NodeId target) {
  if (target == 0 || target > node_count_)
    throw std::out_of_range("spawn_node_with_edge: target id " +
                            std::to_string(target) + " not in 1.." +
                            std::to_string(node_count_));
  ++node_count_;
  in_deg_.push_back(0);
  out_deg_.push_back(0);
  NodeId fresh = node_count_;
  record_edge(fresh, target);
  return fresh;
}

namespace {

// Shared mixture draw: an endpoint-array entry w.p. T / (T + delta V), a
// uniform node otherwise. Exactly the normalized (deg + delta) law.
NodeId mixture_draw(const std::vector<NodeId>& endpoints,
                    const WeightSnapshot& frozen, double delta,
                    RngStream& rng) {
  if (frozen.edge_total == 0 || frozen.node_count == 0)
    throw std::invalid_argument("degree sampler: empty snapshot");
  if (!(delta > 0.0))
    throw std::invalid_argument("degree sampler: offset must be > 0");
  double total = static_cast<double>(frozen.edge_total);
  double smoothing = delta * static_cast<double>(frozen.node_count);
  if (rng.u01() < total / (total + smoothing))
    return endpoints[rng.uniform_below(frozen.edge_total)];
  return static_cast<NodeId>(rng.uniform_below(frozen.node_count)) + 1;
}

std::vector<double> attachment_law(const std::vector<std::uint64_t>& degrees,
                                   NodeId node_count, std::uint64_t edge_total,
                                   double delta) {
  std::vector<double> law(node_count);
  double denom = static_cast<double>(edge_total) +
                 delta * static_cast<double>(node_count);
  for (NodeId v = 1; v <= node_count; ++v)
    law[v - 1] = (static_cast<double>(degrees[v]) + delta) / denom;
  return law;
}

}  // namespace

NodeId sample_in_target(const DegreeState& state, double delta_in,
                        RngStream& rng, const WeightSnapshot& frozen) {
  return mixture_draw(state.in_endpoints_, frozen, delta_in, rng);
}

NodeId sample_in_target(const DegreeState& state, double delta_in,
                        RngStream& rng) {
  return sample_in_target(state, delta_in, rng, state.snapshot());
}

NodeId sample_out_source(const DegreeState& state, double delta_out,
                         RngStream& rng, const WeightSnapshot& frozen) {
  return mixture_draw(state.out_endpoints_, frozen, delta_out, rng);
}

NodeId sample_out_source(const DegreeState& state, double delta_out,
                         RngStream& rng) {
  return sample_out_source(state, delta_out, rng, state.snapshot());
}

std::vector<double> in_attachment_law(const DegreeState& state,
                                      double delta_in) {
  return attachment_law(state.in_degrees(), state.node_count(),
                        state.edge_total(), delta_in);
}

std::vector<double> out_attachment_law(const DegreeState& state,
                                       double delta_out) {
  return attachment_law(state.out_degrees(), state.node_count(),
                        state.edge_total(), delta_out);
}

}  // namespace panet
