#pragma once

#include <cstdint>
#include <vector>

#include "panet/rng.hpp"

namespace panet {

using NodeId = std::uint32_t;

//! Frozen totals used to sample against the graph as it looked at some
//! earlier moment (a batch boundary). Because the endpoint arrays only ever
//! grow at the tail, the prefixes of length `edge_total` reproduce the degree
//! weights of that moment exactly.
struct WeightSnapshot {
  std::uint64_t edge_total = 0;
  NodeId node_count = 0;
};

//! Degree bookkeeping for a growing multigraph, designed so that linear
//! preferential attachment can be sampled in O(1) without any weight tree.
//!
//! Node ids are dense and 1-based. The graph always starts as Node 1 with a
//! self-loop, so in/out degree sums both equal edge_total at all times.
//! in_endpoints[e] / out_endpoints[e] record the target / source of the e-th
//! edge; a node's multiplicity in those arrays is exactly its degree.
class DegreeState {
 public:
  DegreeState();

  NodeId node_count() const { return node_count_; }
  std::uint64_t edge_total() const { return edge_total_; }
  std::uint64_t in_degree(NodeId v) const { return in_deg_[v]; }
  std::uint64_t out_degree(NodeId v) const { return out_deg_[v]; }
  const std::vector<std::uint64_t>& in_degrees() const { return in_deg_; }
  const std::vector<std::uint64_t>& out_degrees() const { return out_deg_; }
  const std::vector<NodeId>& in_endpoints() const { return in_endpoints_; }
  const std::vector<NodeId>& out_endpoints() const { return out_endpoints_; }

  WeightSnapshot snapshot() const { return {edge_total_, node_count_}; }

  //! Adds the edge source -> target, updating degrees, totals and endpoint
  //! arrays. Throws std::out_of_range if either id is 0 or > node_count().
  void record_edge(NodeId source, NodeId target);

  //! Creates node node_count()+1 and records the edge new_node -> target.
  //! Returns the new id. Throws std::out_of_range on a bad target.
  NodeId spawn_node_with_edge(NodeId target);

 private:
  friend NodeId sample_in_target(const DegreeState&, double, RngStream&,
                                 const WeightSnapshot&);
  friend NodeId sample_out_source(const DegreeState&, double, RngStream&,
                                  const WeightSnapshot&);

  NodeId node_count_;
  std::uint64_t edge_total_;
  std::vector<std::uint64_t> in_deg_;   // 1-based; [0] unused
  std::vector<std::uint64_t> out_deg_;  // 1-based; [0] unused
  std::vector<NodeId> in_endpoints_;
  std::vector<NodeId> out_endpoints_;
};

//! Samples a node with probability (I_v + delta_in) / (T + delta_in * V)
//! where T and V are taken from `frozen`. The mixture trick: with probability
//! T / (T + delta_in V) pick a uniform entry of the in-endpoint prefix,
//! otherwise a uniform node id in 1..V. Exact, O(1).
NodeId sample_in_target(const DegreeState& state, double delta_in,
                        RngStream& rng, const WeightSnapshot& frozen);

//! Convenience overload sampling against the live totals.
NodeId sample_in_target(const DegreeState& state, double delta_in,
                        RngStream& rng);

//! Same mixture scheme for (O_w + delta_out) / (T + delta_out * V).
NodeId sample_out_source(const DegreeState& state, double delta_out,
                         RngStream& rng, const WeightSnapshot& frozen);
NodeId sample_out_source(const DegreeState& state, double delta_out,
                         RngStream& rng);

//! The exact law the in-sampler follows: element v-1 is the probability of
//! node v. Useful for chi-square checks and the small exact tests.
std::vector<double> in_attachment_law(const DegreeState& state,
                                      double delta_in);
std::vector<double> out_attachment_law(const DegreeState& state,
                                       double delta_out);

}  // namespace panet
