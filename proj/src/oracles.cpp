#include "panet/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "panet/stat_tests.hpp"

namespace panet {

double ExactDistribution::total() const {
  double sum = 0.0;
  for (const auto& [state, prob] : probability) sum += prob;
  return sum;
}

ExactDistribution enumerate_traditional(const ModelParams& params,
                                        unsigned n_steps,
                                        unsigned max_steps) {
  params.validate();
  if (n_steps > max_steps)
    throw std::invalid_argument(
        "enumerate_traditional: the labeled state space explodes; refusing " +
        std::to_string(n_steps) + " steps (cap " + std::to_string(max_steps) +
        ")");

  ExactDistribution current;
  current.probability[{{1, 1}}] = 1.0;
  for (unsigned step = 0; step < n_steps; ++step) {
    double edge_total = static_cast<double>(step + 1);
    ExactDistribution next;
    for (const auto& [state, prob] : current.probability) {
      double v_count = static_cast<double>(state.size());
      double in_denom = edge_total + params.delta_in * v_count;
      double out_denom = edge_total + params.delta_out * v_count;
      for (std::size_t v = 0; v < state.size(); ++v) {
        double p_in =
            (static_cast<double>(state[v].first) + params.delta_in) / in_denom;
        // Spawn branch: new node appended with degrees (0, 1).
        DegreeSequence spawned = state;
        ++spawned[v].first;
        spawned.emplace_back(0, 1);
        next.probability[spawned] += prob * params.p * p_in;
        // Existing-source branch, over every possible source w.
        if (params.p < 1.0) {
          for (std::size_t w = 0; w < state.size(); ++w) {
            double p_out =
                (static_cast<double>(state[w].second) + params.delta_out) /
                out_denom;
            DegreeSequence grown = state;
            ++grown[v].first;
            ++grown[w].second;
            next.probability[grown] +=
                prob * (1.0 - params.p) * p_in * p_out;
          }
        }
      }
    }
    current = std::move(next);
  }
  return current;
}

EmbeddingResult simulate_bi_embedding(const ModelParams& params,
                                      std::uint64_t n_steps,
                                      std::uint64_t seed) {
  params.validate();
  RngStream rng(seed);

  // Immigration parameters: the first in-process carries 1 + delta_in (its
  // unit comes from the initial self-loop), later ones delta_in. Every
  // out-process carries 1 + delta_out. Populations all start at 0.
  std::vector<double> in_weight{1.0 + params.delta_in};
  std::vector<double> out_weight{1.0 + params.delta_out};
  std::vector<std::uint64_t> in_pop{0};
  std::vector<std::uint64_t> out_pop{0};

  EmbeddingResult result;
  result.in_gaps.reserve(n_steps);
  result.in_rates.reserve(n_steps);

  auto draw_index = [&rng](const std::vector<double>& weights, double total) {
    double u = rng.u01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.size() - 1;  // float dust
  };

  double in_total = in_weight[0];
  double out_total = out_weight[0];
  for (std::uint64_t k = 1; k <= n_steps; ++k) {
    // In-side jump: competing exponential clocks, one per process, rate =
    // population + immigration parameter.
    result.in_gaps.push_back(rng.exponential(in_total));
    result.in_rates.push_back(in_total);
    std::size_t jumper = draw_index(in_weight, in_total);
    ++in_pop[jumper];
    in_weight[jumper] += 1.0;
    in_total += 1.0;

    if (rng.bernoulli(params.p)) {
      // A node is born: fresh processes on both sides, no out-jump now.
      in_weight.push_back(params.delta_in);
      in_pop.push_back(0);
      in_total += params.delta_in;
      out_weight.push_back(1.0 + params.delta_out);
      out_pop.push_back(0);
      out_total += 1.0 + params.delta_out;
    } else {
      std::size_t source = draw_index(out_weight, out_total);
      ++out_pop[source];
      out_weight[source] += 1.0;
      out_total += 1.0;
    }
  }

  result.in_deg.assign(in_pop.size() + 1, 0);
  result.out_deg.assign(out_pop.size() + 1, 0);
  for (std::size_t v = 0; v < in_pop.size(); ++v) {
    result.in_deg[v + 1] = in_pop[v] + (v == 0 ? 1 : 0);
    result.out_deg[v + 1] = out_pop[v] + 1;
  }
  return result;
}

GrowthDiagnostic growth_product(const SimTrace& trace,
                                const ModelParams& params) {
  params.validate();
  if (!params.lambda)
    throw std::invalid_argument("growth_product: params.lambda is required");
  if (trace.steps() < 100)
    throw std::invalid_argument(
        "growth_product: trace too short (< 100 steps) for a slope fit");

  double boost = *params.lambda + 1.0;
  GrowthDiagnostic diag;
  diag.log_in_product.reserve(trace.steps());
  diag.log_out_product.reserve(trace.steps());
  double log_in = 0.0, log_out = 0.0;
  for (std::uint64_t k = 0; k < trace.steps(); ++k) {
    // Factor k uses the state after k steps; k = 0 is the seed loop.
    double m_k = k == 0 ? 0.0 : static_cast<double>(trace.edge_totals[k - 1] - 1);
    double v_k = k == 0 ? 1.0 : static_cast<double>(trace.node_counts[k - 1]);
    log_in += std::log1p(boost / (m_k + 1.0 + params.delta_in * v_k));
    log_out += std::log1p(boost * (1.0 - params.p) /
                          (m_k + 1.0 + params.delta_out * v_k));
    diag.log_in_product.push_back(log_in);
    diag.log_out_product.push_back(log_out);
  }

  std::vector<double> log_n, in_tail, out_tail;
  for (std::uint64_t n = trace.steps() / 2; n <= trace.steps(); ++n) {
    log_n.push_back(std::log(static_cast<double>(n)));
    in_tail.push_back(diag.log_in_product[n - 1]);
    out_tail.push_back(diag.log_out_product[n - 1]);
  }
  diag.slope_in = ls_slope(log_n, in_tail);
  diag.slope_out = ls_slope(log_n, out_tail);
  return diag;
}

}  // namespace panet
