// Acceptance gate: twelve end-to-end checks, one pass/fail line each.
// Tolerances are pinned here on purpose; loosening them is a release
// decision, not a test tweak.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "panet/estimators.hpp"
#include "panet/io.hpp"
#include "panet/oracles.hpp"
#include "panet/rng.hpp"
#include "panet/sim.hpp"
#include "panet/stat_tests.hpp"
#include "panet/theory.hpp"

using namespace panet;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ModelParams make_params(double p, double din, double dout,
                        double lambda = -1.0) {
  ModelParams params;
  params.p = p;
  params.delta_in = din;
  params.delta_out = dout;
  if (lambda >= 0.0) params.lambda = lambda;
  return params;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool near(double x, double target, double tol) {
  return std::fabs(x - target) <= tol;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---- criterion 1: closed-form quadrature values ------------------------

Outcome criterion_quadrature() {
  auto start = Clock::now();
  double joint = joint_limit_pmf(make_params(0.2, 1, 1), 0, 1);
  double marginal = marginal_in_pmf(make_params(0.5, 1, 1), 0);
  double elapsed = seconds_since(start);
  bool ok = near(joint, 6.0 / 19.0, 1e-8) && near(marginal, 0.6, 1e-8) &&
            elapsed < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "joint(0,1)=%.10f (want 6/19), in-marginal(0)=%.10f "
                "(want 0.6), %.3fs",
                joint, marginal, elapsed);
  return {ok, buf};
}

// ---- criterion 2: parameter recovery from dataset summaries ------------

struct SummaryFixture {
  const char* name;
  FitSummary summary;
  double lambda_h, lambda_h_tol;
  double p, p_tol;
  double din, din_tol;
  double dout, dout_tol;
  std::uint64_t n_steps;  // 0 = not asserted
};

Outcome criterion_pipeline() {
  std::vector<SummaryFixture> fixtures;
  {
    SummaryFixture f;
    f.name = "social-feed";
    f.summary.node_total = 25085;
    f.summary.edge_total = 380014;
    f.summary.lambda_daily = 791.17;
    f.summary.active_hours = 17;
    f.summary.n_days = 420;
    f.summary.iota_override = {{2.41, 2.67}};
    f.lambda_h = 46.54;
    f.lambda_h_tol = 0.01;
    f.p = 0.066;
    f.p_tol = 0.001;
    f.din = 21.42;
    f.din_tol = 0.1;
    f.dout = 22.66;
    f.dout_tol = 0.1;
    f.n_steps = 7140;
    fixtures.push_back(f);
  }
  {
    SummaryFixture f;
    f.name = "news-replies";
    f.summary.node_total = 37133;
    f.summary.edge_total = 97718;
    f.summary.lambda_daily = 377.29;
    f.summary.active_hours = 24;
    f.summary.n_days = 259;
    f.summary.iota_override = {{2.76, 2.06}};
    f.lambda_h = 15.72;
    f.lambda_h_tol = 0.01;
    f.p = 0.38;
    f.p_tol = 0.005;
    f.din = 4.66;
    f.din_tol = 0.05;
    f.dout = 0.73;
    f.dout_tol = 0.02;
    f.n_steps = 6216;
    fixtures.push_back(f);
  }
  {
    SummaryFixture f;
    f.name = "news-replies-refit";
    f.summary.node_total = 29444;
    f.summary.edge_total = 85719;
    f.summary.lambda_daily = 330.96;
    f.summary.active_hours = 24;
    f.summary.n_days = 259;
    f.summary.iota_override = {{1.54, 1.76}};
    f.lambda_h = 13.79;
    f.lambda_h_tol = 0.01;
    f.p = 0.34;
    f.p_tol = 0.005;
    f.din = 1.58;
    f.din_tol = 0.05;
    f.dout = 0.44;
    f.dout_tol = 0.02;
    f.n_steps = 0;
    fixtures.push_back(f);
  }

  bool all = true;
  std::string detail;
  for (const auto& f : fixtures) {
    ParamEstimates est = fit_pipeline(f.summary);
    bool ok = near(est.lambda_hourly, f.lambda_h, f.lambda_h_tol) &&
              near(est.p_hat, f.p, f.p_tol) &&
              near(est.delta_in_hat, f.din, f.din_tol) &&
              near(est.delta_out_hat, f.dout, f.dout_tol) &&
              (f.n_steps == 0 || est.n_steps == f.n_steps);
    all = all && ok;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "%s%s: (%.2f, %.4f, %.3f, %.3f, %llu)%s", detail.empty() ? "" : "; ",
                  f.name, est.lambda_hourly, est.p_hat, est.delta_in_hat,
                  est.delta_out_hat,
                  static_cast<unsigned long long>(est.n_steps),
                  ok ? "" : " MISS");
    detail += buf;
  }
  return {all, detail};
}

// ---- criterion 3: node-growth law --------------------------------------

Outcome criterion_node_growth() {
  auto start = Clock::now();
  const std::uint64_t n = 10000;
  std::vector<double> pois_frac, trad_frac;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DegreeState pois = simulate_poisson(make_params(0.2, 1, 1, 10.0), n,
                                        RngStream::derive_seed(300, seed));
    pois_frac.push_back(static_cast<double>(pois.node_count()) /
                        static_cast<double>(n));
    DegreeState trad = simulate_traditional(
        make_params(0.2, 1, 1), n, RngStream::derive_seed(301, seed));
    trad_frac.push_back(static_cast<double>(trad.node_count()) /
                        static_cast<double>(n));
  }
  double pois_med = median(pois_frac);
  double trad_med = median(trad_frac);
  double elapsed = seconds_since(start);
  bool ok = near(pois_med, 2.2, 0.05) && near(trad_med, 0.2, 0.01) &&
            elapsed < 30.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "batched median |V|/n=%.4f (want 2.2 +- 0.05), sequential "
                "%.4f (want 0.2 +- 0.01), %.1fs",
                pois_med, trad_med, elapsed);
  return {ok, buf};
}

// ---- criterion 4: joint limit law in total variation --------------------

double box_tv(const PmfGrid& empirical, const PmfGrid& limit) {
  double tv = 0.0;
  for (std::size_t m = 0; m <= 10; ++m)
    for (std::size_t l = 1; l <= 10; ++l)
      tv += std::fabs(empirical.at(m, l) - limit.at(m, l));
  return 0.5 * tv;
}

Outcome criterion_limit_law() {
  PmfGrid limit = joint_limit_grid(make_params(0.2, 1, 1), 10, 10);

  double pois_tv = 0.0, trad_tv = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DegreeState pois = simulate_poisson(make_params(0.2, 1, 1, 10.0), 5000,
                                        RngStream::derive_seed(400, seed));
    pois_tv += box_tv(joint_degree_counts(pois, 10, 10), limit);
    DegreeState trad = simulate_traditional(
        make_params(0.2, 1, 1), 55000, RngStream::derive_seed(401, seed));
    trad_tv += box_tv(joint_degree_counts(trad, 10, 10), limit);
  }
  pois_tv /= 10.0;
  trad_tv /= 10.0;
  bool ok = pois_tv < 0.05 && trad_tv < 0.05;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "mean TV on degree box: batched %.4f, sequential %.4f "
                "(bound 0.05)",
                pois_tv, trad_tv);
  return {ok, buf};
}

// ---- criterion 5: exact enumeration vs simulator -----------------------

Outcome criterion_enumeration() {
  ModelParams params = make_params(0.2, 1, 1);
  ExactDistribution exact = enumerate_traditional(params, 2);
  std::vector<double> probs;
  std::map<DegreeSequence, std::size_t> index;
  for (const auto& [state, prob] : exact.probability) {
    index[state] = probs.size();
    probs.push_back(prob);
  }

  bool all = true;
  std::string detail = "p-values:";
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<std::uint64_t> counts(probs.size(), 0);
    RngStream rng(RngStream::derive_seed(500, seed));
    for (int run = 0; run < 100000; ++run) {
      DegreeState state;
      step_traditional(state, params, rng);
      step_traditional(state, params, rng);
      DegreeSequence seq;
      for (NodeId v = 1; v <= state.node_count(); ++v)
        seq.emplace_back(state.in_degree(v), state.out_degree(v));
      ++counts[index.at(seq)];
    }
    double p_value = chi_square_gof(counts, probs).p_value;
    all = all && p_value > 0.001;
    char buf[32];
    std::snprintf(buf, sizeof(buf), " %.3f", p_value);
    detail += buf;
  }
  detail += " (all must exceed 0.001)";
  return {all, detail};
}

// ---- criterion 6: birth-immigration embedding --------------------------

Outcome criterion_embedding() {
  ModelParams params = make_params(0.2, 1, 1);
  const std::uint64_t steps = 200, reps = 2000;
  std::vector<double> sequential(reps), embedded(reps);
  for (std::uint64_t r = 0; r < reps; ++r) {
    DegreeState state = simulate_traditional(
        params, steps, RngStream::derive_seed(600, r));
    sequential[r] = static_cast<double>(state.in_degree(1));
    EmbeddingResult emb =
        simulate_bi_embedding(params, steps, RngStream::derive_seed(601, r));
    embedded[r] = static_cast<double>(emb.in_deg[1]);
  }
  KsTestResult ks = ks_two_sample(sequential, embedded);
  bool ok = ks.p_value > 0.01;
  char buf[120];
  std::snprintf(buf, sizeof(buf), "KS D=%.4f, p=%.4f (need p > 0.01)",
                ks.statistic, ks.p_value);
  return {ok, buf};
}

// ---- criterion 7: growth-product exponents ------------------------------

Outcome criterion_growth_exponents() {
  ModelParams params = make_params(0.2, 1, 1, 10.0);
  double mean_in = 0.0, mean_out = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SimTrace trace;
    simulate_poisson(params, 5000, RngStream::derive_seed(700, seed), &trace);
    GrowthDiagnostic diag = growth_product(trace, params);
    mean_in += diag.slope_in;
    mean_out += diag.slope_out;
  }
  mean_in /= 20.0;
  mean_out /= 20.0;
  double target_in = 1.0 / 1.2, target_out = 0.8 / 1.2;
  bool ok = near(mean_in, target_in, 0.05) && near(mean_out, target_out, 0.05);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "slopes (%.4f, %.4f) vs targets (%.4f, %.4f) +- 0.05",
                mean_in, mean_out, target_in, target_out);
  return {ok, buf};
}

// ---- criterion 8: tail-index recovery on simulated degrees -------------

Outcome criterion_tail_recovery() {
  ModelParams params = make_params(0.2, 1, 1, 10.0);
  std::vector<double> estimates;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DegreeState state =
        simulate_poisson(params, 20000, RngStream::derive_seed(800, seed));
    std::vector<double> in_degrees;
    in_degrees.reserve(state.node_count());
    for (NodeId v = 1; v <= state.node_count(); ++v)
      in_degrees.push_back(static_cast<double>(state.in_degree(v)));
    estimates.push_back(min_distance_k(in_degrees).iota);
  }
  double med = median(estimates);
  bool ok = near(med, 1.2, 0.3);
  char buf[120];
  std::snprintf(buf, sizeof(buf),
                "median min-distance tail index %.4f (want 1.2 +- 0.3)", med);
  return {ok, buf};
}

// ---- criterion 9: Hill estimator on iid Pareto -------------------------

Outcome criterion_hill_pareto() {
  std::vector<double> estimates;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(RngStream::derive_seed(900, seed));
    std::vector<double> sample(10000);
    for (auto& v : sample) v = std::pow(1.0 - rng.u01(), -0.5);
    estimates.push_back(hill_estimator(sample, 500));
  }
  double med = median(estimates);
  bool ok = near(med, 2.0, 0.15);
  char buf[120];
  std::snprintf(buf, sizeof(buf),
                "median Hill estimate %.4f at k=500 (want 2 +- 0.15)", med);
  return {ok, buf};
}

// ---- criterion 10: early vs late node discrepancy ----------------------

Outcome criterion_early_late() {
  const std::uint64_t reps = 100, steps = 2000;
  const NodeId late_seq = 50, late_batch = 540;  // matched birth times
  std::vector<double> seq_first(reps), seq_late(reps);
  std::vector<double> bat_first(reps), bat_late(reps);
  for (std::uint64_t r = 0; r < reps; ++r) {
    DegreeState seq = simulate_traditional(make_params(0.2, 1, 1), steps,
                                           RngStream::derive_seed(1000, r));
    seq_first[r] = static_cast<double>(seq.in_degree(1));
    seq_late[r] = seq.node_count() >= late_seq
                      ? static_cast<double>(seq.in_degree(late_seq))
                      : 0.0;
    DegreeState bat = simulate_poisson(make_params(0.2, 1, 1, 10.0), steps,
                                       RngStream::derive_seed(1001, r));
    bat_first[r] = static_cast<double>(bat.in_degree(1));
    bat_late[r] = bat.node_count() >= late_batch
                      ? static_cast<double>(bat.in_degree(late_batch))
                      : 0.0;
  }

  double d_early = ks_two_sample(seq_first, bat_first).statistic;
  double d_late = ks_two_sample(seq_late, bat_late).statistic;

  RngStream rng(1002);
  auto resample = [&](const std::vector<double>& from) {
    std::vector<double> out(from.size());
    for (auto& v : out) v = from[rng.uniform_below(from.size())];
    return out;
  };
  const int boots = 2000;
  int ordered = 0;
  for (int b = 0; b < boots; ++b) {
    double de =
        ks_two_sample(resample(seq_first), resample(bat_first)).statistic;
    double dl =
        ks_two_sample(resample(seq_late), resample(bat_late)).statistic;
    if (de > dl) ++ordered;
  }
  double frac = static_cast<double>(ordered) / boots;
  bool ok = frac >= 0.95;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "D(first nodes)=%.3f, D(matched late nodes)=%.3f, ordering "
                "holds in %.1f%% of resamples (need >= 95%%)",
                d_early, d_late, 100.0 * frac);
  return {ok, buf};
}

// ---- criterion 11: angular density shape --------------------------------

Outcome criterion_angular() {
  ModelParams params = make_params(0.066, 21.42, 22.66);
  std::vector<double> grid = interior_grid(512);
  AngularGrid density = angular_density(params, grid);

  double trapz = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    trapz += 0.5 * (grid[i] - grid[i - 1]) *
             (density.density[i] + density.density[i - 1]);

  std::size_t mode = 0;
  int direction_changes = 0;
  for (std::size_t i = 1; i < density.density.size(); ++i) {
    if (density.density[i] > density.density[mode]) mode = i;
    if (i >= 2) {
      bool was_up = density.density[i - 1] > density.density[i - 2];
      bool is_up = density.density[i] > density.density[i - 1];
      if (was_up != is_up) ++direction_changes;
    }
  }
  bool ok = near(trapz, 1.0, 1e-6) && direction_changes <= 1 &&
            grid[mode] > 0.3 && grid[mode] < 0.5;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "integral %.8f, %d direction change(s), mode at %.4f "
                "(need unimodal, mode in (0.3, 0.5))",
                trapz, direction_changes, grid[mode]);
  return {ok, buf};
}

// ---- criterion 12: simulation throughput at replication scale ----------

Outcome criterion_throughput() {
  namespace fs = std::filesystem;
  ModelParams params = make_params(0.066, 21.42, 22.66, 46.54);
  auto start = Clock::now();
  DegreeState state = simulate_poisson(params, 7140, 12);

  // Mirror the artifact work of the simulate command: degree table + joint
  // frequency table.
  fs::path dir = fs::temp_directory_path() / "panet_acceptance";
  fs::create_directories(dir);
  CsvTable degrees;
  degrees.config = {{"command", "simulate"}, {"steps", 7140}, {"seed", 12}};
  degrees.columns = {"node_id", "in_degree", "out_degree"};
  for (NodeId v = 1; v <= state.node_count(); ++v)
    degrees.add_row({static_cast<double>(v),
                     static_cast<double>(state.in_degree(v)),
                     static_cast<double>(state.out_degree(v))});
  degrees.write((dir / "throughput_degrees.csv").string());
  PmfGrid joint = joint_degree_counts(state, 30, 30);
  CsvTable joint_table;
  joint_table.config = degrees.config;
  joint_table.columns = {"m", "l", "frequency"};
  for (std::size_t m = 0; m <= 30; ++m)
    for (std::size_t l = 0; l <= 30; ++l)
      joint_table.add_row({static_cast<double>(m), static_cast<double>(l),
                           joint.at(m, l)});
  joint_table.write((dir / "throughput_joint.csv").string());

  double elapsed = seconds_since(start);
  bool ok = elapsed < 5.0 && state.edge_total() > 250000;
  char buf[140];
  std::snprintf(buf, sizeof(buf),
                "%llu edges, %u nodes simulated and written in %.2fs "
                "(budget 5s)",
                static_cast<unsigned long long>(state.edge_total()),
                static_cast<unsigned>(state.node_count()), elapsed);
  return {ok, buf};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {1, "closed-form quadrature values", criterion_quadrature},
      {2, "parameter recovery from dataset summaries", criterion_pipeline},
      {3, "node-growth law", criterion_node_growth},
      {4, "joint limit law in total variation", criterion_limit_law},
      {5, "exact enumeration vs simulator", criterion_enumeration},
      {6, "birth-immigration embedding", criterion_embedding},
      {7, "growth-product exponents", criterion_growth_exponents},
      {8, "tail-index recovery on simulated degrees", criterion_tail_recovery},
      {9, "Hill estimator on iid Pareto", criterion_hill_pareto},
      {10, "early vs late node discrepancy", criterion_early_late},
      {11, "angular density shape", criterion_angular},
      {12, "simulation throughput at replication scale",
       criterion_throughput},
  };

  int failures = 0;
  for (const auto& entry : entries) {
    Outcome outcome;
    try {
      outcome = entry.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] %2d. %s: %s\n", outcome.pass ? "PASS" : "FAIL",
                entry.id, entry.label, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/12 criteria passed\n", 12 - failures);
  return failures;
}
