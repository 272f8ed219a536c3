#include "panet/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "panet/estimators.hpp"
#include "panet/ingest.hpp"
#include "panet/io.hpp"
#include "panet/oracles.hpp"
#include "panet/sim.hpp"
#include "panet/stat_tests.hpp"
#include "panet/theory.hpp"

namespace panet {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

unsigned worker_count(std::uint64_t jobs) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("PA_NET_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1)
      workers = static_cast<unsigned>(cap);
  }
  return static_cast<unsigned>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(jobs, 1)));
}

// Runs fn(0..jobs-1) on a small pool. Each job must be self-contained;
// callers write results indexed by job so output order never depends on
// scheduling.
void parallel_for(std::uint64_t jobs, const std::function<void(std::uint64_t)>& fn) {
  unsigned workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= jobs) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << text;
  if (!file) throw std::runtime_error("write failed: " + path);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

std::set<int> parse_hours(const std::string& spec) {
  std::set<int> hours;
  if (spec.empty()) return hours;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string token = spec.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t dash = token.find('-');
    try {
      if (dash == std::string::npos) {
        int h = std::stoi(token);
        if (h < 0 || h > 23) throw std::out_of_range("hour");
        hours.insert(h);
      } else {
        int lo = std::stoi(token.substr(0, dash));
        int hi = std::stoi(token.substr(dash + 1));  // exclusive
        if (lo < 0 || hi > 24 || lo >= hi) throw std::out_of_range("range");
        for (int h = lo; h < hi; ++h) hours.insert(h);
      }
    } catch (const std::exception&) {
      throw std::runtime_error("bad --exclude-hours token '" + token +
                               "' (want H or H1-H2 with H2 exclusive)");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return hours;
}

// A window endpoint is either epoch seconds or a local date YYYY-MM-DD.
// Returns the epoch instant where that local day begins.
std::int64_t parse_time_point(const std::string& s, std::int64_t tz_offset,
                              bool inclusive_end) {
  if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
    int y = std::stoi(s.substr(0, 4));
    unsigned m = static_cast<unsigned>(std::stoi(s.substr(5, 2)));
    unsigned d = static_cast<unsigned>(std::stoi(s.substr(8, 2)));
    if (m < 1 || m > 12 || d < 1 || d > 31)
      throw std::runtime_error("bad date: " + s);
    std::int64_t day = days_from_civil(y, m, d) + (inclusive_end ? 1 : 0);
    return day * 86400 - tz_offset;
  }
  (void)inclusive_end;  // raw epoch endpoints stay exclusive as given
  return std::stoll(s);
}

json model_config(const ModelParams& params) {
  json j{{"p", params.p},
         {"delta_in", params.delta_in},
         {"delta_out", params.delta_out}};
  if (params.lambda)
    j["lambda"] = *params.lambda;
  else
    j["lambda"] = nullptr;
  return j;
}

struct SimulateOptions {
  std::string model = "poisson";
  ModelParams params;
  double lambda = 0.0;
  bool lambda_set = false;
  std::uint64_t steps = 0;
  std::uint64_t seed = 1;
  std::uint64_t reps = 1;
  std::size_t m_max = 30;
  std::size_t l_max = 30;
  std::string out_prefix;
};

void run_simulate(const SimulateOptions& opt) {
  ModelParams params = opt.params;
  if (opt.lambda_set) params.lambda = opt.lambda;
  params.validate();
  if (opt.model == "poisson" && !params.lambda)
    throw std::runtime_error("simulate: --model poisson needs --lambda");

  struct RepResult {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> degrees;
    PmfGrid joint;
  };
  std::vector<RepResult> results(opt.reps);
  parallel_for(opt.reps, [&](std::uint64_t rep) {
    std::uint64_t rep_seed = RngStream::derive_seed(opt.seed, rep);
    DegreeState state = opt.model == "poisson"
                            ? simulate_poisson(params, opt.steps, rep_seed)
                            : simulate_traditional(params, opt.steps, rep_seed);
    RepResult& r = results[rep];
    r.degrees.reserve(state.node_count());
    for (NodeId v = 1; v <= state.node_count(); ++v)
      r.degrees.emplace_back(state.in_degree(v), state.out_degree(v));
    r.joint = joint_degree_counts(state, opt.m_max, opt.l_max);
  });

  json base{{"command", "simulate"}, {"model", opt.model},
            {"steps", opt.steps},   {"seed", opt.seed},
            {"reps", opt.reps},     {"model_params", model_config(params)}};
  for (std::uint64_t rep = 0; rep < opt.reps; ++rep) {
    CsvTable table;
    table.config = base;
    table.config["rep"] = rep;
    table.config["rep_seed"] = RngStream::derive_seed(opt.seed, rep);
    table.columns = {"node_id", "in_degree", "out_degree"};
    const auto& degrees = results[rep].degrees;
    for (std::size_t v = 0; v < degrees.size(); ++v)
      table.add_row({static_cast<double>(v + 1),
                     static_cast<double>(degrees[v].first),
                     static_cast<double>(degrees[v].second)});
    char suffix[48];
    std::snprintf(suffix, sizeof(suffix), "_degrees_rep%03llu.csv",
                  static_cast<unsigned long long>(rep));
    table.write(opt.out_prefix + suffix);
  }

  CsvTable joint;
  joint.config = base;
  double overflow = 0.0;
  for (const auto& r : results) overflow += r.joint.overflow;
  joint.config["overflow_mean"] = overflow / static_cast<double>(opt.reps);
  joint.config["m_max"] = opt.m_max;
  joint.config["l_max"] = opt.l_max;
  joint.columns = {"m", "l", "frequency"};
  for (std::size_t m = 0; m <= opt.m_max; ++m)
    for (std::size_t l = 0; l <= opt.l_max; ++l) {
      double mean = 0.0;
      for (const auto& r : results) mean += r.joint.at(m, l);
      joint.add_row({static_cast<double>(m), static_cast<double>(l),
                     mean / static_cast<double>(opt.reps)});
    }
  joint.write(opt.out_prefix + "_joint.csv");
}

struct TheoryOptions {
  ModelParams params;
  std::vector<std::uint64_t> joint;  // (m, l) when present
  std::int64_t marginal_in = -1;
  std::int64_t marginal_out = -1;
  std::int64_t angular = -1;
  std::string out_path;
};

void run_theory(const TheoryOptions& opt) {
  opt.params.validate();
  int modes = (!opt.joint.empty()) + (opt.marginal_in >= 0) +
              (opt.marginal_out >= 0) + (opt.angular >= 0);
  if (modes != 1)
    throw std::runtime_error(
        "theory: choose exactly one of --joint, --marginal-in, "
        "--marginal-out, --angular");

  CsvTable table;
  table.config = {{"command", "theory"},
                  {"model_params", model_config(opt.params)}};
  if (!opt.joint.empty()) {
    std::uint64_t m_max = opt.joint[0], l_max = opt.joint[1];
    if (l_max == 0) throw std::runtime_error("theory: --joint needs L >= 1");
    table.config["mode"] = "joint";
    table.columns = {"m", "l", "probability"};
    for (std::uint64_t m = 0; m <= m_max; ++m)
      for (std::uint64_t l = 1; l <= l_max; ++l)
        table.add_row({static_cast<double>(m), static_cast<double>(l),
                       joint_limit_pmf(opt.params, m, l)});
  } else if (opt.marginal_in >= 0) {
    table.config["mode"] = "marginal_in";
    table.columns = {"m", "probability"};
    for (std::int64_t m = 0; m <= opt.marginal_in; ++m)
      table.add_row({static_cast<double>(m),
                     marginal_in_pmf(opt.params,
                                     static_cast<std::uint64_t>(m))});
  } else if (opt.marginal_out >= 0) {
    if (opt.marginal_out == 0)
      throw std::runtime_error("theory: --marginal-out needs L >= 1");
    table.config["mode"] = "marginal_out";
    table.columns = {"l", "probability"};
    for (std::int64_t l = 1; l <= opt.marginal_out; ++l)
      table.add_row({static_cast<double>(l),
                     marginal_out_pmf(opt.params,
                                      static_cast<std::uint64_t>(l))});
  } else {
    if (opt.angular < 2) throw std::runtime_error("theory: --angular needs >= 2");
    AngularGrid grid = angular_density(
        opt.params, interior_grid(static_cast<std::size_t>(opt.angular)));
    TailExponents tails = tail_exponents(opt.params);
    table.config["mode"] = "angular";
    table.config["normalization"] = grid.normalization;
    table.config["a"] = tails.iota_in / tails.iota_out;
    table.columns = {"theta", "density"};
    for (std::size_t i = 0; i < grid.theta.size(); ++i)
      table.add_row({grid.theta[i], grid.density[i]});
  }
  emit(opt.out_path, table.to_string());
}

struct FitOptions {
  std::string edges_path;
  std::vector<std::string> window;  // start, end
  std::string exclude_hours;
  std::int64_t tz_offset = 0;
  std::uint64_t admin_min = 0;  // 0 disables the filter
  double pot_quantile = 0.995;
  std::size_t kde_grid = 512;
  double iota_in_override = 0.0;
  double iota_out_override = 0.0;
  std::string out_dir = ".";
};

void run_fit(const FitOptions& opt) {
  std::ifstream file(opt.edges_path);
  if (!file)
    throw std::runtime_error("fit: cannot read edge list: " + opt.edges_path);
  TemporalEdgeLog log = parse_edge_list(file);
  log.tz_offset = opt.tz_offset;
  std::set<int> hours = parse_hours(opt.exclude_hours);

  std::int64_t start, end;
  if (!opt.window.empty()) {
    start = parse_time_point(opt.window[0], opt.tz_offset, false);
    end = parse_time_point(opt.window[1], opt.tz_offset, true);
    if (end <= start) throw std::runtime_error("fit: empty window");
  } else {
    start = log.edges.front().timestamp;
    end = log.edges.back().timestamp + 1;
  }
  TemporalEdgeLog filtered = filter_window(log, start, end, hours);
  if (filtered.edges.empty())
    throw std::runtime_error("fit: no edges inside the window");

  std::size_t admin_dropped = 0;
  if (opt.admin_min > 0) {
    auto degrees0 = degrees_from_log(filtered);
    auto [kept, dropped] = remove_admin_nodes(degrees0, opt.admin_min);
    admin_dropped = dropped;
    if (dropped > 0) {
      std::set<std::int64_t> keep_labels;
      for (const auto& n : kept) keep_labels.insert(n.label);
      TemporalEdgeLog reduced = filtered;
      reduced.edges.clear();
      for (const TemporalEdge& e : filtered.edges)
        if (keep_labels.count(e.source) && keep_labels.count(e.target))
          reduced.edges.push_back(e);
      if (reduced.edges.empty())
        throw std::runtime_error("fit: admin filter removed every edge");
      filtered = std::move(reduced);
    }
  }

  RateSeries rates = daily_rates(filtered);
  double lambda_daily = rates.mean_edge_rate();
  if (std::isnan(lambda_daily))
    throw std::runtime_error(
        "fit: no day has two in-window events; daily rate undefined");

  std::vector<NodeDegrees> degrees = degrees_from_log(filtered);
  FitSummary summary;
  summary.node_total = degrees.size();
  summary.edge_total = filtered.edges.size();
  summary.lambda_daily = lambda_daily;
  summary.active_hours = static_cast<unsigned>(24 - hours.size());
  std::int64_t first_day = local_day(start, opt.tz_offset);
  std::int64_t last_day = local_day(end - 1, opt.tz_offset);
  summary.n_days = static_cast<unsigned>(last_day - first_day + 1);
  summary.in_degrees.reserve(degrees.size());
  summary.out_degrees.reserve(degrees.size());
  for (const auto& n : degrees) {
    summary.in_degrees.push_back(static_cast<double>(n.in));
    summary.out_degrees.push_back(static_cast<double>(n.out));
  }
  if (opt.iota_in_override > 0.0 || opt.iota_out_override > 0.0) {
    if (!(opt.iota_in_override > 0.0) || !(opt.iota_out_override > 0.0))
      throw std::runtime_error(
          "fit: --iota-in and --iota-out must be given together");
    summary.iota_override = {opt.iota_in_override, opt.iota_out_override};
  }
  ParamEstimates est = fit_pipeline(summary);
  if (admin_dropped > 0)
    est.notes.push_back("admin filter dropped " +
                        std::to_string(admin_dropped) + " nodes (out = 0, in >= " +
                        std::to_string(opt.admin_min) + ") and their edges");

  fs::create_directories(opt.out_dir);
  json config{{"command", "fit"},
              {"edges", opt.edges_path},
              {"window_start", start},
              {"window_end", end},
              {"exclude_hours", opt.exclude_hours},
              {"tz_offset", opt.tz_offset},
              {"admin_min", opt.admin_min},
              {"pot_quantile", opt.pot_quantile},
              {"node_total", summary.node_total},
              {"edge_total", summary.edge_total},
              {"n_days", summary.n_days}};

  json est_file{{"config", config},
                {"estimates", to_json(est)},
                {"version", kArtifactVersion}};
  write_text((fs::path(opt.out_dir) / "estimates.json").string(),
             est_file.dump(2) + "\n");

  rate_series_table(rates, config).write(
      (fs::path(opt.out_dir) / "rates.csv").string());

  CsvTable angular;
  angular.config = config;
  CsvTable kde;
  kde.config = config;
  kde.columns = {"theta", "density"};
  angular.columns = {"theta"};
  try {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(degrees.size());
    for (const auto& n : degrees)
      pairs.emplace_back(static_cast<double>(n.in),
                         static_cast<double>(n.out));
    double a = est.iota_in_hat / est.iota_out_hat;
    AngularSample sample = angular_samples(pairs, a, opt.pot_quantile);
    angular.config["a"] = a;
    angular.config["threshold"] = sample.threshold;
    angular.config["retained"] = sample.theta.size();
    for (double t : sample.theta) angular.add_row({t});
    std::vector<double> grid = interior_grid(opt.kde_grid);
    std::vector<double> density = kde_reflected(sample.theta, grid);
    kde.config["bandwidth"] = silverman_bandwidth(sample.theta);
    for (std::size_t i = 0; i < grid.size(); ++i)
      kde.add_row({grid[i], density[i]});
  } catch (const std::exception& e) {
    // Tiny inputs can leave too few exceedances for a density; record why
    // instead of failing the whole fit.
    angular.config["error"] = e.what();
    kde.config["error"] = e.what();
  }
  angular.write((fs::path(opt.out_dir) / "angular.csv").string());
  kde.write((fs::path(opt.out_dir) / "kde.csv").string());
}

struct CompareOptions {
  std::string fit_path;
  std::uint64_t reps = 20;
  std::uint64_t seed = 1;
  std::size_t ccdf_points = 60;
  std::size_t kde_grid = 512;
  double pot_quantile = 0.995;
  std::string out_dir = ".";
};

std::vector<std::uint64_t> ccdf_grid(std::uint64_t max_degree,
                                     std::size_t points) {
  std::vector<std::uint64_t> grid;
  if (max_degree == 0) return grid;
  double log_max = std::log(static_cast<double>(max_degree));
  for (std::size_t i = 0; i < points; ++i) {
    double x = points == 1 ? 0.0
                           : log_max * static_cast<double>(i) /
                                 static_cast<double>(points - 1);
    std::uint64_t d = static_cast<std::uint64_t>(std::llround(std::exp(x)));
    if (grid.empty() || d > grid.back()) grid.push_back(d);
  }
  return grid;
}

void run_compare(const CompareOptions& opt) {
  std::ifstream file(opt.fit_path);
  if (!file)
    throw std::runtime_error("compare: cannot read fit file: " + opt.fit_path);
  json parsed = json::parse(file);
  ParamEstimates est = param_estimates_from_json(
      parsed.contains("estimates") ? parsed["estimates"] : parsed);

  ModelParams params;
  params.p = est.p_hat;
  params.delta_in = est.delta_in_hat;
  params.delta_out = est.delta_out_hat;
  params.lambda = est.lambda_hourly;
  params.validate();
  if (est.n_steps == 0) throw std::runtime_error("compare: n_steps is zero");
  double a = est.iota_in_hat / est.iota_out_hat;

  struct RepResult {
    std::vector<double> in_sorted;
    std::vector<double> out_sorted;
    std::vector<double> kde;
    bool kde_ok = false;
  };
  std::vector<double> grid = interior_grid(opt.kde_grid);
  std::vector<RepResult> results(opt.reps);
  parallel_for(opt.reps, [&](std::uint64_t rep) {
    DegreeState state = simulate_poisson(
        params, est.n_steps, RngStream::derive_seed(opt.seed, rep));
    RepResult& r = results[rep];
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(state.node_count());
    r.in_sorted.reserve(state.node_count());
    r.out_sorted.reserve(state.node_count());
    for (NodeId v = 1; v <= state.node_count(); ++v) {
      double in = static_cast<double>(state.in_degree(v));
      double out = static_cast<double>(state.out_degree(v));
      r.in_sorted.push_back(in);
      r.out_sorted.push_back(out);
      pairs.emplace_back(in, out);
    }
    std::sort(r.in_sorted.begin(), r.in_sorted.end());
    std::sort(r.out_sorted.begin(), r.out_sorted.end());
    try {
      AngularSample sample = angular_samples(pairs, a, opt.pot_quantile);
      r.kde = kde_reflected(sample.theta, grid);
      r.kde_ok = true;
    } catch (const std::exception&) {
      r.kde_ok = false;
    }
  });

  fs::create_directories(opt.out_dir);
  json config{{"command", "compare"},  {"fit", opt.fit_path},
              {"reps", opt.reps},      {"seed", opt.seed},
              {"a", a},                {"pot_quantile", opt.pot_quantile},
              {"n_steps", est.n_steps}, {"model_params", model_config(params)}};

  auto write_ccdf = [&](const char* name, bool use_in) {
    std::uint64_t max_degree = 0;
    for (const auto& r : results) {
      const auto& s = use_in ? r.in_sorted : r.out_sorted;
      if (!s.empty())
        max_degree = std::max(
            max_degree, static_cast<std::uint64_t>(std::llround(s.back())));
    }
    CsvTable table;
    table.config = config;
    table.columns = {"degree", "ccdf_min", "ccdf_mean", "ccdf_max"};
    for (std::uint64_t d : ccdf_grid(max_degree, opt.ccdf_points)) {
      double lo = 1.0, hi = 0.0, mean = 0.0;
      for (const auto& r : results) {
        const auto& s = use_in ? r.in_sorted : r.out_sorted;
        auto it = std::lower_bound(s.begin(), s.end(),
                                   static_cast<double>(d));
        double ccdf = static_cast<double>(s.end() - it) /
                      static_cast<double>(s.size());
        lo = std::min(lo, ccdf);
        hi = std::max(hi, ccdf);
        mean += ccdf;
      }
      table.add_row({static_cast<double>(d), lo,
                     mean / static_cast<double>(opt.reps), hi});
    }
    table.write((fs::path(opt.out_dir) / name).string());
  };
  write_ccdf("ccdf_in.csv", true);
  write_ccdf("ccdf_out.csv", false);

  ModelParams limit_params = params;
  limit_params.lambda.reset();  // angular limit depends on (p, deltas) only
  AngularGrid limit = angular_density(limit_params, grid);
  CsvTable overlay;
  overlay.config = config;
  std::size_t kde_reps = 0;
  for (const auto& r : results) kde_reps += r.kde_ok ? 1 : 0;
  overlay.config["kde_reps_used"] = kde_reps;
  overlay.columns = {"theta", "kde_mean", "limit_density"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double mean = 0.0;
    for (const auto& r : results)
      if (r.kde_ok) mean += r.kde[i];
    if (kde_reps > 0) mean /= static_cast<double>(kde_reps);
    overlay.add_row({grid[i], mean, limit.density[i]});
  }
  overlay.write((fs::path(opt.out_dir) / "angular_overlay.csv").string());
}

struct VerifyCommon {
  ModelParams params;
  double lambda = 0.0;
  bool lambda_set = false;
  std::uint64_t seed = 1;
  std::string out_path;
};

void emit_report(const std::string& out_path, json report) {
  report["version"] = kArtifactVersion;
  emit(out_path, report.dump(2) + "\n");
  if (!report.value("pass", false))
    throw std::runtime_error("verify: check failed (see report)");
}

void run_verify_enumerate(const VerifyCommon& common, unsigned steps,
                          std::uint64_t runs, double alpha) {
  ExactDistribution exact = enumerate_traditional(common.params, steps);
  std::vector<double> probs;
  std::map<DegreeSequence, std::size_t> index;
  for (const auto& [state, prob] : exact.probability) {
    index[state] = probs.size();
    probs.push_back(prob);
  }
  std::vector<std::uint64_t> counts(probs.size(), 0);
  RngStream rng(common.seed);
  for (std::uint64_t r = 0; r < runs; ++r) {
    DegreeState state;
    for (unsigned s = 0; s < steps; ++s)
      step_traditional(state, common.params, rng);
    DegreeSequence seq;
    for (NodeId v = 1; v <= state.node_count(); ++v)
      seq.emplace_back(state.in_degree(v), state.out_degree(v));
    auto it = index.find(seq);
    if (it == index.end())
      throw std::runtime_error(
          "verify enumerate: simulator reached a state outside the exact "
          "support");
    ++counts[it->second];
  }
  ChiSquareResult chi = chi_square_gof(counts, probs);
  emit_report(common.out_path,
              json{{"check", "enumerate"},
                   {"steps", steps},
                   {"runs", runs},
                   {"seed", common.seed},
                   {"states", probs.size()},
                   {"statistic", chi.statistic},
                   {"dof", chi.dof},
                   {"p_value", chi.p_value},
                   {"alpha", alpha},
                   {"model_params", model_config(common.params)},
                   {"pass", chi.p_value > alpha}});
}

void run_verify_embedding(const VerifyCommon& common, std::uint64_t steps,
                          std::uint64_t reps, double alpha) {
  std::vector<double> sim_deg(reps), embed_deg(reps);
  parallel_for(reps, [&](std::uint64_t r) {
    std::uint64_t seed_r = RngStream::derive_seed(common.seed, r);
    DegreeState state = simulate_traditional(common.params, steps, seed_r);
    sim_deg[r] = static_cast<double>(state.in_degree(1));
    EmbeddingResult embed = simulate_bi_embedding(
        common.params, steps, RngStream::derive_seed(~common.seed, r));
    embed_deg[r] = static_cast<double>(embed.in_deg[1]);
  });
  KsTestResult ks = ks_two_sample(sim_deg, embed_deg);
  emit_report(common.out_path,
              json{{"check", "embedding"},
                   {"steps", steps},
                   {"reps", reps},
                   {"seed", common.seed},
                   {"statistic", ks.statistic},
                   {"p_value", ks.p_value},
                   {"alpha", alpha},
                   {"model_params", model_config(common.params)},
                   {"pass", ks.p_value > alpha}});
}

void run_verify_growth(const VerifyCommon& common, std::uint64_t steps,
                       std::uint64_t seeds, double tol) {
  ModelParams params = common.params;
  if (common.lambda_set) params.lambda = common.lambda;
  if (!params.lambda)
    throw std::runtime_error("verify growth: --lambda is required");
  std::vector<double> slopes_in(seeds), slopes_out(seeds);
  parallel_for(seeds, [&](std::uint64_t s) {
    SimTrace trace;
    simulate_poisson(params, steps, RngStream::derive_seed(common.seed, s),
                     &trace);
    GrowthDiagnostic diag = growth_product(trace, params);
    slopes_in[s] = diag.slope_in;
    slopes_out[s] = diag.slope_out;
  });
  double mean_in = 0.0, mean_out = 0.0;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    mean_in += slopes_in[s];
    mean_out += slopes_out[s];
  }
  mean_in /= static_cast<double>(seeds);
  mean_out /= static_cast<double>(seeds);
  double target_in = 1.0 / (1.0 + params.delta_in * params.p);
  double target_out =
      (1.0 - params.p) / (1.0 + params.delta_out * params.p);
  bool pass = std::fabs(mean_in - target_in) <= tol &&
              std::fabs(mean_out - target_out) <= tol;
  emit_report(common.out_path,
              json{{"check", "growth"},
                   {"steps", steps},
                   {"seeds", seeds},
                   {"seed", common.seed},
                   {"slope_in", mean_in},
                   {"slope_out", mean_out},
                   {"target_in", target_in},
                   {"target_out", target_out},
                   {"tol", tol},
                   {"model_params", model_config(params)},
                   {"pass", pass}});
}

void add_model_flags(CLI::App* cmd, ModelParams& params) {
  cmd->add_option("--p", params.p, "node-creation probability")->required();
  cmd->add_option("--delta-in", params.delta_in, "in-attachment offset")
      ->required();
  cmd->add_option("--delta-out", params.delta_out, "out-attachment offset")
      ->required();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"directed preferential-attachment models with batched arrivals:"
               " simulation, limit laws, tail fitting"};
  app.require_subcommand(1);

  SimulateOptions sim_opt;
  CLI::App* sim = app.add_subcommand("simulate", "run a model, write degrees");
  sim->add_option("--model", sim_opt.model, "traditional | poisson")
      ->check(CLI::IsMember({"traditional", "poisson"}));
  add_model_flags(sim, sim_opt.params);
  sim->add_option("--lambda", sim_opt.lambda, "batch-size mean (poisson model)");
  sim->add_option("--steps", sim_opt.steps, "steps (or batches)")->required();
  sim->add_option("--seed", sim_opt.seed, "base seed");
  sim->add_option("--reps", sim_opt.reps, "independent replications")
      ->check(CLI::PositiveNumber);
  sim->add_option("--m-max", sim_opt.m_max, "joint grid in-degree bound");
  sim->add_option("--l-max", sim_opt.l_max, "joint grid out-degree bound");
  sim->add_option("--out", sim_opt.out_prefix, "output path prefix")
      ->required();

  TheoryOptions theory_opt;
  CLI::App* theory = app.add_subcommand("theory", "limit-law tables");
  add_model_flags(theory, theory_opt.params);
  theory->add_option("--joint", theory_opt.joint,
                     "tabulate joint pmf up to M L")
      ->expected(2);
  theory->add_option("--marginal-in", theory_opt.marginal_in,
                     "tabulate in-marginal up to M");
  theory->add_option("--marginal-out", theory_opt.marginal_out,
                     "tabulate out-marginal up to L");
  theory->add_option("--angular", theory_opt.angular,
                     "angular density on an N-point grid");
  theory->add_option("--out", theory_opt.out_path, "output file (default stdout)");

  FitOptions fit_opt;
  CLI::App* fit = app.add_subcommand("fit", "estimate parameters from an edge log");
  fit->add_option("--edges", fit_opt.edges_path, "edge list file")->required();
  fit->add_option("--window", fit_opt.window,
                  "start end (epoch seconds or YYYY-MM-DD, end date inclusive)")
      ->expected(2);
  fit->add_option("--exclude-hours", fit_opt.exclude_hours,
                  "local hours to drop, e.g. 1-8");
  fit->add_option("--tz-offset", fit_opt.tz_offset,
                  "seconds added to UTC for local time");
  fit->add_option("--admin-filter", fit_opt.admin_min,
                  "drop nodes with out=0 and in>=N, plus their edges");
  fit->add_option("--pot-quantile", fit_opt.pot_quantile,
                  "radial threshold quantile");
  fit->add_option("--kde-grid", fit_opt.kde_grid, "kde evaluation points");
  fit->add_option("--iota-in", fit_opt.iota_in_override,
                  "skip k-selection, use this in-tail index");
  fit->add_option("--iota-out", fit_opt.iota_out_override,
                  "skip k-selection, use this out-tail index");
  fit->add_option("--out-dir", fit_opt.out_dir, "output directory");

  CompareOptions cmp_opt;
  CLI::App* cmp = app.add_subcommand(
      "compare", "simulate from a fit and tabulate data/model overlays");
  cmp->add_option("--fit", cmp_opt.fit_path, "estimates.json from `fit`")
      ->required();
  cmp->add_option("--reps", cmp_opt.reps, "replications")
      ->check(CLI::PositiveNumber);
  cmp->add_option("--seed", cmp_opt.seed, "base seed");
  cmp->add_option("--ccdf-points", cmp_opt.ccdf_points, "tail grid size");
  cmp->add_option("--kde-grid", cmp_opt.kde_grid, "kde evaluation points");
  cmp->add_option("--pot-quantile", cmp_opt.pot_quantile,
                  "radial threshold quantile");
  cmp->add_option("--out-dir", cmp_opt.out_dir, "output directory");

  VerifyCommon ver_common;
  CLI::App* verify = app.add_subcommand("verify", "internal consistency checks");
  verify->require_subcommand(1);
  unsigned ver_steps_enum = 2;
  std::uint64_t ver_runs = 100000;
  double ver_alpha_enum = 0.001;
  std::uint64_t ver_steps_embed = 200, ver_reps_embed = 2000;
  double ver_alpha_embed = 0.01;
  std::uint64_t ver_steps_growth = 5000, ver_seeds_growth = 20;
  double ver_tol_growth = 0.05;

  CLI::App* ven = verify->add_subcommand(
      "enumerate", "simulator law vs exact enumeration (chi-square)");
  add_model_flags(ven, ver_common.params);
  ven->add_option("--steps", ver_steps_enum, "steps (<= 4)");
  ven->add_option("--runs", ver_runs, "simulated runs");
  ven->add_option("--alpha", ver_alpha_enum, "rejection level");
  ven->add_option("--seed", ver_common.seed, "seed");
  ven->add_option("--out", ver_common.out_path, "report file (default stdout)");

  CLI::App* vem = verify->add_subcommand(
      "embedding", "first node's in-degree vs birth-immigration embedding (KS)");
  add_model_flags(vem, ver_common.params);
  vem->add_option("--steps", ver_steps_embed, "steps per run");
  vem->add_option("--reps", ver_reps_embed, "runs per sample");
  vem->add_option("--alpha", ver_alpha_embed, "rejection level");
  vem->add_option("--seed", ver_common.seed, "seed");
  vem->add_option("--out", ver_common.out_path, "report file (default stdout)");

  CLI::App* vgr = verify->add_subcommand(
      "growth", "batched-model growth products vs predicted slopes");
  add_model_flags(vgr, ver_common.params);
  vgr->add_option("--lambda", ver_common.lambda, "batch-size mean")
      ->required();
  vgr->add_option("--steps", ver_steps_growth, "batches per run");
  vgr->add_option("--seeds", ver_seeds_growth, "independent runs to average");
  vgr->add_option("--tol", ver_tol_growth, "slope tolerance");
  vgr->add_option("--seed", ver_common.seed, "seed");
  vgr->add_option("--out", ver_common.out_path, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sim->parsed()) {
      sim_opt.lambda_set = sim->count("--lambda") > 0;
      run_simulate(sim_opt);
    } else if (theory->parsed()) {
      run_theory(theory_opt);
    } else if (fit->parsed()) {
      run_fit(fit_opt);
    } else if (cmp->parsed()) {
      run_compare(cmp_opt);
    } else if (verify->parsed()) {
      if (ven->parsed()) {
        run_verify_enumerate(ver_common, ver_steps_enum, ver_runs,
                             ver_alpha_enum);
      } else if (vem->parsed()) {
        run_verify_embedding(ver_common, ver_steps_embed, ver_reps_embed,
                             ver_alpha_embed);
      } else {
        ver_common.lambda_set = vgr->count("--lambda") > 0;
        run_verify_growth(ver_common, ver_steps_growth, ver_seeds_growth,
                          ver_tol_growth);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace panet
