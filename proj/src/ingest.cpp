#include "panet/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace panet {

namespace {

constexpr std::int64_t kSecondsPerDay = 86400;
constexpr std::size_t kMaxReportedLines = 20;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - floor_div(a, b) * b;
}

bool parse_int(const std::string& token, std::int64_t& out) {
  std::size_t pos = 0;
  try {
    out = std::stoll(token, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == token.size();
}

bool parse_number(const std::string& token) {
  std::size_t pos = 0;
  try {
    (void)std::stod(token, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == token.size();
}

}  // namespace

std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
  // Howard Hinnant's proleptic-Gregorian day count.
  year -= month <= 2;
  const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::int64_t local_day(std::int64_t timestamp, std::int64_t tz_offset) {
  return floor_div(timestamp + tz_offset, kSecondsPerDay);
}

int local_hour(std::int64_t timestamp, std::int64_t tz_offset) {
  return static_cast<int>(floor_mod(timestamp + tz_offset, kSecondsPerDay) /
                          3600);
}

TemporalEdgeLog parse_edge_list(std::istream& input) {
  TemporalEdgeLog log;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(input, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (fields >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '%') continue;

    auto malformed = [&] {
      ++log.malformed_lines;
      if (log.malformed_line_numbers.size() < kMaxReportedLines)
        log.malformed_line_numbers.push_back(lineno);
    };
    if (tokens.size() < 2 || tokens.size() > 4) {
      malformed();
      continue;
    }
    TemporalEdge edge;
    if (!parse_int(tokens[0], edge.source) ||
        !parse_int(tokens[1], edge.target)) {
      malformed();
      continue;
    }
    if (tokens.size() >= 3 && !parse_number(tokens[2])) {  // weight, ignored
      malformed();
      continue;
    }
    if (tokens.size() == 4) {
      if (!parse_int(tokens[3], edge.timestamp) || edge.timestamp < 0) {
        malformed();
        continue;
      }
    }
    log.edges.push_back(edge);
  }
  if (log.edges.empty())
    throw std::runtime_error("parse_edge_list: no parseable edge lines");
  std::stable_sort(log.edges.begin(), log.edges.end(),
                   [](const TemporalEdge& a, const TemporalEdge& b) {
                     return a.timestamp < b.timestamp;
                   });
  return log;
}

void serialize_edge_list(const TemporalEdgeLog& log, std::ostream& out) {
  for (const TemporalEdge& e : log.edges) {
    if (e.timestamp == TemporalEdge::kNoTimestamp)
      out << e.source << ' ' << e.target << '\n';
    else
      out << e.source << ' ' << e.target << " 1 " << e.timestamp << '\n';
  }
}

namespace {

void require_timestamps(const TemporalEdgeLog& log, const char* who) {
  for (const TemporalEdge& e : log.edges)
    if (e.timestamp == TemporalEdge::kNoTimestamp)
      throw std::invalid_argument(std::string(who) +
                                  ": log has edges without timestamps");
}

}  // namespace

TemporalEdgeLog filter_window(const TemporalEdgeLog& log, std::int64_t start,
                              std::int64_t end,
                              const std::set<int>& excluded_hours) {
  if (end < start)
    throw std::invalid_argument("filter_window: window end before start");
  for (int h : excluded_hours)
    if (h < 0 || h > 23)
      throw std::invalid_argument("filter_window: hour outside 0..23");
  require_timestamps(log, "filter_window");

  TemporalEdgeLog result;
  result.tz_offset = log.tz_offset;
  result.excluded_hours = log.excluded_hours;  // filters compose as unions
  result.excluded_hours.insert(excluded_hours.begin(), excluded_hours.end());
  if (log.window_end > log.window_start) {
    result.window_start = std::max(log.window_start, start);
    result.window_end = std::min(log.window_end, end);
  } else {
    result.window_start = start;
    result.window_end = end;
  }
  for (const TemporalEdge& e : log.edges) {
    if (e.timestamp < start || e.timestamp >= end) continue;
    if (excluded_hours.count(local_hour(e.timestamp, log.tz_offset)) ||
        log.excluded_hours.count(local_hour(e.timestamp, log.tz_offset)))
      continue;
    result.edges.push_back(e);
  }
  return result;
}

namespace {

// Index of the contiguous active-hour run containing `hour`, or -1 if the
// hour is excluded. Gaps are only trusted inside one run: a pair of events
// straddling an excluded block says nothing about the within-day tempo.
int active_run_of(const std::vector<int>& run_by_hour, int hour) {
  return run_by_hour[static_cast<std::size_t>(hour)];
}

std::vector<int> build_runs(const std::set<int>& excluded) {
  std::vector<int> run_by_hour(24, -1);
  int run = -1;
  bool in_run = false;
  for (int h = 0; h < 24; ++h) {
    if (excluded.count(h)) {
      in_run = false;
      continue;
    }
    if (!in_run) {
      ++run;
      in_run = true;
    }
    run_by_hour[static_cast<std::size_t>(h)] = run;
  }
  return run_by_hour;
}

// Reciprocal mean within-run gap, in events per active day. NaN when the
// day has no usable gap.
double day_rate(const std::vector<std::int64_t>& times,
                const std::vector<int>& run_by_hour, std::int64_t tz,
                double active_seconds) {
  double gap_sum = 0.0;
  std::uint64_t gap_count = 0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    int run_prev = active_run_of(run_by_hour, local_hour(times[i - 1], tz));
    int run_cur = active_run_of(run_by_hour, local_hour(times[i], tz));
    if (run_prev < 0 || run_prev != run_cur) continue;
    gap_sum += static_cast<double>(times[i] - times[i - 1]);
    ++gap_count;
  }
  if (gap_count == 0 || gap_sum <= 0.0)
    return std::numeric_limits<double>::quiet_NaN();
  return active_seconds / (gap_sum / static_cast<double>(gap_count));
}

double mean_defined(const std::vector<double>& v, std::size_t from,
                    std::size_t to) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = from; i < to && i < v.size(); ++i)
    if (!std::isnan(v[i])) {
      sum += v[i];
      ++n;
    }
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return sum / static_cast<double>(n);
}

}  // namespace

double RateSeries::mean_edge_rate() const {
  return mean_defined(edge_rate, 0, edge_rate.size());
}

double RateSeries::mean_node_rate() const {
  return mean_defined(node_rate, 0, node_rate.size());
}

RateSeries daily_rates(const TemporalEdgeLog& log) {
  if (log.edges.empty())
    throw std::invalid_argument("daily_rates: empty log");
  require_timestamps(log, "daily_rates");

  const std::int64_t tz = log.tz_offset;
  std::vector<int> run_by_hour = build_runs(log.excluded_hours);
  double active_seconds =
      3600.0 * static_cast<double>(24 - log.excluded_hours.size());
  if (log.excluded_hours.size() >= 24)
    throw std::invalid_argument("daily_rates: every hour excluded");

  // Edge events per day, and node first appearances per day.
  std::map<std::int64_t, std::vector<std::int64_t>> edge_times;
  std::map<std::int64_t, std::vector<std::int64_t>> node_times;
  std::unordered_map<std::int64_t, bool> seen;
  for (const TemporalEdge& e : log.edges) {
    edge_times[local_day(e.timestamp, tz)].push_back(e.timestamp);
    for (std::int64_t label : {e.source, e.target}) {
      if (!seen.emplace(label, true).second) continue;
      node_times[local_day(e.timestamp, tz)].push_back(e.timestamp);
    }
  }

  std::int64_t first_day, last_day;  // inclusive range of reported days
  if (log.window_end > log.window_start) {
    first_day = local_day(log.window_start, tz);
    last_day = local_day(log.window_end - 1, tz);
  } else {
    first_day = edge_times.begin()->first;
    last_day = edge_times.rbegin()->first;
  }

  RateSeries series;
  for (std::int64_t d = first_day; d <= last_day; ++d) {
    series.day.push_back(d);
    auto edges_it = edge_times.find(d);
    auto nodes_it = node_times.find(d);
    const std::vector<std::int64_t> empty;
    const auto& et = edges_it == edge_times.end() ? empty : edges_it->second;
    const auto& nt = nodes_it == node_times.end() ? empty : nodes_it->second;
    series.edge_count.push_back(et.size());
    series.node_count.push_back(nt.size());
    series.edge_rate.push_back(day_rate(et, run_by_hour, tz, active_seconds));
    series.node_rate.push_back(day_rate(nt, run_by_hour, tz, active_seconds));
    double er = series.edge_rate.back(), nr = series.node_rate.back();
    series.ratio.push_back(std::isnan(er) || std::isnan(nr)
                               ? std::numeric_limits<double>::quiet_NaN()
                               : nr / er);
  }
  for (std::size_t b = 0; b * 7 < series.day.size(); ++b) {
    series.weekly_edge_rate.push_back(
        mean_defined(series.edge_rate, b * 7, b * 7 + 7));
    series.weekly_node_rate.push_back(
        mean_defined(series.node_rate, b * 7, b * 7 + 7));
  }
  return series;
}

std::vector<NodeDegrees> degrees_from_log(const TemporalEdgeLog& log) {
  std::unordered_map<std::int64_t, NodeDegrees> by_label;
  for (const TemporalEdge& e : log.edges) {
    auto& src = by_label.try_emplace(e.source).first->second;
    src.label = e.source;
    ++src.out;
    auto& dst = by_label.try_emplace(e.target).first->second;
    dst.label = e.target;
    ++dst.in;
  }
  std::vector<NodeDegrees> nodes;
  nodes.reserve(by_label.size());
  for (const auto& [label, deg] : by_label) nodes.push_back(deg);
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeDegrees& a, const NodeDegrees& b) {
              return a.label < b.label;
            });
  return nodes;
}

std::pair<std::vector<NodeDegrees>, std::size_t> remove_admin_nodes(
    const std::vector<NodeDegrees>& nodes, std::uint64_t in_min) {
  std::vector<NodeDegrees> kept;
  kept.reserve(nodes.size());
  std::size_t dropped = 0;
  for (const NodeDegrees& n : nodes) {
    if (n.out == 0 && n.in >= in_min)
      ++dropped;
    else
      kept.push_back(n);
  }
  return {std::move(kept), dropped};
}

}  // namespace panet
