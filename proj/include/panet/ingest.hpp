#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace panet {

//! One timestamped interaction. Labels are opaque (not remapped); timestamp
//! is epoch seconds, or TemporalEdge::kNoTimestamp when the file had none.
struct TemporalEdge {
  static constexpr std::int64_t kNoTimestamp = -1;
  std::int64_t source = 0;
  std::int64_t target = 0;
  std::int64_t timestamp = kNoTimestamp;
  bool operator==(const TemporalEdge&) const = default;
};

//! An edge log sorted by timestamp (stable for ties), plus the context the
//! rate computations need: the UTC offset of the dataset's local clock and,
//! once a window filter ran, the window and the excluded local hours.
struct TemporalEdgeLog {
  std::vector<TemporalEdge> edges;
  std::int64_t tz_offset = 0;  // seconds added to get local time
  std::set<int> excluded_hours;
  std::int64_t window_start = 0;
  std::int64_t window_end = 0;
  std::size_t malformed_lines = 0;
  std::vector<std::size_t> malformed_line_numbers;  // 1-based, first few
};

//! Parses whitespace-separated "src dst [weight] [timestamp]" lines; '%'
//! starts a comment, blank lines are skipped. Malformed lines are counted
//! and referenced by line number instead of aborting the parse, but a file
//! with no parseable edge at all throws. Edges come back timestamp-sorted.
TemporalEdgeLog parse_edge_list(std::istream& input);

//! Writes the log back in the 4-field format (weight 1). parse o serialize
//! is the identity on well-formed logs.
void serialize_edge_list(const TemporalEdgeLog& log, std::ostream& out);

//! Keeps edges with start <= t < end whose local hour is not excluded.
//! Records the window and exclusions on the result. Throws on end < start.
TemporalEdgeLog filter_window(const TemporalEdgeLog& log, std::int64_t start,
                              std::int64_t end,
                              const std::set<int>& excluded_hours);

//! Per-day activity rates. A day's rate is the reciprocal mean gap between
//! consecutive events, scaled to events per active day; gaps spanning an
//! excluded block (overnight) are dropped, and days with no usable gap are
//! marked undefined. Node rates use first appearances of node labels as the
//! event stream. Weekly means average defined days over 7-day blocks
//! anchored at the window start.
struct RateSeries {
  std::vector<std::int64_t> day;  // local civil day index (days since epoch)
  std::vector<double> edge_rate;  // NaN when undefined
  std::vector<double> node_rate;
  std::vector<double> ratio;  // node/edge, NaN when either is undefined
  std::vector<std::uint64_t> edge_count;
  std::vector<std::uint64_t> node_count;
  std::vector<double> weekly_edge_rate;  // one entry per 7-day block
  std::vector<double> weekly_node_rate;

  double mean_edge_rate() const;  // over defined days
  double mean_node_rate() const;
};

RateSeries daily_rates(const TemporalEdgeLog& log);

struct NodeDegrees {
  std::int64_t label = 0;
  std::uint64_t in = 0;
  std::uint64_t out = 0;
};

//! Aggregates the log into per-label degree pairs, sorted by label.
//! A self-loop contributes one to both degrees of its node.
std::vector<NodeDegrees> degrees_from_log(const TemporalEdgeLog& log);

//! Drops pure broadcast receivers (out = 0 and in >= in_min), the moderation
//! artifact filter. Returns the kept rows and the number removed.
std::pair<std::vector<NodeDegrees>, std::size_t> remove_admin_nodes(
    const std::vector<NodeDegrees>& nodes, std::uint64_t in_min = 20);

//! Local civil day index of a timestamp under the log's UTC offset.
std::int64_t local_day(std::int64_t timestamp, std::int64_t tz_offset);

//! Local hour (0..23) of a timestamp under the given offset.
int local_hour(std::int64_t timestamp, std::int64_t tz_offset);

//! Days since 1970-01-01 of a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int year, unsigned month, unsigned day);

}  // namespace panet
