#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "panet/estimators.hpp"
#include "panet/ingest.hpp"

namespace panet {

inline constexpr const char* kArtifactVersion = "0.1.0";

//! Formats a double with 12 significant digits, locale-independent.
std::string format_value(double v);

//! A CSV table whose first line is "# <json>" carrying the run
//! configuration and artifact version, so outputs are self-describing.
struct CsvTable {
  nlohmann::json config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
  std::string to_string() const;
  void write(const std::string& path) const;
};

nlohmann::json to_json(const ParamEstimates& est);
ParamEstimates param_estimates_from_json(const nlohmann::json& j);

CsvTable rate_series_table(const RateSeries& rates, nlohmann::json config);

}  // namespace panet
