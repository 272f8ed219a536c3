#include "panet/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace panet {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_value(v));
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::string out = "# ";
  nlohmann::json header = config;
  header["version"] = kArtifactVersion;
  out += header.dump();
  out += '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << to_string();
  if (!file) throw std::runtime_error("write failed: " + path);
}

nlohmann::json to_json(const ParamEstimates& est) {
  return nlohmann::json{{"lambda_daily", est.lambda_daily},
                        {"lambda_hourly", est.lambda_hourly},
                        {"p_hat", est.p_hat},
                        {"delta_in_hat", est.delta_in_hat},
                        {"delta_out_hat", est.delta_out_hat},
                        {"iota_in_hat", est.iota_in_hat},
                        {"iota_out_hat", est.iota_out_hat},
                        {"n_steps", est.n_steps},
                        {"k_star_in", est.k_star_in},
                        {"k_star_out", est.k_star_out},
                        {"notes", est.notes}};
}

ParamEstimates param_estimates_from_json(const nlohmann::json& j) {
  ParamEstimates est;
  est.lambda_daily = j.at("lambda_daily").get<double>();
  est.lambda_hourly = j.at("lambda_hourly").get<double>();
  est.p_hat = j.at("p_hat").get<double>();
  est.delta_in_hat = j.at("delta_in_hat").get<double>();
  est.delta_out_hat = j.at("delta_out_hat").get<double>();
  est.iota_in_hat = j.at("iota_in_hat").get<double>();
  est.iota_out_hat = j.at("iota_out_hat").get<double>();
  est.n_steps = j.at("n_steps").get<std::uint64_t>();
  est.k_star_in = j.value("k_star_in", std::size_t{0});
  est.k_star_out = j.value("k_star_out", std::size_t{0});
  est.notes = j.value("notes", std::vector<std::string>{});
  return est;
}

CsvTable rate_series_table(const RateSeries& rates, nlohmann::json config) {
  CsvTable table;
  table.config = std::move(config);
  table.columns = {"day", "edge_rate", "node_rate", "ratio"};
  for (std::size_t i = 0; i < rates.day.size(); ++i)
    table.add_row({static_cast<double>(rates.day[i]), rates.edge_rate[i],
                   rates.node_rate[i], rates.ratio[i]});
  return table;
}

}  // namespace panet
