#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "run_config.hpp"

namespace qlga::cli {

using Json = nlohmann::ordered_json;

/// Verification outcome reported alongside the data.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass() const { return value <= tolerance; }
};

/// Output of one experiment: a table of already formatted cells, scalar
/// results (strings) and checks.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Json results = Json::object();
  std::vector<Check> checks;
};

/// "%.<precision>g", with negative zero printed as 0.
std::string format_number(double value, int precision);

/// `# qlga v<version> | key=value ...`
std::string header_line(const RunConfig& config);

void write_csv(const RunConfig& config, const Report& report, std::ostream& out);
void write_json(const RunConfig& config, const Report& report, std::ostream& out);

} // namespace qlga::cli
