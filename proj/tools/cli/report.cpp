#include "report.hpp"

#include <cstdio>

#ifndef QLGA_VERSION_STRING
#define QLGA_VERSION_STRING "0.0.0"
#endif

namespace qlga::cli {

std::string format_number(double value, int precision) {
  if (value == 0.0) {
    value = 0.0;
  }
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
  return buffer;
}

std::string header_line(const RunConfig& config) {
  std::string line = std::string("# qlga v") + QLGA_VERSION_STRING + " |";
  for (const auto& [key, value] : config.echo) {
    line += " " + key + "=" + value;
  }
  return line;
}

void write_csv(const RunConfig& config, const Report& report, std::ostream& out) {
  out << header_line(config) << '\n';
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << report.columns[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << row[i];
    }
    out << '\n';
  }
}

void write_json(const RunConfig& config, const Report& report, std::ostream& out) {
  Json doc;
  Json cfg = Json::object();
  cfg["version"] = QLGA_VERSION_STRING;
  for (const auto& [key, value] : config.echo) {
    cfg[key] = value;
  }
  doc["config"] = cfg;

  Json results = report.results;
  if (!report.columns.empty()) {
    results["columns"] = report.columns;
    results["rows"] = report.rows;
  }
  doc["results"] = results;

  Json checks = Json::object();
  for (const Check& c : report.checks) {
    checks[c.name] = {{"value", format_number(c.value, config.precision)},
                      {"tolerance", format_number(c.tolerance, 3)},
                      {"pass", c.pass()}};
  }
  doc["checks"] = checks;
  out << doc.dump(2) << '\n';
}

} // namespace qlga::cli
