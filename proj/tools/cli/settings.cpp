#include "settings.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>

namespace qlga::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& text, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size() && std::isfinite(out);
  } catch (const std::exception&) {
    return false;
  }
}

} // namespace

double parse_angle(const std::string& raw) {
  const std::string text = trim(raw);
  double value = 0.0;
  if (parse_real(text, value)) {
    return value;
  }
  // [-][n]pi[/m]
  static const std::regex token(R"(^([+-]?)(\d*)\*?pi(?:/(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, token)) {
    throw ConfigError("cannot parse angle '" + raw + "' (use radians, pi/<int> or <int>pi/<int>)");
  }
  const double numerator = m[2].length() ? std::stod(m[2].str()) : 1.0;
  const double denominator = m[3].length() ? std::stod(m[3].str()) : 1.0;
  if (denominator == 0.0) {
    throw ConfigError("angle '" + raw + "' divides by zero");
  }
  const double angle = numerator * std::numbers::pi / denominator;
  return m[1] == "-" ? -angle : angle;
}

std::complex<double> parse_pair_phase(const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "1" || text == "+1") {
    return 1.0;
  }
  if (text == "-1") {
    return -1.0;
  }
  if (text == "i" || text == "+i") {
    return {0.0, 1.0};
  }
  if (text == "-i") {
    return {0.0, -1.0};
  }
  if (text.rfind("e^i", 0) == 0) {
    return std::polar(1.0, parse_angle(text.substr(3)));
  }
  throw ConfigError("cannot parse pair phase '" + raw + "' (use 1, -1, i, -i or e^i<angle>)");
}

void Settings::set(const std::string& key, const std::string& value, std::string origin) {
  values_[key] = {value, std::move(origin)};
}

std::optional<std::string> Settings::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    return std::nullopt;
  }
  return it->second.first;
}

std::string Settings::origin(const std::string& key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? "default " + key : it->second.second;
}

Settings read_settings(std::istream& in, const std::string& source) {
  Settings s;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = source + ":" + std::to_string(number);
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    if (s.has(key)) {
      throw ConfigError(where + ": '" + key + "' already set at " + s.origin(key));
    }
    s.set(key, value, where);
  }
  return s;
}

Settings read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  return read_settings(in, path);
}

} // namespace qlga::cli
