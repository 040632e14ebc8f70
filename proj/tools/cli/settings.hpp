#pragma once

#include <complex>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace qlga::cli {

/// Invalid configuration. The message already carries the location.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Radians from "1.25", "pi", "-pi/12", "7pi/24", "2pi".
double parse_angle(const std::string& text);

/// Unit-modulus phase from "1", "-1", "i", "-i" or "e^i<angle>".
std::complex<double> parse_pair_phase(const std::string& text);

/// Raw key/value settings, remembering where each value came from so that
/// errors can point at it ("run.cfg:4" or "--theta").
class Settings {
public:
  void set(const std::string& key, const std::string& value, std::string origin);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string origin(const std::string& key) const;
  const std::map<std::string, std::pair<std::string, std::string>>& entries() const { return values_; }

private:
  // key -> (value, origin)
  std::map<std::string, std::pair<std::string, std::string>> values_;
};

/// Reads `key = value` lines. Blank lines and text after '#' are ignored.
/// `source` names the stream in error messages.
Settings read_settings(std::istream& in, const std::string& source);
Settings read_settings_file(const std::string& path);

} // namespace qlga::cli
