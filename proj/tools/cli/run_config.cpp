#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qlga/error.hpp"

namespace qlga::cli {

namespace {

const std::vector<std::string> common_keys{"theta", "f", "f-phase", "interpretation", "N", "format",
                                           "output", "precision"};

const std::map<Experiment, std::vector<std::string>>& experiment_keys() {
  static const std::map<Experiment, std::vector<std::string>> keys{
      {Experiment::Evolve, {"steps", "initial", "x0", "velocity", "k", "epsilon", "seed", "potential", "phi"}},
      {Experiment::PlaneWave, {"k", "epsilon", "steps"}},
      {Experiment::Spectrum, {"initial", "x0", "velocity", "k", "epsilon", "seed", "steps"}},
      {Experiment::Step, {"omega", "phi"}},
      {Experiment::KleinSweep, {"omega", "phi-from", "phi-to", "grid"}},
      {Experiment::Bethe, {"k1", "k2", "eps1", "eps2", "variant"}},
      {Experiment::TwoEvolve, {"steps", "initial", "x1", "v1", "x2", "v2", "seed", "antisymmetric", "slice"}},
  };
  return keys;
}

// Pulls typed values out of Settings, recording the echo as it goes.
class Reader {
public:
  Reader(const Settings& s, RunConfig& cfg) : s_(s), cfg_(cfg) {}

  std::string text(const std::string& key, const std::string& fallback) {
    const std::string value = s_.get(key).value_or(fallback);
    cfg_.echo.emplace_back(key, value);
    return value;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(s_.origin(key) + ": " + key + ": " + what);
  }

  double angle(const std::string& key, const std::string& fallback) {
    const std::string value = text(key, fallback);
    try {
      return parse_angle(value);
    } catch (const ConfigError& e) {
      fail(key, e.what());
    }
  }

  long long integer(const std::string& key, long long fallback, long long lo, long long hi) {
    const std::string value = text(key, std::to_string(fallback));
    long long n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(value, &used);
      if (used != value.size()) {
        fail(key, "expected an integer, got '" + value + "'");
      }
    } catch (const std::logic_error&) {
      fail(key, "expected an integer, got '" + value + "'");
    }
    if (n < lo || n > hi) {
      fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + value);
    }
    return n;
  }

  int sign(const std::string& key, int fallback) {
    const std::string value = text(key, fallback > 0 ? "+1" : "-1");
    if (value == "+1" || value == "1" || value == "+" || value == "right") {
      return 1;
    }
    if (value == "-1" || value == "-" || value == "left") {
      return -1;
    }
    fail(key, "expected +1 or -1, got '" + value + "'");
  }

  std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& options) {
    const std::string value = text(key, fallback);
    if (std::find(options.begin(), options.end(), value) == options.end()) {
      std::string list;
      for (const auto& o : options) {
        list += (list.empty() ? "" : "|") + o;
      }
      fail(key, "expected one of " + list + ", got '" + value + "'");
    }
    return value;
  }

private:
  const Settings& s_;
  RunConfig& cfg_;
};

std::size_t default_sites(Experiment e) {
  switch (e) {
  case Experiment::Step:
    return 40;
  case Experiment::Bethe:
    return 16;
  case Experiment::TwoEvolve:
    return 8;
  default:
    return 32;
  }
}

void require(bool ok, const Settings& s, const std::string& key, const std::string& what) {
  if (!ok) {
    throw ConfigError(s.origin(key) + ": " + key + ": " + what);
  }
}

} // namespace

Experiment experiment_from_name(const std::string& name) {
  static const std::map<std::string, Experiment> names{
      {"evolve", Experiment::Evolve}, {"planewave", Experiment::PlaneWave}, {"spectrum", Experiment::Spectrum},
      {"step", Experiment::Step},     {"klein-sweep", Experiment::KleinSweep}, {"bethe", Experiment::Bethe},
      {"two-evolve", Experiment::TwoEvolve}};
  const auto it = names.find(name);
  if (it == names.end()) {
    throw ConfigError("unknown experiment '" + name +
                      "' (expected evolve, planewave, spectrum, step, klein-sweep, bethe or two-evolve)");
  }
  return it->second;
}

const std::vector<std::string>& allowed_keys(Experiment experiment) {
  static std::map<Experiment, std::vector<std::string>> merged;
  auto& keys = merged[experiment];
  if (keys.empty()) {
    keys = common_keys;
    const auto& extra = experiment_keys().at(experiment);
    keys.insert(keys.end(), extra.begin(), extra.end());
  }
  return keys;
}

RunConfig make_run_config(const std::string& experiment_name, const Settings& settings) {
  RunConfig cfg;
  cfg.experiment = experiment_from_name(experiment_name);
  cfg.experiment_name = experiment_name;
  cfg.echo.emplace_back("experiment", experiment_name);

  const auto& allowed = allowed_keys(cfg.experiment);
  for (const auto& [key, entry] : settings.entries()) {
    if (key == "experiment") {
      require(entry.first == experiment_name, settings, key, "does not match '" + experiment_name + "'");
      continue;
    }
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(entry.second + ": unknown key '" + key + "' for " + experiment_name);
    }
  }

  Reader r(settings, cfg);
  const Experiment e = cfg.experiment;

  cfg.theta = r.angle("theta", "pi/12");
  if (settings.has("f") && settings.has("f-phase")) {
    throw ConfigError(settings.origin("f-phase") + ": give either f or f-phase, not both");
  }
  if (settings.has("f-phase")) {
    cfg.f = std::polar(1.0, r.angle("f-phase", "0"));
  } else {
    const std::string f = r.text("f", "1");
    try {
      cfg.f = parse_pair_phase(f);
    } catch (const ConfigError& err) {
      r.fail("f", err.what());
    }
  }
  cfg.interpretation = r.choice("interpretation", "nonrelativistic", {"nonrelativistic", "relativistic"}) ==
                               "relativistic"
                           ? Interpretation::Relativistic
                           : Interpretation::Nonrelativistic;
  const long long max_sites = e == Experiment::TwoEvolve ? 256 : 1 << 16;
  cfg.sites = static_cast<std::size_t>(r.integer("N", static_cast<long long>(default_sites(e)), 4, max_sites));
  require(cfg.sites % 2 == 0, settings, "N", "must be even");

  switch (e) {
  case Experiment::Evolve:
  case Experiment::Spectrum:
    cfg.steps = static_cast<std::size_t>(r.integer("steps", e == Experiment::Evolve ? 8 : 0, 0, 1000000));
    cfg.initial = r.choice("initial", "delta", {"delta", "random", "planewave"});
    if (cfg.initial == "delta") {
      cfg.x0 = static_cast<std::size_t>(r.integer("x0", static_cast<long long>(cfg.sites / 2), 0,
                                                  static_cast<long long>(cfg.sites) - 1));
      cfg.velocity = r.sign("velocity", 1) > 0 ? Velocity::Right : Velocity::Left;
    } else if (cfg.initial == "random") {
      cfg.seed = static_cast<std::uint64_t>(r.integer("seed", 1, 0, std::numeric_limits<long long>::max()));
    } else {
      cfg.k = r.angle("k", "pi/16");
      cfg.epsilon = r.sign("epsilon", 1);
    }
    if (e == Experiment::Evolve) {
      cfg.potential = r.choice("potential", "flat", {"flat", "step"});
      if (cfg.potential == "step") {
        cfg.phi = r.angle("phi", "0");
      }
    }
    break;
  case Experiment::PlaneWave:
    cfg.k = r.angle("k", "pi/16");
    cfg.epsilon = r.sign("epsilon", 1);
    cfg.steps = static_cast<std::size_t>(r.integer("steps", 8, 0, 1000000));
    break;
  case Experiment::Step:
    cfg.omega = r.angle("omega", "pi/6");
    cfg.phi = r.angle("phi", "pi/24");
    break;
  case Experiment::KleinSweep:
    cfg.omega = r.angle("omega", "pi/6");
    cfg.phi_from = r.angle("phi-from", "0");
    cfg.phi_to = r.angle("phi-to", "pi/2");
    cfg.grid = static_cast<std::size_t>(r.integer("grid", 97, 2, 1000000));
    require(cfg.phi_to > cfg.phi_from, settings, "phi-to", "must exceed phi-from");
    break;
  case Experiment::Bethe: {
    cfg.k1 = r.angle("k1", "pi/8");
    cfg.k2 = r.angle("k2", "pi/16");
    cfg.eps1 = r.sign("eps1", 1);
    cfg.eps2 = r.sign("eps2", 1);
    const std::string v = r.choice("variant", "left", {"left", "right", "antisym"});
    cfg.variant = v == "left" ? BetheVariant::IncidentLeft
                  : v == "right" ? BetheVariant::IncidentRight
                                 : BetheVariant::Antisymmetric;
    break;
  }
  case Experiment::TwoEvolve: {
    cfg.steps = static_cast<std::size_t>(r.integer("steps", 8, 0, 100000));
    cfg.initial = r.choice("initial", "basis", {"basis", "random"});
    const auto n = static_cast<long long>(cfg.sites);
    if (cfg.initial == "basis") {
      cfg.first.x = static_cast<std::size_t>(r.integer("x1", n / 2 - 2, 0, n - 1));
      cfg.first.v = r.sign("v1", 1) > 0 ? Velocity::Right : Velocity::Left;
      cfg.second.x = static_cast<std::size_t>(r.integer("x2", n / 2 + 2, 0, n - 1));
      cfg.second.v = r.sign("v2", -1) > 0 ? Velocity::Right : Velocity::Left;
      require(!(cfg.first == cfg.second), settings, "x2", "both particles on the same label");
    } else {
      cfg.seed = static_cast<std::uint64_t>(r.integer("seed", 1, 0, std::numeric_limits<long long>::max()));
    }
    cfg.antisymmetric = r.choice("antisymmetric", "false", {"true", "false"}) == "true";
    cfg.slice = r.text("slice", "diagonal");
    if (cfg.slice.rfind("x2=", 0) == 0) {
      try {
        std::size_t used = 0;
        const long long x2 = std::stoll(cfg.slice.substr(3), &used);
        require(used == cfg.slice.size() - 3 && x2 >= 0 && x2 < n, settings, "slice", "x2 outside the lattice");
        cfg.slice_x2 = static_cast<std::size_t>(x2);
      } catch (const std::logic_error&) {
        r.fail("slice", "expected diagonal or x2=<site>");
      }
    } else {
      require(cfg.slice == "diagonal", settings, "slice", "expected diagonal or x2=<site>");
    }
    break;
  }
  }

  cfg.format = r.choice("format", e == Experiment::Bethe ? "json" : "csv", {"csv", "json"}) == "json" ? Format::Json
                                                                                                       : Format::Csv;
  cfg.precision = static_cast<int>(r.integer("precision", 15, 6, 17));
  cfg.output = settings.get("output").value_or("");

  return cfg;
}

RunConfig make_run_config(const Settings& settings) {
  const auto name = settings.get("experiment");
  if (!name) {
    throw ConfigError("config: missing 'experiment = <name>'");
  }
  try {
    experiment_from_name(*name);
  } catch (const ConfigError& e) {
    throw ConfigError(settings.origin("experiment") + ": " + e.what());
  }
  return make_run_config(*name, settings);
}

} // namespace qlga::cli
