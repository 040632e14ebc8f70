#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qlga/model.hpp"
#include "qlga/two_particle.hpp"
#include "settings.hpp"

namespace qlga::cli {

enum class Experiment { Evolve, PlaneWave, Spectrum, Step, KleinSweep, Bethe, TwoEvolve };

enum class Format { Csv, Json };

/// Validated run description. `echo` lists every effective setting (given or
/// defaulted) in a fixed order, as text, for output headers.
struct RunConfig {
  Experiment experiment = Experiment::Evolve;
  std::string experiment_name;

  double theta = 0.0;
  std::complex<double> f = 1.0;
  Interpretation interpretation = Interpretation::Nonrelativistic;
  std::size_t sites = 32;
  std::uint64_t seed = 1;

  std::size_t steps = 0;
  std::string initial;
  std::size_t x0 = 0;
  Velocity velocity = Velocity::Right;
  double k = 0.0;
  int epsilon = 1;
  std::string potential = "flat";
  double phi = 0.0;

  double omega = 0.0;
  double phi_from = 0.0;
  double phi_to = 0.0;
  std::size_t grid = 0;

  double k1 = 0.0;
  double k2 = 0.0;
  int eps1 = 1;
  int eps2 = 1;
  BetheVariant variant = BetheVariant::IncidentLeft;

  Label first{};
  Label second{};
  bool antisymmetric = false;
  std::string slice = "diagonal";
  std::size_t slice_x2 = 0;

  Format format = Format::Csv;
  std::string output;
  int precision = 15;

  std::vector<std::pair<std::string, std::string>> echo;
};

Experiment experiment_from_name(const std::string& name);

/// Keys accepted for an experiment (common keys included).
const std::vector<std::string>& allowed_keys(Experiment experiment);

/// Validates settings for `experiment_name`. A settings key named
/// "experiment" must match when present.
RunConfig make_run_config(const std::string& experiment_name, const Settings& settings);

/// Settings file containing `experiment = <name>`.
RunConfig make_run_config(const Settings& settings);

} // namespace qlga::cli
