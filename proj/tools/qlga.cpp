#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli/experiments.hpp"
#include "cli/run_config.hpp"
#include "cli/settings.hpp"

using namespace qlga::cli;

namespace {

const std::map<std::string, std::string> help{
    {"theta", "mass angle (radians, pi/<int>, <int>pi/<int>)"},
    {"f", "pair phase: 1, -1, i, -i or e^i<angle>"},
    {"f-phase", "pair phase given as its angle"},
    {"interpretation", "nonrelativistic|relativistic (fixes the hole phase d)"},
    {"N", "lattice sites (even, >= 4)"},
    {"format", "csv|json"},
    {"output", "output file (default stdout)"},
    {"precision", "significant digits, 6..17"},
    {"steps", "number of timesteps"},
    {"initial", "initial state"},
    {"x0", "site of the initial delta"},
    {"velocity", "velocity of the initial delta, +1|-1"},
    {"k", "wave number (must sit on the lattice grid)"},
    {"epsilon", "branch sign +1|-1"},
    {"seed", "random seed"},
    {"potential", "flat|step (step rises between x = 0 and x = 1 of the window)"},
    {"phi", "step height"},
    {"omega", "incident frequency"},
    {"phi-from", "first step height of the sweep"},
    {"phi-to", "last step height of the sweep"},
    {"grid", "number of sweep points (inclusive of both ends)"},
    {"k1", "wave number of particle 1"},
    {"k2", "wave number of particle 2"},
    {"eps1", "branch of particle 1"},
    {"eps2", "branch of particle 2"},
    {"variant", "left|right|antisym"},
    {"x1", "site of particle 1"},
    {"v1", "velocity of particle 1"},
    {"x2", "site of particle 2"},
    {"v2", "velocity of particle 2"},
    {"antisymmetric", "true|false: antisymmetrize the initial state"},
    {"slice", "diagonal|x2=<site>"},
};

struct Subcommand {
  const char* name;
  const char* description;
};

const Subcommand subcommands[] = {
    {"evolve", "evolve a one-particle state and print amplitudes per step"},
    {"planewave", "evolve a plane wave and check its phase rotation"},
    {"spectrum", "spectral decomposition of a (possibly evolved) state"},
    {"step", "scattering eigenfunction for a potential step"},
    {"klein-sweep", "sweep the step height across the three regimes"},
    {"bethe", "two-particle Bethe eigenfunction and its residual"},
    {"two-evolve", "evolve a two-particle state and print a slice"},
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum lattice gas automaton simulator", "qlga"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("qlga ") + QLGA_VERSION_STRING);

  Settings settings;
  std::string chosen;
  std::string config_path;

  for (const Subcommand& sc : subcommands) {
    CLI::App* sub = app.add_subcommand(sc.name, sc.description);
    sub->callback([&chosen, name = std::string(sc.name)] { chosen = name; });
    for (const std::string& key : allowed_keys(experiment_from_name(sc.name))) {
      sub->add_option_function<std::string>(
          "--" + key, [&settings, key](const std::string& v) { settings.set(key, v, "--" + key); }, help.at(key));
    }
  }
  CLI::App* run = app.add_subcommand("run", "run an experiment described by a config file");
  run->add_option("--config", config_path, "file of 'key = value' lines including 'experiment = <name>'")->required();
  run->callback([&chosen] { chosen = "run"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : BadConfig;
  }

  try {
    const RunConfig config =
        chosen == "run" ? make_run_config(read_settings_file(config_path)) : make_run_config(chosen, settings);
    return run_and_write(config, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "qlga: " << e.what() << '\n';
    return BadConfig;
  }
}
