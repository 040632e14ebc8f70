#include "experiments.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include "qlga/error.hpp"
#include "qlga/one_particle.hpp"
#include "qlga/spectral.hpp"
#include "qlga/step_scattering.hpp"
#include "qlga/two_particle.hpp"

namespace qlga::cli {

namespace {

class Formatter {
public:
  explicit Formatter(int precision) : precision_(precision) {}
  std::string operator()(double v) const { return format_number(v, precision_); }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(std::size_t v) const { return std::to_string(v); }
  std::string operator()(int v) const { return std::to_string(v); }

private:
  int precision_;
};

ScatteringParams params_of(const RunConfig& c) { return ScatteringParams(c.theta, c.f, c.interpretation); }

const std::vector<std::string> amplitude_columns{"re_psi_plus", "im_psi_plus", "re_psi_minus", "im_psi_minus"};

void add_amplitude_rows(Report& r, const Formatter& fmt, std::size_t t, const OneParticleState& s) {
  for (std::size_t x = 0; x < s.sites(); ++x) {
    const complex p = s(x, Velocity::Right);
    const complex m = s(x, Velocity::Left);
    r.rows.push_back({fmt(t), fmt(x), fmt(p.real()), fmt(p.imag()), fmt(m.real()), fmt(m.imag())});
  }
}

std::vector<std::string> with_prefix(std::vector<std::string> prefix, const std::vector<std::string>& rest) {
  prefix.insert(prefix.end(), rest.begin(), rest.end());
  return prefix;
}

Json complex_json(const Formatter& fmt, complex z) { return {{"re", fmt(z.real())}, {"im", fmt(z.imag())}}; }

OneParticleState initial_state(const RunConfig& c, const Lattice& l, const ScatteringParams& p) {
  if (c.initial == "random") {
    std::mt19937_64 rng(c.seed);
    return OneParticleState::random(l, rng);
  }
  if (c.initial == "planewave") {
    return make_plane_wave(l, p, c.k, c.epsilon);
  }
  return OneParticleState::delta(l, c.x0, c.velocity);
}

Report run_evolve(const RunConfig& c, const Formatter& fmt) {
  const Lattice l(c.sites);
  const ScatteringParams p = params_of(c);
  const PotentialProfile pot =
      c.potential == "step" ? PotentialProfile::step(l, c.phi, step_origin(l) + 1) : PotentialProfile::flat(l);
  Report r;
  r.columns = with_prefix({"t", "x"}, amplitude_columns);
  OneParticleState s = initial_state(c, l, p);
  const double n0 = s.norm_squared();
  double drift = 0.0;
  for (std::size_t t = 0;; ++t) {
    add_amplitude_rows(r, fmt, t, s);
    drift = std::max(drift, std::abs(s.norm_squared() - n0));
    if (t == c.steps) {
      break;
    }
    s = step_one_particle(s, p, pot);
  }
  r.results["final_norm"] = fmt(s.norm_squared());
  r.checks.push_back({"norm_drift", drift, 1e-12});
  return r;
}

Report run_planewave(const RunConfig& c, const Formatter& fmt) {
  const Lattice l(c.sites);
  const ScatteringParams p = params_of(c);
  const double k = 2.0 * pi * static_cast<double>(wavenumber_index(l, c.k)) / static_cast<double>(c.sites);
  const PlaneWave mode = plane_wave_mode(p, k, c.epsilon);
  const OneParticleState psi0 = plane_wave_state(l, mode);
  Report r;
  r.columns = with_prefix({"t", "x"}, amplitude_columns);
  OneParticleState s = psi0;
  double phase_error = 0.0;
  for (std::size_t t = 0;; ++t) {
    add_amplitude_rows(r, fmt, t, s);
    const complex expected = std::polar(1.0, -mode.signed_omega() * static_cast<double>(t));
    phase_error = std::max(phase_error, max_abs_difference(s, expected * psi0));
    if (t == c.steps) {
      break;
    }
    s = step_one_particle(s, p);
  }
  r.results["k"] = fmt(k);
  r.results["epsilon"] = fmt(mode.epsilon);
  r.results["omega"] = fmt(mode.omega);
  r.results["fallback_spinor"] = mode.fallback_spinor;
  r.checks.push_back({"phase_evolution_error", phase_error, 1e-10});
  return r;
}

Report run_spectrum(const RunConfig& c, const Formatter& fmt) {
  const Lattice l(c.sites);
  const ScatteringParams p = params_of(c);
  OneParticleState s = initial_state(c, l, p);
  s = evolve(s, p, PotentialProfile::flat(l), c.steps, NormPolicy::AllowUnnormalized);
  const SpectralDecomposition d = decompose(s, p);
  Report r;
  r.columns = {"k", "epsilon", "omega", "re_coeff", "im_coeff", "probability"};
  for (std::size_t j = 0; j < d.modes.size(); ++j) {
    const PlaneWave& m = d.modes[j];
    const complex z = d.coefficients[j];
    r.rows.push_back({fmt(m.k), fmt(m.epsilon), fmt(m.signed_omega()), fmt(z.real()), fmt(z.imag()), fmt(std::norm(z))});
  }
  r.results["total_probability"] = fmt(d.total_probability());
  r.results["expectation_k"] = fmt(expectation_k(d));
  r.results["expectation_omega"] = fmt(expectation_omega(d));
  Json fallback = Json::array();
  for (double k : d.fallback_wavenumbers) {
    fallback.push_back(fmt(k));
  }
  r.results["fallback_wavenumbers"] = fallback;
  r.checks.push_back({"parseval", std::abs(d.total_probability() - s.norm_squared()), 1e-10});
  r.checks.push_back({"reconstruction", max_abs_difference(reconstruct(d), s), 1e-10});
  return r;
}

Report run_step(const RunConfig& c, const Formatter& fmt) {
  const Lattice l(c.sites);
  const StepProblem problem{c.theta, c.omega, c.phi};
  const StepSolution sol = solve_step(problem);
  const OneParticleState psi = build_step_eigenfunction(problem, l);
  Report r;
  r.columns = with_prefix({"x"}, amplitude_columns);
  for (std::size_t i = 0; i < l.size(); ++i) {
    const complex p = psi(i, Velocity::Right);
    const complex m = psi(i, Velocity::Left);
    r.rows.push_back(
        {fmt(step_position(l, i)), fmt(p.real()), fmt(p.imag()), fmt(m.real()), fmt(m.imag())});
  }
  r.results["regime"] = std::string(to_string(sol.regime));
  r.results["k"] = fmt(sol.k);
  r.results["kprime"] = complex_json(fmt, sol.kprime);
  r.results["transmitted_omega"] = fmt(problem.transmitted_omega());
  r.results["A"] = complex_json(fmt, sol.A);
  r.results["B"] = complex_json(fmt, sol.B);
  r.checks.push_back({"matching_residual", matching_residual(problem, sol), 1e-12});
  r.checks.push_back({"eigen_residual", verify_step_eigenfunction(psi, problem), 1e-10});
  return r;
}

Report run_klein_sweep(const RunConfig& c, const Formatter& fmt) {
  // Endpoints first so a bad range is a configuration problem.
  StepProblem{c.theta, c.omega, c.phi_from}.validate();
  StepProblem{c.theta, c.omega, c.phi_to}.validate();

  struct Row {
    double phi;
    Regime regime;
    complex kprime;
    complex A;
    complex B;
  };
  const auto n = static_cast<long long>(c.grid);
  std::vector<Row> rows(c.grid);
  std::vector<std::string> errors(c.grid);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const double phi = c.phi_from + (c.phi_to - c.phi_from) * static_cast<double>(i) / static_cast<double>(n - 1);
    try {
      const StepSolution s = solve_step({c.theta, c.omega, phi});
      rows[static_cast<std::size_t>(i)] = {phi, s.regime, s.kprime, s.A, s.B};
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      throw SingularMatchingError("sweep point " + std::to_string(i) + ": " + errors[i]);
    }
  }

  Report r;
  r.columns = {"phi", "regime", "re_kprime", "im_kprime", "abs_A_sq", "abs_B_sq"};
  for (const Row& row : rows) {
    r.rows.push_back({fmt(row.phi), std::string(to_string(row.regime)), fmt(row.kprime.real()), fmt(row.kprime.imag()),
                      fmt(std::norm(row.A)), fmt(std::norm(row.B))});
  }
  r.results["evanescent_from"] = fmt(c.omega - c.theta);
  r.results["klein_from"] = fmt(c.omega + c.theta);
  return r;
}

Report run_bethe(const RunConfig& c, const Formatter& fmt) {
  const Lattice l(c.sites);
  const ScatteringParams p = params_of(c);
  const BetheEigenfunction b = BetheEigenfunction::make(c.k1, c.eps1, c.k2, c.eps2, p, c.variant);
  const TwoParticleState psi = build_bethe_eigenfunction(b, p, l);
  const double residual = verify_bethe(psi, b, p);

  Report r;
  r.columns = {"quantity", "value"};
  const auto add = [&](const std::string& name, const std::string& value) {
    r.rows.push_back({name, value});
    r.results[name] = value;
  };
  add("variant", std::string(to_string(b.variant)));
  add("omega", fmt(b.omega));
  add("re_A", fmt(b.A.real()));
  add("im_A", fmt(b.A.imag()));
  add("abs_A", fmt(std::abs(b.A)));
  if (b.variant == BetheVariant::Antisymmetric) {
    r.checks.push_back({"abs_A_is_one", std::abs(std::abs(b.A) - 1.0), 1e-10});
    r.checks.push_back({"antisymmetry", antisymmetry_defect(psi), 1e-12});
  } else {
    add("re_B", fmt(b.B.real()));
    add("im_B", fmt(b.B.imag()));
    add("abs_A_sq_plus_abs_B_sq", fmt(std::norm(b.A) + std::norm(b.B)));
    if (std::abs(b.B) >= 1e-14) {
      add("transmission_phase", fmt(transmission_phase(b)));
    }
    r.checks.push_back({"coefficient_unitarity", std::abs(std::norm(b.A) + std::norm(b.B) - 1.0), 1e-10});
  }
  add("residual", fmt(residual));
  r.checks.push_back({"eigen_residual", residual, 1e-10});
  return r;
}

std::vector<std::pair<Label, Label>> slice_labels(const RunConfig& c, const Lattice& l) {
  std::vector<std::pair<Label, Label>> out;
  if (c.slice == "diagonal") {
    for (std::size_t x = 0; x < l.size(); ++x) {
      out.push_back({{x, Velocity::Right}, {x, Velocity::Left}});
      out.push_back({{x, Velocity::Left}, {x, Velocity::Right}});
    }
    return out;
  }
  for (std::size_t x = 0; x < l.size(); ++x) {
    for (Velocity v1 : velocities) {
      for (Velocity v2 : velocities) {
        const Label a{x, v1};
        const Label b{c.slice_x2, v2};
        if (!(a == b)) {
          out.push_back({a, b});
        }
      }
    }
  }
  return out;
}

Report run_two_evolve(const RunConfig& c, const Formatter& fmt) {
  const Lattice l(c.sites);
  const ScatteringParams p = params_of(c);
  TwoParticleState s(l);
  if (c.initial == "random") {
    std::mt19937_64 rng(c.seed);
    s = TwoParticleState::random(l, rng);
  } else {
    s = TwoParticleState::basis(l, c.first, c.second);
  }
  if (c.antisymmetric) {
    s = antisymmetrize(s).normalized();
  }
  const auto labels = slice_labels(c, l);
  Report r;
  r.columns = {"t", "x1", "alpha1", "x2", "alpha2", "re", "im"};
  const double n0 = s.norm_squared();
  double drift = 0.0;
  double asym = 0.0;
  double excluded = 0.0;
  for (std::size_t t = 0;; ++t) {
    for (const auto& [a, b] : labels) {
      const complex z = s(a, b);
      r.rows.push_back({fmt(t), fmt(a.x), fmt(sign(a.v)), fmt(b.x), fmt(sign(b.v)), fmt(z.real()), fmt(z.imag())});
    }
    drift = std::max(drift, std::abs(s.norm_squared() - n0));
    excluded = std::max(excluded, s.excluded_magnitude());
    if (c.antisymmetric) {
      asym = std::max(asym, antisymmetry_defect(s));
    }
    if (t == c.steps) {
      break;
    }
    s = step_two_particle(s, p);
  }
  r.results["final_norm"] = fmt(s.norm_squared());
  r.results["interacting_weight"] = fmt(project_sector(s, Sector::Interacting).norm_squared());
  r.checks.push_back({"norm_drift", drift, 1e-12});
  r.checks.push_back({"excluded_amplitude", excluded, 0.0});
  if (c.antisymmetric) {
    r.checks.push_back({"antisymmetry", asym, 1e-12});
  }
  return r;
}

} // namespace

Report run_experiment(const RunConfig& config) {
  const Formatter fmt(config.precision);
  switch (config.experiment) {
  case Experiment::Evolve:
    return run_evolve(config, fmt);
  case Experiment::PlaneWave:
    return run_planewave(config, fmt);
  case Experiment::Spectrum:
    return run_spectrum(config, fmt);
  case Experiment::Step:
    return run_step(config, fmt);
  case Experiment::KleinSweep:
    return run_klein_sweep(config, fmt);
  case Experiment::Bethe:
    return run_bethe(config, fmt);
  case Experiment::TwoEvolve:
    return run_two_evolve(config, fmt);
  }
  throw ConfigError("unknown experiment");
}

int run_and_write(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    report = run_experiment(config);
  } catch (const ConfigError& e) {
    err << "qlga: " << e.what() << '\n';
    return BadConfig;
  } catch (const ParameterError& e) {
    err << "qlga: invalid parameters: " << e.what() << '\n';
    return BadConfig;
  } catch (const NumericalGuardError& e) {
    err << "qlga: numerical guard: " << e.what() << '\n';
    return NumericalGuard;
  } catch (const std::exception& e) {
    err << "qlga: " << e.what() << '\n';
    return Failure;
  }

  std::ofstream file;
  if (!config.output.empty()) {
    file.open(config.output, std::ios::binary);
    if (!file) {
      err << "qlga: cannot write '" << config.output << "'\n";
      return BadConfig;
    }
  }
  std::ostream& sink = config.output.empty() ? out : file;
  if (config.format == Format::Json) {
    write_json(config, report, sink);
  } else {
    write_csv(config, report, sink);
  }
  return Ok;
}

} // namespace qlga::cli
