#include "qlga/step_scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlga/error.hpp"
#include "qlga/spectral.hpp"

namespace qlga {

namespace {

constexpr std::size_t min_margin = 4;

complex plane_factor(complex k, long long x) { return std::exp(I * k * static_cast<double>(x)); }

} // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
  case Regime::Transmitting:
    return "transmitting";
  case Regime::Evanescent:
    return "evanescent";
  case Regime::KleinParadox:
    return "klein";
  case Regime::Critical:
    return "critical";
  }
  return "unknown";
}

void StepProblem::validate() const {
  if (!std::isfinite(theta) || !std::isfinite(omega) || !std::isfinite(phi)) {
    throw ParameterError("step problem parameters must be finite");
  }
  if (std::abs(std::cos(theta)) < 1e-14) {
    throw FlatBandError("theta = pi/2 gives a flat band; the transmitted wave number is undefined");
  }
  if (!(theta > 0.0 && theta < pi / 2)) {
    throw ParameterError("step problems need theta in (0, pi/2), got " + std::to_string(theta));
  }
  if (!(omega > theta && omega < pi - theta)) {
    throw ParameterError("incident frequency must lie in (theta, pi - theta), got " + std::to_string(omega));
  }
  if (!(phi >= 0.0)) {
    throw ParameterError("step height must be non-negative, got " + std::to_string(phi));
  }
  if (!(phi < omega + pi - theta)) {
    throw ParameterError("step height must stay below omega + pi - theta, got " + std::to_string(phi));
  }
}

complex transmitted_wavenumber(const StepProblem& problem) {
  problem.validate();
  const double c = std::cos(problem.transmitted_omega()) / std::cos(problem.theta);
  if (c > 1.0) {
    return {0.0, std::acosh(c)};
  }
  if (c < -1.0) {
    return {pi, std::acosh(-c)};
  }
  return {std::acos(c), 0.0};
}

StepCoefficients step_coefficients(const StepProblem& problem) {
  const double k = incident_wavenumber(problem.theta, problem.omega);
  const complex kp = transmitted_wavenumber(problem);
  const double a = std::cos(problem.theta);
  // Eigenvalue shift across the step; drops out when phi = 0.
  const complex shift = std::polar(1.0, -problem.transmitted_omega()) - std::polar(1.0, -problem.omega);
  const complex eikp = std::exp(I * kp);
  const complex denominator = a * (eikp - std::polar(1.0, -k)) - shift;
  if (std::abs(denominator) < 1e-14) {
    throw SingularMatchingError("step matching equations are singular");
  }
  const complex A = -(a * (eikp - std::polar(1.0, k)) - shift) / denominator;
  return {A, std::polar(1.0, problem.phi) * (1.0 + A)};
}

Regime classify_regime(const StepProblem& problem) {
  problem.validate();
  const double lower = problem.omega - problem.theta;
  const double upper = problem.omega + problem.theta;
  if (std::abs(problem.phi - lower) <= critical_tolerance || std::abs(problem.phi - upper) <= critical_tolerance) {
    return Regime::Critical;
  }
  if (problem.phi < lower) {
    return Regime::Transmitting;
  }
  if (problem.phi < upper) {
    return Regime::Evanescent;
  }
  return Regime::KleinParadox;
}

StepSolution solve_step(const StepProblem& problem) {
  const StepCoefficients c = step_coefficients(problem);
  return {incident_wavenumber(problem.theta, problem.omega), transmitted_wavenumber(problem), c.A, c.B,
          classify_regime(problem)};
}

double matching_residual(const StepProblem& problem, const StepSolution& solution) {
  const ScatteringParams params = problem.params();
  const complex incident_eig = std::polar(1.0, -problem.omega);
  const complex transmitted_eig = std::polar(1.0, -problem.transmitted_omega());
  const Spinor in = raw_spinor(params, solution.k, incident_eig);
  const Spinor refl = raw_spinor(params, -solution.k, incident_eig);
  const Spinor trans = raw_spinor(params, solution.kprime, transmitted_eig);
  const complex lowered = solution.B * std::polar(1.0, -problem.phi);
  constexpr std::size_t right = 0;
  constexpr std::size_t left = 1;

  // Left-moving flow out of x = 1 continues the x <= 0 ansatz.
  const complex at_one = lowered * plane_factor(solution.kprime, 1) * trans[left] -
                         (plane_factor(solution.k, 1) * in[left] + solution.A * plane_factor(-solution.k, 1) * refl[left]);
  // Right-moving flow out of x = 0 continues the x >= 1 ansatz.
  const complex at_zero = in[right] + solution.A * refl[right] - lowered * trans[right];
  return std::max(std::abs(at_one), std::abs(at_zero));
}

std::size_t step_origin(const Lattice& lattice) { return lattice.size() / 2 - 1; }

long long step_position(const Lattice& lattice, std::size_t site) {
  return static_cast<long long>(site) - static_cast<long long>(step_origin(lattice));
}

PotentialProfile step_potential(const StepProblem& problem, const Lattice& lattice) {
  return PotentialProfile::step(lattice, problem.phi, step_origin(lattice) + 1);
}

OneParticleState build_step_eigenfunction(const StepProblem& problem, const Lattice& lattice) {
  if (step_origin(lattice) < min_margin) {
    throw WindowError("lattice of " + std::to_string(lattice.size()) + " sites leaves less than " +
                      std::to_string(min_margin) + " sites left of the step");
  }
  const StepSolution sol = solve_step(problem);
  const ScatteringParams params = problem.params();
  const complex incident_eig = std::polar(1.0, -problem.omega);
  const Spinor in = raw_spinor(params, sol.k, incident_eig);
  const Spinor refl = raw_spinor(params, -sol.k, incident_eig);
  const Spinor trans = raw_spinor(params, sol.kprime, std::polar(1.0, -problem.transmitted_omega()));

  OneParticleState state(lattice);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const long long x = step_position(lattice, i);
    for (Velocity v : velocities) {
      const std::size_t c = index_of(v);
      complex value;
      if (x <= 0) {
        value = plane_factor(sol.k, x) * in[c] + sol.A * plane_factor(-sol.k, x) * refl[c];
      } else {
        value = sol.B * plane_factor(sol.kprime, x) * trans[c];
      }
      if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw WindowError("eigenfunction amplitude overflows at x = " + std::to_string(x));
      }
      state(i, v) = value;
    }
  }
  return state;
}

double verify_step_eigenfunction(const OneParticleState& state, const StepProblem& problem) {
  const Lattice& lattice = state.lattice();
  const OneParticleState stepped = step_one_particle(state, problem.params(), step_potential(problem, lattice));
  const complex eig = std::polar(1.0, -problem.omega);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < lattice.size(); ++i) {
    for (Velocity v : velocities) {
      worst = std::max(worst, std::abs(eig * state(i, v) - stepped(i, v)));
    }
  }
  return worst;
}

} // namespace qlga
