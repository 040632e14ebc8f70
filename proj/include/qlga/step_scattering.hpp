#pragma once

#include <cstddef>
#include <string_view>

#include "qlga/model.hpp"
#include "qlga/one_particle.hpp"

namespace qlga {

enum class Regime { Transmitting, Evanescent, KleinParadox, Critical };

std::string_view to_string(Regime regime);

/// A right-moving plane wave of frequency omega meeting a potential step of
/// height phi between x = 0 and x = 1.
///
/// Valid problems have theta in (0, pi/2), omega in (theta, pi - theta) and
/// 0 <= phi < omega + pi - theta; past that last bound the transmitted
/// frequency falls into the gap around pi.
struct StepProblem {
  double theta = 0.0;
  double omega = 0.0;
  double phi = 0.0;

  /// Throws FlatBandError for cos(theta) = 0 and ParameterError otherwise.
  void validate() const;
  ScatteringParams params() const { return ScatteringParams(theta); }
  /// Transmitted frequency omega - phi.
  double transmitted_omega() const { return omega - phi; }
};

struct StepSolution {
  double k = 0.0;
  complex kprime{};
  complex A{};
  complex B{};
  Regime regime = Regime::Transmitting;
};

/// Boundary tolerance for Critical classification.
inline constexpr double critical_tolerance = 1e-12;

/// k' with cos(omega - phi) = cos theta cos k'. Real roots are taken in
/// [0, pi]; otherwise the root with Im k' > 0 so the transmitted wave decays.
complex transmitted_wavenumber(const StepProblem& problem);

struct StepCoefficients {
  complex A{};
  complex B{};
};

/// Reflection A and transmission B solving the two boundary equations at the
/// step exactly, with the transmitted spinor built at frequency omega - phi:
///   A = -(a(e^{ik'} - e^{ik}) - s) / (a(e^{ik'} - e^{-ik}) - s),  B = e^{i phi}(1 + A),
/// where s = e^{-i(omega - phi)} - e^{-i omega}. Reduces to A = 0, B = 1 at phi = 0.
StepCoefficients step_coefficients(const StepProblem& problem);

Regime classify_regime(const StepProblem& problem);

StepSolution solve_step(const StepProblem& problem);

/// Largest residual of the two matching conditions at x = 0 and x = 1,
/// evaluated with the unnormalized plane-wave spinors.
double matching_residual(const StepProblem& problem, const StepSolution& solution);

/// Index of the site that plays x = 0 on a lattice window; site i sits at
/// x = i - step_origin(lattice).
std::size_t step_origin(const Lattice& lattice);
long long step_position(const Lattice& lattice, std::size_t site);

/// phi(x) = 0 for x <= 0 and problem.phi for x >= 1 on the window.
PotentialProfile step_potential(const StepProblem& problem, const Lattice& lattice);

/// Piecewise eigenfunction: incident plus A times reflected wave for x <= 0,
/// B times the transmitted wave for x >= 1. Unnormalized.
OneParticleState build_step_eigenfunction(const StepProblem& problem, const Lattice& lattice);

/// max |e^{-i omega} psi(x) - (U psi)(x)| over sites away from the periodic
/// seam (the first and last site of the window are skipped).
double verify_step_eigenfunction(const OneParticleState& state, const StepProblem& problem);

} // namespace qlga
