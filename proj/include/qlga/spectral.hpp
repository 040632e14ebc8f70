#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qlga/model.hpp"
#include "qlga/one_particle.hpp"

namespace qlga {

/// Two-component spinor indexed by index_of(Velocity).
using Spinor = std::array<complex, 2>;

/// Eigenmode label of the flat-potential evolution: wave number k, branch
/// epsilon and frequency omega in [0, pi] with eigenvalue exp(-i epsilon omega).
struct PlaneWave {
  double k = 0.0;
  int epsilon = +1;
  double omega = 0.0;
  Spinor spinor{};              ///< unit Euclidean norm
  bool fallback_spinor = false; ///< primary closed form vanished, alternate row used
  bool branch_collision = false;///< omega in {0, pi}; both branches share one eigenvalue

  /// epsilon * omega; on a branch collision both labels report +omega.
  double signed_omega() const { return branch_collision ? omega : epsilon * omega; }
  complex eigenvalue() const { return std::polar(1.0, -epsilon * omega); }
};

/// omega = arccos(cos theta cos k), principal value in [0, pi].
double dispersion_omega(double theta, double k);

/// Real k >= 0 with cos omega = cos theta cos k. Throws ParameterError when
/// omega lies in a gap (no real solution) and FlatBandError when cos theta = 0.
double incident_wavenumber(double theta, double omega);

/// Unnormalized eigenvector of the plane-wave transfer matrix for eigenvalue
/// `eigenvalue`: (a e^{ik} - eigenvalue, -b e^{-ik}) in (Right, Left) order.
/// Accepts complex k so evanescent modes share the same formula.
Spinor raw_spinor(const ScatteringParams& params, complex k, complex eigenvalue);

/// Mode data for (k, epsilon). k need not be quantized.
PlaneWave plane_wave_mode(const ScatteringParams& params, double k, int epsilon);

/// k = 2 pi n / N for n = -N/2 + 1 .. N/2, i.e. k in (-pi, pi].
std::vector<double> quantized_wavenumbers(const Lattice& lattice);

/// Integer n with k = 2 pi n / N reduced into (-N/2, N/2]. Throws
/// ParameterError when k is not on the lattice grid.
long long wavenumber_index(const Lattice& lattice, double k);

/// psi(x) = e^{ikx} spinor / sqrt(N). k must be quantized.
OneParticleState make_plane_wave(const Lattice& lattice, const ScatteringParams& params, double k, int epsilon);
OneParticleState plane_wave_state(const Lattice& lattice, const PlaneWave& mode);

/// Components of a state in the orthonormal |k, epsilon> basis. Mode j
/// corresponds to coefficient j; modes are ordered by k then epsilon (+, -).
struct SpectralDecomposition {
  Lattice lattice;
  std::vector<PlaneWave> modes;
  std::vector<complex> coefficients;
  /// Wave numbers where the primary spinor form degenerated.
  std::vector<double> fallback_wavenumbers;

  double total_probability() const;
  std::vector<double> probabilities() const;
};

SpectralDecomposition decompose(const OneParticleState& state, const ScatteringParams& params);
OneParticleState reconstruct(const SpectralDecomposition& decomposition);

/// <k> = sum k |c|^2 and <omega> = sum epsilon omega |c|^2.
double expectation_k(const SpectralDecomposition& decomposition);
double expectation_omega(const SpectralDecomposition& decomposition);
double expectation_k(const OneParticleState& state, const ScatteringParams& params);
double expectation_omega(const OneParticleState& state, const ScatteringParams& params);

struct ConservationReport {
  std::size_t steps = 0;
  double max_probability_drift = 0.0;
  double k_drift = 0.0;
  double omega_drift = 0.0;
};

/// Evolves `steps` times at flat potential and compares every |c_eps(k)|^2,
/// <k> and <omega> against their initial values.
ConservationReport spectral_probabilities_conserved(const OneParticleState& state, const ScatteringParams& params,
                                                    std::size_t steps);

namespace reference {

SpectralDecomposition decompose(const OneParticleState& state, const ScatteringParams& params);

} // namespace reference

} // namespace qlga
