#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "qlga/model.hpp"

namespace qlga {

/// Amplitudes psi_alpha(x) over the ring, stored at index 2*x + index_of(alpha).
class OneParticleState {
public:
  explicit OneParticleState(Lattice lattice);
  OneParticleState(Lattice lattice, std::vector<complex> amplitudes);

  static OneParticleState delta(Lattice lattice, std::size_t x, Velocity v);
  /// Gaussian-distributed amplitudes, normalized to 1.
  static OneParticleState random(Lattice lattice, std::mt19937_64& rng);

  const Lattice& lattice() const { return lattice_; }
  std::size_t sites() const { return lattice_.size(); }

  complex& operator()(std::size_t x, Velocity v) { return amps_[2 * x + index_of(v)]; }
  complex operator()(std::size_t x, Velocity v) const { return amps_[2 * x + index_of(v)]; }

  std::span<complex> amplitudes() { return amps_; }
  std::span<const complex> amplitudes() const { return amps_; }

  double norm_squared() const;
  /// Returns a copy scaled to unit norm; throws NormError for the zero state.
  OneParticleState normalized() const;

  OneParticleState& operator+=(const OneParticleState& other);
  OneParticleState& operator*=(complex s);

private:
  Lattice lattice_;
  std::vector<complex> amps_;
};

OneParticleState operator*(complex s, OneParticleState state);

/// Real phase per site. The evolution multiplies amplitude leaving site x by
/// exp(-i phi(x)).
class PotentialProfile {
public:
  explicit PotentialProfile(std::vector<double> phases);

  static PotentialProfile flat(const Lattice& lattice);
  /// phi = 0 at sites below `first_raised`, phi = height from there on.
  static PotentialProfile step(const Lattice& lattice, double height, std::size_t first_raised);

  std::size_t sites() const { return phases_.size(); }
  double operator[](std::size_t x) const { return phases_[x]; }
  std::span<const double> phases() const { return phases_; }

private:
  std::vector<double> phases_;
};

/// One timestep: (U psi)_{a'}(x) = sum_a S'_{a'a} exp(-i phi(x-a)) psi_a(x-a),
/// indices mod N. Parallel over sites.
OneParticleState step_one_particle(const OneParticleState& state, const ScatteringParams& params,
                                   const PotentialProfile& potential);
OneParticleState step_one_particle(const OneParticleState& state, const ScatteringParams& params);

/// sum conj(s1) s2 over all labels.
complex inner_product(const OneParticleState& s1, const OneParticleState& s2);

/// Largest entrywise |s1 - s2|.
double max_abs_difference(const OneParticleState& s1, const OneParticleState& s2);

enum class NormPolicy { RequireNormalized, AllowUnnormalized };

/// Physical evolution entry point: `steps` applications of the step rule.
/// With RequireNormalized the input norm must be 1 within 1e-9.
OneParticleState evolve(OneParticleState state, const ScatteringParams& params,
                        const PotentialProfile& potential, std::size_t steps,
                        NormPolicy policy = NormPolicy::RequireNormalized);

namespace reference {

/// Serial kernel kept as the baseline for the parallel one.
OneParticleState step_one_particle(const OneParticleState& state, const ScatteringParams& params,
                                   const PotentialProfile& potential);

} // namespace reference

} // namespace qlga
