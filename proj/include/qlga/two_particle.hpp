#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "qlga/model.hpp"
#include "qlga/spectral.hpp"

namespace qlga {

/// One-particle basis label (x, alpha). Ordered lexicographically with
/// Left (-1) before Right (+1) at equal x.
struct Label {
  std::size_t x = 0;
  Velocity v = Velocity::Right;

  friend bool operator==(const Label&, const Label&) = default;
  friend std::strong_ordering operator<=>(const Label& l, const Label& r) {
    if (auto c = l.x <=> r.x; c != 0) {
      return c;
    }
    return sign(l.v) <=> sign(r.v);
  }
};

/// Amplitudes psi_{a1 a2}(x1, x2) over ordered label pairs. Stored densely
/// over all (2N)^2 pairs; the 2N coincident pairs (x1,a1) = (x2,a2) are
/// excluded by the exclusion principle and pinned to zero.
class TwoParticleState {
public:
  explicit TwoParticleState(Lattice lattice);

  static TwoParticleState basis(Lattice lattice, Label first, Label second);
  /// Gaussian amplitudes on every allowed pair, normalized to 1.
  static TwoParticleState random(Lattice lattice, std::mt19937_64& rng);

  const Lattice& lattice() const { return lattice_; }
  std::size_t sites() const { return lattice_.size(); }

  std::size_t flat_index(Label first, Label second) const {
    return label_index(first) * lattice_.labels() + label_index(second);
  }
  static std::size_t label_index(Label l) { return 2 * l.x + index_of(l.v); }

  complex& operator()(Label first, Label second) { return amps_[flat_index(first, second)]; }
  complex operator()(Label first, Label second) const { return amps_[flat_index(first, second)]; }

  std::span<complex> amplitudes() { return amps_; }
  std::span<const complex> amplitudes() const { return amps_; }

  double norm_squared() const;
  TwoParticleState normalized() const;
  /// Largest magnitude stored on an excluded pair; zero for valid states.
  double excluded_magnitude() const;

  TwoParticleState& operator+=(const TwoParticleState& other);
  TwoParticleState& operator*=(complex s);

private:
  Lattice lattice_;
  std::vector<complex> amps_;
};

complex inner_product(const TwoParticleState& s1, const TwoParticleState& s2);
double max_abs_difference(const TwoParticleState& s1, const TwoParticleState& s2);

enum class Sector { Interacting, Free };

std::string_view to_string(Sector sector);

/// Interacting when x1 - x2 is even, Free when odd.
Sector sector_of(std::size_t x1, std::size_t x2);
Sector sector_of(Label first, Label second);

TwoParticleState project_sector(const TwoParticleState& state, Sector sector);

/// One timestep. Pairs not meeting at a site evolve independently with the
/// one-particle rule; an opposite-velocity pair arriving at the same site
/// picks up f and keeps its velocities. Parallel over first labels.
TwoParticleState step_two_particle(const TwoParticleState& state, const ScatteringParams& params);

/// (psi(l1, l2) - psi(l2, l1)) / 2.
TwoParticleState antisymmetrize(const TwoParticleState& state);

/// max |psi(l1, l2) + psi(l2, l1)|.
double antisymmetry_defect(const TwoParticleState& state);

/// Product of two one-particle plane waves, restricted to allowed pairs.
/// Unnormalized; an exact eigenfunction on the Free sector.
TwoParticleState free_eigenfunction(const Lattice& lattice, const PlaneWave& first, const PlaneWave& second);

/// Which labels an eigenvalue residual is evaluated on.
struct ResidualDomain {
  std::optional<Sector> sector;
  /// Skip pairs with either particle on the first or last site of the ring.
  bool skip_seam = false;
};

/// max |eigenvalue * psi - U psi| over the chosen labels.
double eigen_residual(const TwoParticleState& state, const ScatteringParams& params, complex eigenvalue,
                      ResidualDomain domain = {});

enum class BetheVariant { IncidentLeft, IncidentRight, Antisymmetric };

std::string_view to_string(BetheVariant variant);

struct BetheCoefficients {
  complex A{};
  /// Absent for the antisymmetric variant, which has a single coefficient.
  std::optional<complex> B;
};

/// Coefficients of the two-particle ansatz. IncidentRight returns the primed
/// pair, i.e. the IncidentLeft formulas with the two modes exchanged. Throws
/// DegeneratePairError for identical modes or a vanishing denominator.
BetheCoefficients bethe_coefficients(double k1, double k2, int eps1, int eps2, const ScatteringParams& params,
                                     BetheVariant variant);

/// Closed-form two-particle eigenfunction label.
struct BetheEigenfunction {
  double k1 = 0.0;
  double k2 = 0.0;
  int eps1 = +1;
  int eps2 = +1;
  double omega = 0.0; ///< eps1 omega1 + eps2 omega2
  complex A{};
  complex B{};        ///< zero for Antisymmetric
  BetheVariant variant = BetheVariant::IncidentLeft;

  static BetheEigenfunction make(double k1, int eps1, double k2, int eps2, const ScatteringParams& params,
                                 BetheVariant variant);
  complex eigenvalue() const { return std::polar(1.0, -omega); }
};

/// Piecewise eigenfunction on the Interacting sector (zero on Free pairs).
/// Regions follow the lexicographic label order, which places the coincident
/// pair ((x,-1),(x,+1)) on the incident side of IncidentLeft.
TwoParticleState build_bethe_eigenfunction(const BetheEigenfunction& bethe, const ScatteringParams& params,
                                           const Lattice& lattice);

/// Eigenvalue residual away from the periodic seam.
double verify_bethe(const TwoParticleState& state, const BetheEigenfunction& bethe, const ScatteringParams& params);

/// arg B in (-pi, pi] for the distinguishable variants.
double transmission_phase(const BetheEigenfunction& bethe);

namespace reference {

TwoParticleState step_two_particle(const TwoParticleState& state, const ScatteringParams& params);

} // namespace reference

} // namespace qlga
