#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qlga/model.hpp"
#include "qlga/one_particle.hpp"
#include "qlga/two_particle.hpp"

namespace qlga::oracle {

/// Brute-force evolution matrix. Basis vector j corresponds to storage slot
/// storage_index[j] of the matching state type; for two particles only the
/// allowed (non-coincident) pairs appear.
struct DenseUnitary {
  Lattice lattice;
  Eigen::MatrixXcd matrix;
  std::vector<std::size_t> storage_index;

  std::size_t dimension() const { return storage_index.size(); }
};

inline constexpr std::size_t max_one_particle_sites = 256;
inline constexpr std::size_t max_two_particle_sites = 12;

/// Column (x, a) holds S'_{a'a} exp(-i phi(x)) at row (x + a, a').
DenseUnitary build_dense_one_particle(const Lattice& lattice, const ScatteringParams& params,
                                      const PotentialProfile& potential);

/// Columns built pair by pair from the basis-vector rules: independent
/// one-particle moves, or the f channel when the two particles land on the
/// same site with opposite velocities.
DenseUnitary build_dense_two_particle(const Lattice& lattice, const ScatteringParams& params);

OneParticleState apply(const DenseUnitary& op, const OneParticleState& state);
TwoParticleState apply(const DenseUnitary& op, const TwoParticleState& state);

/// max |M^dagger M - 1|.
double unitarity_defect(const DenseUnitary& op);

/// Largest |matrix element| between an Interacting and a Free pair.
double cross_sector_coupling(const DenseUnitary& two_particle);

std::vector<complex> eigenvalues(const DenseUnitary& op);

/// Greedy nearest-neighbour matching of two equally sized multisets; returns
/// the largest matched distance (infinity when the sizes differ).
double multiset_mismatch(std::vector<complex> a, std::vector<complex> b);

} // namespace qlga::oracle
