#include "qlga/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <limits>
#include <span>
#include <string>

#include <Eigen/Eigenvalues>

#include "qlga/error.hpp"

namespace qlga::oracle {

namespace {

std::size_t one_label(std::size_t x, Velocity v) { return 2 * x + index_of(v); }

std::vector<long long> position_lookup(const std::vector<std::size_t>& storage_index, std::size_t slots) {
  std::vector<long long> lookup(slots, -1);
  for (std::size_t j = 0; j < storage_index.size(); ++j) {
    lookup[storage_index[j]] = static_cast<long long>(j);
  }
  return lookup;
}

Eigen::VectorXcd gather(const DenseUnitary& op, std::span<const complex> amps) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(op.dimension()));
  for (std::size_t j = 0; j < op.dimension(); ++j) {
    v(static_cast<Eigen::Index>(j)) = amps[op.storage_index[j]];
  }
  return v;
}

void scatter(const DenseUnitary& op, const Eigen::VectorXcd& v, std::span<complex> amps) {
  for (std::size_t j = 0; j < op.dimension(); ++j) {
    amps[op.storage_index[j]] = v(static_cast<Eigen::Index>(j));
  }
}

} // namespace

DenseUnitary build_dense_one_particle(const Lattice& lattice, const ScatteringParams& params,
                                      const PotentialProfile& potential) {
  if (lattice.size() > max_one_particle_sites) {
    throw SizeGuardError("dense one-particle oracle limited to " + std::to_string(max_one_particle_sites) + " sites");
  }
  if (potential.sites() != lattice.size()) {
    throw DimensionError("potential does not match lattice");
  }
  const std::size_t dim = lattice.labels();
  DenseUnitary op{lattice, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)), {}};
  op.storage_index.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    op.storage_index[j] = j;
  }
  for (std::size_t x = 0; x < lattice.size(); ++x) {
    const complex departure = std::polar(1.0, -potential[x]);
    for (Velocity v : velocities) {
      const std::size_t target_site = lattice.wrap(static_cast<long long>(x) + sign(v));
      const auto col = static_cast<Eigen::Index>(one_label(x, v));
      for (Velocity out : velocities) {
        const auto row = static_cast<Eigen::Index>(one_label(target_site, out));
        op.matrix(row, col) += params.transfer(out, v) * departure;
      }
    }
  }
  return op;
}

DenseUnitary build_dense_two_particle(const Lattice& lattice, const ScatteringParams& params) {
  if (lattice.size() > max_two_particle_sites) {
    throw SizeGuardError("dense two-particle oracle limited to " + std::to_string(max_two_particle_sites) + " sites");
  }
  const std::size_t labels = lattice.labels();
  DenseUnitary op{lattice, {}, {}};
  for (std::size_t i = 0; i < labels; ++i) {
    for (std::size_t j = 0; j < labels; ++j) {
      if (i != j) {
        op.storage_index.push_back(i * labels + j);
      }
    }
  }
  const auto dim = static_cast<Eigen::Index>(op.dimension());
  op.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  const std::vector<long long> lookup = position_lookup(op.storage_index, labels * labels);

  // Columns are disjoint across threads; only this flag is shared.
  std::atomic<bool> hit_excluded{false};
  const auto add = [&](Eigen::Index col, Label first, Label second, complex amplitude) {
    const std::size_t slot = TwoParticleState::label_index(first) * labels + TwoParticleState::label_index(second);
    if (lookup[slot] < 0) {
      hit_excluded = true;
      return;
    }
    op.matrix(lookup[slot], col) += amplitude;
  };

#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index col = 0; col < dim; ++col) {
    const std::size_t slot = op.storage_index[static_cast<std::size_t>(col)];
    const std::size_t l1 = slot / labels;
    const std::size_t l2 = slot % labels;
    const Label first{l1 / 2, velocity_at(l1 % 2)};
    const Label second{l2 / 2, velocity_at(l2 % 2)};
    const std::size_t y1 = lattice.wrap(static_cast<long long>(first.x) + sign(first.v));
    const std::size_t y2 = lattice.wrap(static_cast<long long>(second.x) + sign(second.v));
    if (y1 == y2) {
      // Opposite velocities meeting at one site.
      add(col, {y1, first.v}, {y2, second.v}, params.f());
      continue;
    }
    for (Velocity o1 : velocities) {
      for (Velocity o2 : velocities) {
        add(col, {y1, o1}, {y2, o2}, params.transfer(o1, first.v) * params.transfer(o2, second.v));
      }
    }
  }
  if (hit_excluded) {
    throw NumericalGuardError("two-particle rule produced amplitude on an excluded pair");
  }
  return op;
}

OneParticleState apply(const DenseUnitary& op, const OneParticleState& state) {
  if (!(op.lattice == state.lattice())) {
    throw DimensionError("dense operator and state lattices differ");
  }
  OneParticleState out(state.lattice());
  scatter(op, op.matrix * gather(op, state.amplitudes()), out.amplitudes());
  return out;
}

TwoParticleState apply(const DenseUnitary& op, const TwoParticleState& state) {
  if (!(op.lattice == state.lattice())) {
    throw DimensionError("dense operator and state lattices differ");
  }
  TwoParticleState out(state.lattice());
  scatter(op, op.matrix * gather(op, state.amplitudes()), out.amplitudes());
  return out;
}

double unitarity_defect(const DenseUnitary& op) {
  const Eigen::MatrixXcd gram = op.matrix.adjoint() * op.matrix;
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  return (gram - identity).cwiseAbs().maxCoeff();
}

double cross_sector_coupling(const DenseUnitary& two_particle) {
  const std::size_t labels = two_particle.lattice.labels();
  const auto sector = [&](std::size_t slot) {
    return sector_of((slot / labels) / 2, (slot % labels) / 2);
  };
  double worst = 0.0;
  for (std::size_t c = 0; c < two_particle.dimension(); ++c) {
    const Sector sc = sector(two_particle.storage_index[c]);
    for (std::size_t r = 0; r < two_particle.dimension(); ++r) {
      if (sector(two_particle.storage_index[r]) != sc) {
        worst = std::max(worst, std::abs(two_particle.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
      }
    }
  }
  return worst;
}

std::vector<complex> eigenvalues(const DenseUnitary& op) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(op.matrix, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalGuardError("dense eigensolver did not converge");
  }
  const Eigen::VectorXcd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

double multiset_mismatch(std::vector<complex> a, std::vector<complex> b) {
  if (a.size() != b.size()) {
    return std::numeric_limits<double>::infinity();
  }
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const complex& z : a) {
    std::size_t best = b.size();
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && std::abs(z - b[j]) < best_distance) {
        best_distance = std::abs(z - b[j]);
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_distance);
  }
  return worst;
}

} // namespace qlga::oracle
