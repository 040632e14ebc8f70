#include "qlga/one_particle.hpp"

#include <cmath>
#include <string>

#include "qlga/error.hpp"

namespace qlga {

namespace {

void require_same_lattice(const Lattice& a, const Lattice& b, const char* what) {
  if (!(a == b)) {
    throw DimensionError(std::string(what) + ": lattice sizes differ (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
}

void require_potential_fits(const OneParticleState& state, const PotentialProfile& potential) {
  if (potential.sites() != state.sites()) {
    throw DimensionError("potential has " + std::to_string(potential.sites()) + " sites, state has " +
                         std::to_string(state.sites()));
  }
}

// Amplitude arriving at x with outgoing velocity `out`. Inflow with velocity
// v departs from x - v.
inline complex inflow(const OneParticleState& in, const ScatteringParams& params,
                      const PotentialProfile& potential, std::size_t x, Velocity out) {
  const Lattice& lattice = in.lattice();
  const auto xi = static_cast<long long>(x);
  complex sum{};
  for (Velocity v : velocities) {
    const std::size_t from = lattice.wrap(xi - sign(v));
    const double phi = potential[from];
    const complex phase = phi == 0.0 ? complex{1.0} : std::polar(1.0, -phi);
    sum += params.transfer(out, v) * phase * in(from, v);
  }
  return sum;
}

} // namespace

OneParticleState::OneParticleState(Lattice lattice)
    : lattice_(lattice), amps_(lattice.labels(), complex{}) {}

OneParticleState::OneParticleState(Lattice lattice, std::vector<complex> amplitudes)
    : lattice_(lattice), amps_(std::move(amplitudes)) {
  if (amps_.size() != lattice_.labels()) {
    throw DimensionError("expected " + std::to_string(lattice_.labels()) + " amplitudes, got " +
                         std::to_string(amps_.size()));
  }
}

OneParticleState OneParticleState::delta(Lattice lattice, std::size_t x, Velocity v) {
  if (x >= lattice.size()) {
    throw ParameterError("site " + std::to_string(x) + " outside lattice of size " + std::to_string(lattice.size()));
  }
  OneParticleState s(lattice);
  s(x, v) = 1.0;
  return s;
}

OneParticleState OneParticleState::random(Lattice lattice, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  OneParticleState s(lattice);
  for (auto& c : s.amps_) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c = {re, im};
  }
  return s.normalized();
}

double OneParticleState::norm_squared() const {
  double sum = 0.0;
  for (const auto& c : amps_) {
    sum += std::norm(c);
  }
  return sum;
}

OneParticleState OneParticleState::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw NormError("cannot normalize a zero or non-finite state");
  }
  OneParticleState out = *this;
  out *= 1.0 / std::sqrt(n2);
  return out;
}

OneParticleState& OneParticleState::operator+=(const OneParticleState& other) {
  require_same_lattice(lattice_, other.lattice_, "state addition");
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    amps_[i] += other.amps_[i];
  }
  return *this;
}

OneParticleState& OneParticleState::operator*=(complex s) {
  for (auto& c : amps_) {
    c *= s;
  }
  return *this;
}

OneParticleState operator*(complex s, OneParticleState state) {
  state *= s;
  return state;
}

PotentialProfile::PotentialProfile(std::vector<double> phases) : phases_(std::move(phases)) {
  for (double p : phases_) {
    if (!std::isfinite(p)) {
      throw ParameterError("potential phases must be finite");
    }
  }
}

PotentialProfile PotentialProfile::flat(const Lattice& lattice) {
  return PotentialProfile(std::vector<double>(lattice.size(), 0.0));
}

PotentialProfile PotentialProfile::step(const Lattice& lattice, double height, std::size_t first_raised) {
  std::vector<double> phases(lattice.size(), 0.0);
  for (std::size_t x = first_raised; x < lattice.size(); ++x) {
    phases[x] = height;
  }
  return PotentialProfile(std::move(phases));
}

OneParticleState step_one_particle(const OneParticleState& state, const ScatteringParams& params,
                                   const PotentialProfile& potential) {
  require_potential_fits(state, potential);
  OneParticleState out(state.lattice());
  const auto n = static_cast<long long>(state.sites());
#pragma omp parallel for schedule(static)
  for (long long x = 0; x < n; ++x) {
    const auto site = static_cast<std::size_t>(x);
    for (Velocity out_v : velocities) {
      out(site, out_v) = inflow(state, params, potential, site, out_v);
    }
  }
  return out;
}

OneParticleState step_one_particle(const OneParticleState& state, const ScatteringParams& params) {
  return step_one_particle(state, params, PotentialProfile::flat(state.lattice()));
}

namespace reference {

OneParticleState step_one_particle(const OneParticleState& state, const ScatteringParams& params,
                                   const PotentialProfile& potential) {
  require_potential_fits(state, potential);
  OneParticleState out(state.lattice());
  for (std::size_t x = 0; x < state.sites(); ++x) {
    for (Velocity out_v : velocities) {
      out(x, out_v) = inflow(state, params, potential, x, out_v);
    }
  }
  return out;
}

} // namespace reference

complex inner_product(const OneParticleState& s1, const OneParticleState& s2) {
  require_same_lattice(s1.lattice(), s2.lattice(), "inner product");
  const auto a = s1.amplitudes();
  const auto b = s2.amplitudes();
  complex sum{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::conj(a[i]) * b[i];
  }
  return sum;
}

double max_abs_difference(const OneParticleState& s1, const OneParticleState& s2) {
  require_same_lattice(s1.lattice(), s2.lattice(), "state comparison");
  const auto a = s1.amplitudes();
  const auto b = s2.amplitudes();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

OneParticleState evolve(OneParticleState state, const ScatteringParams& params, const PotentialProfile& potential,
                        std::size_t steps, NormPolicy policy) {
  if (policy == NormPolicy::RequireNormalized) {
    const double n2 = state.norm_squared();
    if (std::abs(n2 - 1.0) > 1e-9) {
      throw NormError("physical evolution requires a normalized state (|psi|^2 = " + std::to_string(n2) + ")");
    }
  }
  for (std::size_t t = 0; t < steps; ++t) {
    state = step_one_particle(state, params, potential);
  }
  return state;
}

} // namespace qlga
