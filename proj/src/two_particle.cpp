#include "qlga/two_particle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlga/error.hpp"

namespace qlga {

namespace {

void require_same_lattice(const Lattice& a, const Lattice& b) {
  if (!(a == b)) {
    throw DimensionError("two-particle states live on different lattices (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
}

Label label_at(std::size_t index) { return {index / 2, velocity_at(index % 2)}; }

// New amplitude on the target pair (first, second), pulled from the sources
// that flow into it.
complex pulled_amplitude(const TwoParticleState& in, const ScatteringParams& params, Label first, Label second) {
  const Lattice& lattice = in.lattice();
  if (first == second) {
    return {};
  }
  const auto x1 = static_cast<long long>(first.x);
  const auto x2 = static_cast<long long>(second.x);
  if (first.x == second.x) {
    // Both particles arrived here from opposite sides and kept their velocities.
    const int s = sign(first.v);
    return params.f() * in(Label{lattice.wrap(x1 - s), first.v}, Label{lattice.wrap(x2 + s), second.v});
  }
  complex sum{};
  for (Velocity v1 : velocities) {
    const Label from1{lattice.wrap(x1 - sign(v1)), v1};
    const complex t1 = params.transfer(first.v, v1);
    for (Velocity v2 : velocities) {
      const Label from2{lattice.wrap(x2 - sign(v2)), v2};
      sum += t1 * params.transfer(second.v, v2) * in(from1, from2);
    }
  }
  return sum;
}

void pull_row(const TwoParticleState& in, const ScatteringParams& params, std::size_t first_index,
              TwoParticleState& out) {
  const Label first = label_at(first_index);
  const std::size_t labels = in.lattice().labels();
  for (std::size_t j = 0; j < labels; ++j) {
    const Label second = label_at(j);
    out(first, second) = pulled_amplitude(in, params, first, second);
  }
}

struct PairSpinors {
  Spinor s1;
  Spinor s2;
  double omega;
};

PairSpinors pair_spinors(double k1, int eps1, double k2, int eps2, const ScatteringParams& params) {
  const PlaneWave m1 = plane_wave_mode(params, k1, eps1);
  const PlaneWave m2 = plane_wave_mode(params, k2, eps2);
  return {m1.spinor, m2.spinor, m1.signed_omega() + m2.signed_omega()};
}

constexpr std::size_t R = 0; // index_of(Velocity::Right)
constexpr std::size_t L = 1; // index_of(Velocity::Left)

// Incident-from-the-left pair (A, B) given mode spinors in particle order.
BetheCoefficients incident_left(const Spinor& s1, const Spinor& s2, double dk, double omega, complex f) {
  const complex p_mp = s1[L] * s2[R];
  const complex p_pm = s1[R] * s2[L];
  const complex e = std::polar(1.0, -omega);
  const complex shift = std::polar(1.0, dk);
  const complex u = e * p_pm;
  const complex w = shift * f * p_mp;
  const complex denominator = u * u - w * w;
  const double scale = std::norm(u) + std::norm(w);
  if (!(scale > 1e-24) || std::abs(denominator) <= 1e-12 * scale) {
    throw DegeneratePairError("two-particle matching denominator vanishes for this momentum pair");
  }
  const complex A = p_mp * p_pm * (f * f - e * e) / denominator;
  const complex B = e * f * (std::conj(shift) * p_pm * p_pm - shift * p_mp * p_mp) / denominator;
  return {A, B};
}

BetheCoefficients antisymmetric(const Spinor& s1, const Spinor& s2, double dk, double omega, complex f) {
  const complex p_mp = s1[L] * s2[R];
  const complex p_pm = s1[R] * s2[L];
  const complex e = std::polar(1.0, -omega);
  const complex shift = std::polar(1.0, dk);
  const complex numerator = e * p_mp + f * std::conj(shift) * p_pm;
  const complex denominator = e * p_pm + f * shift * p_mp;
  const double scale = std::abs(p_mp) + std::abs(p_pm);
  if (!(scale > 1e-12) || std::abs(denominator) <= 1e-12 * scale) {
    throw DegeneratePairError("antisymmetric matching denominator vanishes for this momentum pair");
  }
  return {-numerator / denominator, std::nullopt};
}

bool same_mode(double k1, int eps1, double k2, int eps2) {
  const double dk = std::remainder(k1 - k2, 2.0 * pi);
  return eps1 == eps2 && std::abs(dk) < 1e-12;
}

} // namespace

TwoParticleState::TwoParticleState(Lattice lattice)
    : lattice_(lattice), amps_(lattice.labels() * lattice.labels(), complex{}) {}

TwoParticleState TwoParticleState::basis(Lattice lattice, Label first, Label second) {
  if (first.x >= lattice.size() || second.x >= lattice.size()) {
    throw ParameterError("basis label outside the lattice");
  }
  if (first == second) {
    throw ParameterError("exclusion principle: both particles cannot occupy the same label");
  }
  TwoParticleState s(lattice);
  s(first, second) = 1.0;
  return s;
}

TwoParticleState TwoParticleState::random(Lattice lattice, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  TwoParticleState s(lattice);
  const std::size_t labels = lattice.labels();
  for (std::size_t i = 0; i < labels; ++i) {
    for (std::size_t j = 0; j < labels; ++j) {
      if (i == j) {
        continue;
      }
      const double re = gauss(rng);
      const double im = gauss(rng);
      s.amps_[i * labels + j] = {re, im};
    }
  }
  return s.normalized();
}

double TwoParticleState::norm_squared() const {
  double sum = 0.0;
  for (const auto& c : amps_) {
    sum += std::norm(c);
  }
  return sum;
}

TwoParticleState TwoParticleState::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw NormError("cannot normalize a zero or non-finite two-particle state");
  }
  TwoParticleState out = *this;
  out *= 1.0 / std::sqrt(n2);
  return out;
}

double TwoParticleState::excluded_magnitude() const {
  const std::size_t labels = lattice_.labels();
  double worst = 0.0;
  for (std::size_t i = 0; i < labels; ++i) {
    worst = std::max(worst, std::abs(amps_[i * labels + i]));
  }
  return worst;
}

TwoParticleState& TwoParticleState::operator+=(const TwoParticleState& other) {
  require_same_lattice(lattice_, other.lattice_);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    amps_[i] += other.amps_[i];
  }
  return *this;
}

TwoParticleState& TwoParticleState::operator*=(complex s) {
  for (auto& c : amps_) {
    c *= s;
  }
  return *this;
}

complex inner_product(const TwoParticleState& s1, const TwoParticleState& s2) {
  require_same_lattice(s1.lattice(), s2.lattice());
  const auto a = s1.amplitudes();
  const auto b = s2.amplitudes();
  complex sum{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::conj(a[i]) * b[i];
  }
  return sum;
}

double max_abs_difference(const TwoParticleState& s1, const TwoParticleState& s2) {
  require_same_lattice(s1.lattice(), s2.lattice());
  const auto a = s1.amplitudes();
  const auto b = s2.amplitudes();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

std::string_view to_string(Sector sector) { return sector == Sector::Interacting ? "interacting" : "free"; }

Sector sector_of(std::size_t x1, std::size_t x2) {
  return (x1 % 2) == (x2 % 2) ? Sector::Interacting : Sector::Free;
}

Sector sector_of(Label first, Label second) { return sector_of(first.x, second.x); }

TwoParticleState project_sector(const TwoParticleState& state, Sector sector) {
  TwoParticleState out(state.lattice());
  const std::size_t labels = state.lattice().labels();
  for (std::size_t i = 0; i < labels; ++i) {
    for (std::size_t j = 0; j < labels; ++j) {
      const Label a = label_at(i);
      const Label b = label_at(j);
      if (sector_of(a, b) == sector) {
        out(a, b) = state(a, b);
      }
    }
  }
  return out;
}

TwoParticleState step_two_particle(const TwoParticleState& state, const ScatteringParams& params) {
  TwoParticleState out(state.lattice());
  const auto labels = static_cast<long long>(state.lattice().labels());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < labels; ++i) {
    pull_row(state, params, static_cast<std::size_t>(i), out);
  }
  return out;
}

namespace reference {

TwoParticleState step_two_particle(const TwoParticleState& state, const ScatteringParams& params) {
  TwoParticleState out(state.lattice());
  for (std::size_t i = 0; i < state.lattice().labels(); ++i) {
    pull_row(state, params, i, out);
  }
  return out;
}

} // namespace reference

TwoParticleState antisymmetrize(const TwoParticleState& state) {
  TwoParticleState out(state.lattice());
  const std::size_t labels = state.lattice().labels();
  for (std::size_t i = 0; i < labels; ++i) {
    for (std::size_t j = 0; j < labels; ++j) {
      const Label a = label_at(i);
      const Label b = label_at(j);
      out(a, b) = 0.5 * (state(a, b) - state(b, a));
    }
  }
  return out;
}

double antisymmetry_defect(const TwoParticleState& state) {
  const std::size_t labels = state.lattice().labels();
  double worst = 0.0;
  for (std::size_t i = 0; i < labels; ++i) {
    for (std::size_t j = i + 1; j < labels; ++j) {
      const Label a = label_at(i);
      const Label b = label_at(j);
      worst = std::max(worst, std::abs(state(a, b) + state(b, a)));
    }
  }
  return worst;
}

TwoParticleState free_eigenfunction(const Lattice& lattice, const PlaneWave& first, const PlaneWave& second) {
  const OneParticleState w1 = plane_wave_state(lattice, first);
  const OneParticleState w2 = plane_wave_state(lattice, second);
  TwoParticleState out(lattice);
  const std::size_t labels = lattice.labels();
  for (std::size_t i = 0; i < labels; ++i) {
    for (std::size_t j = 0; j < labels; ++j) {
      if (i == j) {
        continue;
      }
      const Label a = label_at(i);
      const Label b = label_at(j);
      out(a, b) = w1(a.x, a.v) * w2(b.x, b.v);
    }
  }
  return out;
}

double eigen_residual(const TwoParticleState& state, const ScatteringParams& params, complex eigenvalue,
                      ResidualDomain domain) {
  const TwoParticleState stepped = step_two_particle(state, params);
  const std::size_t sites = state.sites();
  const std::size_t labels = state.lattice().labels();
  const auto on_seam = [&](std::size_t x) { return x == 0 || x + 1 == sites; };
  double worst = 0.0;
  for (std::size_t i = 0; i < labels; ++i) {
    for (std::size_t j = 0; j < labels; ++j) {
      if (i == j) {
        continue;
      }
      const Label a = label_at(i);
      const Label b = label_at(j);
      if (domain.sector && sector_of(a, b) != *domain.sector) {
        continue;
      }
      if (domain.skip_seam && (on_seam(a.x) || on_seam(b.x))) {
        continue;
      }
      worst = std::max(worst, std::abs(eigenvalue * state(a, b) - stepped(a, b)));
    }
  }
  return worst;
}

std::string_view to_string(BetheVariant variant) {
  switch (variant) {
  case BetheVariant::IncidentLeft:
    return "left";
  case BetheVariant::IncidentRight:
    return "right";
  case BetheVariant::Antisymmetric:
    return "antisym";
  }
  return "unknown";
}

BetheCoefficients bethe_coefficients(double k1, double k2, int eps1, int eps2, const ScatteringParams& params,
                                     BetheVariant variant) {
  if (same_mode(k1, eps1, k2, eps2)) {
    throw DegeneratePairError("identical modes (k1 = k2, eps1 = eps2) have no two-particle scattering solution here");
  }
  const PairSpinors p = pair_spinors(k1, eps1, k2, eps2, params);
  switch (variant) {
  case BetheVariant::IncidentLeft:
    return incident_left(p.s1, p.s2, k1 - k2, p.omega, params.f());
  case BetheVariant::IncidentRight:
    return incident_left(p.s2, p.s1, k2 - k1, p.omega, params.f());
  case BetheVariant::Antisymmetric:
    return antisymmetric(p.s1, p.s2, k1 - k2, p.omega, params.f());
  }
  throw ParameterError("unknown Bethe variant");
}

BetheEigenfunction BetheEigenfunction::make(double k1, int eps1, double k2, int eps2, const ScatteringParams& params,
                                            BetheVariant variant) {
  const BetheCoefficients c = bethe_coefficients(k1, k2, eps1, eps2, params, variant);
  const PairSpinors p = pair_spinors(k1, eps1, k2, eps2, params);
  return {k1, k2, eps1, eps2, p.omega, c.A, c.B.value_or(complex{}), variant};
}

TwoParticleState build_bethe_eigenfunction(const BetheEigenfunction& bethe, const ScatteringParams& params,
                                           const Lattice& lattice) {
  const PairSpinors p = pair_spinors(bethe.k1, bethe.eps1, bethe.k2, bethe.eps2, params);
  const auto wave = [](double k, const Spinor& s, Label l) {
    return std::polar(1.0, k * static_cast<double>(l.x)) * s[index_of(l.v)];
  };

  TwoParticleState out(lattice);
  const std::size_t labels = lattice.labels();
  for (std::size_t i = 0; i < labels; ++i) {
    for (std::size_t j = 0; j < labels; ++j) {
      const Label a = label_at(i);
      const Label b = label_at(j);
      if (i == j || sector_of(a, b) != Sector::Interacting) {
        continue;
      }
      const complex direct = wave(bethe.k1, p.s1, a) * wave(bethe.k2, p.s2, b);
      const complex exchanged = wave(bethe.k1, p.s1, b) * wave(bethe.k2, p.s2, a);
      const bool incident_side = a < b;
      complex value;
      switch (bethe.variant) {
      case BetheVariant::IncidentLeft:
        value = incident_side ? direct + bethe.A * exchanged : bethe.B * direct;
        break;
      case BetheVariant::IncidentRight:
        value = incident_side ? bethe.B * direct : direct + bethe.A * exchanged;
        break;
      case BetheVariant::Antisymmetric:
        value = incident_side ? direct + bethe.A * exchanged : -(exchanged + bethe.A * direct);
        break;
      }
      out(a, b) = value;
    }
  }
  return out;
}

double verify_bethe(const TwoParticleState& state, const BetheEigenfunction& bethe, const ScatteringParams& params) {
  return eigen_residual(state, params, bethe.eigenvalue(), {std::nullopt, true});
}

double transmission_phase(const BetheEigenfunction& bethe) {
  if (bethe.variant == BetheVariant::Antisymmetric) {
    throw ParameterError("the antisymmetric eigenfunction has no transmission coefficient");
  }
  if (std::abs(bethe.B) < 1e-14) {
    throw UndefinedPhaseError("transmission coefficient vanishes; its phase is undefined");
  }
  const double phase = std::arg(bethe.B);
  return phase <= -pi ? pi : phase;
}

} // namespace qlga
