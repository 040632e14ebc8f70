#include "qlga/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlga/error.hpp"

namespace qlga {

namespace {

double norm2(const Spinor& s) { return std::norm(s[0]) + std::norm(s[1]); }

Spinor normalized(const Spinor& s) {
  const double n = std::sqrt(norm2(s));
  return {s[0] / n, s[1] / n};
}

// exp(2 pi i n x / N) with the product reduced mod N first.
complex lattice_phase(long long n, std::size_t x, std::size_t sites) {
  const auto big_n = static_cast<long long>(sites);
  long long m = (n * static_cast<long long>(x)) % big_n;
  if (m < 0) {
    m += big_n;
  }
  return std::polar(1.0, 2.0 * pi * static_cast<double>(m) / static_cast<double>(sites));
}

long long index_for(const Lattice& lattice, double k) {
  const double n_real = k * static_cast<double>(lattice.size()) / (2.0 * pi);
  const double n_round = std::round(n_real);
  if (std::abs(n_real - n_round) > 1e-9) {
    throw ParameterError("wave number " + std::to_string(k) + " is not a multiple of 2pi/" +
                         std::to_string(lattice.size()));
  }
  const auto big_n = static_cast<long long>(lattice.size());
  long long n = static_cast<long long>(n_round) % big_n;
  if (n <= -big_n / 2) {
    n += big_n;
  } else if (n > big_n / 2) {
    n -= big_n;
  }
  return n;
}

double wavenumber_of(const Lattice& lattice, long long n) {
  return 2.0 * pi * static_cast<double>(n) / static_cast<double>(lattice.size());
}

std::vector<PlaneWave> basis_modes(const Lattice& lattice, const ScatteringParams& params) {
  std::vector<PlaneWave> modes;
  modes.reserve(lattice.labels());
  for (double k : quantized_wavenumbers(lattice)) {
    modes.push_back(plane_wave_mode(params, k, +1));
    modes.push_back(plane_wave_mode(params, k, -1));
  }
  return modes;
}

// Discrete Fourier transform of one velocity component, sum_x e^{-ikx} psi(x).
complex fourier(const OneParticleState& state, long long n, Velocity v) {
  complex sum{};
  for (std::size_t x = 0; x < state.sites(); ++x) {
    sum += std::conj(lattice_phase(n, x, state.sites())) * state(x, v);
  }
  return sum;
}

void project_mode(const OneParticleState& state, const SpectralDecomposition& d, std::size_t pair,
                  std::vector<complex>& out) {
  const Lattice& lattice = state.lattice();
  const long long n = index_for(lattice, d.modes[2 * pair].k);
  const complex right = fourier(state, n, Velocity::Right);
  const complex left = fourier(state, n, Velocity::Left);
  const double scale = 1.0 / std::sqrt(static_cast<double>(lattice.size()));
  for (std::size_t j = 2 * pair; j < 2 * pair + 2; ++j) {
    const Spinor& s = d.modes[j].spinor;
    out[j] = scale * (std::conj(s[0]) * right + std::conj(s[1]) * left);
  }
}

SpectralDecomposition empty_decomposition(const Lattice& lattice, const ScatteringParams& params) {
  SpectralDecomposition d{lattice, basis_modes(lattice, params), {}, {}};
  d.coefficients.assign(d.modes.size(), complex{});
  for (std::size_t j = 0; j < d.modes.size(); j += 2) {
    if (d.modes[j].fallback_spinor || d.modes[j + 1].fallback_spinor) {
      d.fallback_wavenumbers.push_back(d.modes[j].k);
    }
  }
  return d;
}

} // namespace

double dispersion_omega(double theta, double k) {
  const double c = std::clamp(std::cos(theta) * std::cos(k), -1.0, 1.0);
  return std::acos(c);
}

double incident_wavenumber(double theta, double omega) {
  const double ct = std::cos(theta);
  if (std::abs(ct) < 1e-14) {
    throw FlatBandError("cos(theta) = 0: every wave number has the same frequency");
  }
  const double c = std::cos(omega) / ct;
  if (std::abs(c) > 1.0 + 1e-14) {
    throw ParameterError("frequency " + std::to_string(omega) + " lies in a band gap");
  }
  return std::acos(std::clamp(c, -1.0, 1.0));
}

Spinor raw_spinor(const ScatteringParams& params, complex k, complex eigenvalue) {
  return {params.a() * std::exp(I * k) - eigenvalue, -params.b() * std::exp(-I * k)};
}

PlaneWave plane_wave_mode(const ScatteringParams& params, double k, int epsilon) {
  if (epsilon != 1 && epsilon != -1) {
    throw ParameterError("branch sign must be +1 or -1");
  }
  PlaneWave mode;
  mode.k = k;
  mode.epsilon = epsilon;
  mode.omega = dispersion_omega(params.theta(), k);
  const complex lambda = mode.eigenvalue();

  // Both rows of (D(k) - lambda) v = 0 give a closed-form eigenvector; the
  // first is the textbook one, the second survives where b = 0.
  const Spinor primary = raw_spinor(params, k, lambda);
  const Spinor alternate{-params.b() * std::exp(I * k), params.a() * std::exp(-I * k) - lambda};
  const double p2 = norm2(primary);
  const double q2 = norm2(alternate);

  constexpr double vanishing = 1e-20;
  if (p2 < vanishing && q2 < vanishing) {
    // b = 0 and a e^{ik} = a e^{-ik}: the transfer matrix is a multiple of
    // the identity, so the coordinate axes are eigenvectors.
    mode.branch_collision = true;
    mode.fallback_spinor = true;
    mode.spinor = epsilon == 1 ? Spinor{1.0, 0.0} : Spinor{0.0, 1.0};
    return mode;
  }
  mode.fallback_spinor = p2 < vanishing;
  mode.spinor = normalized(p2 >= q2 ? primary : alternate);
  return mode;
}

std::vector<double> quantized_wavenumbers(const Lattice& lattice) {
  const auto big_n = static_cast<long long>(lattice.size());
  std::vector<double> ks;
  ks.reserve(lattice.size());
  for (long long n = -big_n / 2 + 1; n <= big_n / 2; ++n) {
    ks.push_back(wavenumber_of(lattice, n));
  }
  return ks;
}

long long wavenumber_index(const Lattice& lattice, double k) { return index_for(lattice, k); }

OneParticleState plane_wave_state(const Lattice& lattice, const PlaneWave& mode) {
  const long long n = index_for(lattice, mode.k);
  const double scale = 1.0 / std::sqrt(static_cast<double>(lattice.size()));
  OneParticleState s(lattice);
  for (std::size_t x = 0; x < lattice.size(); ++x) {
    const complex phase = scale * lattice_phase(n, x, lattice.size());
    s(x, Velocity::Right) = phase * mode.spinor[0];
    s(x, Velocity::Left) = phase * mode.spinor[1];
  }
  return s;
}

OneParticleState make_plane_wave(const Lattice& lattice, const ScatteringParams& params, double k, int epsilon) {
  const double snapped = wavenumber_of(lattice, index_for(lattice, k));
  return plane_wave_state(lattice, plane_wave_mode(params, snapped, epsilon));
}

double SpectralDecomposition::total_probability() const {
  double sum = 0.0;
  for (const auto& c : coefficients) {
    sum += std::norm(c);
  }
  return sum;
}

std::vector<double> SpectralDecomposition::probabilities() const {
  std::vector<double> p(coefficients.size());
  std::transform(coefficients.begin(), coefficients.end(), p.begin(), [](complex c) { return std::norm(c); });
  return p;
}

SpectralDecomposition decompose(const OneParticleState& state, const ScatteringParams& params) {
  SpectralDecomposition d = empty_decomposition(state.lattice(), params);
  const auto pairs = static_cast<long long>(d.modes.size() / 2);
#pragma omp parallel for schedule(static)
  for (long long p = 0; p < pairs; ++p) {
    project_mode(state, d, static_cast<std::size_t>(p), d.coefficients);
  }
  return d;
}

namespace reference {

SpectralDecomposition decompose(const OneParticleState& state, const ScatteringParams& params) {
  SpectralDecomposition d = empty_decomposition(state.lattice(), params);
  for (std::size_t p = 0; p < d.modes.size() / 2; ++p) {
    project_mode(state, d, p, d.coefficients);
  }
  return d;
}

} // namespace reference

OneParticleState reconstruct(const SpectralDecomposition& decomposition) {
  OneParticleState out(decomposition.lattice);
  for (std::size_t j = 0; j < decomposition.modes.size(); ++j) {
    out += decomposition.coefficients[j] * plane_wave_state(decomposition.lattice, decomposition.modes[j]);
  }
  return out;
}

double expectation_k(const SpectralDecomposition& decomposition) {
  double sum = 0.0;
  for (std::size_t j = 0; j < decomposition.modes.size(); ++j) {
    sum += decomposition.modes[j].k * std::norm(decomposition.coefficients[j]);
  }
  return sum;
}

double expectation_omega(const SpectralDecomposition& decomposition) {
  double sum = 0.0;
  for (std::size_t j = 0; j < decomposition.modes.size(); ++j) {
    sum += decomposition.modes[j].signed_omega() * std::norm(decomposition.coefficients[j]);
  }
  return sum;
}

double expectation_k(const OneParticleState& state, const ScatteringParams& params) {
  return expectation_k(decompose(state, params));
}

double expectation_omega(const OneParticleState& state, const ScatteringParams& params) {
  return expectation_omega(decompose(state, params));
}

ConservationReport spectral_probabilities_conserved(const OneParticleState& state, const ScatteringParams& params,
                                                    std::size_t steps) {
  const SpectralDecomposition before = decompose(state, params);
  const OneParticleState later =
      evolve(state, params, PotentialProfile::flat(state.lattice()), steps, NormPolicy::AllowUnnormalized);
  const SpectralDecomposition after = decompose(later, params);

  ConservationReport report;
  report.steps = steps;
  for (std::size_t j = 0; j < before.coefficients.size(); ++j) {
    const double drift = std::abs(std::norm(after.coefficients[j]) - std::norm(before.coefficients[j]));
    report.max_probability_drift = std::max(report.max_probability_drift, drift);
  }
  report.k_drift = std::abs(expectation_k(after) - expectation_k(before));
  report.omega_drift = std::abs(expectation_omega(after) - expectation_omega(before));
  return report;
}

} // namespace qlga
