#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qlga/error.hpp"
#include "qlga/spectral.hpp"
#include "test_support.hpp"

using namespace qlga;
using qlga::testing::eigen_defect;
using qlga::testing::rng;
using qlga::testing::uniform;

namespace {

double max_residual_of_mode(const Lattice& l, const ScatteringParams& p, double k, int eps) {
  const PlaneWave mode = plane_wave_mode(p, k, eps);
  const auto psi = plane_wave_state(l, mode);
  return max_abs_difference(step_one_particle(psi, p), mode.eigenvalue() * psi);
}

} // namespace

TEST_CASE("dispersion at k = 0 gives omega = theta") {
  for (double theta : {0.0, 0.1, pi / 12, 1.0, pi / 2, 2.5, pi}) {
    CHECK(dispersion_omega(theta, 0.0) == doctest::Approx(theta).epsilon(1e-12));
  }
}

TEST_CASE("incident wave number for omega = pi/6, theta = pi/12") {
  const double k = incident_wavenumber(pi / 12, pi / 6);
  CHECK(std::abs(k - 0.459) < 5e-3);
  CHECK(k == doctest::Approx(0.4588205874371103).epsilon(1e-14));
  CHECK(std::abs(std::cos(pi / 6) - std::cos(pi / 12) * std::cos(k)) < 1e-15);
}

TEST_CASE("incident wave number guards") {
  CHECK_THROWS_AS(incident_wavenumber(pi / 12, 0.1), ParameterError);
  CHECK_THROWS_AS(incident_wavenumber(pi / 2, 1.0), FlatBandError);
}

TEST_CASE("dispersion residual at k = pi/8") {
  const double w = dispersion_omega(pi / 12, pi / 8);
  CHECK(std::abs(std::cos(w) - std::cos(pi / 12) * std::cos(pi / 8)) < 1e-15);
  CHECK(w == doctest::Approx(0.4681621904045617).epsilon(1e-14));
  CHECK(dispersion_omega(pi / 12, pi / 16) == doctest::Approx(0.3258910430346902).epsilon(1e-14));
}

TEST_CASE("figure-scale plane waves are eigenvectors, faster one has higher frequency") {
  const Lattice l(32);
  const ScatteringParams p(pi / 12);
  CHECK(max_residual_of_mode(l, p, pi / 16, +1) < 1e-10);
  CHECK(max_residual_of_mode(l, p, pi / 8, +1) < 1e-10);
  CHECK(plane_wave_mode(p, pi / 8, +1).omega > plane_wave_mode(p, pi / 16, +1).omega);
  const auto psi = make_plane_wave(l, p, pi / 16, +1);
  CHECK(std::abs(psi.norm_squared() - 1.0) < 1e-14);
}

TEST_CASE("theta = pi/2 is a flat band at omega = pi/2") {
  const Lattice l(8);
  const ScatteringParams p(pi / 2);
  for (double k : quantized_wavenumbers(l)) {
    for (int eps : {+1, -1}) {
      const PlaneWave mode = plane_wave_mode(p, k, eps);
      CHECK(mode.omega == doctest::Approx(pi / 2).epsilon(1e-15));
      CHECK(eigen_defect(pi / 2, k, mode.spinor, mode.eigenvalue()) < 1e-12);
      CHECK(max_residual_of_mode(l, p, k, eps) < 1e-12);
    }
  }
}

TEST_CASE("spinors are unit eigenvectors of the transfer matrix") {
  for (double theta : {0.0, 0.05, pi / 12, pi / 5, 1.3, pi / 2}) {
    const ScatteringParams p(theta);
    for (double k : quantized_wavenumbers(Lattice(24))) {
      for (int eps : {+1, -1}) {
        const PlaneWave mode = plane_wave_mode(p, k, eps);
        CHECK(std::abs(std::norm(mode.spinor[0]) + std::norm(mode.spinor[1]) - 1.0) < 1e-14);
        CHECK(eigen_defect(theta, k, mode.spinor, mode.eigenvalue()) < 1e-12);
        CHECK(std::abs(std::cos(mode.signed_omega()) - std::cos(theta) * std::cos(k)) < 1e-12);
        CHECK(mode.omega >= 0.0);
        CHECK(mode.omega <= pi);
      }
    }
  }
}

TEST_CASE("spinor at non-quantized k is still an eigenvector") {
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = uniform(0.0, pi / 2);
    const double k = uniform(-pi, pi);
    const int eps = trial % 2 == 0 ? 1 : -1;
    const PlaneWave mode = plane_wave_mode(ScatteringParams(theta), k, eps);
    CHECK(eigen_defect(theta, k, mode.spinor, mode.eigenvalue()) < 1e-12);
  }
}

TEST_CASE("massless case falls back where the first form vanishes") {
  const ScatteringParams p(0.0);
  CHECK_FALSE(plane_wave_mode(p, pi / 4, +1).fallback_spinor);
  const PlaneWave other = plane_wave_mode(p, pi / 4, -1);
  CHECK(other.fallback_spinor);
  CHECK(eigen_defect(0.0, pi / 4, other.spinor, other.eigenvalue()) < 1e-14);
  const PlaneWave edge_plus = plane_wave_mode(p, 0.0, +1);
  const PlaneWave edge_minus = plane_wave_mode(p, 0.0, -1);
  CHECK(edge_plus.branch_collision);
  CHECK(edge_minus.branch_collision);
  CHECK(edge_plus.signed_omega() == 0.0);
  CHECK(edge_minus.signed_omega() == 0.0);
  CHECK(std::abs(std::conj(edge_plus.spinor[0]) * edge_minus.spinor[0] +
                 std::conj(edge_plus.spinor[1]) * edge_minus.spinor[1]) < 1e-15);

  const auto d = decompose(OneParticleState::delta(Lattice(8), 0, Velocity::Right), p);
  CHECK_FALSE(d.fallback_wavenumbers.empty());
}

TEST_CASE("bad branch sign is rejected") {
  CHECK_THROWS_AS(plane_wave_mode(ScatteringParams(0.2), 0.1, 0), ParameterError);
}

TEST_CASE("quantized wave numbers lie in (-pi, pi]") {
  const Lattice l(10);
  const auto ks = quantized_wavenumbers(l);
  REQUIRE(ks.size() == 10);
  CHECK(ks.front() > -pi);
  CHECK(ks.back() == doctest::Approx(pi));
  CHECK(wavenumber_index(l, -pi) == 5);
  CHECK(wavenumber_index(l, 2 * pi / 10 * 3) == 3);
  CHECK(wavenumber_index(l, 2 * pi + 2 * pi / 10) == 1);
  CHECK_THROWS_AS(wavenumber_index(l, 0.1), ParameterError);
  CHECK_THROWS_AS(make_plane_wave(l, ScatteringParams(0.2), 0.1, 1), ParameterError);
}

TEST_CASE("plane waves form an orthonormal basis") {
  for (double theta : {0.0, pi / 12, pi / 5, pi / 2}) {
    const Lattice l(12);
    const ScatteringParams p(theta);
    std::vector<OneParticleState> basis;
    for (double k : quantized_wavenumbers(l)) {
      for (int eps : {+1, -1}) {
        basis.push_back(make_plane_wave(l, p, k, eps));
      }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const complex g = inner_product(basis[i], basis[j]);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("every mode has its analytic eigenvalue") {
  for (double theta : {0.0, pi / 12, pi / 5, 1.4, pi / 2}) {
    const Lattice l(16);
    const ScatteringParams p(theta);
    for (double k : quantized_wavenumbers(l)) {
      CHECK(max_residual_of_mode(l, p, k, +1) < 1e-10);
      CHECK(max_residual_of_mode(l, p, k, -1) < 1e-10);
    }
  }
}

TEST_CASE("frequency gap") {
  for (double theta : {0.05, pi / 12, pi / 5, 1.2}) {
    for (double k : quantized_wavenumbers(Lattice(64))) {
      const double w = dispersion_omega(theta, k);
      CHECK(w >= theta - 1e-15);
      CHECK(w <= pi - theta + 1e-15);
    }
  }
}

TEST_CASE("plane wave decomposes onto its own label") {
  const Lattice l(16);
  const ScatteringParams p(pi / 12);
  const double k0 = 2 * pi * 3 / 16;
  const auto d = decompose(make_plane_wave(l, p, k0, -1), p);
  for (std::size_t j = 0; j < d.modes.size(); ++j) {
    const bool self = std::abs(d.modes[j].k - k0) < 1e-12 && d.modes[j].epsilon == -1;
    CHECK(std::abs(d.coefficients[j] - (self ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("delta state populates both branches") {
  const Lattice l(32);
  const ScatteringParams p(pi / 12);
  const auto d = decompose(OneParticleState::delta(l, 5, Velocity::Right), p);
  CHECK(d.total_probability() == doctest::Approx(1.0).epsilon(1e-12));
  double negative = 0.0;
  for (std::size_t j = 0; j < d.modes.size(); ++j) {
    if (d.modes[j].epsilon == -1) {
      negative += std::norm(d.coefficients[j]);
    }
  }
  CHECK(negative > 1e-3);
  CHECK(d.fallback_wavenumbers.empty());
}

TEST_CASE("decompose then reconstruct is the identity") {
  for (double theta : {0.0, pi / 12, pi / 2}) {
    const Lattice l(16);
    const ScatteringParams p(theta);
    const auto psi = OneParticleState::random(l, rng());
    const auto d = decompose(psi, p);
    CHECK(std::abs(d.total_probability() - psi.norm_squared()) < 1e-10);
    CHECK(max_abs_difference(reconstruct(d), psi) < 1e-10);
  }
}

TEST_CASE("parallel decomposition matches the serial reference") {
  const Lattice l(40);
  const ScatteringParams p(0.77);
  const auto psi = OneParticleState::random(l, rng());
  const auto fast = decompose(psi, p);
  const auto slow = reference::decompose(psi, p);
  REQUIRE(fast.coefficients.size() == slow.coefficients.size());
  for (std::size_t j = 0; j < fast.coefficients.size(); ++j) {
    CHECK(fast.coefficients[j] == slow.coefficients[j]);
  }
}

TEST_CASE("plane wave probabilities do not drift") {
  const Lattice l(32);
  const ScatteringParams p(pi / 12);
  const auto r = spectral_probabilities_conserved(make_plane_wave(l, p, pi / 8, +1), p, 100);
  CHECK(r.max_probability_drift < 1e-10);
  CHECK(r.k_drift < 1e-10);
  CHECK(r.omega_drift < 1e-10);
}

TEST_CASE("delta state probabilities do not drift over 64 steps") {
  const Lattice l(32);
  const ScatteringParams p(pi / 12);
  const auto r = spectral_probabilities_conserved(OneParticleState::delta(l, 0, Velocity::Right), p, 64);
  CHECK(r.steps == 64);
  CHECK(r.max_probability_drift < 1e-10);
}

TEST_CASE("random state probabilities do not drift over 257 steps") {
  const Lattice l(16);
  const ScatteringParams p(0.9);
  const auto r = spectral_probabilities_conserved(OneParticleState::random(l, rng()), p, 257);
  CHECK(r.max_probability_drift < 1e-10);
  CHECK(r.k_drift < 1e-10);
  CHECK(r.omega_drift < 1e-10);
}

TEST_CASE("expectations of a single plane wave") {
  const Lattice l(32);
  const ScatteringParams p(pi / 12);
  const auto psi = make_plane_wave(l, p, pi / 8, +1);
  CHECK(expectation_k(psi, p) == doctest::Approx(pi / 8).epsilon(1e-12));
  CHECK(expectation_omega(psi, p) == doctest::Approx(dispersion_omega(pi / 12, pi / 8)).epsilon(1e-12));
}

TEST_CASE("expectations of a symmetric superposition") {
  const Lattice l(32);
  const ScatteringParams p(pi / 12);
  OneParticleState psi = make_plane_wave(l, p, pi / 8, +1);
  psi += make_plane_wave(l, p, -pi / 8, +1);
  psi = psi.normalized();
  CHECK(std::abs(expectation_k(psi, p)) < 1e-12);
  CHECK(expectation_omega(psi, p) == doctest::Approx(dispersion_omega(pi / 12, pi / 8)).epsilon(1e-12));
}

TEST_CASE("expectations of a delta state stay fixed over 50 steps") {
  const Lattice l(32);
  const ScatteringParams p(pi / 12);
  const auto psi = OneParticleState::delta(l, 7, Velocity::Left);
  const double k0 = expectation_k(psi, p);
  const double w0 = expectation_omega(psi, p);
  const auto later = evolve(psi, p, PotentialProfile::flat(l), 50);
  CHECK(std::abs(expectation_k(later, p) - k0) < 1e-10);
  CHECK(std::abs(expectation_omega(later, p) - w0) < 1e-10);
}
