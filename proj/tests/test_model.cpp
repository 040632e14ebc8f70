#include <doctest.h>

#include "qlga/error.hpp"
#include "qlga/model.hpp"

using namespace qlga;

TEST_CASE("lattice size must be even and at least four") {
  CHECK_NOTHROW(Lattice(4));
  CHECK_NOTHROW(Lattice(64));
  CHECK_THROWS_AS(Lattice(2), ParameterError);
  CHECK_THROWS_AS(Lattice(7), ParameterError);
  CHECK_THROWS_AS(Lattice(0), ParameterError);
}

TEST_CASE("lattice wrap reduces onto the ring") {
  const Lattice l(8);
  CHECK(l.wrap(0) == 0);
  CHECK(l.wrap(8) == 0);
  CHECK(l.wrap(-1) == 7);
  CHECK(l.wrap(-17) == 7);
  CHECK(l.wrap(19) == 3);
  CHECK(l.labels() == 16);
}

TEST_CASE("velocity storage layout") {
  CHECK(index_of(Velocity::Right) == 0);
  CHECK(index_of(Velocity::Left) == 1);
  CHECK(sign(Velocity::Right) == 1);
  CHECK(sign(Velocity::Left) == -1);
  CHECK(velocity_at(0) == Velocity::Right);
  CHECK(reversed(Velocity::Left) == Velocity::Right);
}

TEST_CASE("scattering matrix at theta = 0 is pure advection") {
  const Matrix2 s = make_scattering_matrix(ScatteringParams(0.0));
  CHECK(std::abs(s[0][0]) == 0.0);
  CHECK(std::abs(s[0][1] - 1.0) == 0.0);
  CHECK(std::abs(s[1][0] - 1.0) == 0.0);
  CHECK(std::abs(s[1][1]) == 0.0);
}

TEST_CASE("scattering matrix at theta = pi/2 reflects with phase i") {
  const Matrix2 s = make_scattering_matrix(ScatteringParams(pi / 2));
  CHECK(std::abs(s[0][0] - I) < 1e-16);
  CHECK(std::abs(s[1][1] - I) < 1e-16);
  CHECK(std::abs(s[0][1]) < 1e-16);
  CHECK(std::abs(s[1][0]) < 1e-16);
}

TEST_CASE("scattering matrix is unitary") {
  const ScatteringParams p(pi / 12);
  CHECK(p.a() == complex(std::cos(pi / 12), 0.0));
  CHECK(p.b() == complex(0.0, std::sin(pi / 12)));
  CHECK(unitarity_defect(make_scattering_matrix(p)) < 1e-15);
  for (double theta : {0.0, 0.3, pi / 5, 1.2, pi / 2, 2.0, -0.7}) {
    CHECK(unitarity_defect(make_scattering_matrix(ScatteringParams(theta))) < 1e-15);
  }
}

TEST_CASE("transfer keeps direction with a and flips with b") {
  const ScatteringParams p(0.4);
  CHECK(p.transfer(Velocity::Right, Velocity::Right) == p.a());
  CHECK(p.transfer(Velocity::Left, Velocity::Left) == p.a());
  CHECK(p.transfer(Velocity::Left, Velocity::Right) == p.b());
  CHECK(p.transfer(Velocity::Right, Velocity::Left) == p.b());
}

TEST_CASE("pair phase must have unit modulus") {
  CHECK_NOTHROW(ScatteringParams(0.1, I));
  CHECK_NOTHROW(ScatteringParams(0.1, std::polar(1.0, pi / 7)));
  CHECK_THROWS_AS(ScatteringParams(0.1, 1.01), ParameterError);
  CHECK_THROWS_AS(ScatteringParams(0.1, 0.0), ParameterError);
  CHECK_THROWS_AS(ScatteringParams(std::nan(""), 1.0), ParameterError);
  CHECK_THROWS_AS(ScatteringParams(INFINITY, 1.0), ParameterError);
}

TEST_CASE("hole phase follows the interpretation") {
  const complex f = std::polar(1.0, 0.9);
  CHECK(ScatteringParams(0.2, f).d() == complex(1.0));
  CHECK(ScatteringParams(0.2, f, Interpretation::Relativistic).d() == std::conj(f));
  CHECK(std::abs(std::abs(ScatteringParams(0.2, f, Interpretation::Relativistic).d()) - 1.0) < 1e-15);
}
