#include "qlga/model.hpp"

#include <cmath>
#include <string>

#include "qlga/error.hpp"

namespace qlga {

Lattice::Lattice(std::size_t sites) : sites_(sites) {
  if (sites < 4 || sites % 2 != 0) {
    throw ParameterError("lattice size must be even and at least 4, got " + std::to_string(sites));
  }
}

ScatteringParams::ScatteringParams(double theta, complex f, Interpretation interpretation)
    : theta_(theta), a_(std::cos(theta), 0.0), b_(0.0, std::sin(theta)), f_(f),
      interpretation_(interpretation) {
  if (!std::isfinite(theta)) {
    throw ParameterError("theta must be finite");
  }
  if (!std::isfinite(f.real()) || !std::isfinite(f.imag()) || std::abs(std::abs(f) - 1.0) > 1e-12) {
    throw ParameterError("pair phase f must have unit modulus");
  }
}

Matrix2 make_scattering_matrix(const ScatteringParams& params) {
  const complex a = params.a();
  const complex b = params.b();
  return {{{b, a}, {a, b}}};
}

double unitarity_defect(const Matrix2& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      complex sum{};
      for (std::size_t r = 0; r < 2; ++r) {
        sum += std::conj(m[r][i]) * m[r][j];
      }
      worst = std::max(worst, std::abs(sum - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

} // namespace qlga
