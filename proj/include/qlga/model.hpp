#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>

namespace qlga {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr complex I{0.0, 1.0};

/// Velocity label of a single-speed particle. Storage order is fixed:
/// Right (+1) has index 0, Left (-1) has index 1.
enum class Velocity : int { Right = +1, Left = -1 };

inline constexpr std::array<Velocity, 2> velocities{Velocity::Right, Velocity::Left};

constexpr int sign(Velocity v) { return static_cast<int>(v); }
constexpr std::size_t index_of(Velocity v) { return v == Velocity::Right ? 0 : 1; }
constexpr Velocity velocity_at(std::size_t index) { return index == 0 ? Velocity::Right : Velocity::Left; }
constexpr Velocity reversed(Velocity v) { return v == Velocity::Right ? Velocity::Left : Velocity::Right; }

/// Periodic ring of N sites. N is even (keeps the two-particle parity
/// sectors well defined) and at least 4.
class Lattice {
public:
  explicit Lattice(std::size_t sites);

  std::size_t size() const { return sites_; }
  /// Number of one-particle basis labels, 2N.
  std::size_t labels() const { return 2 * sites_; }

  /// Reduce any integer position onto 0..N-1.
  std::size_t wrap(long long x) const {
    const auto n = static_cast<long long>(sites_);
    const long long r = x % n;
    return static_cast<std::size_t>(r < 0 ? r + n : r);
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;

private:
  std::size_t sites_;
};

enum class Interpretation { Nonrelativistic, Relativistic };

/// Model constants: mass angle theta with a = cos(theta), b = i sin(theta),
/// the pair-scattering phase f and the hole phase d.
///
/// d is fixed by the interpretation (1 or conj(f)). The evolution is
/// normalized so that the empty-pair amplitude is 1, which makes d drop out
/// of every implemented sector; it is kept for reporting.
class ScatteringParams {
public:
  explicit ScatteringParams(double theta, complex f = 1.0,
                            Interpretation interpretation = Interpretation::Nonrelativistic);

  double theta() const { return theta_; }
  complex a() const { return a_; }
  complex b() const { return b_; }
  complex f() const { return f_; }
  complex d() const { return interpretation_ == Interpretation::Relativistic ? std::conj(f_) : complex{1.0}; }
  Interpretation interpretation() const { return interpretation_; }

  /// Amplitude for an arriving velocity `in` to leave with velocity `out`:
  /// a when the direction is kept, b when it flips.
  complex transfer(Velocity out, Velocity in) const { return out == in ? a_ : b_; }

private:
  double theta_;
  complex a_;
  complex b_;
  complex f_;
  Interpretation interpretation_;
};

using Matrix2 = std::array<std::array<complex, 2>, 2>;

/// S = [[b, a], [a, b]].
Matrix2 make_scattering_matrix(const ScatteringParams& params);

/// max |S^dagger S - 1| over entries.
double unitarity_defect(const Matrix2& m);

} // namespace qlga
