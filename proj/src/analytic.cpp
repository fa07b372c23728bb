#include "floqsim/analytic.hpp"

#include "floqsim/errors.hpp"

#include <cmath>

namespace floqsim {

double bessel_j(int n, double x) {
  // std::cyl_bessel_j covers x >= 0; J_n(-x) = (-1)^n J_n(x), J_{-n} = (-1)^n J_n.
  const int order = std::abs(n);
  const double sign_order = (n < 0 && order % 2 == 1) ? -1.0 : 1.0;
  const double sign_arg = (x < 0.0 && order % 2 == 1) ? -1.0 : 1.0;
  return sign_order * sign_arg * std::cyl_bessel_j(static_cast<double>(order), std::abs(x));
}

namespace {
void require_positive_omega(double omega) {
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
}
}  // namespace

double analytic_delta_epsilon(double delta, double amp, double omega) {
  require_positive_omega(omega);
  const double x = 2.0 * amp / omega;
  return std::hypot(omega - delta * bessel_j(0, x), delta * bessel_j(1, x));
}

QuasienergyPair analytic_quasienergies(double delta, double amp, double omega) {
  const double half = 0.5 * analytic_delta_epsilon(delta, amp, omega);
  return {-0.5 * omega - half, -0.5 * omega + half};
}

Eigen::Matrix4d truncated_4x4_hamiltonian(double delta, double amp, double omega) {
  require_positive_omega(omega);
  const double x = 2.0 * amp / omega;
  const double j0 = 0.5 * delta * bessel_j(0, x);
  const double j1 = 0.5 * delta * bessel_j(1, x);
  Eigen::Matrix4d h;
  // clang-format off
  h << -omega, -j0,    0.0,  -j1,
       -j0,    -omega, j1,   0.0,
       0.0,    j1,     0.0,  -j0,
       -j1,    0.0,    -j0,  0.0;
  // clang-format on
  return h;
}

Eigen::Matrix4d truncation_basis_transform() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4d s;
  // clang-format off
  s << r,   r,   0.0, 0.0,
       r,   -r,  0.0, 0.0,
       0.0, 0.0, r,   r,
       0.0, 0.0, r,   -r;
  // clang-format on
  return s;
}

Eigen::Matrix2d truncated_2x2_block(double delta, double amp, double omega) {
  require_positive_omega(omega);
  const double x = 2.0 * amp / omega;
  const double dj0 = delta * bessel_j(0, x);
  const double dj1 = delta * bessel_j(1, x);
  Eigen::Matrix2d b;
  b << 0.5 * (-2.0 * omega + dj0), -0.5 * dj1, -0.5 * dj1, -0.5 * dj0;
  return b;
}

double weak_drive_rabi_frequency(double delta, double amp, double omega) {
  return std::hypot(omega - delta, amp);
}

double strong_drive_rabi_frequency(double delta, double amp, double omega) {
  require_positive_omega(omega);
  return omega - delta * bessel_j(0, 2.0 * amp / omega);
}

}  // namespace floqsim
