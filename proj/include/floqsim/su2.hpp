#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace floqsim {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;
using HermitianMatrix2 = Matrix2;
using Unitary2 = Matrix2;

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
}  // namespace pauli

/// Hermitian 2x2 matrix written as c0*I + cx*sx + cy*sy + cz*sz.
struct PauliCoefficients {
  double c0 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;
};

PauliCoefficients pauli_decompose(const Matrix2& hermitian);
Matrix2 pauli_compose(const PauliCoefficients& c);

/// exp(-i K) for Hermitian K, evaluated in closed form. The result is
/// unitary to rounding error regardless of |K|.
Unitary2 exp_minus_i(const PauliCoefficients& k);

/// max |(U^dagger U - I)_ij|
double unitarity_defect(const Matrix2& u);

/// U = e^{i phase} (cos(angle/2) I - i sin(angle/2) n.sigma), angle in [0, 2*pi].
struct RotationParams {
  double angle = 0.0;
  std::array<double, 3> axis{0, 0, 1};
  double global_phase = 0.0;
};

/// Splits a unitary into global phase and SU(2) rotation. For angle
/// close to 0 the axis defaults to +z.
RotationParams rotation_of(const Unitary2& u);

/// Ideal rotation about a unit axis.
Unitary2 rotation(double angle, const std::array<double, 3>& axis);

}  // namespace floqsim
