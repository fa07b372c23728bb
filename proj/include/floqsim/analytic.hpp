#pragma once

#include <Eigen/Dense>

namespace floqsim {

/// Bessel function of the first kind J_n(x) for integer order.
double bessel_j(int n, double x);

struct QuasienergyPair {
  double eps0 = 0.0;
  double eps1 = 0.0;
};

/// Rabi frequency from the rotating-frame approximation,
/// sqrt[(omega - delta J0(2A/omega))^2 + delta^2 J1(2A/omega)^2].
double analytic_delta_epsilon(double delta, double amp, double omega);

/// eps_{0,1} = -omega/2 -+ analytic_delta_epsilon / 2.
QuasienergyPair analytic_quasienergies(double delta, double amp, double omega);

/// Four-state truncation of the Floquet Hamiltonian after the Bessel-function
/// basis change (photon blocks n = -1, 0).
Eigen::Matrix4d truncated_4x4_hamiltonian(double delta, double amp, double omega);

/// Orthogonal change of basis that decouples the 4x4 truncation into two 2x2 blocks.
Eigen::Matrix4d truncation_basis_transform();

/// The block whose eigenvalues are the two analytic quasienergies.
Eigen::Matrix2d truncated_2x2_block(double delta, double amp, double omega);

/// Weak-drive limit sqrt[(omega - delta)^2 + amp^2].
double weak_drive_rabi_frequency(double delta, double amp, double omega);

/// Strong-drive limit omega - delta J0(2A/omega).
double strong_drive_rabi_frequency(double delta, double amp, double omega);

}  // namespace floqsim
