#pragma once

#include "floqsim/su2.hpp"

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

namespace floqsim {

/// Truncated Floquet Hamiltonian of H = -delta/2 sz + A cos(omega t) sx,
/// written in the basis rotated by pi/2 about y, where
/// H_rot = -delta/2 sx - A cos(omega t) sz. Photon index n runs over -N..N,
/// each index carrying an (up, down) pair; dimension 2(2N+1).
class FloquetMatrix {
 public:
  int truncation() const { return truncation_; }
  int dimension() const { return 2 * (2 * truncation_ + 1); }
  double delta() const { return delta_; }
  double amplitude() const { return amplitude_; }
  double omega() const { return omega_; }
  const Eigen::MatrixXd& entries() const { return entries_; }

  /// Row of the (n, up) component; (n, down) is the next row.
  int row_of(int n) const { return 2 * (n + truncation_); }

 private:
  friend FloquetMatrix build_floquet_matrix(double, double, double, int);
  FloquetMatrix(double delta, double amp, double omega, int truncation);

  int truncation_;
  double delta_;
  double amplitude_;
  double omega_;
  Eigen::MatrixXd entries_;
};

inline constexpr int kDefaultTruncation = 50;

/// Throws InvalidArgument for truncation_n < 1 or omega <= 0.
FloquetMatrix build_floquet_matrix(double delta, double amp, double omega,
                                   int truncation_n = kDefaultTruncation);

/// Diagonal block of photon index n: n*omega*I - delta/2 sx.
Eigen::Matrix2d floquet_block(double delta, int n, double omega);

/// All eigenvalues of the dense matrix, ascending.
Eigen::VectorXd dense_eigenvalues(const FloquetMatrix& m);

/// Fourier components u_n of a periodic quasienergy state, stored in the
/// rotated basis as (up, down) for n = -N..N.
class FourierTable {
 public:
  FourierTable() = default;
  FourierTable(int truncation, std::vector<Vector2> coefficients);

  int truncation() const { return truncation_; }
  const Vector2& at(int n) const { return coefficients_.at(static_cast<size_t>(n + truncation_)); }
  const std::vector<Vector2>& coefficients() const { return coefficients_; }

  /// sum_n e^{i n phase} u_n in the rotated basis.
  Vector2 evaluate_rotated(double drive_phase) const;
  /// Same state expressed in the energy eigenbasis {|0>, |1>}.
  Vector2 evaluate_lab(double drive_phase) const;
  double norm() const;

 private:
  int truncation_ = 0;
  std::vector<Vector2> coefficients_;
};

/// Maps rotated-basis amplitudes back to the energy eigenbasis.
Vector2 rotated_to_lab(const Vector2& rotated);
Vector2 lab_to_rotated(const Vector2& lab);

/// The two inequivalent quasienergies with their periodic states. eps0 and
/// eps1 are the branches that start at -omega/2 -+ |delta - omega|/2 for
/// A = 0 and continue smoothly in A.
struct FloquetSpectrum {
  double eps0 = 0.0;
  double eps1 = 0.0;
  double delta_eps = 0.0;  // eps1 - eps0
  double delta = 0.0;
  double amplitude = 0.0;
  double omega = 0.0;
  FourierTable u0;
  FourierTable u1;
  /// False when the pair is degenerate and no limiting basis could be
  /// assigned; the periodic states are then arbitrary.
  bool basis_resolved = true;

  /// Periodic state u_j at drive phase omega*t + carrier_phase, energy eigenbasis.
  Vector2 periodic_state(int j, double drive_phase) const;
};

/// Diagonalizes the generalized-parity sector that contains both branches
/// and selects them by their fixed rank within that sector. For a
/// degenerate pair at A = 0 the states are the A -> 0+ limit. The global
/// phase of each eigenvector makes its largest coefficient real positive.
/// Throws NumericFailure if the eigensolver fails, residuals exceed
/// 1e-9 ||H||, or the selected states reach the truncation edge.
FloquetSpectrum quasienergies(const FloquetMatrix& matrix);

/// Shorthand for quasienergies(build_floquet_matrix(...)).
FloquetSpectrum floquet_spectrum(double delta, double amp, double omega,
                                 int truncation_n = kDefaultTruncation);

/// Continuation of the two branches over an increasing amplitude grid
/// starting at A = 0, using eigenvectors of the full dense matrix. Steps are
/// at most min(0.02 omega, 2 pi x 0.05 rad/ns) and are bisected while the
/// eigenvector overlap with the previous step is below 0.9. Returns one
/// spectrum per requested amplitude. This path does not use the parity
/// structure and serves as a check on quasienergies().
std::vector<FloquetSpectrum> track_branches(double delta, double omega,
                                            std::span<const double> amplitudes,
                                            int truncation_n = kDefaultTruncation);

struct MonodromyOptions {
  /// Fixed integrator step in ns; 0 selects T/2000.
  double step = 0.0;
  /// Halve the step until successive quasienergies change by less than this (rad/ns).
  double tolerance = 1e-11;
  /// Smallest allowed step as a fraction of the period.
  double min_step_fraction = 1e-6;
};

struct MonodromyResult {
  double eps0 = 0.0;  // reduced to (-omega/2, omega/2], eps0 <= eps1
  double eps1 = 0.0;
  Unitary2 propagator;
  double unitarity_defect = 0.0;
  double step = 0.0;
};

/// Quasienergies mod omega from the eigenphases of the one-period
/// propagator of H = -delta/2 sz + A cos(omega t) sx.
/// Throws AccuracyError if the unitarity defect exceeds 1e-8 or the step
/// refinement reaches the floor.
MonodromyResult monodromy_quasienergies(double delta, double amp, double omega,
                                        const MonodromyOptions& options = {});

/// x reduced to (-omega/2, omega/2].
double reduce_mod(double x, double omega);

/// Distance between two quasienergies on the circle of circumference omega.
double mod_distance(double a, double b, double omega);

/// Frequencies n*omega and n*omega +- delta_eps for even n in [0, n_max],
/// non-negative, sorted, deduplicated within 1e-9.
std::vector<double> frequency_components(double delta_eps, double omega, int n_max);

}  // namespace floqsim
