#pragma once

#include "floqsim/qubit_model.hpp"
#include "floqsim/su2.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace floqsim {

/// Validated 2x2 density matrix. Construction checks Hermiticity and unit
/// trace within `tolerance` and eigenvalues >= -max(1e-10, tolerance).
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-12;
  static constexpr double kEigenvalueFloor = 1e-10;

  explicit DensityMatrix(const Matrix2& rho, double tolerance = kTolerance);

  static DensityMatrix pure(const StateVector& state);
  /// (I + r.sigma)/2; requires |r| <= 1 + 1e-12.
  static DensityMatrix from_bloch(double x, double y, double z);

  const Matrix2& matrix() const { return rho_; }
  std::array<double, 3> bloch() const;
  double min_eigenvalue() const;
  double purity() const;

 private:
  Matrix2 rho_;
};

/// Pre-rotation applied before a z measurement.
enum class Basis { Z, X90, Y90 };

std::string basis_name(Basis b);
Basis parse_basis(const std::string& name);
inline constexpr std::array<Basis, 3> kTomographyBases{Basis::Z, Basis::X90, Basis::Y90};

/// Ideal pre-rotation: I, Rx(pi/2) or Ry(pi/2).
Unitary2 ideal_prerotation(Basis b);

/// Unit Bloch direction that the pre-rotation maps onto +z, so that
/// <sigma_z> after the rotation equals r . measured_axis(b).
/// Z -> +z, X90 -> +y, Y90 -> -x.
std::array<double, 3> measured_axis(Basis b);

/// Excited-state probability after the ideal pre-rotation.
double excited_probability(const DensityMatrix& rho, Basis b);

struct ShotRecord {
  Basis basis = Basis::Z;
  long shots = 0;
  long excited_counts = 0;
  std::uint64_t seed = 0;
};

/// Shot statistics in a form the estimator accepts; counts may be fractional,
/// for example exact probabilities times the number of shots.
struct BasisData {
  Basis basis = Basis::Z;
  double shots = 0.0;
  double excited = 0.0;
};

ShotRecord simulate_shots(const DensityMatrix& rho, Basis basis, long shots, std::uint64_t seed);
ShotRecord simulate_shots(const StateVector& state, Basis basis, long shots, std::uint64_t seed);

std::vector<BasisData> to_basis_data(std::span<const ShotRecord> records);
/// Noise-free data: excited = shots * P1 in each basis.
std::vector<BasisData> exact_basis_data(const DensityMatrix& rho, double shots);

struct MleOptions {
  double gradient_tolerance = 1e-9;
  int max_iterations = 500;
};

struct MleDiagnostics {
  int iterations = 0;
  double gradient_norm = 0.0;
  double negative_log_likelihood = 0.0;  // per shot
};

/// Maximum-likelihood state under the binomial model, with
/// rho = L L^dagger / Tr(L L^dagger) and L lower triangular. Needs one entry
/// per basis. Throws NumericFailure if the gradient tolerance is not met.
DensityMatrix mle_reconstruct(std::span<const BasisData> data, const MleOptions& options = {},
                              MleDiagnostics* diagnostics = nullptr);
DensityMatrix mle_reconstruct(std::span<const ShotRecord> records, const MleOptions& options = {});

/// F = Tr sqrt(sqrt(sigma) rho sqrt(sigma)), clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

struct TomographyResult {
  DensityMatrix rho{Matrix2::Identity() / 2.0};
  double fidelity_to_target = 0.0;
  double fidelity_stderr = 0.0;
  double fidelity_mean = 0.0;  // over resamples
  int bootstrap_b = 0;
  int failures = 0;  // resamples whose estimate did not converge
};

/// Parametric bootstrap: each basis mean m = 1 - 2k/n is resampled from
/// N(m, sqrt(1 - m^2)/sqrt(n)), clipped to [-1, 1], and re-estimated.
/// stderr is the sample standard deviation of the B fidelities. Resample i
/// uses stream i of `seed`. Throws InvalidArgument for b < 100 and
/// NumericFailure if more than 5% of resamples fail.
TomographyResult bootstrap_errors(std::span<const ShotRecord> records, const StateVector& target, int b,
                                  std::uint64_t seed);

/// Pre-rotation pulses for tomography in the frame rotating at the carrier.
struct PreRotations {
  PulseSpec identity;  // zero-amplitude wait of the same length
  PulseSpec x90;
  PulseSpec y90;
};

struct PreRotationOptions {
  double amplitude = units::ghz_to_rad_per_ns(0.130);
  double edges = 0.2;  // ns
  /// Carrier in rad/ns; 0 selects resonance with delta.
  double carrier = 0.0;
};

/// Calibrates plateau length and carrier phases by propagation so that the
/// realized rotations are pi/2 about +x and +y.
PreRotations prerotation_pulses(const QubitParams& params = {}, const PreRotationOptions& options = {});

/// Pulse unitary in the frame rotating at delta: U0(T)^dagger U(T, 0) with
/// U0(t) = exp(i delta t sz / 2). With the carrier on resonance and its
/// phase referred to a common clock, this is independent of when the
/// pulse starts.
Unitary2 rotating_frame_unitary(const QubitParams& params, const PulseSpec& pulse);

/// Lab-frame propagation of back-to-back pulses whose carrier phases are
/// referred to the start of the first pulse. Returns the total unitary.
Unitary2 pulse_train_unitary(const QubitParams& params, std::span<const PulseSpec> pulses);

struct CalibrationReading {
  double p1 = 0.0;
  /// Sign-corrected 1 - 2 P1, which is linear in the error for small errors.
  double amplified = 0.0;
  double amplification = 0.0;
  double error = 0.0;  // amplified / amplification
};

/// [R(theta)]^(2n+1) applied to |0>. Near theta = pi/2 + delta,
/// 1 - 2 P1 = (-1)^(n+1) sin((2n+1) delta).
CalibrationReading angle_calibration_sequence(const Unitary2& pulse, int n);
CalibrationReading angle_calibration_sequence(const QubitParams& params, const PulseSpec& pulse, int n);

/// Ry'(pi/2) {[Rx(pi/2)]^2 [Ry'(pi/2)]^2}^n Rx(pi/2) applied to |0>. For
/// y' = (-sin phi, cos phi, 0), 1 - 2 P1 = (-1)^n (2n+1) phi to first order:
/// the repeated block contributes 2n phi and the closing Ry' one more.
CalibrationReading axis_calibration_sequence(const Unitary2& pulse_x, const Unitary2& pulse_y, int n);
CalibrationReading axis_calibration_sequence(const QubitParams& params, const PulseSpec& pulse_x,
                                             const PulseSpec& pulse_y, int n);

}  // namespace floqsim
