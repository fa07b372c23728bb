#pragma once

#include "floqsim/su2.hpp"
#include "floqsim/units.hpp"

namespace floqsim {

/// Static device parameters of a flux qubit biased near its symmetry point.
/// Defaults reproduce the measured device.
struct QubitParams {
  double delta = units::ghz_to_rad_per_ns(2.288);  // minimum splitting, rad/ns
  double persistent_current = 690.0;               // nA
  double t1 = 1800.0;                              // ns, informational only
  double t_ramsey = 300.0;                         // ns, informational only

  /// Throws InvalidArgument unless delta > 0.
  void check() const;
};

/// Shaped drive: cosine-edged envelope times cos(carrier * t + carrier_phase).
/// Time is measured from the start of the pulse.
struct PulseSpec {
  double amplitude_max = 0.0;  // A_m, rad/ns
  double carrier = 0.0;        // omega, rad/ns
  double t_rise = 0.0;         // ns
  double t_plateau = 0.0;      // ns
  double t_fall = 0.0;         // ns
  double carrier_phase = 0.0;  // rad

  double total_duration() const { return t_rise + t_plateau + t_fall; }
  double plateau_start() const { return t_rise; }
  double fall_start() const { return t_rise + t_plateau; }

  /// Throws InvalidArgument for negative durations or amplitude.
  void check() const;
};

/// Normalized qubit state in the energy eigenbasis {|0>, |1>}.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-10;

  /// Throws InvalidArgument unless |c_g|^2 + |c_e|^2 = 1 within tolerance.
  StateVector(Complex c_g, Complex c_e);
  explicit StateVector(const Vector2& amplitudes);

  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static StateVector normalized(Complex c_g, Complex c_e);
  static StateVector ground() { return {1.0, 0.0}; }
  static StateVector excited() { return {0.0, 1.0}; }

  Complex c_g() const { return amplitudes_(0); }
  Complex c_e() const { return amplitudes_(1); }
  const Vector2& amplitudes() const { return amplitudes_; }
  double p1() const { return std::norm(amplitudes_(1)); }

 private:
  Vector2 amplitudes_;
};

/// Expectation values of the Pauli operators. |0> maps to sz = +1.
struct BlochVector {
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;

  static BlochVector of(const StateVector& state);
  double norm() const;
};

/// Envelope A(t). Throws OutOfRange for t outside [0, total_duration].
/// A zero-length rise (fall) makes the envelope jump to (from) A_m.
double envelope(const PulseSpec& pulse, double t);

/// Envelope extended by zero outside the pulse support.
double envelope_or_zero(const PulseSpec& pulse, double t);

/// H(t) = -delta/2 sz + A(t) cos(omega t + phase) sx, zero drive outside the pulse.
HermitianMatrix2 hamiltonian_at(const QubitParams& params, const PulseSpec& pulse, double t);

/// Drive term coefficient of sx at time t: A(t) cos(omega t + phase).
double drive_at(const PulseSpec& pulse, double t);

/// omega_01 = sqrt(delta^2 + eps^2) with eps = 2 I_p (Phi_s - Phi_0/2) / hbar.
/// flux_offset is (Phi_s - Phi_0/2) in units of the flux quantum.
double transition_frequency(const QubitParams& params, double flux_offset);

/// eps(flux_offset) in rad/ns.
double flux_bias_energy(const QubitParams& params, double flux_offset);

}  // namespace floqsim
