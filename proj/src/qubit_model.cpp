#include "floqsim/qubit_model.hpp"

#include "floqsim/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace floqsim {

void QubitParams::check() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("QubitParams: delta must be positive");
  }
}

void PulseSpec::check() const {
  if (!(amplitude_max >= 0.0) || !(t_rise >= 0.0) || !(t_plateau >= 0.0) || !(t_fall >= 0.0)) {
    throw InvalidArgument("PulseSpec: amplitude and durations must be non-negative");
  }
  if (!(carrier >= 0.0)) {
    throw InvalidArgument("PulseSpec: carrier frequency must be non-negative");
  }
}

StateVector::StateVector(Complex c_g, Complex c_e) : amplitudes_(c_g, c_e) {
  const double n = std::norm(c_g) + std::norm(c_e);
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg << "StateVector: norm^2 = " << n << " differs from 1";
    throw InvalidArgument(msg.str());
  }
}

StateVector::StateVector(const Vector2& amplitudes) : StateVector(amplitudes(0), amplitudes(1)) {}

StateVector StateVector::normalized(Complex c_g, Complex c_e) {
  const double n = std::sqrt(std::norm(c_g) + std::norm(c_e));
  if (!(n > 0.0)) throw InvalidArgument("StateVector: zero amplitudes");
  return {c_g / n, c_e / n};
}

BlochVector BlochVector::of(const StateVector& s) {
  const Complex coh = std::conj(s.c_g()) * s.c_e();
  return {2.0 * coh.real(), 2.0 * coh.imag(), std::norm(s.c_g()) - std::norm(s.c_e())};
}

double BlochVector::norm() const { return std::sqrt(sx * sx + sy * sy + sz * sz); }

double envelope(const PulseSpec& p, double t) {
  const double total = p.total_duration();
  if (t < 0.0 || t > total) {
    std::ostringstream msg;
    msg << "envelope: t = " << t << " outside [0, " << total << "]";
    throw OutOfRange(msg.str());
  }
  constexpr double pi = std::numbers::pi;
  const double a = p.amplitude_max;
  if (t < p.t_rise) return 0.5 * a * (1.0 - std::cos(pi * t / p.t_rise));
  if (t <= p.fall_start() || p.t_fall == 0.0) return a;
  return 0.5 * a * (1.0 + std::cos(pi * (t - p.fall_start()) / p.t_fall));
}

double envelope_or_zero(const PulseSpec& p, double t) {
  if (t < 0.0 || t > p.total_duration()) return 0.0;
  return envelope(p, t);
}

double drive_at(const PulseSpec& p, double t) {
  return envelope_or_zero(p, t) * std::cos(p.carrier * t + p.carrier_phase);
}

HermitianMatrix2 hamiltonian_at(const QubitParams& params, const PulseSpec& pulse, double t) {
  return pauli_compose({0.0, drive_at(pulse, t), 0.0, -0.5 * params.delta});
}

double flux_bias_energy(const QubitParams& params, double flux_offset) {
  // 2 I_p Phi_0 f / hbar = 2 pi I_p f / e   (Phi_0 = h / 2e)
  return units::kTwoPi * params.persistent_current * flux_offset / units::kElementaryChargeNaNs;
}

double transition_frequency(const QubitParams& params, double flux_offset) {
  return std::hypot(params.delta, flux_bias_energy(params, flux_offset));
}

}  // namespace floqsim
