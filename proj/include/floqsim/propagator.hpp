#pragma once

#include "floqsim/floquet.hpp"
#include "floqsim/qubit_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace floqsim {

struct PropagatorOptions {
  /// Internal step in ns; 0 selects default_step(). Edge segments always
  /// take at least 50 steps.
  double max_step = 0.0;
  /// Halve the step until the final state moves by less than this.
  double tolerance = 1e-9;
  /// Step floor in ns; reaching it raises AccuracyError.
  double min_step = 1e-7;
  bool control_accuracy = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> p1;
  std::vector<BlochVector> bloch;
  /// Internal step actually used.
  double step = 0.0;
};

/// Integrates i d(psi)/dt = H(t) psi over the whole pulse with fourth-order
/// Magnus steps aligned to the envelope segments and to the sampling grid.
/// Samples at 0, dt, 2dt, ... and at the pulse end.
Trajectory propagate(const QubitParams& params, const PulseSpec& pulse, const StateVector& initial,
                     double sample_dt, const PropagatorOptions& options = {});

/// U(t1, t0) under the pulse Hamiltonian (zero drive outside the pulse).
Unitary2 evolution_operator(const QubitParams& params, const PulseSpec& pulse, double t0, double t1,
                            const PropagatorOptions& options = {});

/// Default internal step for a pulse before accuracy refinement.
double default_step(const QubitParams& params, const PulseSpec& pulse);

/// Refines the internal step on the given pulse until halving it changes the
/// final state by less than options.tolerance. Returns the accepted step.
double select_step(const QubitParams& params, const PulseSpec& pulse,
                   const PropagatorOptions& options = {});

struct SweepOptions {
  PropagatorOptions propagator;
  /// Emulated projective measurements per point; 0 disables shot noise.
  long shots = 0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<double> durations;  // plateau durations t_p, ns
  std::vector<StateVector> final_states;
  std::vector<double> p1;
  std::vector<long> excited_counts;  // empty without shot noise
  double step = 0.0;
};

/// Final excited-state probability after pulses that share the template's
/// edges, amplitude and carrier, with plateau length taken from `durations`
/// (non-empty, increasing). Every point starts from |0>. The plateau
/// propagator is accumulated from one duration to the next, so results agree
/// with independent propagations to the integration tolerance.
SweepResult sweep_pulse_duration(const QubitParams& params, const PulseSpec& pulse_template,
                                 std::span<const double> durations, const SweepOptions& options = {});

/// Amplitudes on the instantaneous quasienergy states.
struct FloquetFrameCoeffs {
  Complex c0;
  Complex c1;
  double accumulated_phase = 0.0;  // integral of delta_eps dt removed from c1
};

/// Projects `state` onto u0, u1 of `spectrum` evaluated at drive phase
/// omega*t + carrier_phase. c1 carries exp(+i accumulated_phase).
/// Throws IllDefinedBasis when the pair is degenerate and unresolved.
FloquetFrameCoeffs floquet_frame_decompose(const StateVector& state, const FloquetSpectrum& spectrum,
                                           double t, double carrier_phase = 0.0,
                                           double accumulated_phase = 0.0);

enum class Edge { Rise, Fall };

struct EdgeTransition {
  /// Map between Floquet bases with dynamical phases removed; rows index the
  /// basis after the edge, columns the basis before it.
  Unitary2 unitary;
  double phase0 = 0.0;  // integral of eps0 over the edge
  double phase1 = 0.0;  // integral of eps1 over the edge
  double off_diagonal() const;
};

/// Nonadiabatic transition across one edge of the pulse: from the A = 0
/// Floquet basis to the A_m basis (rise) or back (fall).
EdgeTransition edge_transition_unitary(const QubitParams& params, const PulseSpec& pulse, Edge edge,
                                       const PropagatorOptions& options = {},
                                       int truncation_n = kDefaultTruncation);

/// Integral of a quasienergy branch (0, 1) or of delta_eps (-1) over [t0, t1]
/// following the envelope, by Gauss-Legendre quadrature per segment.
double integrate_quasienergy(const QubitParams& params, const PulseSpec& pulse, double t0, double t1,
                             int branch, int truncation_n = kDefaultTruncation);

struct PrepareOptions {
  /// Carrier in rad/ns; 0 selects resonance with delta.
  double carrier = 0.0;
  double plateau_min = 0.0;
  double plateau_max = 1.5;
  /// Plateau grid resolution of the coarse scan, ns.
  double plateau_resolution = 1e-3;
  int phase_steps = 72;
  double fidelity_floor = 0.99;
  PropagatorOptions propagator;
};

struct StatePreparation {
  PulseSpec pulse;
  /// State fidelity |<target|psi>|, the pure-state form of Tr sqrt(sqrt(sigma) rho sqrt(sigma)).
  double fidelity = 0.0;
  double overlap_probability = 0.0;  // |<target|psi>|^2
  bool below_floor = false;
};

/// Scans plateau length and carrier phase at fixed amplitude and edges,
/// starting from |0>, then refines the best grid point locally.
StatePreparation prepare_state(const QubitParams& params, const StateVector& target, double amp,
                               double edges, const PrepareOptions& options = {});

}  // namespace floqsim
