#include "floqsim/propagator.hpp"

#include "floqsim/errors.hpp"
#include "floqsim/integrator.hpp"
#include "floqsim/parallel.hpp"
#include "floqsim/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace floqsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMinEdgeSteps = 50;

struct DriveHamiltonian {
  double half_delta;
  const PulseSpec* pulse;
  PauliCoefficients operator()(double t) const { return {0.0, drive_at(*pulse, t), 0.0, -half_delta}; }
};

DriveHamiltonian make_ham(const QubitParams& params, const PulseSpec& pulse) {
  return {0.5 * params.delta, &pulse};
}

// Internal step for the piece [a, b]: edges get at least kMinEdgeSteps steps.
double piece_step(const PulseSpec& p, double a, double b, double h) {
  const double mid = 0.5 * (a + b);
  if (p.t_rise > 0.0 && mid > 0.0 && mid < p.t_rise) return std::min(h, p.t_rise / kMinEdgeSteps);
  if (p.t_fall > 0.0 && mid > p.fall_start() && mid < p.total_duration()) {
    return std::min(h, p.t_fall / kMinEdgeSteps);
  }
  return h;
}

Unitary2 propagate_piece(const DriveHamiltonian& ham, double a, double b, double h) {
  if (!(b > a)) return Unitary2::Identity();
  const double hp = piece_step(*ham.pulse, a, b, h);
  const long steps = std::max(1L, static_cast<long>(std::ceil((b - a) / hp - 1e-9)));
  return propagate_interval(ham, a, b, steps);
}

// U(t1, t0) with pieces split at the envelope breakpoints.
Unitary2 propagate_span(const DriveHamiltonian& ham, double t0, double t1, double h) {
  const PulseSpec& p = *ham.pulse;
  double cuts[] = {0.0, p.t_rise, p.fall_start(), p.total_duration()};
  Unitary2 u = Unitary2::Identity();
  double a = t0;
  for (double c : cuts) {
    if (c > a && c < t1) {
      u = propagate_piece(ham, a, c, h) * u;
      a = c;
    }
  }
  return propagate_piece(ham, a, t1, h) * u;
}

double state_distance(const Vector2& a, const Vector2& b) { return (a - b).norm(); }

template <class Run, class Distance>
auto controlled(Run&& run, Distance&& distance, double h0, const PropagatorOptions& opt)
    -> std::pair<decltype(run(h0)), double> {
  if (!opt.control_accuracy) return {run(h0), h0};
  double h = h0;
  auto coarse = run(h);
  while (true) {
    if (h / 2.0 < opt.min_step) {
      std::ostringstream msg;
      msg << "propagator: tolerance " << opt.tolerance << " not reached above step floor " << opt.min_step
          << " ns";
      throw AccuracyError(msg.str());
    }
    auto fine = run(h / 2.0);
    if (distance(coarse, fine) < opt.tolerance) return {fine, h / 2.0};
    coarse = std::move(fine);
    h /= 2.0;
  }
}

double initial_step(const QubitParams& params, const PulseSpec& pulse, const PropagatorOptions& opt) {
  return opt.max_step > 0.0 ? opt.max_step : default_step(params, pulse);
}

std::vector<double> sample_times(double total, double dt) {
  std::vector<double> times;
  const auto count = static_cast<long>(std::floor(total / dt + 1e-9));
  times.reserve(static_cast<size_t>(count) + 2);
  for (long k = 0; k <= count; ++k) times.push_back(static_cast<double>(k) * dt);
  if (total - times.back() > 1e-12 * std::max(1.0, total)) times.push_back(total);
  return times;
}

// Gauss-Legendre nodes and weights on [-1, 1] via the symmetric Jacobi matrix.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  Eigen::VectorXd w = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  return {es.eigenvalues(), w};
}

}  // namespace

double default_step(const QubitParams& params, const PulseSpec& pulse) {
  double h = kTwoPi / params.delta / 200.0;
  if (pulse.carrier > 0.0) h = std::min(h, kTwoPi / pulse.carrier / 200.0);
  h = std::min(h, 0.05 / (pulse.amplitude_max + 0.5 * params.delta));
  return h;
}

Unitary2 evolution_operator(const QubitParams& params, const PulseSpec& pulse, double t0, double t1,
                            const PropagatorOptions& options) {
  params.check();
  pulse.check();
  if (t1 < t0) throw InvalidArgument("evolution_operator: t1 < t0");
  const auto ham = make_ham(params, pulse);
  auto run = [&](double h) { return propagate_span(ham, t0, t1, h); };
  auto dist = [](const Unitary2& a, const Unitary2& b) { return (a - b).cwiseAbs().maxCoeff(); };
  return controlled(run, dist, initial_step(params, pulse, options), options).first;
}

double select_step(const QubitParams& params, const PulseSpec& pulse, const PropagatorOptions& options) {
  params.check();
  pulse.check();
  const auto ham = make_ham(params, pulse);
  const double total = pulse.total_duration();
  auto run = [&](double h) { return Vector2(propagate_span(ham, 0.0, total, h).col(0)); };
  return controlled(run, state_distance, initial_step(params, pulse, options), options).second;
}

Trajectory propagate(const QubitParams& params, const PulseSpec& pulse, const StateVector& initial,
                     double sample_dt, const PropagatorOptions& options) {
  params.check();
  pulse.check();
  if (!(sample_dt > 0.0)) throw InvalidArgument("propagate: sample_dt must be positive");
  const auto ham = make_ham(params, pulse);
  const std::vector<double> times = sample_times(pulse.total_duration(), sample_dt);

  auto run = [&](double h) {
    std::vector<Vector2> out;
    out.reserve(times.size());
    Vector2 psi = initial.amplitudes();
    out.push_back(psi);
    for (size_t k = 1; k < times.size(); ++k) {
      psi = propagate_span(ham, times[k - 1], times[k], h) * psi;
      out.push_back(psi);
    }
    return out;
  };
  auto dist = [](const std::vector<Vector2>& a, const std::vector<Vector2>& b) {
    double d = 0.0;
    for (size_t k = 0; k < a.size(); ++k) d = std::max(d, state_distance(a[k], b[k]));
    return d;
  };
  auto [states, h] = controlled(run, dist, initial_step(params, pulse, options), options);

  Trajectory tr;
  tr.times = times;
  tr.step = h;
  tr.states.reserve(states.size());
  for (const auto& s : states) {
    tr.states.emplace_back(s);
    tr.p1.push_back(tr.states.back().p1());
    tr.bloch.push_back(BlochVector::of(tr.states.back()));
  }
  return tr;
}

SweepResult sweep_pulse_duration(const QubitParams& params, const PulseSpec& pulse_template,
                                 std::span<const double> durations, const SweepOptions& options) {
  params.check();
  pulse_template.check();
  if (durations.empty()) throw InvalidArgument("sweep_pulse_duration: empty duration list");
  for (size_t k = 0; k < durations.size(); ++k) {
    if (!(durations[k] >= 0.0) || (k > 0 && !(durations[k] > durations[k - 1]))) {
      throw InvalidArgument("sweep_pulse_duration: durations must be non-negative and increasing");
    }
  }
  if (options.shots < 0) throw InvalidArgument("sweep_pulse_duration: negative shot count");

  PulseSpec longest = pulse_template;
  longest.t_plateau = durations.back();
  const double h = options.propagator.control_accuracy
                       ? select_step(params, longest, options.propagator)
                       : initial_step(params, longest, options.propagator);

  const auto ham_long = make_ham(params, longest);
  const double tr = longest.t_rise;
  std::vector<Unitary2> plateau(durations.size());
  Unitary2 u = propagate_span(ham_long, 0.0, tr, h);
  double t = tr;
  for (size_t k = 0; k < durations.size(); ++k) {
    u = propagate_span(ham_long, t, tr + durations[k], h) * u;
    t = tr + durations[k];
    plateau[k] = u;
  }

  SweepResult res;
  res.durations.assign(durations.begin(), durations.end());
  res.step = h;
  std::vector<Vector2> finals(durations.size());
  parallel_for(durations.size(), [&](size_t k) {
    PulseSpec p = pulse_template;
    p.t_plateau = durations[k];
    const auto ham = make_ham(params, p);
    const Unitary2 fall = propagate_span(ham, p.fall_start(), p.total_duration(), h);
    finals[k] = (fall * plateau[k]).col(0);
  });
  res.final_states.reserve(finals.size());
  for (const auto& f : finals) {
    res.final_states.emplace_back(f);
    res.p1.push_back(res.final_states.back().p1());
  }
  if (options.shots > 0) {
    res.excited_counts.resize(res.p1.size());
    for (size_t k = 0; k < res.p1.size(); ++k) {
      Rng rng = make_rng(options.seed, k);
      res.excited_counts[k] = sample_binomial(rng, options.shots, res.p1[k]);
    }
  }
  return res;
}

FloquetFrameCoeffs floquet_frame_decompose(const StateVector& state, const FloquetSpectrum& spectrum,
                                           double t, double carrier_phase, double accumulated_phase) {
  if (!spectrum.basis_resolved) {
    throw IllDefinedBasis("floquet_frame_decompose: degenerate quasienergy pair without a limiting basis");
  }
  if (spectrum.delta_eps < 1e-9 && spectrum.amplitude != 0.0) {
    throw IllDefinedBasis("floquet_frame_decompose: degenerate quasienergies at nonzero drive");
  }
  const double phase = spectrum.omega * t + carrier_phase;
  const Vector2 u0 = spectrum.periodic_state(0, phase);
  const Vector2 u1 = spectrum.periodic_state(1, phase);
  FloquetFrameCoeffs c;
  c.c0 = u0.dot(state.amplitudes());
  c.c1 = u1.dot(state.amplitudes()) * std::polar(1.0, accumulated_phase);
  c.accumulated_phase = accumulated_phase;
  return c;
}

double EdgeTransition::off_diagonal() const {
  return std::max(std::abs(unitary(0, 1)), std::abs(unitary(1, 0)));
}

double integrate_quasienergy(const QubitParams& params, const PulseSpec& pulse, double t0, double t1,
                             int branch, int truncation_n) {
  if (branch < -1 || branch > 1) throw InvalidArgument("integrate_quasienergy: branch must be -1, 0 or 1");
  if (t1 < t0) throw InvalidArgument("integrate_quasienergy: t1 < t0");
  auto value = [&](double amp) {
    const FloquetSpectrum s = floquet_spectrum(params.delta, amp, pulse.carrier, truncation_n);
    return branch == 0 ? s.eps0 : branch == 1 ? s.eps1 : s.delta_eps;
  };
  static const auto gl = gauss_legendre(12);
  constexpr int kPanels = 4;

  const double cuts[] = {0.0, pulse.t_rise, pulse.fall_start(), pulse.total_duration()};
  double total = 0.0;
  double a = t0;
  auto piece = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    const double mid = 0.5 * (lo + hi);
    const bool flat = mid < 0.0 || mid > pulse.total_duration() ||
                      (mid >= pulse.t_rise && mid <= pulse.fall_start());
    if (flat) {
      total += (hi - lo) * value(envelope_or_zero(pulse, mid));
      return;
    }
    const double w = (hi - lo) / kPanels;
    for (int p = 0; p < kPanels; ++p) {
      const double c = lo + (p + 0.5) * w;
      for (Eigen::Index k = 0; k < gl.first.size(); ++k) {
        total += 0.5 * w * gl.second(k) * value(envelope_or_zero(pulse, c + 0.5 * w * gl.first(k)));
      }
    }
  };
  for (double c : cuts) {
    if (c > a && c < t1) {
      piece(a, c);
      a = c;
    }
  }
  piece(a, t1);
  return total;
}

EdgeTransition edge_transition_unitary(const QubitParams& params, const PulseSpec& pulse, Edge edge,
                                       const PropagatorOptions& options, int truncation_n) {
  params.check();
  pulse.check();
  if (!(pulse.carrier > 0.0)) throw InvalidArgument("edge_transition_unitary: carrier must be positive");
  const bool rise = edge == Edge::Rise;
  const double t0 = rise ? 0.0 : pulse.fall_start();
  const double t1 = rise ? pulse.t_rise : pulse.total_duration();
  const double amp_before = rise ? 0.0 : pulse.amplitude_max;
  const double amp_after = rise ? pulse.amplitude_max : 0.0;

  const FloquetSpectrum before = floquet_spectrum(params.delta, amp_before, pulse.carrier, truncation_n);
  const FloquetSpectrum after = floquet_spectrum(params.delta, amp_after, pulse.carrier, truncation_n);
  for (const auto* s : {&before, &after}) {
    if (!s->basis_resolved || (s->delta_eps < 1e-9 && s->amplitude != 0.0)) {
      throw IllDefinedBasis("edge_transition_unitary: degenerate Floquet basis");
    }
  }
  const Unitary2 u = evolution_operator(params, pulse, t0, t1, options);
  const double ph0 = pulse.carrier * t0 + pulse.carrier_phase;
  const double ph1 = pulse.carrier * t1 + pulse.carrier_phase;

  EdgeTransition out;
  out.phase0 = integrate_quasienergy(params, pulse, t0, t1, 0, truncation_n);
  out.phase1 = integrate_quasienergy(params, pulse, t0, t1, 1, truncation_n);
  const double phases[2] = {out.phase0, out.phase1};
  for (int i = 0; i < 2; ++i) {
    const Vector2 ui = after.periodic_state(i, ph1);
    for (int j = 0; j < 2; ++j) {
      const Vector2 uj = before.periodic_state(j, ph0);
      out.unitary(i, j) = ui.dot(u * uj) * std::polar(1.0, phases[j]);
    }
  }
  return out;
}

StatePreparation prepare_state(const QubitParams& params, const StateVector& target, double amp,
                               double edges, const PrepareOptions& options) {
  params.check();
  if (!(amp >= 0.0) || !(edges >= 0.0)) throw InvalidArgument("prepare_state: negative amplitude or edge");
  if (!(options.plateau_max >= options.plateau_min) || !(options.plateau_min >= 0.0) ||
      !(options.plateau_resolution > 0.0) || options.phase_steps < 1) {
    throw InvalidArgument("prepare_state: invalid scan options");
  }
  PulseSpec base;
  base.amplitude_max = amp;
  base.carrier = options.carrier > 0.0 ? options.carrier : params.delta;
  base.t_rise = edges;
  base.t_fall = edges;

  std::vector<double> grid;
  const auto n = static_cast<long>(
      std::floor((options.plateau_max - options.plateau_min) / options.plateau_resolution + 1e-9));
  for (long k = 0; k <= n; ++k) grid.push_back(options.plateau_min + static_cast<double>(k) * options.plateau_resolution);

  auto fidelity_of = [&](const Vector2& psi) { return std::norm(target.amplitudes().dot(psi)); };

  double best_f = -1.0;
  PulseSpec best = base;
  SweepOptions so;
  so.propagator = options.propagator;
  for (int k = 0; k < options.phase_steps; ++k) {
    PulseSpec p = base;
    p.carrier_phase = kTwoPi * k / options.phase_steps;
    const SweepResult r = sweep_pulse_duration(params, p, grid, so);
    for (size_t i = 0; i < grid.size(); ++i) {
      const double f = fidelity_of(r.final_states[i].amplitudes());
      if (f > best_f) {
        best_f = f;
        best = p;
        best.t_plateau = grid[i];
      }
    }
  }

  auto eval = [&](double tp, double phase) {
    PulseSpec p = base;
    p.t_plateau = std::clamp(tp, options.plateau_min, options.plateau_max);
    p.carrier_phase = phase;
    const Unitary2 u = evolution_operator(params, p, 0.0, p.total_duration(), options.propagator);
    return fidelity_of(u.col(0));
  };
  // Golden-section search along one coordinate, keeping the incumbent if no gain.
  auto golden = [&](double lo, double hi, auto&& f) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 40; ++it) {
      if (fc > fd) {
        b = d, d = c, fd = fc;
        c = b - g * (b - a);
        fc = f(c);
      } else {
        a = c, c = d, fc = fd;
        d = a + g * (b - a);
        fd = f(d);
      }
    }
    return fc > fd ? std::pair{c, fc} : std::pair{d, fd};
  };
  best_f = eval(best.t_plateau, best.carrier_phase);
  const double dphase = kTwoPi / options.phase_steps;
  for (int round = 0; round < 3; ++round) {
    auto [tp, ft] = golden(best.t_plateau - options.plateau_resolution, best.t_plateau + options.plateau_resolution,
                           [&](double x) { return eval(x, best.carrier_phase); });
    if (ft > best_f) {
      best_f = ft;
      best.t_plateau = std::clamp(tp, options.plateau_min, options.plateau_max);
    }
    auto [ph, fp] = golden(best.carrier_phase - dphase, best.carrier_phase + dphase,
                           [&](double x) { return eval(best.t_plateau, x); });
    if (fp > best_f) {
      best_f = fp;
      best.carrier_phase = ph;
    }
  }
  best.carrier_phase = std::fmod(best.carrier_phase + kTwoPi, kTwoPi);

  StatePreparation out;
  out.pulse = best;
  out.overlap_probability = best_f;
  out.fidelity = std::sqrt(best_f);
  out.below_floor = out.fidelity < options.fidelity_floor;
  return out;
}

}  // namespace floqsim
