#include "commands.hpp"

#include "floqsim/analytic.hpp"
#include "floqsim/floquet.hpp"
#include "floqsim/parallel.hpp"
#include "floqsim/propagator.hpp"
#include "floqsim/random.hpp"
#include "floqsim/spectral.hpp"
#include "floqsim/tomography.hpp"
#include "floqsim/units.hpp"

#include <algorithm>
#include <cmath>

namespace floqsim::cli {

namespace {

using units::ghz_to_rad_per_ns;
using units::rad_per_ns_to_ghz;

struct Scan {
  std::vector<double> durations;
  SweepResult sweep;
  std::vector<double> measured;  // counts / shots, or p1 without shot noise
};

Scan run_sweep(const ExperimentConfig& c, const PulseSpec& tmpl, double duration, double dt, std::uint64_t seed) {
  Scan s;
  s.durations = duration_grid(duration, dt);
  SweepOptions opts;
  opts.propagator = c.propagator();
  opts.shots = c.shots;
  opts.seed = seed;
  s.sweep = sweep_pulse_duration(c.qubit(), tmpl, s.durations, opts);
  s.measured = s.sweep.p1;
  if (c.shots > 0) {
    for (size_t k = 0; k < s.measured.size(); ++k) {
      s.measured[k] = static_cast<double>(s.sweep.excited_counts[k]) / static_cast<double>(c.shots);
    }
  }
  return s;
}

// Frame rotating at `omega`, referred to the pulse start.
StateVector to_rotating_frame(const StateVector& psi, double omega, double t) {
  const Complex ph = std::polar(1.0, 0.5 * omega * t);
  return StateVector(psi.c_g() * std::conj(ph), psi.c_e() * ph);
}

nlohmann::ordered_json pulse_json(const PulseSpec& p) {
  return {{"amplitude_ghz", rad_per_ns_to_ghz(p.amplitude_max)},
          {"carrier_ghz", rad_per_ns_to_ghz(p.carrier)},
          {"t_rise_ns", p.t_rise},
          {"t_plateau_ns", p.t_plateau},
          {"t_fall_ns", p.t_fall},
          {"total_ns", p.total_duration()},
          {"carrier_phase_rad", p.carrier_phase}};
}

nlohmann::ordered_json matrix_json(const Matrix2& m) {
  auto j = nlohmann::ordered_json::array();
  for (int r = 0; r < 2; ++r) {
    auto row = nlohmann::ordered_json::array();
    for (int col = 0; col < 2; ++col) row.push_back({{"re", m(r, col).real()}, {"im", m(r, col).imag()}});
    j.push_back(row);
  }
  return j;
}

}  // namespace

std::vector<double> duration_grid(double duration, double dt) {
  const auto n = static_cast<long>(std::floor(duration / dt + 1e-9));
  std::vector<double> out(static_cast<size_t>(n + 1));
  for (long k = 0; k <= n; ++k) out[static_cast<size_t>(k)] = static_cast<double>(k) * dt;
  return out;
}

void cmd_quasienergies(const ExperimentConfig& c, OutputDir& out, const RunFlags& flags) {
  const double delta = c.qubit().delta;
  struct Row {
    double amp, omega;
    FloquetSpectrum num;
    QuasienergyPair an;
    MonodromyResult mono;
    double oracle_error = 0.0;
  };
  std::vector<Row> rows;
  for (double f : c.qe_omega_factors) {
    for (int i = 0; i < c.qe_points; ++i) {
      const double frac = c.qe_points == 1 ? 0.0 : static_cast<double>(i) / (c.qe_points - 1);
      rows.push_back({frac * c.qe_amplitude_max_over_delta * delta, f * delta, {}, {}, {}, 0.0});
    }
  }
  parallel_for(rows.size(), [&](size_t i) {
    auto& r = rows[i];
    r.num = floquet_spectrum(delta, r.amp, r.omega, c.truncation);
    r.an = analytic_quasienergies(delta, r.amp, r.omega);
    if (flags.oracle) {
      r.mono = monodromy_quasienergies(delta, r.amp, r.omega);
      const double a = std::max(mod_distance(r.num.eps0, r.mono.eps0, r.omega),
                                mod_distance(r.num.eps1, r.mono.eps1, r.omega));
      const double b = std::max(mod_distance(r.num.eps0, r.mono.eps1, r.omega),
                                mod_distance(r.num.eps1, r.mono.eps0, r.omega));
      r.oracle_error = std::min(a, b);
    }
  });

  std::vector<std::string> header{"amplitude_ghz",  "omega_ghz",      "eps0_numeric",       "eps1_numeric",
                                  "eps0_analytic",  "eps1_analytic",  "delta_eps_numeric",  "delta_eps_analytic"};
  if (flags.oracle) {
    for (const char* h : {"eps0_monodromy", "eps1_monodromy", "oracle_error"}) header.push_back(h);
  }
  CsvTable t(header);
  for (const auto& r : rows) {
    std::vector<Cell> row{rad_per_ns_to_ghz(r.amp),          rad_per_ns_to_ghz(r.omega),
                          rad_per_ns_to_ghz(r.num.eps0),     rad_per_ns_to_ghz(r.num.eps1),
                          rad_per_ns_to_ghz(r.an.eps0),      rad_per_ns_to_ghz(r.an.eps1),
                          rad_per_ns_to_ghz(r.num.delta_eps), rad_per_ns_to_ghz(r.an.eps1 - r.an.eps0)};
    if (flags.oracle) {
      row.push_back(rad_per_ns_to_ghz(r.mono.eps0));
      row.push_back(rad_per_ns_to_ghz(r.mono.eps1));
      row.push_back(rad_per_ns_to_ghz(r.oracle_error));
    }
    t.add_row(std::move(row));
  }
  out.write("quasienergies.csv", t.str());
}

void cmd_rabi_scan(const ExperimentConfig& c, OutputDir& out) {
  const QubitParams q = c.qubit();
  struct Point {
    double carrier, amp;
    Scan scan;
    Spectrum spectrum;
    PeakSet peaks;
    double delta_eps = 0.0;
  };
  std::vector<Point> pts;
  for (double w : c.rabi_carriers_ghz) {
    for (double a : c.rabi_amplitudes_ghz) pts.push_back({ghz_to_rad_per_ns(w), ghz_to_rad_per_ns(a), {}, {}, {}, 0.0});
  }
  parallel_for(pts.size(), [&](size_t i) {
    auto& p = pts[i];
    PulseSpec tmpl;
    tmpl.amplitude_max = p.amp;
    tmpl.carrier = p.carrier;
    tmpl.t_rise = c.rabi_min_edge_ns;
    tmpl.t_fall = c.rabi_min_edge_ns;
    p.scan = run_sweep(c, tmpl, c.rabi_duration_ns, c.rabi_sample_ns, mix_seed(c.seed, i));
    p.spectrum = dft(p.scan.durations, p.scan.measured, c.rabi_window, c.rabi_zero_pad);
    p.delta_eps = floquet_spectrum(q.delta, p.amp, p.carrier, c.truncation).delta_eps;
    p.peaks = classify_peaks(find_peaks(p.spectrum, c.rabi_min_prominence), p.carrier, p.delta_eps, c.rabi_n_max);
  });

  std::vector<std::string> h{"carrier_ghz", "amplitude_ghz", "t_p_ns", "p1"};
  if (c.shots > 0) {
    h.push_back("excited_counts");
    h.push_back("p1_measured");
  }
  CsvTable p1(h);
  CsvTable spec({"carrier_ghz", "amplitude_ghz", "frequency_ghz", "magnitude"});
  CsvTable peaks({"carrier_ghz", "amplitude_ghz", "delta_eps_ghz", "frequency_ghz", "peak_amplitude", "line", "n",
                  "predicted_ghz", "violation_score"});
  for (const auto& p : pts) {
    const double wg = rad_per_ns_to_ghz(p.carrier);
    const double ag = rad_per_ns_to_ghz(p.amp);
    for (size_t k = 0; k < p.scan.durations.size(); ++k) {
      std::vector<Cell> row{wg, ag, p.scan.durations[k], p.scan.sweep.p1[k]};
      if (c.shots > 0) {
        row.push_back(static_cast<long long>(p.scan.sweep.excited_counts[k]));
        row.push_back(p.scan.measured[k]);
      }
      p1.add_row(std::move(row));
    }
    for (size_t k = 0; k < p.spectrum.freqs.size() && p.spectrum.freqs[k] <= c.rabi_spectrum_max_ghz; ++k) {
      spec.add_row({wg, ag, p.spectrum.freqs[k], p.spectrum.magnitudes[k]});
    }
    for (const auto& pk : p.peaks.peaks) {
      peaks.add_row({wg, ag, rad_per_ns_to_ghz(p.delta_eps), pk.frequency, pk.amplitude, line_kind_name(pk.kind),
                     static_cast<long long>(pk.n), pk.predicted, p.peaks.violation_score});
    }
  }
  out.write("rabi_p1.csv", p1.str());
  out.write("rabi_spectrum.csv", spec.str());
  out.write("rabi_peaks.csv", peaks.str());
}

void cmd_tomography_trace(const ExperimentConfig& c, OutputDir& out) {
  const double omega = ghz_to_rad_per_ns(c.trace_carrier_ghz);
  std::vector<Scan> scans(c.trace_amplitudes_ghz.size());
  for (size_t i = 0; i < scans.size(); ++i) {
    PulseSpec tmpl;
    tmpl.amplitude_max = ghz_to_rad_per_ns(c.trace_amplitudes_ghz[i]);
    tmpl.carrier = omega;
    tmpl.t_rise = c.trace_min_edge_ns;
    tmpl.t_fall = c.trace_min_edge_ns;
    ExperimentConfig noiseless = c;
    noiseless.shots = 0;
    scans[i] = run_sweep(noiseless, tmpl, c.trace_duration_ns, c.trace_sample_ns, 0);
  }

  std::vector<std::string> h{"amplitude_ghz", "t_p_ns", "sx", "sy", "sz", "sx_lab", "sy_lab", "p1"};
  if (c.shots > 0) {
    for (const char* s : {"sx_measured", "sy_measured", "sz_measured"}) h.push_back(s);
  }
  CsvTable t(h);
  for (size_t i = 0; i < scans.size(); ++i) {
    const auto& s = scans[i];
    const double edges = 2.0 * c.trace_min_edge_ns;
    std::vector<std::array<double, 3>> measured(s.durations.size());
    if (c.shots > 0) {
      parallel_for(s.durations.size(), [&](size_t k) {
        const StateVector rot = to_rotating_frame(s.sweep.final_states[k], omega, s.durations[k] + edges);
        const std::uint64_t seed = mix_seed(mix_seed(c.seed, i), k);
        std::array<double, 3> r{0, 0, 0};
        for (Basis b : kTomographyBases) {
          const auto rec = simulate_shots(rot, b, c.shots, seed);
          const double m = 1.0 - 2.0 * static_cast<double>(rec.excited_counts) / static_cast<double>(rec.shots);
          const auto axis = measured_axis(b);
          for (int j = 0; j < 3; ++j) r[j] += axis[j] * m;
        }
        measured[k] = r;
      });
    }
    for (size_t k = 0; k < s.durations.size(); ++k) {
      const StateVector& lab = s.sweep.final_states[k];
      const auto bl = BlochVector::of(lab);
      const auto br = BlochVector::of(to_rotating_frame(lab, omega, s.durations[k] + edges));
      std::vector<Cell> row{c.trace_amplitudes_ghz[i], s.durations[k], br.sx, br.sy, br.sz, bl.sx, bl.sy,
                            s.sweep.p1[k]};
      if (c.shots > 0) {
        for (double v : measured[k]) row.push_back(v);
      }
      t.add_row(std::move(row));
    }
  }
  out.write("tomography_trace.csv", t.str());
}

void cmd_edge_study(const ExperimentConfig& c, OutputDir& out) {
  const QubitParams q = c.qubit();
  const double amp = ghz_to_rad_per_ns(c.edge_amplitude_ghz);
  const double omega = ghz_to_rad_per_ns(c.edge_carrier_ghz);
  const double de = floquet_spectrum(q.delta, amp, omega, c.truncation).delta_eps;

  std::vector<EdgePair> pairs;
  for (double t : c.edge_times_ns) pairs.push_back({t, t});
  for (const auto& p : c.edge_asymmetric) pairs.push_back(p);
  std::vector<Scan> scans(pairs.size());
  std::vector<FastComponents> fits(pairs.size());
  parallel_for(pairs.size(), [&](size_t i) {
    PulseSpec tmpl;
    tmpl.amplitude_max = amp;
    tmpl.carrier = omega;
    tmpl.t_rise = pairs[i].rise;
    tmpl.t_fall = pairs[i].fall;
    scans[i] = run_sweep(c, tmpl, c.edge_duration_ns, c.edge_sample_ns, mix_seed(c.seed, i));
    fits[i] = fast_component_amplitudes(scans[i].durations, scans[i].measured, omega, de);
  });

  CsvTable p1({"t_rise_ns", "t_fall_ns", "t_p_ns", "p1"});
  CsvTable fast({"t_rise_ns", "t_fall_ns", "delta_eps_ghz", "slow_amplitude", "minus_amplitude", "plus_amplitude",
                 "rms_residual"});
  for (size_t i = 0; i < pairs.size(); ++i) {
    for (size_t k = 0; k < scans[i].durations.size(); ++k) {
      p1.add_row({pairs[i].rise, pairs[i].fall, scans[i].durations[k], scans[i].measured[k]});
    }
    fast.add_row({pairs[i].rise, pairs[i].fall, rad_per_ns_to_ghz(de), fits[i].slow, fits[i].minus, fits[i].plus,
                  fits[i].rms_residual});
  }
  out.write("edge_p1.csv", p1.str());
  out.write("edge_fast.csv", fast.str());
}

void cmd_state_prep(const ExperimentConfig& c, OutputDir& out) {
  const QubitParams q = c.qubit();
  struct Target {
    const char* name;
    StateVector state;
  };
  const Target targets[] = {{"minus_y", StateVector::normalized(1.0, Complex(0.0, -1.0))},
                            {"excited", StateVector::excited()}};
  PrepareOptions opts;
  opts.carrier = ghz_to_rad_per_ns(c.prep_carrier_ghz);
  opts.plateau_max = c.prep_plateau_max_ns;
  opts.phase_steps = c.prep_phase_steps;
  opts.propagator = c.propagator();

  auto report = nlohmann::ordered_json::object();
  report["amplitude_ghz"] = c.prep_amplitude_ghz;
  report["edges_ns"] = c.prep_min_edge_ns;
  report["shots"] = c.prep_shots;
  report["bootstrap_b"] = c.prep_bootstrap_b;
  report["seed"] = c.seed;
  auto list = nlohmann::ordered_json::array();
  for (size_t i = 0; i < std::size(targets); ++i) {
    const auto& t = targets[i];
    const auto prep = prepare_state(q, t.state, ghz_to_rad_per_ns(c.prep_amplitude_ghz), c.prep_min_edge_ns, opts);
    const Unitary2 u = evolution_operator(q, prep.pulse, 0.0, prep.pulse.total_duration(), opts.propagator);
    const StateVector final_state(Vector2(u.col(0)));
    std::vector<ShotRecord> records;
    for (Basis b : kTomographyBases) records.push_back(simulate_shots(final_state, b, c.prep_shots, mix_seed(c.seed, i)));
    const auto tomo = bootstrap_errors(records, t.state, c.prep_bootstrap_b, mix_seed(c.seed, 100 + i));

    auto j = nlohmann::ordered_json::object();
    j["target"] = t.name;
    j["pulse"] = pulse_json(prep.pulse);
    j["unitary_fidelity"] = prep.fidelity;
    j["overlap_probability"] = prep.overlap_probability;
    j["below_floor"] = prep.below_floor;
    auto recs = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      recs.push_back({{"basis", basis_name(r.basis)}, {"shots", r.shots}, {"excited_counts", r.excited_counts},
                      {"seed", r.seed}});
    }
    j["records"] = recs;
    j["rho"] = matrix_json(tomo.rho.matrix());
    const auto bl = tomo.rho.bloch();
    j["bloch"] = {bl[0], bl[1], bl[2]};
    j["reconstructed_fidelity"] = tomo.fidelity_to_target;
    j["fidelity_stderr"] = tomo.fidelity_stderr;
    j["bootstrap_failures"] = tomo.failures;
    list.push_back(j);
  }
  report["targets"] = list;
  out.write("state_prep.json", dump_json(report));
}

}  // namespace floqsim::cli
