#pragma once

#include "floqsim/propagator.hpp"
#include "floqsim/qubit_model.hpp"
#include "floqsim/spectral.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace floqsim::cli {

/// Malformed or unknown configuration entry; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdgePair {
  double rise = 0.0;  // ns
  double fall = 0.0;  // ns
};

struct ExperimentConfig {
  // [device]
  double delta_ghz = 2.288;
  double persistent_current_na = 690.0;

  // [solver]
  int truncation = 50;
  double tolerance = 1e-9;
  double max_step_ns = 0.0;

  // [run]
  std::uint64_t seed = 1;
  long shots = 0;
  unsigned threads = 1;
  std::string out = "out";

  // [quasienergies]
  std::vector<double> qe_omega_factors{1.0, 0.6, 1.4};
  double qe_amplitude_max_over_delta = 2.1;
  int qe_points = 100;

  // [rabi_scan]
  std::vector<double> rabi_carriers_ghz{2.288, 1.373};
  std::vector<double> rabi_amplitudes_ghz{0.20, 0.30, 0.50, 1.00, 1.44, 2.00, 2.40, 3.00, 3.60, 4.20, 4.78};
  double rabi_duration_ns = 50.0;
  double rabi_sample_ns = 0.005;
  double rabi_min_edge_ns = 0.0;
  Window rabi_window = Window::Hann;
  int rabi_zero_pad = 4;
  double rabi_min_prominence = 0.02;
  int rabi_n_max = 8;
  double rabi_spectrum_max_ghz = 12.0;

  // [tomography_trace]
  std::vector<double> trace_amplitudes_ghz{0.10, 0.46};
  double trace_carrier_ghz = 2.288;
  double trace_duration_ns = 12.0;
  double trace_sample_ns = 0.005;
  double trace_min_edge_ns = 0.0;

  // [edge_study]
  double edge_amplitude_ghz = 1.33;
  double edge_carrier_ghz = 2.288;
  std::vector<double> edge_times_ns{0.0, 0.5, 1.0, 2.0, 4.0};
  std::vector<EdgePair> edge_asymmetric{{4.0, 0.0}, {0.0, 4.0}};
  double edge_duration_ns = 10.0;
  double edge_sample_ns = 0.005;

  // [state_prep]
  double prep_amplitude_ghz = 0.46;
  double prep_carrier_ghz = 2.288;
  double prep_min_edge_ns = 0.02;
  double prep_plateau_max_ns = 1.5;
  int prep_phase_steps = 72;
  long prep_shots = 16384;
  int prep_bootstrap_b = 200;

  QubitParams qubit() const;
  PropagatorOptions propagator() const;
  /// Throws ConfigError if any value breaks the invariants of the consuming module.
  void validate() const;
};

/// Reads an INI file. Every key must be known; values use the units named
/// in the key suffix. Lists are comma separated; edge pairs are rise:fall.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Complete INI text that reproduces `config` when parsed again.
std::string to_ini(const ExperimentConfig& config);
nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// printf %.17g, which round-trips every double.
std::string format_double(double x);

}  // namespace floqsim::cli
