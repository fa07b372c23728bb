#pragma once

#include "config.hpp"
#include "output.hpp"

namespace floqsim::cli {

struct RunFlags {
  bool oracle = false;  // add monodromy columns to the quasienergy table
};

/// quasienergies.csv
void cmd_quasienergies(const ExperimentConfig& config, OutputDir& out, const RunFlags& flags);
/// rabi_p1.csv, rabi_spectrum.csv, rabi_peaks.csv
void cmd_rabi_scan(const ExperimentConfig& config, OutputDir& out);
/// tomography_trace.csv
void cmd_tomography_trace(const ExperimentConfig& config, OutputDir& out);
/// edge_p1.csv, edge_fast.csv
void cmd_edge_study(const ExperimentConfig& config, OutputDir& out);
/// state_prep.json
void cmd_state_prep(const ExperimentConfig& config, OutputDir& out);

/// 0, dt, 2dt, ... up to `duration` inclusive (within 1e-9 of a step).
std::vector<double> duration_grid(double duration, double dt);

}  // namespace floqsim::cli
