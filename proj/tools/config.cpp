#include "config.hpp"

#include "floqsim/errors.hpp"
#include "floqsim/units.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace floqsim::cli {

namespace pt = boost::property_tree;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': expected a real number, got '" + text + "'");
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::vector<EdgePair> parse_pairs(const std::string& key, const std::string& text) {
  std::vector<EdgePair> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw ConfigError("key '" + key + "': expected rise:fall, got '" + item + "'");
    out.push_back({parse_real(key, parts[0]), parse_real(key, parts[1])});
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s;
}

std::string join(const std::vector<EdgePair>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i].rise) + ":" + format_double(v[i].fall);
  return s;
}

// One binding per key: how to read it from text and how to print it back.
struct Binding {
  std::function<void(ExperimentConfig&, const std::string& key, const std::string& value)> read;
  std::function<std::string(const ExperimentConfig&)> write;
};

using Section = std::vector<std::pair<std::string, Binding>>;

Binding real(double ExperimentConfig::*m) {
  return {[m](ExperimentConfig& c, const std::string& k, const std::string& v) { c.*m = parse_real(k, v); },
          [m](const ExperimentConfig& c) { return format_double(c.*m); }};
}

Binding integer(int ExperimentConfig::*m) {
  return {[m](ExperimentConfig& c, const std::string& k, const std::string& v) {
            const long long x = parse_integer(k, v);
            if (x < -2147483647LL || x > 2147483647LL) throw ConfigError("key '" + k + "': out of range");
            c.*m = static_cast<int>(x);
          },
          [m](const ExperimentConfig& c) { return std::to_string(c.*m); }};
}

Binding count(long ExperimentConfig::*m) {
  return {[m](ExperimentConfig& c, const std::string& k, const std::string& v) { c.*m = parse_integer(k, v); },
          [m](const ExperimentConfig& c) { return std::to_string(c.*m); }};
}

Binding list(std::vector<double> ExperimentConfig::*m) {
  return {[m](ExperimentConfig& c, const std::string& k, const std::string& v) { c.*m = parse_list(k, v); },
          [m](const ExperimentConfig& c) { return join(c.*m); }};
}

const std::vector<std::pair<std::string, Section>>& schema() {
  using C = ExperimentConfig;
  static const std::vector<std::pair<std::string, Section>> s = {
      {"device",
       {{"delta_ghz", real(&C::delta_ghz)}, {"persistent_current_na", real(&C::persistent_current_na)}}},
      {"solver",
       {{"truncation", integer(&C::truncation)},
        {"tolerance", real(&C::tolerance)},
        {"max_step_ns", real(&C::max_step_ns)}}},
      {"run",
       {{"seed",
         {[](C& c, const std::string& k, const std::string& v) {
            const long long x = parse_integer(k, v);
            if (x < 0) throw ConfigError("key '" + k + "': seed must be non-negative");
            c.seed = static_cast<std::uint64_t>(x);
          },
          [](const C& c) { return std::to_string(c.seed); }}},
        {"shots", count(&C::shots)},
        {"threads",
         {[](C& c, const std::string& k, const std::string& v) {
            const long long x = parse_integer(k, v);
            if (x < 0 || x > 1024) throw ConfigError("key '" + k + "': threads must lie in [0, 1024]");
            c.threads = static_cast<unsigned>(x);
          },
          [](const C& c) { return std::to_string(c.threads); }}},
        {"out", {[](C& c, const std::string&, const std::string& v) { c.out = trim(v); },
                 [](const C& c) { return c.out; }}}}},
      {"quasienergies",
       {{"omega_factors", list(&C::qe_omega_factors)},
        {"amplitude_max_over_delta", real(&C::qe_amplitude_max_over_delta)},
        {"points", integer(&C::qe_points)}}},
      {"rabi_scan",
       {{"carriers_ghz", list(&C::rabi_carriers_ghz)},
        {"amplitudes_ghz", list(&C::rabi_amplitudes_ghz)},
        {"duration_ns", real(&C::rabi_duration_ns)},
        {"sample_ns", real(&C::rabi_sample_ns)},
        {"min_edge_ns", real(&C::rabi_min_edge_ns)},
        {"window",
         {[](C& c, const std::string& k, const std::string& v) {
            try {
              c.rabi_window = parse_window(trim(v));
            } catch (const floqsim::Error& e) {
              throw ConfigError("key '" + k + "': " + e.what());
            }
          },
          [](const C& c) { return window_name(c.rabi_window); }}},
        {"zero_pad", integer(&C::rabi_zero_pad)},
        {"min_prominence", real(&C::rabi_min_prominence)},
        {"n_max", integer(&C::rabi_n_max)},
        {"spectrum_max_ghz", real(&C::rabi_spectrum_max_ghz)}}},
      {"tomography_trace",
       {{"amplitudes_ghz", list(&C::trace_amplitudes_ghz)},
        {"carrier_ghz", real(&C::trace_carrier_ghz)},
        {"duration_ns", real(&C::trace_duration_ns)},
        {"sample_ns", real(&C::trace_sample_ns)},
        {"min_edge_ns", real(&C::trace_min_edge_ns)}}},
      {"edge_study",
       {{"amplitude_ghz", real(&C::edge_amplitude_ghz)},
        {"carrier_ghz", real(&C::edge_carrier_ghz)},
        {"edge_times_ns", list(&C::edge_times_ns)},
        {"asymmetric_ns",
         {[](C& c, const std::string& k, const std::string& v) { c.edge_asymmetric = parse_pairs(k, v); },
          [](const C& c) { return join(c.edge_asymmetric); }}},
        {"duration_ns", real(&C::edge_duration_ns)},
        {"sample_ns", real(&C::edge_sample_ns)}}},
      {"state_prep",
       {{"amplitude_ghz", real(&C::prep_amplitude_ghz)},
        {"carrier_ghz", real(&C::prep_carrier_ghz)},
        {"min_edge_ns", real(&C::prep_min_edge_ns)},
        {"plateau_max_ns", real(&C::prep_plateau_max_ns)},
        {"phase_steps", integer(&C::prep_phase_steps)},
        {"shots", count(&C::prep_shots)},
        {"bootstrap_b", integer(&C::prep_bootstrap_b)}}},
  };
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void require_grid(double duration, double sample, const std::string& section) {
  require(duration > 0.0, "[" + section + "] duration_ns must be positive");
  require(sample > 0.0 && sample <= duration, "[" + section + "] sample_ns must lie in (0, duration_ns]");
  require(duration / sample <= 1e7, "[" + section + "] more than 1e7 samples requested");
}

}  // namespace

QubitParams ExperimentConfig::qubit() const {
  QubitParams q;
  q.delta = units::ghz_to_rad_per_ns(delta_ghz);
  q.persistent_current = persistent_current_na;
  return q;
}

PropagatorOptions ExperimentConfig::propagator() const {
  PropagatorOptions o;
  o.tolerance = tolerance;
  o.max_step = max_step_ns;
  return o;
}

void ExperimentConfig::validate() const {
  require(delta_ghz > 0.0, "[device] delta_ghz must be positive");
  require(persistent_current_na >= 0.0, "[device] persistent_current_na must be non-negative");
  require(truncation >= 1, "[solver] truncation must be >= 1");
  require(tolerance > 0.0, "[solver] tolerance must be positive");
  require(max_step_ns >= 0.0, "[solver] max_step_ns must be >= 0");
  require(shots >= 0, "[run] shots must be >= 0");
  require(!out.empty(), "[run] out must not be empty");

  for (double f : qe_omega_factors) require(f > 0.0, "[quasienergies] omega_factors must be positive");
  require(qe_amplitude_max_over_delta >= 0.0, "[quasienergies] amplitude_max_over_delta must be >= 0");
  require(qe_points >= 1, "[quasienergies] points must be >= 1");

  for (double c : rabi_carriers_ghz) require(c > 0.0, "[rabi_scan] carriers_ghz must be positive");
  for (double a : rabi_amplitudes_ghz) require(a >= 0.0, "[rabi_scan] amplitudes_ghz must be >= 0");
  require_grid(rabi_duration_ns, rabi_sample_ns, "rabi_scan");
  require(rabi_duration_ns / rabi_sample_ns >= 15.0, "[rabi_scan] at least 16 samples are needed for the DFT");
  require(rabi_min_edge_ns >= 0.0, "[rabi_scan] min_edge_ns must be >= 0");
  require(rabi_zero_pad >= 1, "[rabi_scan] zero_pad must be >= 1");
  require(rabi_min_prominence > 0.0 && rabi_min_prominence < 1.0, "[rabi_scan] min_prominence must lie in (0, 1)");
  require(rabi_n_max >= 0, "[rabi_scan] n_max must be >= 0");
  require(rabi_spectrum_max_ghz > 0.0, "[rabi_scan] spectrum_max_ghz must be positive");

  for (double a : trace_amplitudes_ghz) require(a >= 0.0, "[tomography_trace] amplitudes_ghz must be >= 0");
  require(trace_carrier_ghz > 0.0, "[tomography_trace] carrier_ghz must be positive");
  require_grid(trace_duration_ns, trace_sample_ns, "tomography_trace");
  require(trace_min_edge_ns >= 0.0, "[tomography_trace] min_edge_ns must be >= 0");

  require(edge_amplitude_ghz > 0.0, "[edge_study] amplitude_ghz must be positive");
  require(edge_carrier_ghz > 0.0, "[edge_study] carrier_ghz must be positive");
  for (double t : edge_times_ns) require(t >= 0.0, "[edge_study] edge_times_ns must be >= 0");
  for (const auto& p : edge_asymmetric) require(p.rise >= 0.0 && p.fall >= 0.0, "[edge_study] asymmetric_ns must be >= 0");
  require_grid(edge_duration_ns, edge_sample_ns, "edge_study");

  require(prep_amplitude_ghz > 0.0, "[state_prep] amplitude_ghz must be positive");
  require(prep_carrier_ghz > 0.0, "[state_prep] carrier_ghz must be positive");
  require(prep_min_edge_ns >= 0.0, "[state_prep] min_edge_ns must be >= 0");
  require(prep_plateau_max_ns > 0.0, "[state_prep] plateau_max_ns must be positive");
  require(prep_phase_steps >= 1, "[state_prep] phase_steps must be >= 1");
  require(prep_shots >= 1, "[state_prep] shots must be >= 1");
  require(prep_bootstrap_b >= 100, "[state_prep] bootstrap_b must be >= 100");
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  ExperimentConfig c;
  for (const auto& [section, entries] : tree) {
    if (entries.data().size() && entries.empty()) {
      throw ConfigError(origin + ": key '" + section + "' must be inside a section");
    }
    const Section* known = nullptr;
    for (const auto& [name, sec] : schema()) {
      if (name == section) known = &sec;
    }
    if (!known) throw ConfigError(origin + ": unknown section [" + section + "]");
    for (const auto& [key, value] : entries) {
      const Binding* b = nullptr;
      for (const auto& [name, binding] : *known) {
        if (name == key) b = &binding;
      }
      const std::string full = section + "." + key;
      if (!b) throw ConfigError(origin + ": unknown key '" + full + "'");
      try {
        b->read(c, full, value.data());
      } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
      }
    }
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

std::string to_ini(const ExperimentConfig& config) {
  std::string s;
  for (const auto& [section, keys] : schema()) {
    s += (s.empty() ? "[" : "\n[") + section + "]\n";
    for (const auto& [key, b] : keys) s += key + " = " + b.write(config) + "\n";
  }
  return s;
}

nlohmann::ordered_json to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [section, keys] : schema()) {
    auto& sec = j[section] = nlohmann::ordered_json::object();
    for (const auto& [key, b] : keys) sec[key] = b.write(config);
  }
  return j;
}

}  // namespace floqsim::cli
