#include "acceptance.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"

#include "floqsim/errors.hpp"
#include "floqsim/parallel.hpp"
#include "floqsim/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace floqsim::cli;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCheck = 4;

struct Flags {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  long shots = -1;
  unsigned threads = 0;
  bool oracle = false;
};

ExperimentConfig resolve(const Flags& f, const CLI::App& sub) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  if (sub.count("--out")) c.out = f.out;
  if (sub.count("--seed")) c.seed = f.seed;
  if (sub.count("--threads")) c.threads = f.threads;
  if (sub.count("--shots")) {
    if (f.shots < 0) throw ConfigError("--shots must be >= 0");
    c.shots = f.shots;
    if (f.shots > 0) c.prep_shots = f.shots;
  }
  c.validate();
  return c;
}

void write_report(OutputDir& out, const std::string& command, const ExperimentConfig& c, const Flags& f,
                  double seconds) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["software_version"] = floqsim::kVersion;
  j["oracle"] = f.oracle;
  j["config"] = to_json(c);
  j["wall_time_s"] = seconds;
  auto files = nlohmann::ordered_json::array();
  for (const auto& e : out.manifest()) files.push_back({{"path", e.path}, {"bytes", e.bytes}, {"sha256", e.sha256}});
  j["files"] = files;
  // The report lists the other outputs and is therefore not in its own manifest.
  const auto path = out.root() / "run_report.json";
  std::ofstream(path, std::ios::binary) << dump_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven two-level system simulations: Floquet spectra, pulse dynamics, spectra, tomography"};
  app.set_version_flag("--version", std::string(floqsim::kVersion));
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", f.config, "INI configuration file")->check(CLI::ExistingFile);
    s->add_option("--out", f.out, "Output directory");
    s->add_option("--seed", f.seed, "Master seed");
    s->add_option("--shots", f.shots, "Shots per point (0 = noiseless probabilities)");
    s->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  };
  struct Command {
    const char* name;
    const char* help;
    std::function<void(const ExperimentConfig&, OutputDir&)> run;
  };
  const std::vector<Command> commands{
      {"quasienergies", "Quasienergies versus drive amplitude, numeric and analytic",
       [&](const ExperimentConfig& c, OutputDir& o) { cmd_quasienergies(c, o, {f.oracle}); }},
      {"rabi-scan", "P1 versus pulse duration, spectra and classified peaks", cmd_rabi_scan},
      {"tomography-trace", "Bloch components versus pulse duration", cmd_tomography_trace},
      {"edge-study", "Fast-component amplitudes versus rise and fall times", cmd_edge_study},
      {"state-prep", "Fast state preparation with simulated tomography", cmd_state_prep},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    auto* s = app.add_subcommand(c.name, c.help);
    add_common(s);
    if (std::string(c.name) == "quasienergies") s->add_flag("--oracle", f.oracle, "Add monodromy oracle columns");
    subs.push_back(s);
  }
  auto* check = app.add_subcommand("check", "Run the acceptance thresholds; exit 4 on any failure");
  std::vector<int> only;
  check->add_option("--seed", f.seed, "Master seed");
  check->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  check->add_option("--only", only, "Criterion numbers to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (check->parsed()) {
      floqsim::set_thread_count(check->count("--threads") ? f.threads : 1);
      AcceptanceOptions opts;
      opts.seed = check->count("--seed") ? f.seed : 1;
      opts.only.insert(only.begin(), only.end());
      const auto results = run_acceptance(opts, true);
      int failed = 0;
      for (const auto& r : results) failed += r.pass ? 0 : 1;
      std::cout << (failed ? "FAILED: " + std::to_string(failed) + " criteria" : "all criteria passed") << std::endl;
      return failed ? kExitCheck : 0;
    }
    for (size_t i = 0; i < commands.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      const ExperimentConfig c = resolve(f, *subs[i]);
      floqsim::set_thread_count(c.threads);
      const auto start = std::chrono::steady_clock::now();
      OutputDir out(c.out);
      out.write("config.ini", to_ini(c));
      commands[i].run(c, out);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_report(out, commands[i].name, c, f, secs);
      for (const auto& e : out.manifest()) std::cout << (out.root() / e.path).string() << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const floqsim::InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const floqsim::Error& e) {
    std::cerr << "numeric failure: " << e.what() << std::endl;
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitNumeric;
  }
  return 0;
}
