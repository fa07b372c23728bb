// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// --expect-fail lists criteria that are known to be unattainable as stated;
// the exit status is zero only when the failing set equals that list, so an
// unexpected failure and an unexpected pass both break the build.
#include "acceptance.hpp"

#include "floqsim/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <set>

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::vector<int> expected;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  app.add_option("--expect-fail", expected, "Criteria expected to fail");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_option("--seed", seed, "Master seed");
  CLI11_PARSE(app, argc, argv);

  floqsim::set_thread_count(threads);
  floqsim::cli::AcceptanceOptions opts;
  opts.seed = seed;
  const auto results = floqsim::cli::run_acceptance(opts, true);

  const std::set<int> want(expected.begin(), expected.end());
  std::set<int> failed;
  for (const auto& r : results) {
    if (!r.pass) failed.insert(r.id);
  }
  int status = 0;
  for (int id : failed) {
    if (!want.count(id)) {
      std::cout << "unexpected failure: criterion " << id << "\n";
      status = 1;
    }
  }
  for (int id : want) {
    if (!failed.count(id)) {
      std::cout << "criterion " << id << " now passes; remove it from the expected failures\n";
      status = 1;
    }
  }
  std::cout << results.size() - failed.size() << " passed, " << failed.size() << " failed";
  if (!failed.empty()) {
    std::cout << " (";
    bool first = true;
    for (int id : failed) {
      std::cout << (first ? "" : ", ") << id;
      first = false;
    }
    std::cout << ")";
  }
  std::cout << std::endl;
  return status;
}
