// Runs the ten acceptance criteria and prints one pass/fail line each.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "vb1/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  vb1::SelftestOptions options;
  options.threads = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
  std::string json_path;
  app.add_option("--seed", options.seed)->capture_default_str();
  app.add_option("--threads", options.threads)->check(CLI::Range(1u, 256u))->capture_default_str();
  app.add_option("--min-order", options.case2_min_order)->capture_default_str();
  app.add_option("--json", json_path, "Write the criteria JSON here");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  auto results = vb1::run_selftest(options, [&](const vb1::CriterionResult& r) {
    std::cout << r.line() << std::endl;
    all = all && r.passed();
  });
  vb1::Json doc = vb1::selftest_json(options, results);
  vb1::CriterionResult determinism = vb1::determinism_criterion(options, doc);
  std::cout << determinism.line() << std::endl;
  all = all && determinism.passed();
  if (!json_path.empty()) {
    std::ofstream(json_path) << doc.dump(2) << "\n";
  }
  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}
