#include "plateau/acceptance.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Runs the acceptance criteria and prints one PASS/FAIL line per criterion."};
  std::string config_dir = PLATEAU_ACCEPTANCE_DIR;
  std::vector<int> only;
  app.add_option("--config-dir", config_dir, "Directory holding the criterion fixtures");
  app.add_option("--only", only, "Criterion ids to run (default: all)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const auto results = plateau::run_acceptance(config_dir, only, std::cout);
  std::cout << '\n';
  plateau::print_summary(std::cout, results);
  for (const auto& r : results) {
    if (!r.passed) return 1;
  }
  return 0;
}
