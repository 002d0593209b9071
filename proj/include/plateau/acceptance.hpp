#pragma once

// The acceptance suite: nine criteria, each driven by an INI fixture in the
// config directory, each reporting measured against expected values.

#include "plateau/experiments.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace plateau {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> lines;  // measured vs expected, one fact per line
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct CriterionSpec {
  int id;
  const char* name;
  const char* fixture;  // file name inside the config directory
  double time_limit;    // seconds
  std::function<CriterionResult(const ParamSet&)> run;
};

const std::vector<CriterionSpec>& acceptance_criteria();

/// Runs the selected criteria (all when `only` is empty). A criterion that exceeds
/// its time limit or throws is reported as failed. Progress is streamed to `log`.
std::vector<CriterionResult> run_acceptance(const std::string& config_dir, const std::vector<int>& only,
                                            std::ostream& log);

/// One "PASS"/"FAIL" line per criterion.
void print_summary(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace plateau
