#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cfslice::validate {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Options {
  std::string suite;  // empty = all
  std::uint64_t seed = 1;
  // Test hook: scales the matrix-form SINR numerator so the equivalence
  // suite must fail (negative control).
  bool perturb_sinr = false;
};

std::vector<std::string> suite_names();
std::vector<SuiteResult> run_suites(const Options& opt);

}  // namespace cfslice::validate
