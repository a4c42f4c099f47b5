#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ffc {

// One record per verified inequality or identity.
struct CheckRecord {
  std::string name;
  int n = 0;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
};

struct SuiteReport {
  std::string suite;
  bool all_pass = true;
  std::vector<CheckRecord> checks;
};

struct SuiteConfig {
  int trials = 20;
  std::uint64_t seed = 7;
  int n_lo = 3;
  int n_hi = 6;
  int workers = 0;  // 0 picks FFCHAIN_WORKERS or the hardware count
};

std::vector<std::string> suite_names();

// Runs one of: monotonicity, knabe, weyl, decay, region-exclusion, rank2,
// degeneracy. Unknown names raise invalid_argument.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace ffc
