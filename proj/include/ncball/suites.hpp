// suites.hpp: seeded, reproducible property suites mirroring each module's
// invariants, runnable at any time through the command-line verifier.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ncball {

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;
};

// Registered suite names, in run order.
std::vector<std::string> suite_names();

// Run one named suite; throws Error for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int trials);

// Run "all" or one named suite.
std::vector<SuiteResult> run_suites(const std::string& which,
                                    std::uint64_t seed, int trials);

}  // namespace ncball
