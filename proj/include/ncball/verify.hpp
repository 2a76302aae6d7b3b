#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ncball::verify {

struct SuiteResult {
  std::string name;
  bool pass = false;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  // worst residual / figure of merit observed
  std::string details;
};

using SuiteFn = std::function<SuiteResult(std::uint64_t seed)>;

struct Suite {
  std::string name;
  std::string description;
  bool acceptance = false;  // member of the acceptance gate
  SuiteFn run;
};

const std::vector<Suite>& all_suites();

/// Runs one named suite; throws InvalidArgument for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace ncball::verify
