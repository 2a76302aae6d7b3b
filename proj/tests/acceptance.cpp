// Acceptance gate: runs every acceptance suite and prints one line per
// criterion.  Exit status is the number of failing criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ncball/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 42;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  int failures = 0;
  for (const auto& suite : ncball::verify::all_suites()) {
    if (!suite.acceptance) continue;
    const auto start = std::chrono::steady_clock::now();
    const auto result = suite.run(seed);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %-28s %5d checks  worst %.3e  %6.2fs%s%s\n",
                result.pass ? "PASS" : "FAIL", result.name.c_str(), result.cases,
                result.worst, elapsed, result.details.empty() ? "" : "  ",
                result.details.c_str());
    std::fflush(stdout);
    if (!result.pass) ++failures;
  }
  return failures;
}
