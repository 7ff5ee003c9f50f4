// Runs the full verification suite and prints one line per criterion.
#include <cstdio>

#include "casym/verify.hpp"

int main() {
  const auto results = casym::run_acceptance(casym::Suite::All);
  bool all_ok = true;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-42s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.runtime_s, r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
