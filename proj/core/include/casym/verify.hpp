// The acceptance-criteria verification suite used by `verify` and by CTest.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace casym {

enum class Suite { All, Axioms, Asymmetry, Shock };

std::optional<Suite> parse_suite(const std::string& s);

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  double runtime_s;
  std::string detail;
};

// Runs the selected criteria (axioms: 10-11, asymmetry: 1-9 and 13,
// shock: 12) and returns one result per criterion, ordered by id.
std::vector<CriterionResult> run_acceptance(Suite suite);

}  // namespace casym
