#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rootmax {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  bool quick = false;  // reduced sample counts, trend checks skipped
  std::uint64_t seed = 1;
};

// Runs every acceptance criterion, printing one PASS/FAIL line per criterion
// to log as it goes. Full mode uses the pinned sample counts and tolerances;
// quick mode is a smoke run with reduced counts.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace rootmax
