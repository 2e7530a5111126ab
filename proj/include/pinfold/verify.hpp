#ifndef PINFOLD_VERIFY_HPP
#define PINFOLD_VERIFY_HPP

#include <ostream>
#include <string>
#include <vector>

#include "pinfold/scenarios.hpp"

namespace pinfold {

/// One line of the reference regression: PASS/FAIL for checked values, WARN
/// for the single published entry known to disagree with recomputation.
struct CheckLine {
  enum class Status { Pass, Warn, Fail };
  Status status = Status::Pass;
  std::string name;
  std::string detail;
};

/// Re-runs the worked example exactly and diffs every published velocity,
/// the collision counts, conservation laws, the fold/collision identity,
/// the witness-ball inequality and the moving-ball ordering obstruction.
/// Takes the scenario as input so tests can feed perturbed tables.
std::vector<CheckLine> verify_reference_values(const Scenario& scenario);

inline std::vector<CheckLine> verify_reference_values()
{
  return verify_reference_values(scenario_four_disc());
}

/// Prints one line per check; returns 0 iff nothing failed (warnings pass).
int print_verification(std::ostream& os);

}  // namespace pinfold

#endif
