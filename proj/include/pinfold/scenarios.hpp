#ifndef PINFOLD_SCENARIOS_HPP
#define PINFOLD_SCENARIOS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pinfold/config.hpp"
#include "pinfold/pinned.hpp"
#include "pinfold/root3.hpp"

namespace pinfold {

/// One reference velocity from the worked example's published tables.
/// `printed_consistent` is false for the single entry whose printed value
/// disagrees with recomputation (and with energy conservation); regression
/// reports it as a warning instead of asserting it.
struct ExpectedVelocity {
  std::string schedule;  // "gamma1" or "gamma2"
  int step;              // 1-based collision index
  int ball;              // 0-based ball index
  Vec<Root3> printed;
  bool printed_consistent = true;
};

/// A canned configuration with initial velocities, named schedules and, for
/// the worked example, the exact expected velocity tables.
struct Scenario {
  std::string name;
  BallConfigD config;
  VelocityStateD v0;
  std::optional<BallConfig<Root3>> exact_config;
  std::optional<VelocityState<Root3>> exact_v0;
  std::vector<std::pair<std::string, Schedule>> schedules;
  std::vector<ExpectedVelocity> expected;

  const Schedule& schedule(const std::string& sched_name) const;
};

/// The four touching discs A(0,-2), B(0,0), C(-1,sqrt3), D(1,sqrt3) with
/// v_A = (0,2), v_B = (0,1), v_C = v_D = 0, plus the two reference collision
/// sequences gamma1 = BC,BD,AB,BC and gamma2 = BC,BD,AB,BD,BC and their
/// published velocity tables as exact literals.
Scenario scenario_four_disc();

/// Triangular lattice points (2j, 2k sqrt3) and (2j+1, (2k+1) sqrt3) for
/// |j|,|k| <= extent, indexed lexicographically by (j, k, family).
template <class S>
BallConfig<S> triangular_lattice_config(int extent);

/// Collinear chain of n balls at spacing 2 along the first axis.
template <class S>
BallConfig<S> chain_config(int n, int d);

/// Hub ball at the origin with n-1 satellites touching it: +-2 on the line,
/// hexagon vertices in the plane, +-2 e_i for d >= 3.
template <class S>
BallConfig<S> star_config(int n, int d);

/// Connected configuration grown by sequential attachment: each new ball is
/// placed touching a uniformly chosen existing ball in a uniformly random
/// non-overlapping direction. Deterministic per seed.
BallConfigD random_config(int n, int d, std::uint64_t seed, int max_attempts = 1000);

/// Everything `scenario --list` shows, parametric generators included.
std::vector<std::string> scenario_names();

/// Resolve a scenario by name, e.g. "four-disc", "chain:4:2", "star:7:2",
/// "lattice:1", "random:5:3:42".
Scenario scenario_by_name(const std::string& name);

}  // namespace pinfold

#endif
