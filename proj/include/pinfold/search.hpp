#ifndef PINFOLD_SEARCH_HPP
#define PINFOLD_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pinfold/bounds.hpp"
#include "pinfold/config.hpp"
#include "pinfold/pinned.hpp"

namespace pinfold {

struct SearchStrategy {
  enum class Kind { RandomRestarts, Greedy, Exhaustive };

  Kind kind = Kind::RandomRestarts;
  int max_len = 0;                   // Exhaustive: maximum sequence length
  std::int64_t walk_cap = 1000000;   // RandomRestarts: per-trial step cap

  static SearchStrategy random_restarts() { return {Kind::RandomRestarts, 0, 1000000}; }
  static SearchStrategy greedy() { return {Kind::Greedy, 0, 1000000}; }
  static SearchStrategy exhaustive(int max_len) { return {Kind::Exhaustive, max_len, 0}; }
};

inline const char* strategy_name(SearchStrategy::Kind k)
{
  switch (k) {
    case SearchStrategy::Kind::RandomRestarts: return "random";
    case SearchStrategy::Kind::Greedy: return "greedy";
    case SearchStrategy::Kind::Exhaustive: return "exhaustive";
  }
  return "?";
}

/// Best collision count found, the schedule achieving it (replay-certified
/// through run_schedule before being reported), and the theoretical ceilings
/// it may never exceed.
struct SearchResult {
  std::vector<Edge> best_schedule;
  int best_count = 0;
  LogBound bound_main;  // headline bound; +inf marker when n < 3
  LogBound bound_fold;  // orbit bound with the witness-ball radius, l = |E|
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

SearchResult search_max_collisions(const BallConfigD& config, const VelocityStateD& v0,
                                   const SearchStrategy& strategy, std::int64_t budget,
                                   std::uint64_t seed, int threads = 1);

struct SweepRow {
  std::string name;
  int n = 0;
  int d = 0;
  int edges = 0;
  std::string strategy;
  int best_count = -1;  // -1 marks a row-level error (details on the row)
  double log2_bound_main = 0.0;
  double log2_bound_fold = 0.0;
  std::uint64_t seed = 0;
  double ms = 0.0;
  std::string error;
};

/// One row per (configuration, strategy); per-run errors become row markers
/// instead of aborting the sweep. Deterministic for a fixed seed.
std::vector<SweepRow> sweep(const std::vector<std::pair<std::string, BallConfigD>>& configs,
                            const std::vector<SearchStrategy>& strategies,
                            std::int64_t budget, std::uint64_t seed, int threads = 1);

/// Fixed-column CSV: name,n,d,edges,strategy,best_count,log2_bound_main,
/// log2_bound_fold,seed,ms.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace pinfold

#endif
