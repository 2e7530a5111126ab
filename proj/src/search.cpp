#include "pinfold/search.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "pinfold/rng.hpp"

namespace pinfold {

namespace {

std::vector<Edge> jumping_edges(const BallConfigD& config, const VelocityStateD& state,
                                const std::vector<Edge>& pool)
{
  std::vector<Edge> out;
  for (const auto& [j, k] : pool) {
    const Vecd xdiff = config.centers[static_cast<std::size_t>(j)] -
                       config.centers[static_cast<std::size_t>(k)];
    if (strictly_negative(dot(state.block(j) - state.block(k), xdiff)))
      out.push_back({j, k});
  }
  return out;
}

struct Candidate {
  int count = -1;
  std::vector<Edge> schedule;

  // Larger count wins; equal counts resolve to the lexicographically
  // smaller schedule so reductions are order-independent.
  bool better_than(const Candidate& o) const
  {
    if (count != o.count) return count > o.count;
    return schedule < o.schedule;
  }
};

Candidate random_walk(const BallConfigD& config, const VelocityStateD& v0,
                      const std::vector<Edge>& pool, std::int64_t step_cap,
                      std::uint64_t trial_seed)
{
  Rng rng(trial_seed);
  VelocityStateD state = v0;
  Candidate c;
  c.count = 0;
  for (std::int64_t step = 0; step < step_cap; ++step) {
    const std::vector<Edge> live = jumping_edges(config, state, pool);
    if (live.empty()) break;
    const Edge e = live[rng.below(live.size())];
    state = collision_map(config, state, e.first, e.second);
    c.schedule.push_back(e);
    ++c.count;
  }
  return c;
}

// Key for memoized exhaustive search: the state quantized at 1e-12 plus the
// remaining depth. Collision counts depend only on the state trajectory, so
// revisiting a state with the same budget always yields the same optimum.
struct StateKey {
  std::vector<std::int64_t> q;
  int remaining;

  bool operator==(const StateKey& o) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const
  {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::size_t>(k.remaining);
    for (std::int64_t v : k.q) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

StateKey quantize(const VelocityStateD& state, int remaining)
{
  StateKey key;
  key.remaining = remaining;
  key.q.resize(state.v.size());
  for (std::size_t i = 0; i < state.v.size(); ++i)
    key.q[i] = static_cast<std::int64_t>(std::llround(state.v[i] * 1e12));
  return key;
}

class ExhaustiveSearcher {
 public:
  ExhaustiveSearcher(const BallConfigD& config, const std::vector<Edge>& pool)
      : config_(config), pool_(pool)
  {}

  int best_from(const VelocityStateD& state, int remaining)
  {
    ++nodes_;
    if (remaining == 0) return 0;
    const StateKey key = quantize(state, remaining);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int best = 0;
    for (const Edge& e : jumping_edges(config_, state, pool_)) {
      const VelocityStateD next = collision_map(config_, state, e.first, e.second);
      best = std::max(best, 1 + best_from(next, remaining - 1));
    }
    memo_.emplace(quantize(state, remaining), best);
    return best;
  }

  // Rebuild the lexicographically smallest optimal schedule from the memo.
  std::vector<Edge> reconstruct(const VelocityStateD& v0, int len)
  {
    std::vector<Edge> schedule;
    VelocityStateD state = v0;
    int remaining = len;
    int target = best_from(state, remaining);
    while (target > 0) {
      bool advanced = false;
      for (const Edge& e : jumping_edges(config_, state, pool_)) {
        const VelocityStateD next = collision_map(config_, state, e.first, e.second);
        if (1 + best_from(next, remaining - 1) == target) {
          schedule.push_back(e);
          state = next;
          --remaining;
          --target;
          advanced = true;
          break;
        }
      }
      if (!advanced) throw InvalidArgument("internal: exhaustive reconstruction failed");
    }
    return schedule;
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  const BallConfigD& config_;
  const std::vector<Edge>& pool_;
  std::unordered_map<StateKey, int, StateKeyHash> memo_;
  std::int64_t nodes_ = 0;
};

}  // namespace

SearchResult search_max_collisions(const BallConfigD& config, const VelocityStateD& v0,
                                   const SearchStrategy& strategy, std::int64_t budget,
                                   std::uint64_t seed, int threads)
{
  if (budget < 1) throw InvalidArgument("search budget must be at least 1");
  if (threads < 1) throw InvalidArgument("thread count must be at least 1");
  const ContactGraph graph = full_contact_graph(config);
  if (!is_connected(graph)) throw DisconnectedGraph("search expects a connected full graph");
  const std::vector<Edge>& pool = graph.edges;

  SearchResult result;
  result.seed = seed;

  Candidate best;
  switch (strategy.kind) {
    case SearchStrategy::Kind::Exhaustive: {
      if (strategy.max_len < 1) throw InvalidArgument("exhaustive search needs a length");
      const double space =
          std::pow(static_cast<double>(pool.size()), static_cast<double>(strategy.max_len));
      if (space > 1e7)
        throw InfeasibleBudget("|E|^L = " + std::to_string(space) + " exceeds 1e7");
      ExhaustiveSearcher searcher(config, pool);
      best.count = searcher.best_from(v0, strategy.max_len);
      best.schedule = searcher.reconstruct(v0, strategy.max_len);
      result.trials = searcher.nodes();
      break;
    }
    case SearchStrategy::Kind::Greedy: {
      CollisionLogD log =
          run_schedule(config, v0, graph, Schedule::greedy(), strategy.walk_cap);
      best.count = log.collision_count();
      for (const auto& j : log.jumps) best.schedule.push_back(j.edge);
      result.trials = 1;
      break;
    }
    case SearchStrategy::Kind::RandomRestarts: {
      const int nthreads = static_cast<int>(
          std::min<std::int64_t>(threads, std::max<std::int64_t>(1, budget)));
      std::vector<Candidate> per_trial(static_cast<std::size_t>(budget));
      auto work = [&](int t) {
        for (std::int64_t i = t; i < budget; i += nthreads)
          per_trial[static_cast<std::size_t>(i)] =
              random_walk(config, v0, pool, strategy.walk_cap,
                          Rng::derive_seed(seed, static_cast<std::uint64_t>(i)));
      };
      if (nthreads == 1) {
        work(0);
      } else {
        std::vector<std::thread> workers;
        for (int t = 0; t < nthreads; ++t) workers.emplace_back(work, t);
        for (auto& w : workers) w.join();
      }
      for (const auto& c : per_trial)
        if (best.count < 0 || c.better_than(best)) best = c;
      result.trials = budget;
      break;
    }
  }

  // Certify by replay before reporting.
  if (!best.schedule.empty()) {
    CollisionLogD replay =
        run_schedule(config, v0, graph, Schedule::explicit_order(best.schedule),
                     std::max<std::int64_t>(1, static_cast<std::int64_t>(best.schedule.size())));
    if (replay.collision_count() != best.count)
      throw InvalidArgument("internal: replay does not reproduce the reported count");
  }
  result.best_schedule = std::move(best.schedule);
  result.best_count = std::max(0, best.count);

  const int n = config.n();
  if (n >= 3) {
    result.bound_main = collision_bound(n, config.dim);
  } else {
    result.bound_main =
        LogBound{std::numeric_limits<double>::infinity(), "collision-bound (n<3: n/a)"};
  }
  const WitnessBall witness = witness_ball(config);
  result.bound_fold =
      orbit_bound(std::max<long long>(2, static_cast<long long>(pool.size())), witness.radius);

  const double count_log2 =
      result.best_count > 0 ? std::log2(static_cast<double>(result.best_count)) : 0.0;
  if (count_log2 > result.bound_main.log2_value || count_log2 > result.bound_fold.log2_value)
    throw InvalidArgument("internal: a certified count exceeded a proved bound");
  return result;
}

std::vector<SweepRow> sweep(const std::vector<std::pair<std::string, BallConfigD>>& configs,
                            const std::vector<SearchStrategy>& strategies,
                            std::int64_t budget, std::uint64_t seed, int threads)
{
  std::vector<SweepRow> rows;
  std::uint64_t run_index = 0;
  for (const auto& [name, config] : configs) {
    for (const auto& strategy : strategies) {
      SweepRow row;
      row.name = name;
      row.n = config.n();
      row.d = config.dim;
      row.strategy = strategy_name(strategy.kind);
      row.seed = Rng::derive_seed(seed, run_index++);
      const auto start = std::chrono::steady_clock::now();
      try {
        row.edges = static_cast<int>(full_contact_graph(config).edges.size());
        // Deterministic unit-energy impact start: ball 0 is driven straight
        // at ball 1, everything else at rest. Comparable across rows.
        if (config.n() < 2) throw InvalidArgument("sweep needs at least two balls");
        VelocityStateD v0 = VelocityStateD::zeros(config.n(), config.dim);
        const Vecd toward = config.centers[1] - config.centers[0];
        v0.set_block(0, toward * (1.0 / norm(toward)));

        SearchResult res = search_max_collisions(config, v0, strategy, budget, row.seed, threads);
        row.best_count = res.best_count;
        row.log2_bound_main = res.bound_main.log2_value;
        row.log2_bound_fold = res.bound_fold.log2_value;
      } catch (const std::exception& err) {
        row.best_count = -1;
        row.error = err.what();
      }
      row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
                   .count();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
  std::ostringstream os;
  os << "name,n,d,edges,strategy,best_count,log2_bound_main,log2_bound_fold,seed,ms\n";
  for (const auto& r : rows) {
    os << r.name << ',' << r.n << ',' << r.d << ',' << r.edges << ',' << r.strategy << ','
       << r.best_count << ',';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", r.log2_bound_main);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.6g", r.log2_bound_fold);
    os << buf << ',' << r.seed << ',';
    std::snprintf(buf, sizeof buf, "%.3f", r.ms);
    os << buf << '\n';
  }
  return os.str();
}

}  // namespace pinfold
