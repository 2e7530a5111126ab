#ifndef PINFOLD_PINNED_HPP
#define PINFOLD_PINNED_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pinfold/config.hpp"
#include "pinfold/folding.hpp"
#include "pinfold/rng.hpp"
#include "pinfold/root3.hpp"
#include "pinfold/vec.hpp"

namespace pinfold {

/// All n pseudo-velocities stacked into one point of R^{nd}; block k of
/// length d belongs to ball k. The balls themselves never move.
template <class S>
struct VelocityState {
  int n = 0;
  int dim = 0;
  Vec<S> v;

  VelocityState() = default;
  VelocityState(int n_, int dim_, Vec<S> stacked) : n(n_), dim(dim_), v(std::move(stacked))
  {
    if (static_cast<int>(v.size()) != n * dim)
      throw DimensionMismatch("stacked velocity length is not n*d");
  }

  static VelocityState zeros(int n_, int dim_)
  {
    return VelocityState(n_, dim_, Vec<S>(static_cast<std::size_t>(n_ * dim_)));
  }

  static VelocityState from_blocks(const std::vector<Vec<S>>& blocks)
  {
    if (blocks.empty()) throw InvalidArgument("no velocity blocks");
    const int d = static_cast<int>(blocks.front().size());
    Vec<S> stacked(blocks.size() * static_cast<std::size_t>(d));
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (static_cast<int>(blocks[k].size()) != d)
        throw DimensionMismatch("velocity blocks of unequal dimension");
      for (int i = 0; i < d; ++i)
        stacked[k * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] = blocks[k][static_cast<std::size_t>(i)];
    }
    return VelocityState(static_cast<int>(blocks.size()), d, std::move(stacked));
  }

  Vec<S> block(int k) const
  {
    if (k < 0 || k >= n) throw IndexOutOfRange("ball index " + std::to_string(k));
    Vec<S> out(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
      out[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(k * dim + i)];
    return out;
  }

  void set_block(int k, const Vec<S>& b)
  {
    if (k < 0 || k >= n) throw IndexOutOfRange("ball index " + std::to_string(k));
    if (static_cast<int>(b.size()) != dim) throw DimensionMismatch("block length");
    for (int i = 0; i < dim; ++i)
      v[static_cast<std::size_t>(k * dim + i)] = b[static_cast<std::size_t>(i)];
  }

  S kinetic_energy() const { return sq_norm(v); }

  friend bool operator==(const VelocityState& a, const VelocityState& b)
  {
    return a.n == b.n && a.dim == b.dim && a.v == b.v;
  }
};

using VelocityStateD = VelocityState<double>;

namespace detail {

template <class S>
void check_pair(const BallConfig<S>& config, int j, int k)
{
  if (j < 0 || j >= config.n() || k < 0 || k >= config.n())
    throw IndexOutOfRange("ball pair (" + std::to_string(j) + "," + std::to_string(k) + ")");
  if (j == k) throw InvalidArgument("a ball cannot collide with itself");
}

template <class S>
bool touching(const BallConfig<S>& config, int j, int k, const S& tol)
{
  const S two = S(2);
  const S d2 = sq_norm(config.centers[static_cast<std::size_t>(j)] -
                       config.centers[static_cast<std::size_t>(k)]);
  return !(d2 < (two - tol) * (two - tol)) && !(d2 > (two + tol) * (two + tol));
}

// Unit vector from ball k toward ball j. Exact scalars rely on the exact
// contact |x_j - x_k| = 2; doubles use the true norm.
inline Vecd contact_direction(const Vecd& diff) { return diff * (1.0 / norm(diff)); }
inline Vec<Root3> contact_direction(const Vec<Root3>& diff)
{
  return diff * Root3(Rational(1, 2));
}

template <class S>
S default_contact_tol();
template <>
inline double default_contact_tol<double>() { return kContactTol; }
template <>
inline Root3 default_contact_tol<Root3>() { return Root3(); }

}  // namespace detail

/// The stacked contact normal for edge (j,k): block j carries
/// (x_j - x_k)/2^{3/2}, block k the negative, zeros elsewhere. Unit length.
Vecd z_vector(const BallConfigD& config, int j, int k, double tol = kContactTol);

/// Half-space {w in R^{nd} : <w, z_jk> >= 0} whose folding equals the
/// collision map of edge (j,k). The double path stores the normalized
/// normal; the exact path keeps the scaled normal with its squared length.
template <class S>
Halfspace<S> halfspace_from_edge(const BallConfig<S>& config, int j, int k,
                                 std::optional<S> tol = std::nullopt)
{
  detail::check_pair(config, j, k);
  const S tol_v = tol ? *tol : detail::default_contact_tol<S>();
  if (!detail::touching(config, j, k, tol_v))
    throw NotTouching("balls " + std::to_string(j) + " and " + std::to_string(k));
  const int n = config.n();
  const int d = config.dim;
  Vec<S> scaled(static_cast<std::size_t>(n * d));
  const Vec<S> diff = config.centers[static_cast<std::size_t>(j)] -
                      config.centers[static_cast<std::size_t>(k)];
  for (int i = 0; i < d; ++i) {
    scaled[static_cast<std::size_t>(j * d + i)] = diff[static_cast<std::size_t>(i)];
    scaled[static_cast<std::size_t>(k * d + i)] = -diff[static_cast<std::size_t>(i)];
  }
  if constexpr (std::is_floating_point_v<S>) {
    return make_halfspace(std::move(scaled));
  } else {
    return halfspace_through_origin_scaled(std::move(scaled));
  }
}

/// Totally elastic exchange of the velocity components along the line of
/// centers, applied only when the balls touch and approach each other.
/// Everything else, including a separating or grazing pair, is a no-op.
template <class S>
VelocityState<S> collision_map(const BallConfig<S>& config, const VelocityState<S>& state,
                               int j, int k, std::optional<S> contact_tol = std::nullopt)
{
  detail::check_pair(config, j, k);
  if (state.n != config.n() || state.dim != config.dim)
    throw DimensionMismatch("state does not match configuration");
  const S tol_v = contact_tol ? *contact_tol : detail::default_contact_tol<S>();
  if (!detail::touching(config, j, k, tol_v)) return state;

  const Vec<S> xdiff = config.centers[static_cast<std::size_t>(j)] -
                       config.centers[static_cast<std::size_t>(k)];
  const Vec<S> vj = state.block(j);
  const Vec<S> vk = state.block(k);
  const S rel = dot(vj - vk, xdiff);
  if (!strictly_negative(rel)) return state;

  const Vec<S> u = detail::contact_direction(xdiff);
  const S exchange = dot(vk - vj, u);
  VelocityState<S> out = state;
  out.set_block(j, vj + exchange * u);
  out.set_block(k, vk - exchange * u);
  return out;
}

/// Exogenous order of allowed collisions over a fixed edge pool.
struct Schedule {
  enum class Kind { Explicit, RoundRobin, Random, Greedy };

  Kind kind = Kind::RoundRobin;
  std::vector<Edge> edges;  // Explicit: the sequence; otherwise the pool.
  std::uint64_t seed = 0;

  static Schedule explicit_order(std::vector<Edge> sequence)
  {
    return Schedule{Kind::Explicit, std::move(sequence), 0};
  }
  static Schedule round_robin(std::vector<Edge> pool = {})
  {
    return Schedule{Kind::RoundRobin, std::move(pool), 0};
  }
  static Schedule random(std::uint64_t seed, std::vector<Edge> pool = {})
  {
    return Schedule{Kind::Random, std::move(pool), seed};
  }
  static Schedule greedy(std::vector<Edge> pool = {})
  {
    return Schedule{Kind::Greedy, std::move(pool), 0};
  }
};

inline const char* schedule_kind_name(Schedule::Kind k)
{
  switch (k) {
    case Schedule::Kind::Explicit: return "explicit";
    case Schedule::Kind::RoundRobin: return "round_robin";
    case Schedule::Kind::Random: return "random";
    case Schedule::Kind::Greedy: return "greedy";
  }
  return "?";
}

/// Record of one schedule-driven run.
template <class S>
struct CollisionLog {
  struct JumpRecord {
    std::int64_t step;  // 1-based position in the schedule
    Edge edge;
    double delta_norm;  // |v_after - v_before|
  };

  std::vector<JumpRecord> jumps;
  VelocityState<S> final_state;
  bool absorbed = false;
  std::int64_t steps_taken = 0;

  int collision_count() const { return static_cast<int>(jumps.size()); }
};

using CollisionLogD = CollisionLog<double>;

inline double norm_of_delta(const VelocityStateD& a, const VelocityStateD& b)
{
  return dist(a.v, b.v);
}
inline double norm_of_delta(const VelocityState<Root3>& a, const VelocityState<Root3>& b)
{
  return std::sqrt(sq_norm(a.v - b.v).to_double());
}

namespace detail {

// No edge of the pool can produce a further collision iff the state lies in
// every half-space H_jk of the pool. Tested with the same threshold as the
// collision condition so "absorbed" and "cannot jump" never disagree.
template <class S>
bool absorbed_for_edges(const BallConfig<S>& config, const VelocityState<S>& state,
                        const std::vector<Edge>& edges)
{
  for (const auto& [j, k] : edges) {
    const Vec<S> xdiff = config.centers[static_cast<std::size_t>(j)] -
                         config.centers[static_cast<std::size_t>(k)];
    const S rel = dot(state.block(j) - state.block(k), xdiff);
    if (strictly_negative(rel)) return false;
  }
  return true;
}

}  // namespace detail

/// Applies the collision map along the schedule and counts the steps that
/// actually change the state. Round-robin, random and greedy runs halt as
/// soon as no scheduled edge can jump; the absorbed flag always reports
/// membership in the intersection over all *graph* edges.
template <class S>
CollisionLog<S> run_schedule(const BallConfig<S>& config, const VelocityState<S>& v0,
                             const ContactGraph& graph, const Schedule& schedule,
                             std::int64_t max_steps)
{
  if (max_steps < 1) throw InvalidArgument("max_steps must be at least 1");
  if (v0.n != config.n() || v0.dim != config.dim)
    throw DimensionMismatch("initial state does not match configuration");
  if (graph.n != config.n()) throw DimensionMismatch("graph size does not match configuration");

  std::vector<Edge> pool = schedule.edges;
  if (pool.empty() && schedule.kind != Schedule::Kind::Explicit) pool = graph.edges;
  for (const auto& [j, k] : pool)
    if (!graph.contains(j, k))
      throw ScheduleEdgeNotInGraph("edge (" + std::to_string(j) + "," + std::to_string(k) + ")");

  CollisionLog<S> log;
  VelocityState<S> state = v0;

  auto apply_edge = [&](const Edge& e, std::int64_t step) -> bool {
    VelocityState<S> next = collision_map(config, state, e.first, e.second);
    const bool jumped = !(next == state);
    if (jumped) {
      log.jumps.push_back({step, e, norm_of_delta(next, state)});
      state = std::move(next);
    }
    return jumped;
  };

  if (detail::absorbed_for_edges(config, state, graph.edges)) {
    log.absorbed = true;
    log.final_state = std::move(state);
    return log;
  }

  switch (schedule.kind) {
    case Schedule::Kind::Explicit: {
      const std::int64_t len =
          std::min<std::int64_t>(max_steps, static_cast<std::int64_t>(pool.size()));
      for (std::int64_t i = 0; i < len; ++i) {
        apply_edge(pool[static_cast<std::size_t>(i)], i + 1);
        ++log.steps_taken;
      }
      log.absorbed = detail::absorbed_for_edges(config, state, graph.edges);
      break;
    }
    case Schedule::Kind::RoundRobin: {
      if (pool.empty()) throw InvalidArgument("round-robin schedule with empty pool");
      std::int64_t quiet = 0;  // consecutive non-jumping steps
      for (std::int64_t i = 0; i < max_steps; ++i) {
        const Edge& e = pool[static_cast<std::size_t>(i % static_cast<std::int64_t>(pool.size()))];
        const bool jumped = apply_edge(e, i + 1);
        ++log.steps_taken;
        quiet = jumped ? 0 : quiet + 1;
        if (quiet >= static_cast<std::int64_t>(pool.size())) break;  // a full silent cycle
      }
      log.absorbed = detail::absorbed_for_edges(config, state, graph.edges);
      break;
    }
    case Schedule::Kind::Random: {
      if (pool.empty()) throw InvalidArgument("random schedule with empty pool");
      Rng rng(schedule.seed);
      const std::int64_t check_every = std::max(1, config.n() * config.dim);
      for (std::int64_t i = 0; i < max_steps; ++i) {
        const Edge& e = pool[static_cast<std::size_t>(rng.below(pool.size()))];
        apply_edge(e, i + 1);
        ++log.steps_taken;
        if ((i + 1) % check_every == 0 &&
            detail::absorbed_for_edges(config, state, pool)) break;
      }
      log.absorbed = detail::absorbed_for_edges(config, state, graph.edges);
      break;
    }
    case Schedule::Kind::Greedy: {
      if (pool.empty()) throw InvalidArgument("greedy schedule with empty pool");
      std::sort(pool.begin(), pool.end());
      for (std::int64_t i = 0; i < max_steps; ++i) {
        // Among currently jumping edges take the largest |delta v|; the pool
        // is sorted, so equal deltas resolve to the lowest edge.
        const Edge* best = nullptr;
        double best_delta = -1.0;
        for (const auto& e : pool) {
          VelocityState<S> next = collision_map(config, state, e.first, e.second);
          if (next == state) continue;
          const double delta = norm_of_delta(next, state);
          if (delta > best_delta + 1e-15) {
            best_delta = delta;
            best = &e;
          }
        }
        if (!best) break;
        apply_edge(*best, i + 1);
        ++log.steps_taken;
      }
      log.absorbed = detail::absorbed_for_edges(config, state, graph.edges);
      break;
    }
  }

  log.final_state = std::move(state);
  return log;
}

/// Ball B(w, r) inside the intersection of every contact half-space, built
/// from the configuration itself: block k of w is c (x_k - x_1) with c fixed
/// by |w| = 1, and r = 2^{-3/2} / (sqrt(n) (n-1)).
struct WitnessBall {
  Vecd center;      // point of R^{nd}, unit norm
  double radius;    // in (0, 1)
};

WitnessBall witness_ball(const BallConfigD& config, double tol = kContactTol);

/// Largest componentwise difference between the collision map and the
/// folding in the edge's half-space, over one application.
double fold_equivalence_deviation(const BallConfigD& config, const VelocityStateD& state,
                                  int j, int k, double tol = kContactTol);

inline bool verify_fold_equivalence(const BallConfigD& config, const VelocityStateD& state,
                                    int j, int k, double tol = kContactTol)
{
  return fold_equivalence_deviation(config, state, j, k, tol) <= 1e-12;
}

/// Exact inner-product comparison showing that the worked example's first
/// collision sequence cannot be realized by moving balls: after its third
/// collision the second touching pair is approaching strictly faster, so
/// that pair would have to collide first.
struct OrderObstructionReport {
  Root3 approach_first;   // <e_1, v_C(3) - v_B(3)>
  Root3 approach_second;  // <e_2, v_D(3) - v_B(3)>
  bool strict;            // approach_first > approach_second
  std::string conclusion;
};

OrderObstructionReport moving_ball_refutation_check();

}  // namespace pinfold

#endif
