#include "pinfold/pinned.hpp"

#include <cmath>

#include "pinfold/scenarios.hpp"

namespace pinfold {

Vecd z_vector(const BallConfigD& config, int j, int k, double tol)
{
  detail::check_pair(config, j, k);
  if (!detail::touching(config, j, k, tol))
    throw NotTouching("balls " + std::to_string(j) + " and " + std::to_string(k));
  const int d = config.dim;
  const Vecd diff = config.centers[static_cast<std::size_t>(j)] -
                    config.centers[static_cast<std::size_t>(k)];
  const double scale = 0.35355339059327376220042218105242;  // 2^{-3/2}
  Vecd z(static_cast<std::size_t>(config.n() * d));
  for (int i = 0; i < d; ++i) {
    z[static_cast<std::size_t>(j * d + i)] = scale * diff[static_cast<std::size_t>(i)];
    z[static_cast<std::size_t>(k * d + i)] = -scale * diff[static_cast<std::size_t>(i)];
  }
  return z;
}

WitnessBall witness_ball(const BallConfigD& config, double tol)
{
  const int n = config.n();
  if (n < 2) throw InvalidArgument("witness ball needs at least two balls");
  const ContactGraph graph = full_contact_graph(config, tol);
  if (!is_connected(graph)) throw DisconnectedGraph("full contact graph is disconnected");

  const int d = config.dim;
  Vecd w(static_cast<std::size_t>(n * d));
  double total_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vecd diff = config.centers[static_cast<std::size_t>(k)] - config.centers[0];
    total_sq += sq_norm(diff);
    for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(k * d + i)] = diff[static_cast<std::size_t>(i)];
  }
  const double c = 1.0 / std::sqrt(total_sq);
  w *= c;

  const double r = 0.35355339059327376220042218105242 / (std::sqrt(static_cast<double>(n)) * (n - 1));
  const double guaranteed = 1.0 / (std::sqrt(2.0 * n) * (n - 1));
  for (const auto& [j, k] : graph.edges) {
    const double ip = dot(w, z_vector(config, j, k, tol));
    if (ip < guaranteed - 1e-9)
      throw InvalidArgument("witness inner product below its guarantee; configuration invalid?");
  }
  return WitnessBall{std::move(w), r};
}

double fold_equivalence_deviation(const BallConfigD& config, const VelocityStateD& state,
                                  int j, int k, double tol)
{
  const Halfspace<double> h = halfspace_from_edge<double>(config, j, k, tol);
  const VelocityStateD via_collision = collision_map(config, state, j, k, std::optional<double>(tol));
  const Vecd via_fold = fold(h, state.v);
  double worst = 0.0;
  for (std::size_t i = 0; i < via_fold.size(); ++i)
    worst = std::max(worst, std::fabs(via_fold[i] - via_collision.v[i]));
  return worst;
}

OrderObstructionReport moving_ball_refutation_check()
{
  const Scenario scenario = scenario_four_disc();
  const BallConfig<Root3>& config = *scenario.exact_config;
  const ContactGraph graph = full_contact_graph(config, Root3());

  // First three collisions shared by both reference sequences.
  std::vector<Edge> prefix{{1, 2}, {1, 3}, {0, 1}};
  CollisionLog<Root3> log = run_schedule(config, *scenario.exact_v0, graph,
                                         Schedule::explicit_order(prefix), 3);

  const Root3 half(Rational(1, 2));
  const Root3 half_r3(Rational(0), Rational(1, 2));
  const Vec<Root3> e1{-half, half_r3};  // from center of B toward C
  const Vec<Root3> e2{half, half_r3};   // from center of B toward D

  const Vec<Root3> vb = log.final_state.block(1);
  const Vec<Root3> vc = log.final_state.block(2);
  const Vec<Root3> vd = log.final_state.block(3);

  OrderObstructionReport report;
  report.approach_first = dot(e1, vc - vb);
  report.approach_second = dot(e2, vd - vb);
  report.strict = report.approach_first > report.approach_second;
  report.conclusion = report.strict
      ? "gamma1 is not realizable by moving balls (the second pair must collide first); "
        "gamma2 remains a candidate"
      : "no ordering obstruction detected";
  return report;
}

}  // namespace pinfold
