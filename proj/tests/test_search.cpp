#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pinfold/rng.hpp"
#include "pinfold/scenarios.hpp"
#include "pinfold/search.hpp"

using namespace pinfold;

TEST_CASE("one edge admits at most one collision")
{
  const BallConfigD pair(1, {Vecd{0.0}, Vecd{2.0}});
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const VelocityStateD v0(2, 1, Vecd{rng.uniform(-2, 2), rng.uniform(-2, 2)});
    const SearchResult res =
        search_max_collisions(pair, v0, SearchStrategy::exhaustive(6), 1, 0);
    CHECK(res.best_count <= 1);
  }
}

TEST_CASE("four-disc exhaustive search reaches the five-collision schedule")
{
  const Scenario sc = scenario_four_disc();
  const SearchResult res =
      search_max_collisions(sc.config, sc.v0, SearchStrategy::exhaustive(5), 1, 0);
  CHECK(res.best_count == 5);
  CHECK(res.best_schedule.size() == 5);
}

TEST_CASE("exhaustive search equals full enumeration on the three-ball chain")
{
  const BallConfigD chain = chain_config<double>(3, 1);
  const std::vector<Edge> edges = full_contact_graph(chain).edges;

  SUBCASE("impact start")
  {
    const VelocityStateD v0(3, 1, Vecd{1.0, 0.0, 0.0});
    const SearchResult res =
        search_max_collisions(chain, v0, SearchStrategy::exhaustive(10), 1, 0);
    CHECK(res.best_count == oracles::oracle_max_collisions(chain, v0, edges, 10));
  }

  SUBCASE("random starts")
  {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      const VelocityStateD v0(
          3, 1, Vecd{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
      const SearchResult res =
          search_max_collisions(chain, v0, SearchStrategy::exhaustive(10), 1, 0);
      CHECK(res.best_count == oracles::oracle_max_collisions(chain, v0, edges, 10));
    }
  }
}

TEST_CASE("exhaustive guard refuses oversized sequence spaces")
{
  const Scenario sc = scenario_four_disc();  // four edges: 4^13 > 1e7
  CHECK_THROWS_AS(search_max_collisions(sc.config, sc.v0, SearchStrategy::exhaustive(13), 1, 0),
                  InfeasibleBudget);
  CHECK_THROWS_AS(search_max_collisions(sc.config, sc.v0, SearchStrategy::exhaustive(5), 0, 0),
                  InvalidArgument);
}

TEST_CASE("random restarts: deterministic per seed and across thread counts")
{
  const BallConfigD chain = chain_config<double>(4, 2);
  Rng rng(3);
  Vecd v(static_cast<std::size_t>(chain.n() * chain.dim));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.normal();
  const VelocityStateD v0(chain.n(), chain.dim, std::move(v));

  const SearchResult a =
      search_max_collisions(chain, v0, SearchStrategy::random_restarts(), 64, 123, 1);
  const SearchResult b =
      search_max_collisions(chain, v0, SearchStrategy::random_restarts(), 64, 123, 1);
  const SearchResult c =
      search_max_collisions(chain, v0, SearchStrategy::random_restarts(), 64, 123, 4);
  CHECK(a.best_count == b.best_count);
  CHECK(a.best_schedule == b.best_schedule);
  CHECK(a.best_count == c.best_count);
  CHECK(a.best_schedule == c.best_schedule);

  // Replay soundness: the reported schedule reproduces the reported count.
  const CollisionLogD replay = run_schedule(
      chain, v0, full_contact_graph(chain), Schedule::explicit_order(a.best_schedule),
      static_cast<std::int64_t>(a.best_schedule.size()) + 1);
  CHECK(replay.collision_count() == a.best_count);
}

TEST_CASE("greedy strategy reports a certified run")
{
  const Scenario sc = scenario_four_disc();
  const SearchResult res =
      search_max_collisions(sc.config, sc.v0, SearchStrategy::greedy(), 1, 0);
  CHECK(res.best_count >= 1);
  CHECK(res.trials == 1);
}

TEST_CASE("sweep over chains")
{
  std::vector<std::pair<std::string, BallConfigD>> configs;
  for (int n = 3; n <= 8; ++n)
    configs.emplace_back("chain:" + std::to_string(n) + ":1", chain_config<double>(n, 1));
  const std::vector<SearchStrategy> strategies{SearchStrategy::random_restarts()};
  const auto rows = sweep(configs, strategies, 48, 2025, 1);
  REQUIRE(rows.size() == 6);

  int previous = -1;
  for (const auto& row : rows) {
    CHECK(row.error.empty());
    CHECK(row.best_count >= previous);  // longer chains admit at least as many
    previous = row.best_count;
    CHECK(row.edges == row.n - 1);
    const double count_log2 = row.best_count > 0 ? std::log2(double(row.best_count)) : 0.0;
    CHECK(count_log2 <= row.log2_bound_main);
    CHECK(count_log2 <= row.log2_bound_fold);
  }

  const std::string csv = sweep_csv(rows);
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header == "name,n,d,edges,strategy,best_count,log2_bound_main,log2_bound_fold,seed,ms");
  int body_lines = 0;
  for (std::string line; std::getline(is, line);) ++body_lines;
  CHECK(body_lines == 6);

  // Determinism of the whole sweep.
  const auto rows2 = sweep(configs, strategies, 48, 2025, 1);
  for (std::size_t i = 0; i < rows.size(); ++i)
    CHECK(rows[i].best_count == rows2[i].best_count);
}

TEST_CASE("sweep marks failing rows instead of aborting")
{
  std::vector<std::pair<std::string, BallConfigD>> configs;
  configs.emplace_back("split", BallConfigD(1, {Vecd{0.0}, Vecd{10.0}}));  // disconnected
  configs.emplace_back("pair", BallConfigD(1, {Vecd{0.0}, Vecd{2.0}}));
  const auto rows = sweep(configs, {SearchStrategy::random_restarts()}, 4, 0, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].best_count == -1);
  CHECK(!rows[0].error.empty());
  CHECK(rows[1].best_count >= 0);
  CHECK(rows[1].error.empty());
}
