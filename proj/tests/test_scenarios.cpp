#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pinfold/json_io.hpp"
#include "pinfold/rng.hpp"
#include "pinfold/scenarios.hpp"
#include "pinfold/verify.hpp"

using namespace pinfold;

namespace {

int count_status(const std::vector<CheckLine>& lines, CheckLine::Status st)
{
  int c = 0;
  for (const auto& l : lines) c += l.status == st;
  return c;
}

}  // namespace

TEST_CASE("reference regression: all pass, exactly one warning")
{
  const auto lines = verify_reference_values();
  CHECK(count_status(lines, CheckLine::Status::Fail) == 0);
  CHECK(count_status(lines, CheckLine::Status::Warn) == 1);

  // The warning names the known misprint and carries both values.
  for (const auto& l : lines)
    if (l.status == CheckLine::Status::Warn) {
      CHECK(l.name == "gamma2-step3-ball1");
      CHECK(l.detail.find("6") != std::string::npos);
      CHECK(l.detail.find("2") != std::string::npos);
    }
}

TEST_CASE("perturbing a stored literal turns into a FAIL with a diff")
{
  Scenario sc = scenario_four_disc();
  for (auto& exp : sc.expected)
    if (exp.schedule == "gamma1" && exp.step == 4 && exp.ball == 1)
      exp.printed[0] = r3(0, 1, 12, 32);  // was 11 sqrt3/32
  const auto lines = verify_reference_values(sc);
  CHECK(count_status(lines, CheckLine::Status::Fail) == 1);
  for (const auto& l : lines)
    if (l.status == CheckLine::Status::Fail) {
      CHECK(l.name == "gamma1-step4-ball1");
      CHECK(l.detail.find("published") != std::string::npos);
      CHECK(l.detail.find("recomputed") != std::string::npos);
    }
}

TEST_CASE("triangular lattice")
{
  // The three mutually touching lattice points (0,0), (2,0), (1, sqrt3).
  const Root3 rt3 = Root3::sqrt3();
  const BallConfig<Root3> triangle(
      2, {Vec<Root3>{Root3(0), Root3(0)}, Vec<Root3>{Root3(2), Root3(0)},
          Vec<Root3>{Root3(1), rt3}});
  const ContactGraph tg = full_contact_graph(triangle, Root3());
  CHECK(tg.edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});

  const BallConfig<Root3> lattice = triangular_lattice_config<Root3>(2);
  CHECK(lattice.n() == 2 * 5 * 5);
  const ContactGraph graph = full_contact_graph(lattice, Root3());

  // No overlaps anywhere and an interior vertex sees exactly six neighbors.
  for (int j = 0; j < lattice.n(); ++j)
    for (int k = j + 1; k < lattice.n(); ++k)
      CHECK(sq_norm(lattice.centers[j] - lattice.centers[k]) >= Root3(4));
  int interior = -1;
  for (int v = 0; v < lattice.n(); ++v)
    if (lattice.centers[static_cast<std::size_t>(v)] == (Vec<Root3>{Root3(0), Root3(0)}))
      interior = v;
  REQUIRE(interior >= 0);
  CHECK(graph.degree(interior) == 6);

  // The float path agrees at the default tolerance.
  const BallConfigD lattice_d = triangular_lattice_config<double>(2);
  CHECK(full_contact_graph(lattice_d).edges == graph.edges);
}

TEST_CASE("chain and star generators")
{
  const BallConfigD chain = chain_config<double>(3, 1);
  CHECK(chain.centers == std::vector<Vecd>{Vecd{0.0}, Vecd{2.0}, Vecd{4.0}});
  const ContactGraph cg = full_contact_graph(chain);
  CHECK(cg.edges == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(is_connected(cg));
  CHECK(static_cast<int>(cg.edges.size()) == chain.n() - 1);  // a tree

  const BallConfigD star = star_config<double>(7, 2);
  const ContactGraph sg = full_contact_graph(star);
  CHECK(sg.degree(0) == 6);
  CHECK(is_connected(sg));
  CHECK_THROWS_AS(star_config<double>(8, 2), InfeasibleStar);
  CHECK_THROWS_AS(star_config<double>(4, 1), InfeasibleStar);

  const BallConfigD star3 = star_config<double>(7, 3);
  CHECK(full_contact_graph(star3).degree(0) == 6);
  CHECK_THROWS_AS(star_config<double>(8, 3), InfeasibleStar);

  // Exact star in the plane touches exactly like the float one.
  const BallConfig<Root3> star_exact = star_config<Root3>(7, 2);
  CHECK(full_contact_graph(star_exact, Root3()).edges == sg.edges);
}

TEST_CASE("random configurations are valid and connected")
{
  Rng rng(2024);
  for (int seed = 0; seed < 1000; ++seed) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const int d = 1 + static_cast<int>(rng.below(3));
    const BallConfigD config = random_config(n, d, static_cast<std::uint64_t>(seed));
    CHECK(config.n() == n);
    const ContactGraph graph = full_contact_graph(config);  // throws on overlap
    CHECK(is_connected(graph));
  }

  // Same seed, same configuration.
  const BallConfigD a = random_config(5, 3, 99);
  const BallConfigD b = random_config(5, 3, 99);
  CHECK(a.centers == b.centers);
  CHECK_THROWS_AS(random_config(1, 2, 0), InvalidArgument);
}

TEST_CASE("scenario registry")
{
  CHECK_THROWS_AS(scenario_by_name("nope"), InvalidArgument);
  CHECK_THROWS_AS(scenario_by_name("chain:5"), InvalidArgument);
  const Scenario sc = scenario_by_name("chain:5:2");
  CHECK(sc.config.n() == 5);
  CHECK(sc.config.dim == 2);
  CHECK(sc.exact_config.has_value());
  CHECK(!scenario_names().empty());
}

TEST_CASE("configuration JSON round-trips")
{
  SUBCASE("floating centers survive exactly")
  {
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
      const BallConfigD config = random_config(2 + static_cast<int>(rng.below(5)),
                                               1 + static_cast<int>(rng.below(3)),
                                               rng.next_u64());
      const std::string text = dump_stable(config_to_json(config));
      const ParsedConfig back = config_from_json(Json::parse(text));
      CHECK(back.config.dim == config.dim);
      CHECK(back.config.centers == config.centers);  // %.17g round-trips doubles
    }
  }

  SUBCASE("exact coefficients survive exactly")
  {
    const Scenario sc = scenario_four_disc();
    const Json j = config_to_json(sc.config, sc.exact_config);
    const ParsedConfig back = config_from_json(j);
    REQUIRE(back.exact.has_value());
    CHECK(back.exact->centers == sc.exact_config->centers);
    CHECK(back.config.centers == sc.config.centers);
  }

  SUBCASE("validation errors")
  {
    CHECK_THROWS_AS(config_from_json(Json{{"dimension", 2}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json(Json{{"dimension", 0}, {"centers", Json::array()}}),
                    InvalidArgument);
  }
}

TEST_CASE("schedule and velocity JSON round-trips")
{
  const Scenario sc = scenario_four_disc();
  const Schedule& gamma1 = sc.schedule("gamma1");
  const Schedule back = schedule_from_json(schedule_to_json(gamma1));
  CHECK(back.kind == gamma1.kind);
  CHECK(back.edges == gamma1.edges);

  const VelocityStateD v = velocities_from_json(velocities_to_json(sc.v0));
  CHECK(v == sc.v0);

  CHECK_THROWS_AS(schedule_from_json(Json{{"kind", "sideways"}}), InvalidArgument);
  CHECK_THROWS_AS(schedule_from_json(Json{{"kind", "explicit"}}), InvalidArgument);
}
