// Command-line front end: simulation, bound calculators, folding orbits,
// scenario export, schedule search and the reference-value regression.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pinfold/bounds.hpp"
#include "pinfold/json_io.hpp"
#include "pinfold/scenarios.hpp"
#include "pinfold/search.hpp"
#include "pinfold/verify.hpp"

namespace {

using namespace pinfold;

constexpr double kPi = 3.14159265358979323846264338327950288;

Json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text)
{
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

/// Every run prints its materialized options on stderr so the exact
/// invocation can be reproduced from the output alone.
void print_effective(const std::string& sub, const Json& options)
{
  std::cerr << "# pinfold " << sub << " effective " << options.dump() << "\n";
}

struct GlobalOptions {
  std::uint64_t seed = 0;
  int threads = 1;
};

VelocityStateD starting_velocities(const std::string& spec, const BallConfigD& config,
                                   std::uint64_t seed)
{
  const int n = config.n();
  const int d = config.dim;
  if (spec == "zeros") return VelocityStateD::zeros(n, d);
  if (spec == "random") {
    Rng rng(Rng::derive_seed(seed, 0x5eedull));
    Vecd v(static_cast<std::size_t>(n * d));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.normal();
    v *= 1.0 / norm(v);
    return VelocityStateD(n, d, std::move(v));
  }
  return velocities_from_json(read_json_file(spec));
}

int cmd_simulate(const GlobalOptions& global, const std::string& request_path,
                 const std::string& scenario_name, const std::string& schedule_name,
                 std::int64_t max_steps, bool max_steps_given, bool no_exact,
                 const std::string& output, const std::string& csv_path)
{
  RunRequest req;
  if (!request_path.empty()) {
    req = run_request_from_json(read_json_file(request_path));
    if (max_steps_given) req.max_steps = max_steps;
  } else if (!scenario_name.empty()) {
    const Scenario sc = scenario_by_name(scenario_name);
    req.config.config = sc.config;
    req.config.exact = sc.exact_config;
    req.v0 = sc.v0;
    req.exact_v0 = sc.exact_v0;
    req.schedule = sc.schedule(schedule_name);
    req.max_steps = max_steps;
  } else {
    throw InvalidArgument("simulate needs --request or --scenario");
  }
  if (req.max_steps < 1) throw InvalidArgument("max_steps must be at least 1");

  const bool exact_run = !no_exact && req.config.exact && req.exact_v0;
  print_effective("simulate",
                  Json{{"request", request_path},
                       {"scenario", scenario_name},
                       {"schedule", schedule_to_json(req.schedule)},
                       {"max_steps", req.max_steps},
                       {"exact", exact_run},
                       {"output", output},
                       {"csv", csv_path},
                       {"seed", global.seed},
                       {"threads", global.threads}});

  bool absorbed = false;
  std::int64_t steps = 0;
  if (exact_run) {
    const ContactGraph graph = full_contact_graph(*req.config.exact, Root3());
    CollisionLog<Root3> log =
        run_schedule(*req.config.exact, *req.exact_v0, graph, req.schedule, req.max_steps);
    absorbed = log.absorbed;
    steps = log.steps_taken;
    write_text(output, dump_stable(collision_log_to_json(log)));
    if (!csv_path.empty()) write_text(csv_path, collision_log_csv(log));
  } else {
    const ContactGraph graph = full_contact_graph(req.config.config);
    CollisionLogD log =
        run_schedule(req.config.config, req.v0, graph, req.schedule, req.max_steps);
    absorbed = log.absorbed;
    steps = log.steps_taken;
    write_text(output, dump_stable(collision_log_to_json(log)));
    if (!csv_path.empty()) write_text(csv_path, collision_log_csv(log));
  }
  return (!absorbed && steps >= req.max_steps) ? 3 : 0;
}

int cmd_bounds(const GlobalOptions& global, int n, int d, std::optional<double> tau,
               std::optional<double> gap, std::optional<long long> l, std::optional<double> r,
               double mass_ratio, double radius_ratio, const std::string& scenario_name,
               const std::string& config_path, int max_edges, const std::string& output)
{
  // A concrete configuration supplies n and d and its own span gap; the
  // exact enumeration is preferred when exact coordinates are available.
  std::optional<double> computed_gap;
  if (!scenario_name.empty() || !config_path.empty()) {
    ParsedConfig parsed;
    if (!scenario_name.empty()) {
      const Scenario sc = scenario_by_name(scenario_name);
      parsed.config = sc.config;
      parsed.exact = sc.exact_config;
    } else {
      parsed = config_from_json(read_json_file(config_path));
    }
    n = parsed.config.n();
    d = parsed.config.dim;
    computed_gap = parsed.exact ? span_gap_exact(*parsed.exact, max_edges)
                                : span_gap(parsed.config, max_edges);
    if (!gap) gap = computed_gap;
  }
  if (n < 2 || d < 1)
    throw InvalidArgument("bounds needs --n and --d, or --scenario/--config");

  print_effective("bounds", Json{{"n", n},
                                 {"d", d},
                                 {"tau", tau ? Json(*tau) : Json()},
                                 {"gap", gap ? Json(*gap) : Json()},
                                 {"l", l ? Json(*l) : Json()},
                                 {"r", r ? Json(*r) : Json()},
                                 {"mass_ratio", mass_ratio},
                                 {"radius_ratio", radius_ratio},
                                 {"scenario", scenario_name},
                                 {"config", config_path},
                                 {"max_edges", max_edges},
                                 {"seed", global.seed}});

  Json table = Json::array();
  auto push = [&table](const LogBound& b, Json inputs) {
    table.push_back(Json{{"formula", b.formula},
                         {"inputs", std::move(inputs)},
                         {"log2", b.log2_value},
                         {"log10", b.log10_value()}});
  };

  const KissingInfo kiss = kissing_info(d, tau ? std::optional<long long>(
                                                     static_cast<long long>(*tau))
                                               : std::nullopt);
  // The headline bound defaults to the elementary kissing upper bound; the
  // older per-shape bounds prefer the exact value when one is known.
  const double tau_for_shapes =
      tau ? *tau : (kiss.exact ? static_cast<double>(*kiss.exact) : kiss.upper);

  if (n >= 3) {
    push(collision_bound(n, d, tau), Json{{"n", n}, {"d", d}, {"tau", tau ? Json(*tau) : Json("3^d-1")}});
    push(tree_bound(n, d, tau_for_shapes), Json{{"n", n}, {"d", d}, {"tau", tau_for_shapes}});
    push(lattice_bound(n), Json{{"n", n}});
    push(tree_bound_refined(n), Json{{"n", n}});
    push(collision_bound_tree(n), Json{{"n", n}});
    if (gap)
      push(configuration_bound(n, d, *gap, tau_for_shapes),
           Json{{"n", n}, {"d", d}, {"gap", *gap}, {"tau", tau_for_shapes}});
  }
  if (l && r) push(orbit_bound(*l, *r), Json{{"l", *l}, {"r", *r}});
  if (r) {
    const double v = two_halfspace_bound(*r);
    push(LogBound{std::log2(v), "two-halfspace-bound"}, Json{{"r", *r}});
  }
  if (n >= 2) {
    push(moving_bound_mass_radius(n, mass_ratio, radius_ratio),
         Json{{"n", n}, {"mass_ratio", mass_ratio}, {"radius_ratio", radius_ratio}});
    push(moving_bound_mass(n, mass_ratio), Json{{"n", n}, {"mass_ratio", mass_ratio}});
    push(moving_bound_equal(n, d), Json{{"n", n}, {"d", d}});
  }

  Json out;
  out["bounds"] = std::move(table);
  out["kissing"] = Json{{"d", kiss.d},
                        {"lower", kiss.lower},
                        {"upper", kiss.upper},
                        {"exact", kiss.exact ? Json(*kiss.exact) : Json()}};
  if (computed_gap) out["span_gap"] = *computed_gap;
  write_text(output, dump_stable(out));
  return 0;
}

int cmd_orbit(const GlobalOptions& global, std::optional<double> wedge_angle,
              const std::string& start_angle, const std::string& halfspaces_path,
              const std::string& start_json, const std::string& sequence_spec,
              std::int64_t max_steps, bool no_points, const std::string& output)
{
  std::vector<Halfspace<double>> halfspaces;
  Vecd start;
  if (wedge_angle) {
    if (!(*wedge_angle > 0.0 && *wedge_angle < kPi))
      throw InvalidArgument("wedge angle must lie in (0, pi)");
    const double alpha = *wedge_angle;
    const Wedge wedge = make_wedge(alpha / 2 - kPi / 2, kPi / 2 - alpha / 2);
    halfspaces = wedge.halfspaces;
    double theta;
    if (start_angle == "auto") {
      theta = kPi - alpha / 2;  // worst start still outside both half-planes
    } else {
      theta = std::stod(start_angle);
    }
    start = Vecd{std::cos(theta), std::sin(theta)};
  } else if (!halfspaces_path.empty()) {
    const Json spec = read_json_file(halfspaces_path);
    for (const auto& h : spec) {
      Vecd normal(h.at("normal").size());
      for (std::size_t i = 0; i < normal.size(); ++i) normal[i] = h.at("normal")[i].get<double>();
      halfspaces.push_back(make_halfspace(normal, h.value("offset", 0.0)));
    }
    const Json sj = Json::parse(start_json);
    start = Vecd(sj.size());
    for (std::size_t i = 0; i < start.size(); ++i) start[i] = sj[i].get<double>();
  } else {
    throw InvalidArgument("orbit needs --wedge or --halfspaces");
  }

  IndexSequence seq;
  if (sequence_spec == "round_robin") {
    seq = IndexSequence::round_robin(static_cast<int>(halfspaces.size()));
  } else {
    std::vector<int> order;
    std::stringstream ss(sequence_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) order.push_back(std::stoi(tok));
    seq = IndexSequence::cycled(std::move(order));
  }

  print_effective("orbit", Json{{"wedge", wedge_angle ? Json(*wedge_angle) : Json()},
                                {"start_angle", start_angle},
                                {"halfspaces", halfspaces_path},
                                {"sequence", sequence_spec},
                                {"max_steps", max_steps},
                                {"points", !no_points},
                                {"seed", global.seed}});

  OrbitOptions opts;
  opts.store_points = !no_points;
  const OrbitRecord rec = run_foldings(halfspaces, start, seq, max_steps, opts);
  write_text(output, dump_stable(orbit_record_to_json(rec, !no_points)));
  return 0;
}

int cmd_scenario(bool list, const std::string& name, const std::string& export_path,
                 bool with_exact)
{
  if (list) {
    for (const auto& nm : scenario_names()) std::cout << nm << "\n";
    return 0;
  }
  if (name.empty()) throw InvalidArgument("scenario needs --list or --name");
  const Scenario sc = scenario_by_name(name);
  print_effective("scenario",
                  Json{{"name", name}, {"export", export_path}, {"exact", with_exact}});
  const ContactGraph graph = full_contact_graph(sc.config);
  std::cerr << "# " << sc.name << ": n=" << sc.config.n() << " d=" << sc.config.dim
            << " edges=" << graph.edges.size() << "\n";
  if (!export_path.empty()) {
    const Json j = with_exact ? config_to_json(sc.config, sc.exact_config)
                              : config_to_json(sc.config);
    write_text(export_path, dump_stable(j));
  }
  return 0;
}

int cmd_search(const GlobalOptions& global, const std::string& scenario_name,
               const std::string& config_path, const std::string& v0_spec,
               const std::string& strategy_name_in, int len, std::int64_t budget,
               const std::string& sweep_spec, const std::string& csv_path,
               const std::string& output)
{
  auto parse_strategy = [&](const std::string& s) {
    if (s == "random") return SearchStrategy::random_restarts();
    if (s == "greedy") return SearchStrategy::greedy();
    if (s == "exhaustive") return SearchStrategy::exhaustive(len);
    throw InvalidArgument("unknown strategy '" + s + "'");
  };

  if (!sweep_spec.empty()) {
    std::vector<std::pair<std::string, BallConfigD>> configs;
    std::stringstream ss(sweep_spec);
    std::string nm;
    while (std::getline(ss, nm, ',')) configs.emplace_back(nm, scenario_by_name(nm).config);
    std::vector<SearchStrategy> strategies;
    std::stringstream st(strategy_name_in);
    while (std::getline(st, nm, '+')) strategies.push_back(parse_strategy(nm));
    print_effective("search", Json{{"sweep", sweep_spec},
                                   {"strategies", strategy_name_in},
                                   {"budget", budget},
                                   {"seed", global.seed},
                                   {"threads", global.threads}});
    const auto rows = sweep(configs, strategies, budget, global.seed, global.threads);
    write_text(csv_path.empty() ? output : csv_path, sweep_csv(rows));
    return 0;
  }

  BallConfigD config;
  std::string name;
  std::optional<VelocityStateD> scenario_v0;
  if (!scenario_name.empty()) {
    const Scenario sc = scenario_by_name(scenario_name);
    config = sc.config;
    name = sc.name;
    scenario_v0 = sc.v0;
  } else if (!config_path.empty()) {
    config = config_from_json(read_json_file(config_path)).config;
    name = config_path;
  } else {
    throw InvalidArgument("search needs --scenario, --config or --sweep");
  }

  print_effective("search", Json{{"name", name},
                                 {"v0", v0_spec},
                                 {"strategy", strategy_name_in},
                                 {"len", len},
                                 {"budget", budget},
                                 {"seed", global.seed},
                                 {"threads", global.threads}});

  VelocityStateD v0;
  if (v0_spec == "scenario") {
    if (!scenario_v0) throw InvalidArgument("--v0 scenario needs --scenario");
    v0 = *scenario_v0;
  } else {
    v0 = starting_velocities(v0_spec, config, global.seed);
  }
  const SearchResult res = search_max_collisions(config, v0, parse_strategy(strategy_name_in),
                                                 budget, global.seed, global.threads);
  Json j;
  j["name"] = name;
  j["best_count"] = res.best_count;
  Json sched = Json::array();
  for (const auto& e : res.best_schedule) sched.push_back(Json::array({e.first + 1, e.second + 1}));
  j["best_schedule"] = std::move(sched);
  j["log2_bound_main"] = res.bound_main.log2_value;
  j["log2_bound_fold"] = res.bound_fold.log2_value;
  j["trials"] = res.trials;
  j["seed"] = res.seed;
  write_text(output, dump_stable(j));
  if (!csv_path.empty()) {
    SweepRow row;
    row.name = name;
    row.n = config.n();
    row.d = config.dim;
    row.edges = static_cast<int>(full_contact_graph(config).edges.size());
    row.strategy = strategy_name_in;
    row.best_count = res.best_count;
    row.log2_bound_main = res.bound_main.log2_value;
    row.log2_bound_fold = res.bound_fold.log2_value;
    row.seed = res.seed;
    write_text(csv_path, sweep_csv({row}));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"pinned-ball pseudo-collision dynamics, foldings and bound calculators"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "seed for every random choice (default 0)");
  app.add_option("--threads", global.threads, "worker threads for search (default 1)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a collision schedule");
  std::string sim_request, sim_scenario, sim_schedule = "round_robin";
  std::string sim_output = "-", sim_csv;
  std::int64_t sim_max_steps = 1000000;
  bool sim_no_exact = false;
  sim->add_option("--request", sim_request, "run-request JSON file");
  sim->add_option("--scenario", sim_scenario, "built-in scenario name");
  sim->add_option("--schedule", sim_schedule, "named schedule of the scenario");
  auto* sim_ms = sim->add_option("--max-steps", sim_max_steps, "schedule step budget");
  sim->add_flag("--no-exact", sim_no_exact, "force the floating path");
  sim->add_option("--output", sim_output, "collision log JSON ('-' = stdout)");
  sim->add_option("--csv", sim_csv, "per-jump CSV file");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "evaluate the bound formulas in log2");
  int bnd_n = -1, bnd_d = -1, bnd_max_edges = 14;
  double bnd_mass = 1.0, bnd_radius = 1.0;
  std::string bnd_output = "-", bnd_scenario, bnd_config;
  std::optional<double> bnd_tau, bnd_gap, bnd_r;
  std::optional<long long> bnd_l;
  bnd->add_option("--n", bnd_n, "number of balls");
  bnd->add_option("--d", bnd_d, "dimension");
  bnd->add_option("--tau", bnd_tau, "kissing number to use");
  bnd->add_option("--gap", bnd_gap, "span gap for the configuration bound");
  bnd->add_option("--scenario", bnd_scenario, "compute n, d and the span gap from a scenario");
  bnd->add_option("--config", bnd_config, "compute n, d and the span gap from a config file");
  bnd->add_option("--max-edges", bnd_max_edges, "edge limit for the span-gap enumeration");
  bnd->add_option("--l", bnd_l, "half-space count for the orbit bound");
  bnd->add_option("--r", bnd_r, "witness radius for the orbit bounds");
  bnd->add_option("--mass-ratio", bnd_mass, "m_max/m_min for moving-ball bounds");
  bnd->add_option("--radius-ratio", bnd_radius, "r_max/r_min for moving-ball bounds");
  bnd->add_option("--output", bnd_output, "JSON output ('-' = stdout)");

  // orbit
  auto* orb = app.add_subcommand("orbit", "iterate foldings and record the orbit");
  std::optional<double> orb_wedge;
  std::string orb_start_angle = "auto", orb_halfspaces, orb_start = "[]";
  std::string orb_sequence = "round_robin", orb_output = "-";
  std::int64_t orb_max_steps = 1000000;
  bool orb_no_points = false;
  orb->add_option("--wedge", orb_wedge, "wedge angle; builds two half-planes");
  orb->add_option("--start-angle", orb_start_angle, "polar start angle or 'auto'");
  orb->add_option("--halfspaces", orb_halfspaces, "JSON file [{normal, offset}, ...]");
  orb->add_option("--start", orb_start, "start point as a JSON array");
  orb->add_option("--sequence", orb_sequence, "'round_robin' or comma-separated indices");
  orb->add_option("--max-steps", orb_max_steps, "fold budget");
  orb->add_flag("--no-points", orb_no_points, "omit the orbit points from the output");
  orb->add_option("--output", orb_output, "orbit record JSON ('-' = stdout)");

  // scenario
  auto* scn = app.add_subcommand("scenario", "list or export canned configurations");
  bool scn_list = false, scn_exact = false;
  std::string scn_name, scn_export;
  scn->add_flag("--list", scn_list, "list scenario names");
  scn->add_option("--name", scn_name, "scenario name, e.g. four-disc or chain:4:2");
  scn->add_option("--export", scn_export, "write the configuration JSON here");
  scn->add_flag("--exact", scn_exact, "include exact sqrt3 coefficients when available");

  // search
  auto* sea = app.add_subcommand("search", "hunt for collision-maximizing schedules");
  std::string sea_scenario, sea_config, sea_v0 = "random", sea_strategy = "random";
  std::string sea_sweep, sea_csv, sea_output = "-";
  int sea_len = 8;
  std::int64_t sea_budget = 1000;
  sea->add_option("--scenario", sea_scenario, "built-in scenario name");
  sea->add_option("--config", sea_config, "configuration JSON file");
  sea->add_option("--v0", sea_v0, "zeros | random | scenario | velocities JSON file");
  sea->add_option("--strategy", sea_strategy, "random | greedy | exhaustive ('+'-join for sweeps)");
  sea->add_option("--len", sea_len, "sequence length for exhaustive search");
  sea->add_option("--budget", sea_budget, "trial budget");
  sea->add_option("--sweep", sea_sweep, "comma-separated scenario names");
  sea->add_option("--csv", sea_csv, "CSV output file");
  sea->add_option("--output", sea_output, "result output ('-' = stdout)");

  // verify-paper
  auto* ver = app.add_subcommand(
      "verify-paper", "re-derive the built-in worked example and diff every published value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(global, sim_request, sim_scenario, sim_schedule, sim_max_steps,
                          sim_ms->count() > 0, sim_no_exact, sim_output, sim_csv);
    if (bnd->parsed())
      return cmd_bounds(global, bnd_n, bnd_d, bnd_tau, bnd_gap, bnd_l, bnd_r, bnd_mass,
                        bnd_radius, bnd_scenario, bnd_config, bnd_max_edges, bnd_output);
    if (orb->parsed())
      return cmd_orbit(global, orb_wedge, orb_start_angle, orb_halfspaces, orb_start,
                       orb_sequence, orb_max_steps, orb_no_points, orb_output);
    if (scn->parsed()) return cmd_scenario(scn_list, scn_name, scn_export, scn_exact);
    if (sea->parsed())
      return cmd_search(global, sea_scenario, sea_config, sea_v0, sea_strategy, sea_len,
                        sea_budget, sea_sweep, sea_csv, sea_output);
    if (ver->parsed()) return print_verification(std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
