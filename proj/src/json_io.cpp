#include "pinfold/json_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace pinfold {

namespace {

void dump_stable_rec(const Json& j, int indent, int depth, std::string& out)
{
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string closing_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        dump_stable_rec(it.value(), indent, depth + 1, out);
      }
      out += "\n" + closing_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_stable_rec(el, indent, depth + 1, out);
      }
      out += "\n" + closing_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

Json rational_component(const Rational& q, bool numerator_part)
{
  const auto part = numerator_part ? numerator(q) : denominator(q);
  if (part >= std::numeric_limits<std::int64_t>::min() &&
      part <= std::numeric_limits<std::int64_t>::max())
    return Json(part.convert_to<std::int64_t>());
  return Json(part.convert_to<std::string>());
}

Rational rational_from_parts(const Json& num, const Json& den)
{
  auto cvt = [](const Json& v) -> boost::multiprecision::cpp_int {
    if (v.is_string()) return boost::multiprecision::cpp_int(v.get<std::string>());
    if (v.is_number_integer()) return boost::multiprecision::cpp_int(v.get<std::int64_t>());
    throw InvalidArgument("sqrt3 coefficients must be integers or integer strings");
  };
  const auto d = cvt(den);
  if (d == 0) throw InvalidArgument("zero denominator in exact coefficient");
  return Rational(cvt(num), d);
}

Json quadruple(const Root3& x)
{
  return Json::array({rational_component(x.rational_part(), true),
                      rational_component(x.rational_part(), false),
                      rational_component(x.root_part(), true),
                      rational_component(x.root_part(), false)});
}

Root3 from_quadruple(const Json& q)
{
  if (!q.is_array() || q.size() != 4)
    throw InvalidArgument("exact coefficient must be [a_num, a_den, b_num, b_den]");
  return Root3(rational_from_parts(q[0], q[1]), rational_from_parts(q[2], q[3]));
}

Json edge_to_json(const Edge& e)
{
  return Json::array({e.first + 1, e.second + 1});  // 1-based on the wire
}

Edge edge_from_json(const Json& j)
{
  if (!j.is_array() || j.size() != 2)
    throw InvalidArgument("an edge must be a pair [j, k]");
  const int a = j[0].get<int>();
  const int b = j[1].get<int>();
  if (a < 1 || b < 1) throw InvalidArgument("edge indices are 1-based");
  return make_edge(a - 1, b - 1);
}

template <class S>
Json stacked_blocks_to_json(const VelocityState<S>& state)
{
  Json rows = Json::array();
  for (int k = 0; k < state.n; ++k) {
    Json row = Json::array();
    const Vec<S> b = state.block(k);
    for (const auto& c : b) row.push_back(scalar_to_double(c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string dump_stable(const Json& j, int indent)
{
  std::string out;
  dump_stable_rec(j, indent, 0, out);
  out += "\n";
  return out;
}

Json config_to_json(const BallConfigD& config)
{
  return config_to_json(config, std::nullopt);
}

Json config_to_json(const BallConfigD& config, const std::optional<BallConfig<Root3>>& exact)
{
  Json j;
  j["dimension"] = config.dim;
  Json centers = Json::array();
  for (const auto& x : config.centers) {
    Json row = Json::array();
    for (double c : x) row.push_back(c);
    centers.push_back(std::move(row));
  }
  j["centers"] = std::move(centers);
  if (exact) {
    if (exact->n() != config.n() || exact->dim != config.dim)
      throw DimensionMismatch("exact configuration does not mirror the float one");
    j["sqrt3"] = quadruples_from_exact(exact->centers);
  }
  return j;
}

ParsedConfig config_from_json(const Json& j)
{
  if (!j.contains("dimension") || !j.contains("centers"))
    throw InvalidArgument("configuration needs 'dimension' and 'centers'");
  const int d = j.at("dimension").get<int>();
  if (d < 1) throw InvalidArgument("dimension must be positive");

  ParsedConfig out;
  if (j.contains("sqrt3")) {
    std::vector<Vec<Root3>> exact_centers = quadruples_to_exact(j.at("sqrt3"));
    out.exact = BallConfig<Root3>(d, exact_centers);
    std::vector<Vecd> centers;
    for (const auto& x : exact_centers) centers.push_back(to_double(x));
    out.config = BallConfigD(d, std::move(centers));
    return out;
  }

  std::vector<Vecd> centers;
  for (const auto& row : j.at("centers")) {
    Vecd x(static_cast<std::size_t>(d));
    if (static_cast<int>(row.size()) != d)
      throw DimensionMismatch("center row of wrong length");
    for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i)].get<double>();
    centers.push_back(std::move(x));
  }
  out.config = BallConfigD(d, std::move(centers));
  return out;
}

Json velocities_to_json(const VelocityStateD& v) { return stacked_blocks_to_json(v); }

VelocityStateD velocities_from_json(const Json& j)
{
  if (!j.is_array() || j.empty()) throw InvalidArgument("velocities must be a non-empty array");
  std::vector<Vecd> blocks;
  for (const auto& row : j) {
    Vecd b(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) b[i] = row[i].get<double>();
    blocks.push_back(std::move(b));
  }
  return VelocityStateD::from_blocks(blocks);
}

Json quadruples_from_exact(const std::vector<Vec<Root3>>& rows)
{
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(quadruple(c));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Vec<Root3>> quadruples_to_exact(const Json& j)
{
  if (!j.is_array() || j.empty()) throw InvalidArgument("exact rows must be a non-empty array");
  std::vector<Vec<Root3>> rows;
  for (const auto& row : j) {
    std::vector<Root3> coords;
    for (const auto& q : row) coords.push_back(from_quadruple(q));
    rows.push_back(Vec<Root3>(std::move(coords)));
  }
  return rows;
}

Json schedule_to_json(const Schedule& schedule)
{
  Json j;
  j["kind"] = schedule_kind_name(schedule.kind);
  Json edges = Json::array();
  for (const auto& e : schedule.edges) edges.push_back(edge_to_json(e));
  j["edges"] = std::move(edges);
  if (schedule.kind == Schedule::Kind::Random) j["seed"] = schedule.seed;
  return j;
}

Schedule schedule_from_json(const Json& j)
{
  Schedule s;
  const std::string kind = j.value("kind", "round_robin");
  if (kind == "explicit") s.kind = Schedule::Kind::Explicit;
  else if (kind == "round_robin") s.kind = Schedule::Kind::RoundRobin;
  else if (kind == "random") s.kind = Schedule::Kind::Random;
  else if (kind == "greedy") s.kind = Schedule::Kind::Greedy;
  else throw InvalidArgument("unknown schedule kind '" + kind + "'");
  if (j.contains("edges"))
    for (const auto& e : j.at("edges")) s.edges.push_back(edge_from_json(e));
  if (s.kind == Schedule::Kind::Explicit && s.edges.empty())
    throw InvalidArgument("an explicit schedule needs its edge sequence");
  s.seed = j.value("seed", std::uint64_t{0});
  return s;
}

RunRequest run_request_from_json(const Json& j)
{
  if (!j.contains("config")) throw InvalidArgument("run request needs a 'config'");
  RunRequest req;
  req.config = config_from_json(j.at("config"));
  const int n = req.config.config.n();
  const int d = req.config.config.dim;

  if (j.contains("velocities_sqrt3")) {
    std::vector<Vec<Root3>> blocks = quadruples_to_exact(j.at("velocities_sqrt3"));
    req.exact_v0 = VelocityState<Root3>::from_blocks(blocks);
    std::vector<Vecd> dblocks;
    for (const auto& b : blocks) dblocks.push_back(to_double(b));
    req.v0 = VelocityStateD::from_blocks(dblocks);
  } else if (j.contains("velocities")) {
    req.v0 = velocities_from_json(j.at("velocities"));
  } else {
    req.v0 = VelocityStateD::zeros(n, d);
  }
  if (req.v0.n != n || req.v0.dim != d)
    throw DimensionMismatch("velocities do not match the configuration");
  if (req.exact_v0 && !req.config.exact)
    throw InvalidArgument("exact velocities require an exact configuration");

  if (j.contains("schedule")) req.schedule = schedule_from_json(j.at("schedule"));
  req.max_steps = j.value("max_steps", std::int64_t{1000000});
  return req;
}

namespace {

template <class S>
Json log_to_json_impl(const CollisionLog<S>& log)
{
  Json j;
  j["collisions"] = log.collision_count();
  j["absorbed"] = log.absorbed;
  j["steps"] = log.steps_taken;
  Json jumps = Json::array();
  for (const auto& rec : log.jumps) {
    Json one;
    one["step"] = rec.step;
    one["edge"] = edge_to_json(rec.edge);
    one["delta_norm"] = rec.delta_norm;
    jumps.push_back(std::move(one));
  }
  j["jumps"] = std::move(jumps);
  j["final"] = stacked_blocks_to_json(log.final_state);
  return j;
}

template <class S>
std::string log_to_csv_impl(const CollisionLog<S>& log)
{
  std::ostringstream os;
  os << "step,edge,delta_norm\n";
  for (const auto& rec : log.jumps) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", rec.delta_norm);
    os << rec.step << ',' << rec.edge.first + 1 << '-' << rec.edge.second + 1 << ',' << buf
       << '\n';
  }
  return os.str();
}

}  // namespace

Json collision_log_to_json(const CollisionLogD& log) { return log_to_json_impl(log); }

Json collision_log_to_json(const CollisionLog<Root3>& log)
{
  Json j = log_to_json_impl(log);
  std::vector<Vec<Root3>> blocks;
  for (int k = 0; k < log.final_state.n; ++k) blocks.push_back(log.final_state.block(k));
  j["final_sqrt3"] = quadruples_from_exact(blocks);
  return j;
}

std::string collision_log_csv(const CollisionLogD& log) { return log_to_csv_impl(log); }
std::string collision_log_csv(const CollisionLog<Root3>& log) { return log_to_csv_impl(log); }

Json orbit_record_to_json(const OrbitRecord& rec, bool include_points, std::size_t point_cap)
{
  Json j;
  j["jumps"] = rec.jump_count();
  j["absorbed"] = rec.absorbed;
  j["steps"] = rec.steps_taken;
  if (include_points) {
    Json pts = Json::array();
    const std::size_t limit = std::min(point_cap, rec.points.size());
    for (std::size_t i = 0; i < limit; ++i) {
      Json row = Json::array();
      for (double c : rec.points[i]) row.push_back(c);
      pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    j["points_capped"] = rec.points_capped || rec.points.size() > point_cap;
  }
  return j;
}

}  // namespace pinfold
