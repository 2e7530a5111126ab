#ifndef PINFOLD_JSON_IO_HPP
#define PINFOLD_JSON_IO_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "pinfold/config.hpp"
#include "pinfold/folding.hpp"
#include "pinfold/pinned.hpp"
#include "pinfold/root3.hpp"

namespace pinfold {

using Json = nlohmann::json;

/// Deterministic serialization: keys sorted (nlohmann's default map), floats
/// printed with 17 significant digits, exact values as coefficient
/// quadruples. Golden files diff byte-for-byte across runs.
std::string dump_stable(const Json& j, int indent = 2);

/// {"dimension": d, "centers": [[...],...]} plus an optional "sqrt3" field
/// holding [a_num, a_den, b_num, b_den] per coordinate for exact configs.
struct ParsedConfig {
  BallConfigD config;
  std::optional<BallConfig<Root3>> exact;
};

Json config_to_json(const BallConfigD& config);
Json config_to_json(const BallConfigD& config, const std::optional<BallConfig<Root3>>& exact);
ParsedConfig config_from_json(const Json& j);

Json velocities_to_json(const VelocityStateD& v);
VelocityStateD velocities_from_json(const Json& j);

Json quadruples_from_exact(const std::vector<Vec<Root3>>& rows);
std::vector<Vec<Root3>> quadruples_to_exact(const Json& j);

Json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const Json& j);  // edges arrive 1-based

/// Full simulation request:
/// {"config": {...}, "velocities": [[...]], "schedule": {...}, "max_steps": N}
/// with optional "velocities_sqrt3" to force the exact path.
struct RunRequest {
  ParsedConfig config;
  VelocityStateD v0;
  std::optional<VelocityState<Root3>> exact_v0;
  Schedule schedule;
  std::int64_t max_steps = 1000000;
};

RunRequest run_request_from_json(const Json& j);

Json collision_log_to_json(const CollisionLogD& log);
Json collision_log_to_json(const CollisionLog<Root3>& log);

std::string collision_log_csv(const CollisionLogD& log);
std::string collision_log_csv(const CollisionLog<Root3>& log);

Json orbit_record_to_json(const OrbitRecord& rec, bool include_points = true,
                          std::size_t point_cap = 4096);

}  // namespace pinfold

#endif
