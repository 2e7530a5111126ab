#include "pinfold/folding.hpp"

#include <cmath>
#include <string>

namespace pinfold {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

bool near_existing_point(const std::vector<Vecd>& points, const Vecd& p, double tol)
{
  for (const auto& q : points)
    if (dist(p, q) <= tol) return true;
  return false;
}

}  // namespace

OrbitRecord run_foldings(const std::vector<Halfspace<double>>& halfspaces,
                         const Vecd& start, const IndexSequence& sequence,
                         std::int64_t max_steps, const OrbitOptions& options)
{
  if (halfspaces.empty()) throw InvalidArgument("no halfspaces supplied");
  if (max_steps < 1) throw InvalidArgument("max_steps must be at least 1");
  if (sequence.order.empty()) throw InvalidArgument("empty index sequence");
  const int l = static_cast<int>(halfspaces.size());
  for (int idx : sequence.order)
    if (idx < 0 || idx >= l)
      throw IndexOutOfRange("halfspace index " + std::to_string(idx));
  for (const auto& h : halfspaces)
    if (h.normal.size() != start.size())
      throw DimensionMismatch("halfspace dimension does not match start point");

  OrbitRecord rec;
  Vecd v = start;
  if (options.store_points) rec.points.push_back(v);

  if (in_all_halfspaces(halfspaces, v)) {
    rec.absorbed = true;
    rec.final_state = v;
    return rec;
  }

  const std::int64_t pattern_len = static_cast<std::int64_t>(sequence.order.size());
  for (std::int64_t step = 0; step < max_steps; ++step) {
    if (!sequence.cycle && step >= pattern_len) break;
    const int idx = sequence.order[static_cast<std::size_t>(step % pattern_len)];
    Vecd next = fold(halfspaces[static_cast<std::size_t>(idx)], v);
    ++rec.steps_taken;
    if (next != v) {
      rec.jump_times.push_back(step + 1);
      v = std::move(next);
      if (options.store_points) {
        if (rec.points.size() >= options.point_cap)
          rec.points_capped = true;
        else if (!near_existing_point(rec.points, v, options.merge_tol))
          rec.points.push_back(v);
      }
      if (in_all_halfspaces(halfspaces, v)) {
        rec.absorbed = true;
        break;
      }
    }
  }
  if (!rec.absorbed) rec.absorbed = in_all_halfspaces(halfspaces, v);
  rec.final_state = std::move(v);
  return rec;
}

Wedge make_wedge(double theta1, double theta2)
{
  Wedge w;
  w.halfspaces.push_back(make_halfspace(Vecd{std::cos(theta1), std::sin(theta1)}));
  w.halfspaces.push_back(make_halfspace(Vecd{std::cos(theta2), std::sin(theta2)}));
  const double diff = std::remainder(theta1 - theta2, 2.0 * kPi);  // in [-pi, pi]
  w.angle = kPi - std::fabs(diff);
  w.degenerate = !(w.angle > 1e-15);
  return w;
}

std::pair<std::vector<Halfspace<double>>, Vecd> orbit_size_witness(int m)
{
  if (m < 1) throw InvalidArgument("orbit size target must be at least 1");

  // Wedge of angle alpha about the +x axis; start on the unit circle at
  // angle pi - alpha/2 from the bisector. Each acting fold advances the
  // polar angle by alpha, giving roughly pi/alpha distinct points.
  double alpha = kPi / (m + 2);
  for (int attempt = 0; attempt < 4; ++attempt) {
    Wedge wedge = make_wedge(alpha / 2 - kPi / 2, kPi / 2 - alpha / 2);
    const double theta = kPi - alpha / 2;
    Vecd start{std::cos(theta), std::sin(theta)};
    OrbitOptions opts;
    opts.point_cap = static_cast<std::size_t>(m) + 16;
    OrbitRecord rec = run_foldings(wedge.halfspaces, start,
                                   IndexSequence::round_robin(2),
                                   8 * (static_cast<std::int64_t>(m) + 4) + 64, opts);
    if (static_cast<int>(rec.points.size()) > m)
      return {wedge.halfspaces, start};
    alpha /= 2;
  }
  throw InvalidArgument("could not certify an orbit larger than " + std::to_string(m));
}

}  // namespace pinfold
