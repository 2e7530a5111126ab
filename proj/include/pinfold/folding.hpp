#ifndef PINFOLD_FOLDING_HPP
#define PINFOLD_FOLDING_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "pinfold/config.hpp"
#include "pinfold/root3.hpp"
#include "pinfold/vec.hpp"

namespace pinfold {

inline bool strictly_negative(double s) { return s < -kJumpTol; }
inline bool strictly_negative(const Root3& s) { return s.sign() < 0; }

/// Closed affine half-space {v : <v, normal> >= offset}. For double the
/// factory normalizes, so normal_sq == 1 and the fold below reduces to the
/// textbook reflection. Exact scalars cannot normalize inside their field
/// (|z| may be irrational), so the normal is kept scaled and normal_sq
/// carries <normal, normal>; the fold formula divides it out.
template <class S>
struct Halfspace {
  Vec<S> normal;
  S offset{};
  S normal_sq{};
};

inline Halfspace<double> make_halfspace(Vecd normal, double offset = 0.0)
{
  const double len = norm(normal);
  if (!(len > 0.0)) throw InvalidArgument("halfspace normal has zero length");
  return Halfspace<double>{normal * (1.0 / len), offset / len, 1.0};
}

template <class S>
Halfspace<S> halfspace_through_origin_scaled(Vec<S> normal)
{
  S sq = sq_norm(normal);
  if (!strictly_negative(-sq)) throw InvalidArgument("halfspace normal is zero");
  return Halfspace<S>{std::move(normal), S{}, std::move(sq)};
}

/// Identity on the half-space, reflection in its boundary hyperplane on the
/// complement. States within the jump band of the boundary count as inside,
/// so fold(fold(v)) == fold(v) holds bit-for-bit.
template <class S>
Vec<S> fold(const Halfspace<S>& h, const Vec<S>& v)
{
  S s = dot(v, h.normal) - h.offset;
  if (!strictly_negative(s)) return v;
  return v - (S(2) * s / h.normal_sq) * h.normal;
}

template <class S>
bool in_halfspace(const Halfspace<S>& h, const Vec<S>& v)
{
  return !strictly_negative(dot(v, h.normal) - h.offset);
}

template <class S>
bool in_all_halfspaces(const std::vector<Halfspace<S>>& hs, const Vec<S>& v)
{
  for (const auto& h : hs)
    if (!in_halfspace(h, v)) return false;
  return true;
}

/// Order in which half-spaces are applied: a pattern, optionally cycled.
struct IndexSequence {
  std::vector<int> order;
  bool cycle = true;

  static IndexSequence round_robin(int l)
  {
    IndexSequence s;
    s.order.resize(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) s.order[static_cast<std::size_t>(i)] = i;
    return s;
  }
  static IndexSequence once(std::vector<int> v) { return IndexSequence{std::move(v), false}; }
  static IndexSequence cycled(std::vector<int> v) { return IndexSequence{std::move(v), true}; }
};

/// Distinct states visited by an iterated folding run. Steps are 1-based:
/// step k maps v_k to v_{k+1}; a jump at time k means they differ.
struct OrbitRecord {
  std::vector<Vecd> points;
  std::vector<std::int64_t> jump_times;
  bool absorbed = false;
  std::int64_t steps_taken = 0;
  bool points_capped = false;
  Vecd final_state;

  std::int64_t jump_count() const { return static_cast<std::int64_t>(jump_times.size()); }
};

struct OrbitOptions {
  std::size_t point_cap = 4096;
  double merge_tol = 1e-9;
  bool store_points = true;
};

OrbitRecord run_foldings(const std::vector<Halfspace<double>>& halfspaces,
                         const Vecd& start, const IndexSequence& sequence,
                         std::int64_t max_steps, const OrbitOptions& options = {});

/// Two half-planes through the origin with inward normals at the given
/// angles. The intersection is a wedge of angle pi - |theta1 - theta2|
/// (angles taken mod 2 pi); a zero wedge angle is flagged degenerate.
struct Wedge {
  std::vector<Halfspace<double>> halfspaces;  // size 2
  double angle = 0.0;
  bool degenerate = false;
};

Wedge make_wedge(double theta1, double theta2);

/// Wedge of angle pi/(m+2) about the +x axis plus a start point whose orbit
/// under alternating foldings has more than m distinct points. The claim is
/// checked by actually running the foldings before returning.
std::pair<std::vector<Halfspace<double>>, Vecd> orbit_size_witness(int m);

}  // namespace pinfold

#endif
