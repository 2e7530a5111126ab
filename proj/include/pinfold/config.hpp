#ifndef PINFOLD_CONFIG_HPP
#define PINFOLD_CONFIG_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pinfold/errors.hpp"
#include "pinfold/vec.hpp"

namespace pinfold {

inline double scalar_to_double(double x) { return x; }

/// Default contact band for floating-point configurations. Exact
/// configurations use a zero tolerance instead.
inline constexpr double kContactTol = 1e-9;

/// Threshold below which a signed quantity counts as strictly negative on
/// the floating path (jump detection, collision condition).
inline constexpr double kJumpTol = 1e-12;

/// Centers of n unit balls in R^d with pairwise disjoint interiors.
/// Immutable after construction; all operations on it are pure.
template <class S>
struct BallConfig {
  int dim = 0;
  std::vector<Vec<S>> centers;

  BallConfig() = default;
  BallConfig(int d, std::vector<Vec<S>> c) : dim(d), centers(std::move(c))
  {
    for (const auto& x : centers)
      if (static_cast<int>(x.size()) != dim)
        throw DimensionMismatch("center length does not match dimension");
  }

  int n() const { return static_cast<int>(centers.size()); }

  const Vec<S>& center(int k) const
  {
    if (k < 0 || k >= n()) throw IndexOutOfRange("ball index " + std::to_string(k));
    return centers[static_cast<std::size_t>(k)];
  }
};

using BallConfigD = BallConfig<double>;

using Edge = std::pair<int, int>;  // 0-based, first < second

inline Edge make_edge(int j, int k)
{
  if (j == k) throw InvalidArgument("edge endpoints coincide");
  return j < k ? Edge{j, k} : Edge{k, j};
}

/// Undirected graph on ball indices. The full graph holds exactly the
/// touching pairs; an associated graph is any subset of those edges.
struct ContactGraph {
  int n = 0;
  std::vector<Edge> edges;  // sorted, unique, each with first < second

  bool contains(int j, int k) const
  {
    return std::binary_search(edges.begin(), edges.end(), make_edge(j, k));
  }

  int degree(int v) const
  {
    int d = 0;
    for (const auto& e : edges) d += (e.first == v || e.second == v);
    return d;
  }
};

/// Edges exactly for pairs whose center distance is within tol of 2.
/// Compares squared distances so the exact path (tol = 0) stays in the
/// field. Throws OverlapError when a pair is closer than 2 - tol.
template <class S>
ContactGraph full_contact_graph(const BallConfig<S>& config, const S& tol)
{
  const S two = S(2);
  if (tol < S(0)) throw InvalidArgument("negative contact tolerance");
  const S lo = (two - tol) * (two - tol);
  const S hi = (two + tol) * (two + tol);

  ContactGraph g;
  g.n = config.n();
  for (int j = 0; j < g.n; ++j) {
    for (int k = j + 1; k < g.n; ++k) {
      const S d2 = sq_norm(config.centers[j] - config.centers[k]);
      if (d2 < lo)
        throw OverlapError("balls " + std::to_string(j) + " and " +
                           std::to_string(k) + " overlap");
      if (d2 <= hi) g.edges.emplace_back(j, k);
    }
  }
  return g;
}

inline ContactGraph full_contact_graph(const BallConfig<double>& config)
{
  return full_contact_graph(config, kContactTol);
}

/// Connectivity of the undirected graph (isolated vertices count).
inline bool is_connected(const ContactGraph& g)
{
  if (g.n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int found = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : g.edges) {
      int w = -1;
      if (a == v) w = b;
      else if (b == v) w = a;
      if (w >= 0 && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++found;
        stack.push_back(w);
      }
    }
  }
  return found == g.n;
}

}  // namespace pinfold

#endif
