#ifndef PINFOLD_BOUNDS_HPP
#define PINFOLD_BOUNDS_HPP

#include <optional>
#include <string>

#include "pinfold/config.hpp"
#include "pinfold/root3.hpp"

namespace pinfold {

/// A bound held as its base-2 logarithm; the values themselves overflow any
/// fixed-width number long before the interesting range of n.
struct LogBound {
  double log2_value = 0.0;
  std::string formula;

  double log10_value() const { return log2_value * 0.30102999566398119521373889472449; }
};

/// Kissing-number information in dimension d: elementary bounds
/// 2d <= tau_d <= 3^d - 1, with the exact value filled in only where the
/// bounds pin it down (d = 1), where it is a known constant used by the
/// lattice comparison (d = 2, value 6), or when supplied by the caller.
/// tau_d is known to grow exponentially in d with much tighter asymptotic
/// constants than these; only the elementary bounds are computed here.
struct KissingInfo {
  int d = 0;
  long long lower = 0;
  double upper = 0.0;  // exact integer up to d = 33, saturates to inf beyond
  std::optional<long long> exact;
};

KissingInfo kissing_info(int d, std::optional<long long> user_value = std::nullopt);

/// Headline bound on the number of pinned-ball collisions,
/// 2^-27 2^{16 l} n^{-27/2} n^{15 l/2} with l = n min(tau_d, n)/2.
/// Without a caller-supplied tau the elementary upper bound 3^d - 1 is used;
/// the min() makes that cap harmless.
LogBound collision_bound(int n, int d, std::optional<double> tau = std::nullopt);

/// Orbit-size bound N(l, r) <= 2 pi 308^{l-2} r^{-5(l-2)-1} for a folding
/// system of l half-spaces admitting a witness ball of radius r.
LogBound orbit_bound(long long l, double r);

/// Two half-spaces only: N(2, r) <= pi/r + 1, small enough to return plainly.
double two_halfspace_bound(double r);

/// One step of the recursion N(l, r) <= 308 r^-5 N(l-1, r) in log2 form.
LogBound orbit_bound_step(long long l, double r, const LogBound& prev);

/// Configuration-dependent bound (2^{21/2} d n^5 / gap)^{tau_d n/2 - 1}.
LogBound configuration_bound(int n, int d, double gap, double tau);

/// Tree-graph bound (2^10 d n^6)^{tau_d n/2 - 1}.
LogBound tree_bound(int n, int d, double tau);

/// Triangular-lattice bound (10^6 n^{11/2} 4^{4n})^{3n - 1}.
LogBound lattice_bound(int n);

/// Tree refinements: a tree has n-1 contact half-spaces and its stacked
/// velocities span a (2n-1)-dimensional subspace, so tau_d n -> 2n and
/// d -> 2n-1. Applied to the tree bound this gives 2^{11n-22} n^{-14} n^{7n};
/// applied to the headline bound, 2^-27 2^{16n} n^{-27/2} n^{15n}.
LogBound tree_bound_refined(int n);
LogBound collision_bound_tree(int n);

/// Historical bounds for n *moving* balls, for comparison:
/// (32 sqrt(m_max/m_min) (r_max/r_min) n^{3/2})^{n^2},
LogBound moving_bound_mass_radius(int n, double mass_ratio, double radius_ratio);
/// (400 (m_max/m_min) n^2)^{2 n^4},
LogBound moving_bound_mass(int n, double mass_ratio);
/// and, for equal masses and radii in fixed dimension d,
/// 1600 (1000 * 32^{5^d})^n n^{((3/2) 5^d + 9/2) n + 2}.
LogBound moving_bound_equal(int n, int d);

/// Minimum over all contact subgraphs and distinguished edges of the
/// distance from that edge's z-vector to the span of the remaining ones,
/// taking only strictly positive distances (below `cutoff` counts as zero).
/// Returns +inf when no positive value exists (only possible without edges).
/// Brute force over all 2^|E| subsets; refuses more than max_edges edges.
double span_gap(const BallConfigD& config, int max_edges, double cutoff = 1e-9);

/// Same enumeration with exact zero tests in Q(sqrt 3).
double span_gap_exact(const BallConfig<Root3>& config, int max_edges);

}  // namespace pinfold

#endif
