#include "pinfold/bounds.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace pinfold {

namespace {

constexpr double kLog2Pi2 = 2.6514961294723187980432792951080;  // log2(2 pi)
const double kLog2_308 = std::log2(308.0);

void require(bool ok, const char* msg)
{
  if (!ok) throw InvalidArgument(msg);
}

double log2i(long long v) { return std::log2(static_cast<double>(v)); }

}  // namespace

KissingInfo kissing_info(int d, std::optional<long long> user_value)
{
  require(d >= 1, "dimension must be positive");
  KissingInfo info;
  info.d = d;
  info.lower = 2LL * d;
  if (d <= 33) {
    long long p = 1;
    for (int i = 0; i < d; ++i) p *= 3;
    info.upper = static_cast<double>(p - 1);
  } else {
    info.upper = std::numeric_limits<double>::infinity();
  }
  if (user_value) {
    require(*user_value >= info.lower && static_cast<double>(*user_value) <= info.upper,
            "supplied kissing number violates the elementary bounds");
    info.exact = user_value;
  } else if (d == 1) {
    info.exact = 2;  // bounds coincide
  } else if (d == 2) {
    info.exact = 6;
  }
  return info;
}

LogBound collision_bound(int n, int d, std::optional<double> tau)
{
  require(n >= 3, "collision bound needs n >= 3");
  require(d >= 1, "dimension must be positive");
  double tau_eff;
  if (tau) {
    require(*tau >= 1.0, "kissing number must be at least 1");
    tau_eff = *tau;
  } else {
    tau_eff = kissing_info(d).upper;  // min() below absorbs the saturation
  }
  const double l = 0.5 * n * std::min(tau_eff, static_cast<double>(n));
  const double log2n = log2i(n);
  return LogBound{-27.0 + 16.0 * l + (7.5 * l - 13.5) * log2n, "collision-bound"};
}

LogBound orbit_bound(long long l, double r)
{
  require(l >= 2, "orbit bound needs at least two half-spaces");
  require(r > 0.0 && r < 1.0, "witness radius must lie in (0, 1)");
  const double lm2 = static_cast<double>(l - 2);
  return LogBound{kLog2Pi2 + lm2 * kLog2_308 - (5.0 * lm2 + 1.0) * std::log2(r),
                  "orbit-bound"};
}

double two_halfspace_bound(double r)
{
  require(r > 0.0 && r < 1.0, "witness radius must lie in (0, 1)");
  return 3.14159265358979323846264338327950288 / r + 1.0;
}

LogBound orbit_bound_step(long long l, double r, const LogBound& prev)
{
  require(l >= 3, "recursion applies from three half-spaces");
  require(r > 0.0 && r < 1.0, "witness radius must lie in (0, 1)");
  return LogBound{prev.log2_value + kLog2_308 - 5.0 * std::log2(r), "orbit-bound-step"};
}

LogBound configuration_bound(int n, int d, double gap, double tau)
{
  require(n >= 3, "configuration bound needs n >= 3");
  require(d >= 1, "dimension must be positive");
  require(gap > 0.0, "span gap must be positive");
  require(tau >= 1.0, "kissing number must be at least 1");
  const double exponent = tau * n / 2.0 - 1.0;
  return LogBound{exponent * (10.5 + log2i(d) + 5.0 * log2i(n) - std::log2(gap)),
                  "configuration-bound"};
}

LogBound tree_bound(int n, int d, double tau)
{
  require(n >= 3, "tree bound needs n >= 3");
  require(d >= 1, "dimension must be positive");
  require(tau >= 1.0, "kissing number must be at least 1");
  const double exponent = tau * n / 2.0 - 1.0;
  return LogBound{exponent * (10.0 + log2i(d) + 6.0 * log2i(n)), "tree-bound"};
}

LogBound lattice_bound(int n)
{
  require(n >= 3, "lattice bound needs n >= 3");
  const double log2n = log2i(n);
  return LogBound{(3.0 * n - 1.0) * (6.0 * std::log2(10.0) + 5.5 * log2n + 8.0 * n),
                  "lattice-bound"};
}

LogBound tree_bound_refined(int n)
{
  require(n >= 3, "tree bound needs n >= 3");
  const double log2n = log2i(n);
  return LogBound{11.0 * n - 22.0 - 14.0 * log2n + 7.0 * n * log2n, "tree-bound-refined"};
}

LogBound collision_bound_tree(int n)
{
  require(n >= 3, "collision bound needs n >= 3");
  const double log2n = log2i(n);
  return LogBound{-27.0 + 16.0 * n + (15.0 * n - 13.5) * log2n, "collision-bound-tree"};
}

LogBound moving_bound_mass_radius(int n, double mass_ratio, double radius_ratio)
{
  require(n >= 2, "moving-ball bound needs n >= 2");
  require(mass_ratio >= 1.0 && radius_ratio >= 1.0, "ratios are max/min, hence >= 1");
  const double base =
      5.0 + 0.5 * std::log2(mass_ratio) + std::log2(radius_ratio) + 1.5 * log2i(n);
  return LogBound{static_cast<double>(n) * n * base, "moving-bound-mass-radius"};
}

LogBound moving_bound_mass(int n, double mass_ratio)
{
  require(n >= 2, "moving-ball bound needs n >= 2");
  require(mass_ratio >= 1.0, "ratio is max/min, hence >= 1");
  const double n2 = static_cast<double>(n) * n;
  const double base = std::log2(400.0) + std::log2(mass_ratio) + 2.0 * log2i(n);
  return LogBound{2.0 * n2 * n2 * base, "moving-bound-mass"};
}

LogBound moving_bound_equal(int n, int d)
{
  require(n >= 2, "moving-ball bound needs n >= 2");
  require(d >= 1, "dimension must be positive");
  const double p5d = std::pow(5.0, d);
  const double log2n = log2i(n);
  return LogBound{std::log2(1600.0) + n * (std::log2(1000.0) + 5.0 * p5d) +
                      ((1.5 * p5d + 4.5) * n + 2.0) * log2n,
                  "moving-bound-equal"};
}

namespace {

// Scaled contact normal (|ztilde|^2 = 2 |x_j - x_k|^2) stacked into R^{nd}.
template <class S>
Vec<S> ztilde(const BallConfig<S>& config, const Edge& e)
{
  const int d = config.dim;
  Vec<S> z(static_cast<std::size_t>(config.n() * d));
  const Vec<S> diff = config.centers[static_cast<std::size_t>(e.first)] -
                      config.centers[static_cast<std::size_t>(e.second)];
  for (int i = 0; i < d; ++i) {
    z[static_cast<std::size_t>(e.first * d + i)] = diff[static_cast<std::size_t>(i)];
    z[static_cast<std::size_t>(e.second * d + i)] = -diff[static_cast<std::size_t>(i)];
  }
  return z;
}

inline double pivot_magnitude(double x) { return std::fabs(x); }
inline double pivot_magnitude(const Root3& x) { return std::fabs(x.to_double()); }

inline bool pivot_usable(double x, double scale) { return std::fabs(x) > 1e-13 * scale; }
inline bool pivot_usable(const Root3& x, double) { return !x.is_zero(); }

// Squared distance from vector `e` to the span of the `span` vectors, all
// referenced through the precomputed inner-product table. Symmetric
// elimination of the bordered Gram matrix; the Schur complement left on the
// distinguished diagonal entry is the squared residual.
template <class S>
S residual_sq(const std::vector<std::vector<S>>& gram, const std::vector<int>& span, int e)
{
  const std::size_t s = span.size();
  std::vector<int> ids(span.begin(), span.end());
  ids.push_back(e);
  std::vector<std::vector<S>> a(s + 1, std::vector<S>(s + 1));
  for (std::size_t i = 0; i <= s; ++i)
    for (std::size_t j = 0; j <= s; ++j)
      a[i][j] = gram[static_cast<std::size_t>(ids[i])][static_cast<std::size_t>(ids[j])];

  double scale = 1.0;
  for (std::size_t i = 0; i < s; ++i) scale = std::max(scale, pivot_magnitude(a[i][i]));

  std::vector<char> done(s, 0);
  for (std::size_t step = 0; step < s; ++step) {
    std::size_t p = s;
    double best = -1.0;
    for (std::size_t i = 0; i < s; ++i) {
      if (done[i]) continue;
      const double mag = pivot_magnitude(a[i][i]);
      if (mag > best) {
        best = mag;
        p = i;
      }
    }
    if (p == s || !pivot_usable(a[p][p], scale)) break;  // rank exhausted
    done[p] = 1;
    for (std::size_t i = 0; i <= s; ++i) {
      if (i == p || (i < s && done[i])) continue;
      const S f = a[i][p] / a[p][p];
      for (std::size_t j = 0; j <= s; ++j) {
        if (j == p || (j < s && done[j])) continue;
        a[i][j] -= f * a[p][j];
      }
    }
  }
  return a[s][s];
}

template <class S>
double span_gap_impl(const BallConfig<S>& config, int max_edges, const S& contact_tol,
                     double cutoff)
{
  const ContactGraph graph = full_contact_graph(config, contact_tol);
  const int m = static_cast<int>(graph.edges.size());
  if (m > max_edges || m > 30)
    throw TooManyEdges(std::to_string(m) + " contact edges exceed the limit of " +
                       std::to_string(std::min(max_edges, 30)));
  if (m == 0) return std::numeric_limits<double>::infinity();

  std::vector<Vec<S>> zs;
  zs.reserve(static_cast<std::size_t>(m));
  for (const auto& e : graph.edges) zs.push_back(ztilde(config, e));
  std::vector<std::vector<S>> gram(static_cast<std::size_t>(m),
                                   std::vector<S>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          gram[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
              dot(zs[static_cast<std::size_t>(a)], zs[static_cast<std::size_t>(b)]);

  // alpha_*^2 = residual^2 / |ztilde_e|^2 since z = ztilde/|ztilde| and
  // scaling the span vectors leaves their span unchanged.
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> span;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    for (int e = 0; e < m; ++e) {
      if (!(mask & (1u << e))) continue;
      span.clear();
      for (int f = 0; f < m; ++f)
        if (f != e && (mask & (1u << f))) span.push_back(f);
      const S r2 = residual_sq(gram, span, e);
      const double a2 =
          scalar_to_double(r2) /
          scalar_to_double(gram[static_cast<std::size_t>(e)][static_cast<std::size_t>(e)]);
      const double alpha = a2 > 0.0 ? std::sqrt(a2) : 0.0;
      if (alpha > cutoff) best = std::min(best, alpha);
    }
  }
  return best;
}

}  // namespace

double span_gap(const BallConfigD& config, int max_edges, double cutoff)
{
  return span_gap_impl<double>(config, max_edges, kContactTol, cutoff);
}

double span_gap_exact(const BallConfig<Root3>& config, int max_edges)
{
  // Exact elimination decides positivity; only the reported minimum is
  // rounded to double.
  return span_gap_impl<Root3>(config, max_edges, Root3(), 0.0);
}

}  // namespace pinfold
