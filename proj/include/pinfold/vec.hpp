#ifndef PINFOLD_VEC_HPP
#define PINFOLD_VEC_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "pinfold/errors.hpp"

namespace pinfold {

/// Dense Euclidean vector of fixed run-time dimension, generic over the
/// scalar (double or an exact field element). Length is set at construction;
/// mixed-length arithmetic throws DimensionMismatch.
template <class S>
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim) : c_(dim, S{}) {}
  Vec(std::initializer_list<S> init) : c_(init) {}
  explicit Vec(std::vector<S> coords) : c_(std::move(coords)) {}

  std::size_t size() const { return c_.size(); }
  const S& operator[](std::size_t i) const { return c_[i]; }
  S& operator[](std::size_t i) { return c_[i]; }

  const std::vector<S>& coords() const { return c_; }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  Vec& operator+=(const Vec& o)
  {
    check_same_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o)
  {
    check_same_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(const S& s)
  {
    for (auto& c : c_) c *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(const S& s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, const S& s) { return a *= s; }
  friend Vec operator-(Vec a)
  {
    for (auto& c : a.c_) c = -c;
    return a;
  }

  friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Vec& a, const Vec& b) { return a.c_ != b.c_; }

 private:
  void check_same_dim(const Vec& o) const
  {
    if (c_.size() != o.c_.size())
      throw DimensionMismatch("vector lengths " + std::to_string(c_.size()) +
                              " and " + std::to_string(o.c_.size()));
  }

  std::vector<S> c_;
};

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b)
{
  if (a.size() != b.size())
    throw DimensionMismatch("dot of lengths " + std::to_string(a.size()) +
                            " and " + std::to_string(b.size()));
  S acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class S>
S sq_norm(const Vec<S>& a)
{
  return dot(a, a);
}

inline double norm(const Vec<double>& a) { return std::sqrt(sq_norm(a)); }

inline double dist(const Vec<double>& a, const Vec<double>& b)
{
  return norm(a - b);
}

using Vecd = Vec<double>;

}  // namespace pinfold

#endif
