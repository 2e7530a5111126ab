#ifndef PINFOLD_ROOT3_HPP
#define PINFOLD_ROOT3_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <ostream>
#include <string>

#include "pinfold/errors.hpp"
#include "pinfold/vec.hpp"

namespace pinfold {

/// Exact arbitrary-precision rational.
using Rational = boost::multiprecision::cpp_rational;

/// Element of the quadratic field Q(sqrt 3), stored as a + b*sqrt(3) with
/// exact rational coefficients. Closed under +, -, *, /; equality and sign
/// are exact. This is the scalar used to reproduce the worked four-disc
/// example bit-for-bit, where every velocity lives in Q + Q*sqrt(3).
class Root3 {
 public:
  Root3() = default;
  Root3(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Root3(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Root3(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Root3 sqrt3() { return Root3(Rational(0), Rational(1)); }

  const Rational& rational_part() const { return a_; }
  const Rational& root_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }

  /// Exact sign of a + b*sqrt(3): -1, 0 or +1.
  int sign() const
  {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sa == 0) return sb;
    if (sb == 0) return sa;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against 3 b^2; the larger magnitude wins.
    const Rational a2 = a_ * a_;
    const Rational b23 = 3 * b_ * b_;
    if (a2 == b23) return 0;
    return (a2 > b23) ? sa : sb;
  }

  double to_double() const
  {
    return a_.convert_to<double>() +
           b_.convert_to<double>() * 1.7320508075688772935274463415059;
  }

  Root3& operator+=(const Root3& o)
  {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Root3& operator-=(const Root3& o)
  {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Root3& operator*=(const Root3& o)
  {
    // (a + b r)(c + d r) = (ac + 3bd) + (ad + bc) r,  r^2 = 3
    Rational a = a_ * o.a_ + 3 * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  Root3& operator/=(const Root3& o)
  {
    // Multiply by the conjugate: 1/(c + d r) = (c - d r)/(c^2 - 3 d^2).
    Rational den = o.a_ * o.a_ - 3 * o.b_ * o.b_;
    if (den == 0) throw InvalidArgument("division by zero in Q(sqrt 3)");
    Rational a = (a_ * o.a_ - 3 * b_ * o.b_) / den;
    Rational b = (b_ * o.a_ - a_ * o.b_) / den;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }

  friend Root3 operator+(Root3 x, const Root3& y) { return x += y; }
  friend Root3 operator-(Root3 x, const Root3& y) { return x -= y; }
  friend Root3 operator*(Root3 x, const Root3& y) { return x *= y; }
  friend Root3 operator/(Root3 x, const Root3& y) { return x /= y; }
  friend Root3 operator-(const Root3& x) { return Root3(-x.a_, -x.b_); }

  friend bool operator==(const Root3& x, const Root3& y)
  {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Root3& x, const Root3& y) { return !(x == y); }
  friend bool operator<(const Root3& x, const Root3& y)
  {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const Root3& x, const Root3& y) { return y < x; }
  friend bool operator<=(const Root3& x, const Root3& y) { return !(y < x); }
  friend bool operator>=(const Root3& x, const Root3& y) { return !(x < y); }

  friend std::ostream& operator<<(std::ostream& os, const Root3& x)
  {
    return os << x.a_ << " + " << x.b_ << "*sqrt(3)";
  }

 private:
  Rational a_;
  Rational b_;
};

/// Shorthand for exact literals: r3(11, 32) = 11/32, r3(11, 32, -15, 32)
/// = 11/32 - (15/32) sqrt(3).
inline Root3 r3(long an, long ad, long bn = 0, long bd = 1)
{
  return Root3(Rational(an, ad), Rational(bn, bd));
}

inline double scalar_to_double(const Root3& x) { return x.to_double(); }

inline Vec<double> to_double(const Vec<Root3>& v)
{
  Vec<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
  return out;
}

}  // namespace pinfold

#endif
