#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace holant {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p", "p/q" into a canonical rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

/// Exact scalar: a rational, or an element a + b*sqrt(d) of a real quadratic
/// field. d is a positive non-square integer with square factors removed; d == 0
/// marks a plain rational. Arithmetic between two different nonzero d throws
/// MixedExtension.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(int value) : a_(value) {}   // NOLINT(google-explicit-constructor)
  Scalar(Rational value) : a_(std::move(value)) { a_.canonicalize(); }  // NOLINT
  Scalar(Rational a, Rational b, Integer d);

  static Scalar parse(const std::string& text);
  static Scalar from_fraction(long num, long den);
  // Exact square root of a nonnegative rational; rational when possible.
  static Scalar sqrt(const Rational& value);

  bool is_rational() const { return d_ == 0; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& d() const { return d_; }
  // Throws PreconditionViolation unless is_rational().
  const Rational& rational() const;

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return d_ == 0 && a_ == 1; }
  int sign() const;
  double approx() const;

  Scalar conjugate() const { return Scalar(a_, -b_, d_); }
  Scalar inverse() const;
  Scalar pow(long exponent) const;

  Scalar operator-() const { return Scalar(-a_, -b_, d_); }
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend bool operator!=(const Scalar& lhs, const Scalar& rhs) { return !(lhs == rhs); }
  friend bool operator<(const Scalar& lhs, const Scalar& rhs) { return (lhs - rhs).sign() < 0; }
  friend bool operator>(const Scalar& lhs, const Scalar& rhs) { return rhs < lhs; }

  // "p/q" for rationals, "a+b*sqrt(d)" otherwise.
  std::string str() const;

 private:
  void normalize();
  Integer common_d(const Scalar& rhs) const;

  Rational a_{0};
  Rational b_{0};
  Integer d_{0};
};

std::ostream& operator<<(std::ostream& out, const Scalar& s);

using Vec = std::vector<Scalar>;

}  // namespace holant
