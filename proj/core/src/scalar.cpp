#include "holant/scalar.hpp"

#include <cmath>
#include <ostream>

#include "holant/error.hpp"

namespace holant {

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t += c;
  require(!t.empty(), ErrorKind::MalformedInput, "empty rational literal");
  auto slash = t.find('/');
  auto valid_int = [](const std::string& s) {
    size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  require(valid_int(num) && valid_int(den), ErrorKind::MalformedInput,
          "not a rational literal: '" + text + "'");
  Integer n(strip_plus(num)), q(strip_plus(den));
  require(q != 0, ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
  Rational r(n, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

// Splits n > 0 into s^2 * rest. Trial division is capped; a cofactor left over
// after the cap is kept whole unless it is itself a perfect square, so very large
// inputs may keep a square factor in d.
void split_square(const Integer& n, Integer& square_root, Integer& rest) {
  square_root = 1;
  rest = 1;
  Integer m = n;
  for (unsigned long p = 2; p < 200000; ++p) {
    Integer pp = Integer(p) * p;
    if (pp > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
    int count = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      m /= p;
      ++count;
    }
    for (int i = 0; i < count / 2; ++i) square_root *= p;
    if (count % 2 == 1) rest *= p;
  }
  if (mpz_perfect_square_p(m.get_mpz_t()) != 0) {
    square_root *= Integer(sqrt(m));
  } else {
    rest *= m;
  }
}

}  // namespace

Scalar::Scalar(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  a_.canonicalize();
  b_.canonicalize();
  normalize();
}

void Scalar::normalize() {
  if (b_ == 0) d_ = 0;
  if (d_ == 0) b_ = 0;
}

Scalar Scalar::parse(const std::string& text) { return Scalar(parse_rational(text)); }

Scalar Scalar::from_fraction(long num, long den) {
  require(den != 0, ErrorKind::DivisionByZero, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return Scalar(r);
}

Scalar Scalar::sqrt(const Rational& value) {
  require(value >= 0, ErrorKind::NegativeRadicand, "square root of negative " + to_string(value));
  if (value == 0) return Scalar();
  // sqrt(p/q) = sqrt(p*q)/q
  Integer pq = value.get_num() * value.get_den();
  Integer s, rest;
  split_square(pq, s, rest);
  Rational coeff(s, value.get_den());
  coeff.canonicalize();
  if (rest == 1) return Scalar(coeff);
  return Scalar(Rational(0), coeff, rest);
}

const Rational& Scalar::rational() const {
  require(is_rational(), ErrorKind::PreconditionViolation, "scalar " + str() + " is not rational");
  return a_;
}

Integer Scalar::common_d(const Scalar& rhs) const {
  if (d_ == 0) return rhs.d_;
  if (rhs.d_ == 0 || rhs.d_ == d_) return d_;
  fail(ErrorKind::MixedExtension,
       "sqrt(" + d_.get_str() + ") and sqrt(" + rhs.d_.get_str() + ") in one computation");
}

int Scalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa >= 0 && sb >= 0) return 1;
  if (sa <= 0 && sb <= 0) return -1;
  // opposite signs: compare a^2 with b^2 d
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * Rational(d_);
  int cmp = sgn(lhs - rhs);
  return sa > 0 ? cmp : -cmp;
}

double Scalar::approx() const {
  double v = a_.get_d();
  if (d_ != 0) v += b_.get_d() * std::sqrt(d_.get_d());
  return v;
}

Scalar Scalar::inverse() const {
  require(!is_zero(), ErrorKind::DivisionByZero, "inverse of zero");
  if (d_ == 0) return Scalar(Rational(1) / a_);
  Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
  return Scalar(a_ / norm, -b_ / norm, d_);
}

Scalar Scalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Scalar result(1), base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  Integer d = common_d(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  Integer d = common_d(rhs);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (d_ == 0 && rhs.d_ == 0) {
    a_ *= rhs.a_;
    return *this;
  }
  Integer d = common_d(rhs);
  Rational a = a_ * rhs.a_ + b_ * rhs.b_ * Rational(d);
  Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (d_ == 0 && rhs.d_ == 0) {
    require(rhs.a_ != 0, ErrorKind::DivisionByZero, "division by zero");
    a_ /= rhs.a_;
    return *this;
  }
  return *this *= rhs.inverse();
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.b_ == 0 && rhs.b_ == 0) return lhs.a_ == rhs.a_;
  return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_ && lhs.d_ == rhs.d_;
}

std::string Scalar::str() const {
  if (d_ == 0) return to_string(a_);
  std::string out;
  if (a_ != 0) out = to_string(a_) + (b_ > 0 ? "+" : "");
  out += to_string(b_) + "*sqrt(" + d_.get_str() + ")";
  return out;
}

std::ostream& operator<<(std::ostream& out, const Scalar& s) { return out << s.str(); }

}  // namespace holant
