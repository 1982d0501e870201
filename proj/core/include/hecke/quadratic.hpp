#pragma once

#include <optional>
#include <string>

#include "hecke/bigint.hpp"
#include "hecke/interval.hpp"

namespace hecke {

/// Exact element r + s*sqrt(D) of a real quadratic field (D > 0, not a square).
/// Rationals are carried with s == 0 and may mix with any field.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational r, Rational s, Int radicand);
  static QuadraticNumber rational(Rational r) { return QuadraticNumber(std::move(r), 0, 0); }
  /// (P + sqrt(D)) / Q.
  static QuadraticNumber surd(const Int& P, const Int& D, const Int& Q);

  const Rational& rational_part() const { return r_; }
  const Rational& irrational_part() const { return s_; }
  const Int& radicand() const { return d_; }
  bool is_rational() const { return sgn(s_) == 0; }

  /// True when both numbers can be combined exactly.
  bool compatible(const QuadraticNumber& o) const;
  /// Rewrites this number over Q(sqrt(d)) when that field contains it.
  std::optional<QuadraticNumber> in_field(const Int& d) const;

  int sign() const;
  Int floor() const;
  Int ceil() const;
  bool is_integer() const { return is_rational() && r_.get_den() == 1; }
  QuadraticNumber conjugate() const { return QuadraticNumber(r_, -s_, d_); }

  /// Interval of width 2^-bits (or a point when exact) containing the number.
  RealInterval enclose(long bits) const;
  long double to_long_double() const;

  QuadraticNumber operator-() const { return QuadraticNumber(-r_, -s_, d_); }
  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() < 0; }

  std::string to_string() const;

 private:
  static Int common_radicand(const QuadraticNumber& x, const QuadraticNumber& y);
  Rational r_ = 0;
  Rational s_ = 0;
  Int d_ = 0;
};

/// floor((A + B*sqrt(D)) / C) for C > 0 and D >= 0.
Int floor_quadratic(const Int& A, const Int& B, const Int& D, const Int& C);

}  // namespace hecke
