#pragma once

#include <string>

#include "hecke/bigint.hpp"

namespace hecke {

/// Closed interval with dyadic endpoints; every operation rounds outward to
/// the grid 2^-bits.
class RealInterval {
 public:
  RealInterval() = default;

  /// Smallest grid interval containing [lo, hi].
  static RealInterval enclose(const Rational& lo, const Rational& hi, long bits);
  static RealInterval point(const Rational& v, long bits) { return enclose(v, v, bits); }

  const Rational& lower() const { return lo_; }
  const Rational& upper() const { return hi_; }
  long bits() const { return bits_; }

  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return sgn(lo_) <= 0 && sgn(hi_) >= 0; }
  bool intersects(const RealInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  /// True when the width is at most 2^-b.
  bool narrower_than_bits(long b) const;
  /// Base-10 logarithm of the width (-inf for a point).
  double log10_width() const;

  RealInterval operator-() const;
  friend RealInterval operator+(const RealInterval& x, const RealInterval& y);
  friend RealInterval operator-(const RealInterval& x, const RealInterval& y);
  friend RealInterval operator*(const RealInterval& x, const RealInterval& y);
  /// Requires y not to contain zero.
  friend RealInterval operator/(const RealInterval& x, const RealInterval& y);
  friend RealInterval operator*(const Rational& c, const RealInterval& x);
  friend RealInterval operator+(const Rational& c, const RealInterval& x);

  RealInterval inverse() const;
  RealInterval with_bits(long bits) const { return enclose(lo_, hi_, bits); }

  std::string to_string() const;

 private:
  RealInterval(Rational lo, Rational hi, long bits) : lo_(std::move(lo)), hi_(std::move(hi)), bits_(bits) {}
  Rational lo_ = 0;
  Rational hi_ = 0;
  long bits_ = 0;
};

/// Rounds down / up to a multiple of 2^-bits.
Rational round_down(const Rational& x, long bits);
Rational round_up(const Rational& x, long bits);

}  // namespace hecke
