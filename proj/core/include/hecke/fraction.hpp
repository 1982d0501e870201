#pragma once

#include <string>

#include "hecke/bigint.hpp"

namespace hecke {

/// Unreduced pair num/den. Componentwise (Farey) combination depends on the
/// representation, so nothing here reduces implicitly.
struct ExactFraction {
  Int num = 0;
  Int den = 1;
  /// Formal anchors such as (b-1)/0 are only ever combined, never evaluated.
  bool formal = false;

  ExactFraction() = default;
  ExactFraction(Int n, Int d, bool is_formal = false) : num(std::move(n)), den(std::move(d)), formal(is_formal) {}

  /// c * x (+.) y  =  (c x.num + y.num) / (c x.den + y.den).
  static ExactFraction farey(const Int& c, const ExactFraction& x, const ExactFraction& y);
  /// Same with a rational coefficient; the result must be integral.
  static ExactFraction farey(const Rational& c, const ExactFraction& x, const ExactFraction& y);
  /// Componentwise difference (num - o.num) / (den - o.den).
  ExactFraction dot_minus(const ExactFraction& o) const;

  Rational value() const;
  ExactFraction reduced() const;
  bool same_value(const ExactFraction& o) const { return num * o.den == o.num * den; }
  /// Componentwise equality.
  friend bool operator==(const ExactFraction& x, const ExactFraction& y) { return x.num == y.num && x.den == y.den; }

  std::string to_string() const { return num.get_str() + "/" + den.get_str(); }
};

}  // namespace hecke
