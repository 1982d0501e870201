#include "hecke/fraction.hpp"

#include "hecke/errors.hpp"

namespace hecke {

ExactFraction ExactFraction::farey(const Int& c, const ExactFraction& x, const ExactFraction& y) {
  return ExactFraction(c * x.num + y.num, c * x.den + y.den);
}

ExactFraction ExactFraction::farey(const Rational& c, const ExactFraction& x, const ExactFraction& y) {
  const Rational n = c * Rational(x.num) + Rational(y.num);
  const Rational d = c * Rational(x.den) + Rational(y.den);
  check(n.get_den() == 1 && d.get_den() == 1, "rational Farey combination is not integral");
  return ExactFraction(n.get_num(), d.get_num());
}

ExactFraction ExactFraction::dot_minus(const ExactFraction& o) const { return ExactFraction(num - o.num, den - o.den); }

Rational ExactFraction::value() const {
  if (den == 0) throw InternalCheckFailure("value of a fraction with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

ExactFraction ExactFraction::reduced() const {
  if (den == 0) return *this;
  const Rational v = value();
  return ExactFraction(v.get_num(), v.get_den());
}

}  // namespace hecke
