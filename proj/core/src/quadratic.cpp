#include "hecke/quadratic.hpp"

#include <cmath>

#include "hecke/errors.hpp"

namespace hecke {

QuadraticNumber::QuadraticNumber(Rational r, Rational s, Int radicand)
    : r_(std::move(r)), s_(std::move(s)), d_(std::move(radicand)) {
  if (sgn(s_) == 0) {
    d_ = 0;
  } else if (sgn(d_) <= 0 || is_square(d_)) {
    throw InvalidInput("radicand must be a positive non-square integer");
  }
}

QuadraticNumber QuadraticNumber::surd(const Int& P, const Int& D, const Int& Q) {
  if (Q == 0) throw InvalidInput("surd with zero denominator");
  if (sgn(D) < 0) throw InvalidInput("surd with negative radicand");
  if (is_square(D)) {
    Rational v(P + isqrt(D), Q);
    v.canonicalize();
    return rational(v);
  }
  Rational r(P, Q);
  r.canonicalize();
  Rational s(1, Q);
  s.canonicalize();
  return QuadraticNumber(r, s, D);
}

bool QuadraticNumber::compatible(const QuadraticNumber& o) const {
  return is_rational() || o.is_rational() || d_ == o.d_;
}

std::optional<QuadraticNumber> QuadraticNumber::in_field(const Int& d) const {
  if (is_rational() || d_ == d) return QuadraticNumber(r_, s_, is_rational() ? Int(0) : d);
  // sqrt(d_) = m/d * sqrt(d) when d_*d = m^2.
  const Int prod = d_ * d;
  if (!is_square(prod)) return std::nullopt;
  Rational factor(isqrt(prod), d);
  factor.canonicalize();
  return QuadraticNumber(r_, s_ * factor, d);
}

Int QuadraticNumber::common_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.is_rational()) return y.d_;
  if (y.is_rational() || x.d_ == y.d_) return x.d_;
  throw InternalCheckFailure("mixing numbers from different quadratic fields");
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Int d = QuadraticNumber::common_radicand(x, y);
  return QuadraticNumber(x.r_ + y.r_, x.s_ + y.s_, d);
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Int d = QuadraticNumber::common_radicand(x, y);
  return QuadraticNumber(x.r_ - y.r_, x.s_ - y.s_, d);
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Int d = QuadraticNumber::common_radicand(x, y);
  Rational r = x.r_ * y.r_;
  if (sgn(d) != 0) r += x.s_ * y.s_ * d;
  return QuadraticNumber(r, x.r_ * y.s_ + x.s_ * y.r_, d);
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Int d = QuadraticNumber::common_radicand(x, y);
  if (sgn(y.r_) == 0 && sgn(y.s_) == 0) throw InternalCheckFailure("division by zero");
  // x/y = x * conj(y) / N(y).
  Rational norm = y.r_ * y.r_;
  if (sgn(d) != 0) norm -= y.s_ * y.s_ * d;
  const QuadraticNumber num = x * QuadraticNumber(y.r_, -y.s_, y.is_rational() ? Int(0) : d);
  return QuadraticNumber(num.r_ / norm, num.s_ / norm, num.d_);
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (!x.compatible(y)) return false;
  return x.r_ == y.r_ && x.s_ == y.s_;
}

Int floor_quadratic(const Int& A, const Int& B, const Int& D, const Int& C) {
  if (sgn(B) == 0 || sgn(D) == 0) return floor_div(A, C);
  const Int m = isqrt(B * B * D);
  if (sgn(B) > 0) return floor_div(A + m, C);
  // B*sqrt(D) lies strictly in (-m-1, -m) unless it is the integer -m.
  if (m * m == B * B * D) return floor_div(A - m, C);
  return floor_div(A - m - 1, C);
}

Int QuadraticNumber::floor() const {
  // r + s*sqrt(D) = (A + B*sqrt(D)) / C with C = den(r)*den(s) > 0.
  const Int C = r_.get_den() * s_.get_den();
  const Int A = r_.get_num() * s_.get_den();
  const Int B = s_.get_num() * r_.get_den();
  return floor_quadratic(A, B, d_, C);
}

Int QuadraticNumber::ceil() const { return -(-*this).floor(); }

int QuadraticNumber::sign() const {
  if (sgn(r_) == 0 && sgn(s_) == 0) return 0;
  return floor() >= 0 ? 1 : -1;
}

RealInterval QuadraticNumber::enclose(long bits) const {
  if (is_rational()) return RealInterval::point(r_, bits);
  const QuadraticNumber scaled = *this * QuadraticNumber::rational(pow2(bits));
  const Int f = scaled.floor();
  return RealInterval::enclose(Rational(f) * pow2(-bits), Rational(f + 1) * pow2(-bits), bits);
}

long double QuadraticNumber::to_long_double() const {
  if (is_rational()) return hecke::to_long_double(r_);
  return hecke::to_long_double(enclose(96).lower());
}

std::string QuadraticNumber::to_string() const {
  if (is_rational()) return hecke::to_string(r_);
  return hecke::to_string(r_) + " + " + hecke::to_string(s_) + "*sqrt(" + d_.get_str() + ")";
}

}  // namespace hecke
