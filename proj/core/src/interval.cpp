#include "hecke/interval.hpp"

#include <algorithm>
#include <cmath>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

Rational scaled_grid(const Int& k, long bits) {
  Rational r(k);
  if (bits >= 0) {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  } else {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(-bits));
  }
  r.canonicalize();
  return r;
}

Int scaled_num(const Rational& x, long bits) {
  Int n = x.get_num();
  Int d = x.get_den();
  if (bits >= 0) {
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  } else {
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-bits));
  }
  return n;
}

Int scaled_den(const Rational& x, long bits) {
  Int d = x.get_den();
  if (bits < 0) mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-bits));
  return d;
}

}  // namespace

Rational round_down(const Rational& x, long bits) {
  return scaled_grid(floor_div(scaled_num(x, bits), scaled_den(x, bits)), bits);
}

Rational round_up(const Rational& x, long bits) {
  return scaled_grid(ceil_div(scaled_num(x, bits), scaled_den(x, bits)), bits);
}

RealInterval RealInterval::enclose(const Rational& lo, const Rational& hi, long bits) {
  if (lo > hi) throw InternalCheckFailure("interval with lower > upper");
  return RealInterval(round_down(lo, bits), round_up(hi, bits), bits);
}

bool RealInterval::narrower_than_bits(long b) const { return width() <= pow2(-b); }

double RealInterval::log10_width() const {
  const Rational w = width();
  if (sgn(w) == 0) return -INFINITY;
  return static_cast<double>(log_abs(w) / std::log(10.0L));
}

RealInterval RealInterval::operator-() const { return RealInterval(-hi_, -lo_, bits_); }

RealInterval operator+(const RealInterval& x, const RealInterval& y) {
  return RealInterval::enclose(x.lo_ + y.lo_, x.hi_ + y.hi_, std::max(x.bits_, y.bits_));
}

RealInterval operator-(const RealInterval& x, const RealInterval& y) {
  return RealInterval::enclose(x.lo_ - y.hi_, x.hi_ - y.lo_, std::max(x.bits_, y.bits_));
}

RealInterval operator*(const RealInterval& x, const RealInterval& y) {
  const Rational p[4] = {x.lo_ * y.lo_, x.lo_ * y.hi_, x.hi_ * y.lo_, x.hi_ * y.hi_};
  const auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return RealInterval::enclose(*mn, *mx, std::max(x.bits_, y.bits_));
}

RealInterval RealInterval::inverse() const {
  if (contains_zero()) throw InternalCheckFailure("inverse of an interval containing zero");
  const Rational a = 1 / hi_;
  const Rational b = 1 / lo_;
  return enclose(a, b, bits_);
}

RealInterval operator/(const RealInterval& x, const RealInterval& y) {
  if (y.contains_zero()) throw InternalCheckFailure("division by an interval containing zero");
  const Rational p[4] = {x.lo_ / y.lo_, x.lo_ / y.hi_, x.hi_ / y.lo_, x.hi_ / y.hi_};
  const auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return RealInterval::enclose(*mn, *mx, std::max(x.bits_, y.bits_));
}

RealInterval operator*(const Rational& c, const RealInterval& x) {
  if (sgn(c) >= 0) return RealInterval::enclose(c * x.lo_, c * x.hi_, x.bits_);
  return RealInterval::enclose(c * x.hi_, c * x.lo_, x.bits_);
}

RealInterval operator+(const Rational& c, const RealInterval& x) {
  return RealInterval::enclose(c + x.lo_, c + x.hi_, x.bits_);
}

std::string RealInterval::to_string() const {
  return "[" + hecke::to_string(lo_) + ", " + hecke::to_string(hi_) + "]";
}

}  // namespace hecke
