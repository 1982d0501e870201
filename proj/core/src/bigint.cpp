#include "hecke/bigint.hpp"

#include <cmath>
#include <numbers>

#include "hecke/errors.hpp"

namespace hecke {

unsigned long to_exponent(const Int& e) {
  if (sgn(e) < 0) throw InvalidInput("negative exponent");
  if (e > kMaxExactExponent) throw ExponentTooLarge("exponent " + e.get_str() + " too large for exact arithmetic");
  return e.get_ui();
}

Int pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int pow(const Int& base, const Int& e) {
  if (base == 0 || base == 1) return sgn(e) == 0 ? Int(1) : base;
  return pow(base, to_exponent(e));
}

Int monomial(const Int& b, const Int& a, const Int& eb, const Int& ea) {
  Int r = pow(b, eb);
  if (a != 1) r *= pow(a, ea);
  return r;
}

Int geometric_sum(const Int& x, std::uint64_t m) {
  Int s = 0;
  for (std::uint64_t i = 0; i < m; ++i) s = s * x + 1;
  return s;
}

Rational pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

Int floor_div(const Int& n, const Int& d) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

Int ceil_div(const Int& n, const Int& d) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

Int floor(const Rational& x) { return floor_div(x.get_num(), x.get_den()); }
Int ceil(const Rational& x) { return ceil_div(x.get_num(), x.get_den()); }

Int isqrt(const Int& n) {
  if (sgn(n) < 0) throw InvalidInput("square root of a negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

long double log_abs(const Int& x) {
  if (sgn(x) == 0) return -INFINITY;
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(std::fabs(static_cast<long double>(m))) + static_cast<long double>(e) * std::numbers::ln2_v<long double>;
}

long double log_abs(const Rational& x) { return log_abs(x.get_num()) - log_abs(x.get_den()); }

long double to_long_double(const Int& x) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

long double to_long_double(const Rational& x) {
  // Keep 80 significant bits of the quotient before converting.
  const long shift = 80 + static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2));
  Int scaled = x.get_num();
  if (shift >= 0) {
    scaled <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    scaled >>= static_cast<mp_bitcnt_t>(-shift);
  }
  const Int q = scaled / x.get_den();
  return std::ldexp(to_long_double(q), static_cast<int>(-shift));
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Int parse_int(const std::string& text) {
  Int r;
  std::string t = text;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || r.set_str(t, 10) != 0) throw InvalidInput("not an integer: '" + text + "'");
  return r;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const Int d = parse_int(text.substr(slash + 1));
  if (d == 0) throw InvalidInput("zero denominator in '" + text + "'");
  Rational r(parse_int(text.substr(0, slash)), d);
  r.canonicalize();
  return r;
}

Rational pow2(long e) {
  Rational r = 1;
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

}  // namespace hecke
