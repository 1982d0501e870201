#pragma once

// Reference computations for the tests, written directly from the definitions
// and sharing no code with the library beyond the GMP types.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace brute {

// theta = (P + sqrt(D)) / Q and rho = m theta - c.
struct Line {
  long P, D, Q;
  long m = 1, c = 0;
};

// floor((A + B sqrt(D)) / C) for B >= 0, C > 0.
inline mpz_class floor_surd(const mpz_class& A, const mpz_class& B, const mpz_class& D, const mpz_class& C) {
  mpz_class s = B * B * D;
  mpz_sqrt(s.get_mpz_t(), s.get_mpz_t());
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), mpz_class(A + s).get_mpz_t(), C.get_mpz_t());
  return out;
}

// floor(n theta + rho) = floor((n+m) theta - c).
inline mpz_class level(const Line& l, long n) {
  const long t = n + l.m;
  return floor_surd(mpz_class(t) * l.P - mpz_class(l.c) * l.Q, mpz_class(t), mpz_class(l.D), mpz_class(l.Q));
}

inline std::string letters(const Line& l, long n) {
  std::string out;
  out.reserve(static_cast<std::size_t>(n));
  mpz_class prev = level(l, 0);
  for (long i = 1; i <= n; ++i) {
    mpz_class cur = level(l, i);
    out += cur != prev ? '1' : '0';
    prev = std::move(cur);
  }
  return out;
}

// Enclosure of xi = (b-1) sum_{n>=1} s_n b^-n a^-floor(n theta + rho) from N terms.
inline std::pair<mpq_class, mpq_class> xi(const Line& l, unsigned long b, unsigned long a, long N) {
  mpq_class s = 0;
  mpz_class bn = 1;
  for (long n = 1; n <= N; ++n) {
    bn *= b;
    const mpz_class hi = level(l, n), lo = level(l, n - 1);
    if (hi != lo) {
      mpz_class an;
      mpz_pow_ui(an.get_mpz_t(), mpz_class(a).get_mpz_t(), hi.get_ui());
      s += mpq_class(1, 1) / mpq_class(bn * an);
    }
  }
  mpz_class aN;
  mpz_pow_ui(aN.get_mpz_t(), mpz_class(a).get_mpz_t(), level(l, N).get_ui());
  mpq_class tail = mpq_class(1) / mpq_class(bn * aN * (b - 1));
  return {s * (b - 1), (s + tail) * (b - 1)};
}

// Same at b = 2, a = 1, where the partial sum is the binary number 0.s_1 s_2 ... s_N.
inline std::pair<mpq_class, mpq_class> xi_binary(const Line& l, long N) {
  const mpz_class w(letters(l, N), 2);
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(N);
  mpq_class lo(w, den), hi(w + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

// [0; A_1, A_2, ...] of a rational in (0, 1) by Euclid on numerator and denominator.
inline std::vector<mpz_class> cf(const mpq_class& x, std::size_t n) {
  std::vector<mpz_class> out;
  mpz_class num = x.get_num(), den = x.get_den(), q, r;
  while (out.size() < n && num != 0) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
    out.push_back(q);
    den = num;
    num = r;
  }
  return out;
}

// Common prefix of the continued fractions [0; A_1, ...] of both endpoints,
// dropping the last agreeing term which may still move.
inline std::vector<mpz_class> certified_cf(const mpq_class& lo, const mpq_class& hi, std::size_t n) {
  const auto x = cf(lo, n + 1), y = cf(hi, n + 1);
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()) && x[i] == y[i]; ++i) out.push_back(x[i]);
  if (!out.empty()) out.pop_back();
  if (out.size() > n) out.resize(n);
  return out;
}

}  // namespace brute
