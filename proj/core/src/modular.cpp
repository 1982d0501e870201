#include "hecke/modular.hpp"

#include <optional>
#include <vector>

namespace hecke {

namespace {

class Zp {
 public:
  explicit Zp(unsigned long p) : p_(p) {}
  Int operator()(const Int& x) const {
    Int r = x % p_;
    if (sgn(r) < 0) r += p_;
    return r;
  }
  Int pow(const Int& x, const Int& e) const {
    Int r;
    mpz_powm(r.get_mpz_t(), (*this)(x).get_mpz_t(), e.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  std::optional<Int> inv(const Int& x) const {
    Int r;
    if (mpz_invert(r.get_mpz_t(), (*this)(x).get_mpz_t(), p_.get_mpz_t()) == 0) return std::nullopt;
    return r;
  }
  Int mul(const Int& x, const Int& y) const { return (*this)(x * y); }
  Int monomial(const BasePoint& pt, const Int& eb, const Int& ea) const {
    return mul(pow(Int(pt.b), eb), pow(Int(pt.a), ea));
  }
  // 1 + X + ... + X^(m-1).
  Int geometric(const Int& X, std::uint64_t m) const {
    if ((*this)(X - 1) == 0) return (*this)(Int(static_cast<unsigned long>(m)));
    return mul(pow(X, Int(static_cast<unsigned long>(m))) - 1, *inv(X - 1));
  }

 private:
  Int p_;
};

struct Quad {
  Int c, d, e, f;
};

struct Frac {
  Int num, den;
};

Frac farey(const Zp& z, const Int& c, const Frac& x, const Frac& y) {
  return {z(c * x.num + y.num), z(c * x.den + y.den)};
}

std::optional<std::vector<Quad>> quads_mod(SturmianParams& P, const BasePoint& pt, std::size_t K, const Zp& z) {
  P.ensure(K + 1);
  std::vector<Quad> out;
  for (std::size_t k = 0; k <= K; ++k) {
    const long kk = static_cast<long>(k);
    const Int X = z.monomial(pt, P.q(kk), P.p(kk));
    const std::uint64_t gap = P.gap(k + 1);
    Quad q;
    if (k == 0) {
      const auto inv = z.inv(Int(pt.b - 1));
      if (!inv) return std::nullopt;
      q.c = z.mul(z.pow(Int(pt.b), Int(static_cast<unsigned long>(gap))) * pt.a - pt.b, *inv);
    } else if (gap >= 1) {
      q.c = z.mul(z.monomial(pt, P.r(k) + P.q(kk - 1), P.r_tilde(k) + P.p(kk - 1)), z.geometric(X, gap - 1));
    } else {
      q.c = z(-z.monomial(pt, P.r(k - 1), P.r_tilde(k - 1)));
    }
    const Int T = z.monomial(pt, P.t(k), P.t_tilde(k));
    q.d = z(T - 1);
    q.e = z(z.monomial(pt, P.r(k), P.r_tilde(k)) - 1);
    q.f = z.mul(T, z.geometric(X, P.b(k + 1)));
    out.push_back(q);
  }
  return out;
}

// (3)_k and (4)_k in chain order, with the other three families.
std::vector<std::array<Frac, 5>> chain_mod(const std::vector<Quad>& quads, const BasePoint& pt, const Zp& z) {
  std::vector<std::array<Frac, 5>> out;
  Frac three{Int(pt.b - 1), 0}, four{0, Int(pt.b - 1)};
  for (const Quad& q : quads) {
    std::array<Frac, 5> f;
    f[0] = farey(z, q.c, four, three);
    f[1] = farey(z, q.d, f[0], four);
    f[2] = farey(z, 1, f[1], f[0]);
    f[3] = farey(z, q.e, f[2], f[1]);
    f[4] = farey(z, q.f, f[3], f[2]);
    three = f[3];
    four = f[4];
    out.push_back(f);
  }
  return out;
}

ModularOutcome degenerate(unsigned long p) { return {false, "non-invertible residue modulo " + std::to_string(p)}; }

}  // namespace

ModularOutcome fraction_routes_mod(SturmianParams& P, const BasePoint& pt, std::size_t K, unsigned long p) {
  const Zp z(p);
  const auto quads = quads_mod(P, pt, K, z);
  if (!quads) return degenerate(p);
  const auto chain = chain_mod(*quads, pt, z);
  Int P2 = pt.b - 1, P1 = 0, Q2 = 0, Q1 = pt.b - 1;
  for (std::size_t k = 0; k <= K; ++k) {
    const Quad& q = (*quads)[k];
    const std::array<const Int*, 5> elems = {&q.c, &q.d, nullptr, &q.e, &q.f};
    for (std::size_t i = 0; i < 5; ++i) {
      const Int x = elems[i] ? *elems[i] : Int(1);
      const Int Pn = z(x * P1 + P2), Qn = z(x * Q1 + Q2);
      P2 = P1, P1 = Pn, Q2 = Q1, Q1 = Qn;
      if (Pn != chain[k][i].num || Qn != chain[k][i].den)
        return {false, "Farey chain and matrix products differ modulo " + std::to_string(p) + " at family " +
                           std::to_string(i) + ", k = " + std::to_string(k)};
    }
  }
  return {};
}

ModularOutcome identities_mod(SturmianParams& P, const BasePoint& pt, std::size_t K, unsigned long p) {
  const Zp z(p);
  P.ensure(K + 2);
  const auto quads = quads_mod(P, pt, K, z);
  if (!quads) return degenerate(p);
  const auto chain = chain_mod(*quads, pt, z);
  std::vector<Int> gamma, sigma;
  for (std::size_t k = 0; k <= K + 1; ++k) {
    const auto g = z.inv(z.monomial(pt, P.q(static_cast<long>(k)), P.p(static_cast<long>(k))));
    if (!g) return degenerate(p);
    gamma.push_back(*g);
  }
  const auto s1 = z.inv(z.monomial(pt, Int(static_cast<unsigned long>(P.gap(1))), 1));
  if (!s1) return degenerate(p);
  sigma = {0, *s1};
  for (std::size_t k = 1; k + 1 <= K + 1; ++k) {
    const Int gm = z.pow(gamma[k], Int(static_cast<unsigned long>(P.gap(k + 1))));
    const auto den = z.inv(1 - gamma[k]);
    if (!den) return degenerate(p);
    const Int coef = z.mul(1 - gamma[k + 1] - z.mul(gm, 1 - gamma[k - 1]), *den);
    sigma.push_back(z(coef * sigma[k] + gm * sigma[k - 1]));
  }
  const Int bm1 = pt.b - 1;
  const std::string where = " modulo " + std::to_string(p) + " at k = ";
  for (std::size_t k = 0; k <= K; ++k) {
    const long kk = static_cast<long>(k);
    const auto mono = z.inv(z.monomial(pt, P.r(k + 1) + P.q(kk), P.r_tilde(k + 1) + P.p(kk)));
    const auto one_minus = z.inv(1 - gamma[k]);
    const auto three_den = z.inv(chain[k][3].den);
    if (!mono || !one_minus || !three_den) return degenerate(p);
    const int sign = k % 2 ? -1 : 1;
    const Int lhs = z(z.mul(1 - gamma[k], sigma[k + 1]) - z.mul(1 - gamma[k + 1], sigma[k]));
    if (lhs != z(sign * z.mul(bm1, *mono))) return {false, "telescoped sigma identity fails" + where + std::to_string(k)};
    Int four_prev = 0;
    if (k >= 1) {
      const auto d = z.inv(chain[k - 1][4].den);
      if (!d) return degenerate(p);
      four_prev = z.mul(chain[k - 1][4].num, *d);
    }
    const Int corr = z(sign * z.mul(z.mul(bm1 * bm1, *mono), *one_minus));
    if (z.mul(chain[k][3].num, *three_den) != z(four_prev + corr))
      return {false, "(3)_k - (4)_{k-1} identity fails" + where + std::to_string(k)};
    if (k >= 1) {
      const auto inv_bm1 = z.inv(bm1);
      if (!inv_bm1) return degenerate(p);
      if (z.mul(sigma[k], *one_minus) != z.mul(four_prev, *inv_bm1))
        return {false, "sigma_k / (1 - gamma_k) identity fails" + where + std::to_string(k)};
    }
  }
  return {};
}

}  // namespace hecke
