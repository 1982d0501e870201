#include "hecke/approximants.hpp"

#include "hecke/errors.hpp"

namespace hecke {

ExactFraction anchor_three(const BasePoint& pt) { return ExactFraction(Int(pt.b - 1), 0, true); }
ExactFraction anchor_four(const BasePoint& pt) { return ExactFraction(0, Int(pt.b - 1), true); }

namespace {

// Families of index k from the values of R_{k+1}, R_k, R_{k+1}T_k, R_{k+1}M_k and V_{k+1}.
FractionFamily family_from_values(SturmianParams& P, const BasePoint& pt, std::size_t k, const Int& vR1,
                                  const Int& vR0, const Int& vR1T, const Int& vR1M, const Int& vV1) {
  const Int B = pt.b, A = pt.a, bm1 = pt.b - 1;
  const long kk = static_cast<long>(k);
  FractionFamily f;
  f.one = ExactFraction(bm1 * (vR1 - vR0),
                        monomial(B, A, P.r(k + 1), P.r_tilde(k + 1)) - monomial(B, A, P.r(k), P.r_tilde(k)));
  f.two = ExactFraction(bm1 * vR1T, monomial(B, A, P.r(k + 1) + P.t(k), P.r_tilde(k + 1) + P.t_tilde(k)) - 1);
  f.two_minus_one = f.two.dot_minus(f.one);
  f.three = ExactFraction(bm1 * (vR1M - vR1),
                          monomial(B, A, P.r(k + 1), P.r_tilde(k + 1)) * (monomial(B, A, P.q(kk), P.p(kk)) - 1));
  f.four = ExactFraction(bm1 * vV1, monomial(B, A, P.q(kk + 1), P.p(kk + 1)) - 1);
  return f;
}

}  // namespace

FractionFamily fraction_family_from_words(const WordFamily& w, SturmianParams& P, const BasePoint& pt,
                                          std::size_t k) {
  check(w.depth() >= static_cast<long>(k + 1), "fraction family needs words through k+1");
  const Int B = pt.b, A = pt.a;
  const long kk = static_cast<long>(k);
  const BinaryWord& R1 = w.R(kk + 1);
  return family_from_values(P, pt, k, word_value(R1, B, A), word_value(w.R(kk), B, A),
                            word_value(concat(R1, w.T(kk)), B, A), word_value(concat(R1, w.M(kk)), B, A),
                            word_value(w.V(kk + 1), B, A));
}

FractionFamily fraction_family_from_values(const WordValueFamily& v, SturmianParams& P, const BasePoint& pt,
                                           std::size_t k) {
  check(v.depth() >= static_cast<long>(k + 1), "fraction family needs word values through k+1");
  const long kk = static_cast<long>(k);
  const WordValue& R1 = v.R(kk + 1);
  const WordValue& R0 = v.R(kk);
  const WordValue& T = v.T(kk);
  const WordValue& M = v.M(kk);
  const WordValue& V1 = v.V(kk + 1);
  const auto is = [](const WordValue& w, const Int& len, const Int& ones) {
    return Int(static_cast<unsigned long>(w.len)) == len && Int(static_cast<unsigned long>(w.ones)) == ones;
  };
  check(is(R1, P.r(k + 1), P.r_tilde(k + 1)) && is(R0, P.r(k), P.r_tilde(k)) && is(T, P.t(k), P.t_tilde(k)) &&
            is(M, P.q(kk), P.p(kk)) && is(V1, P.q(kk + 1), P.p(kk + 1)),
        "word lengths and ones counts");
  // The scales are the monomials b^len a^ones of the same exponents.
  const Int bm1 = pt.b - 1;
  FractionFamily f;
  f.one = ExactFraction(bm1 * (R1.value - R0.value), R1.scale - R0.scale);
  f.two = ExactFraction(bm1 * (R1.value * T.scale + T.value), R1.scale * T.scale - 1);
  f.two_minus_one = f.two.dot_minus(f.one);
  f.three = ExactFraction(bm1 * (R1.value * M.scale + M.value - R1.value), R1.scale * (M.scale - 1));
  f.four = ExactFraction(bm1 * V1.value, V1.scale - 1);
  return f;
}

std::vector<FractionFamily> fraction_families(SturmianParams& params, const BasePoint& pt, std::size_t K,
                                              std::size_t max_len) {
  const WordValueFamily v = build_word_value_family(params, K + 1, Int(pt.b), Int(pt.a));
  const WordFamily w = build_word_family_capped(params, K + 1, max_len);
  std::vector<FractionFamily> out;
  for (std::size_t k = 0; k <= K; ++k) {
    out.push_back(fraction_family_from_values(v, params, pt, k));
    if (static_cast<long>(k + 1) <= w.depth())
      check(fraction_family_from_words(w, params, pt, k) == out.back(),
            "letter-level word values disagree with the word recursion");
  }
  return out;
}

std::vector<FractionFamily> farey_chain(const std::vector<ElementQuad>& quads, const BasePoint& pt) {
  std::vector<FractionFamily> out;
  ExactFraction three_prev = anchor_three(pt);
  ExactFraction four_prev = anchor_four(pt);
  for (const ElementQuad& q : quads) {
    FractionFamily f;
    f.one = ExactFraction::farey(q.c, four_prev, three_prev);
    f.two_minus_one = ExactFraction::farey(q.d, f.one, four_prev);
    f.two = ExactFraction::farey(Int(1), f.two_minus_one, f.one);
    f.three = ExactFraction::farey(q.e, f.two, f.two_minus_one);
    f.four = ExactFraction::farey(q.f, f.three, f.two);
    three_prev = f.three;
    four_prev = f.four;
    out.push_back(std::move(f));
  }
  return out;
}

MatrixConvergents matrix_convergents(const std::vector<Rational>& elements, unsigned long b) {
  MatrixConvergents m;
  m.P = {Rational(b - 1), Rational(0)};
  m.Q = {Rational(0), Rational(b - 1)};
  for (const Rational& x : elements) {
    const std::size_t n = m.P.size();
    m.P.push_back(x * m.P[n - 1] + m.P[n - 2]);
    m.Q.push_back(x * m.Q[n - 1] + m.Q[n - 2]);
  }
  return m;
}

SigmaGamma sigma_gamma(SturmianParams& P, const BasePoint& pt, std::size_t K, std::size_t max_len) {
  validate(pt);
  P.ensure(K + 1);
  const Int B = pt.b, A = pt.a;
  SigmaGamma sg;
  for (std::size_t k = 0; k <= K; ++k)
    sg.G.push_back(monomial(B, A, P.q(static_cast<long>(k)), P.p(static_cast<long>(k))));
  sg.S.push_back(0);
  if (K >= 1) {
    const Int d = monomial(B, A, Int(static_cast<unsigned long>(P.gap(1))), 1);
    check(sg.G[1] % d == 0, "sigma_1 is not a word value");
    sg.S.push_back(sg.G[1] / d);
  }
  // (G_k - 1) S_{k+1} = (G_{k+1} - 1 - G_k^{b_{k+1}} (G_{k-1} - 1)) S_k + G_k^{b_{k+1}} (G_k - 1) S_{k-1}
  for (std::size_t k = 1; k + 1 <= K; ++k) {
    const Int Gb = pow(sg.G[k], P.b(k + 1));
    Int num = (sg.G[k + 1] - 1 - Gb * (sg.G[k - 1] - 1)) * sg.S[k];
    const Int den = sg.G[k] - 1;
    check(mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) != 0, "sigma recurrence leaves a remainder");
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    sg.S.push_back(num + Gb * sg.S[k - 1]);
  }
  const WordFamily w = build_word_family_capped(P, K, max_len);
  for (long k = 0; k <= w.depth(); ++k)
    check(word_value(w.V(k), B, A) == sg.S[static_cast<std::size_t>(k)],
          "sigma_k recurrence disagrees with the letters of V_k");
  return sg;
}

bool telescoped_identity(SturmianParams& P, const BasePoint& pt, const SigmaGamma& sg, std::size_t k) {
  check(k + 1 < sg.S.size(), "telescoped identity needs sigma_{k+1}");
  // Multiplied through by G_k G_{k+1} and by the monomial on the right.
  const long kk = static_cast<long>(k);
  const Int M = monomial(Int(pt.b), Int(pt.a), P.r(k + 1) + P.q(kk), P.r_tilde(k + 1) + P.p(kk));
  const Int lhs = ((sg.G[k] - 1) * sg.S[k + 1] - (sg.G[k + 1] - 1) * sg.S[k]) * M;
  Int rhs = Int(pt.b - 1) * sg.G[k] * sg.G[k + 1];
  if (k % 2) rhs = -rhs;
  return lhs == rhs;
}

bool identity_difference(SturmianParams& P, const BasePoint& pt, std::size_t k,
                         const std::vector<FractionFamily>& fam) {
  check(k < fam.size(), "identity_difference needs the families through k");
  const long kk = static_cast<long>(k);
  const Int B = pt.b, A = pt.a, bm1 = pt.b - 1;
  const Int G = monomial(B, A, P.q(kk), P.p(kk));
  const Int MG = monomial(B, A, P.r(k + 1) + P.q(kk), P.r_tilde(k + 1) + P.p(kk)) * (G - 1);
  const Int N4 = k == 0 ? Int(0) : fam[k - 1].four.num;
  const Int D4 = k == 0 ? Int(1) : fam[k - 1].four.den;
  // N3/D3 = N4/D4 +- (b-1)^2 G / (M (G-1)), cross-multiplied.
  Int corr = bm1 * bm1 * G * D4;
  if (k % 2) corr = -corr;
  return fam[k].three.num * D4 * MG == (N4 * MG + corr) * fam[k].three.den;
}

bool sigma_period_identity(const SigmaGamma& sg, const BasePoint& pt, std::size_t k, const WordFamily& words,
                           const std::vector<FractionFamily>& fam) {
  check(k >= 1 && k < sg.S.size() && k - 1 < fam.size(), "sigma_period_identity index");
  // sigma_k / (1 - gamma_k) = S_k / (G_k - 1).
  const Int den = sg.G[k] - 1;
  const ExactFraction periodic = periodic_value(BinaryWord(), words.V(static_cast<long>(k)), Int(pt.b), Int(pt.a));
  const ExactFraction& four = fam[k - 1].four;
  return sg.S[k] * periodic.den == periodic.num * den && sg.S[k] * four.den * Int(pt.b - 1) == four.num * den;
}

ErrorExponents error_exponents(SturmianParams& P, std::size_t k) {
  P.ensure(k + 3);
  const long kk = static_cast<long>(k);
  ErrorExponents out;
  const std::uint64_t g2 = P.gap(k + 2);
  const std::uint64_t g3 = P.gap(k + 3);
  out.u = g2 >= 1 ? P.r(k + 1) : Int(P.r(k) + P.q(kk + 1));
  if (g2 >= 2) {
    out.v = P.r(k + 1) + P.q(kk);
  } else if (g2 == 1 && g3 >= 1) {
    out.v = P.r(k + 1) + 2 * P.q(kk);
  } else if (g2 == 1) {
    check(P.a(k + 2) == 1 && P.b(k + 2) == 0, "v_k: a_{k+3} = b_{k+3} forces a_{k+2} = 1, b_{k+2} = 0");
    out.v = P.r(k + 1) + P.q(kk);
  } else {
    out.v = P.r(k);
  }
  return out;
}

}  // namespace hecke
