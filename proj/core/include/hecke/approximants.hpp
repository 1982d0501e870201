#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "hecke/bigint.hpp"
#include "hecke/expansion.hpp"
#include "hecke/fraction.hpp"
#include "hecke/ostrowski.hpp"
#include "hecke/words.hpp"

namespace hecke {

/// The five approximating fractions of index k, in chain order.
struct FractionFamily {
  ExactFraction one;            // (1)_k
  ExactFraction two_minus_one;  // (2)_k -. (1)_k
  ExactFraction two;            // (2)_k
  ExactFraction three;          // (3)_k
  ExactFraction four;           // (4)_k

  std::array<const ExactFraction*, 5> cycle() const { return {&one, &two_minus_one, &two, &three, &four}; }
  friend bool operator==(const FractionFamily& x, const FractionFamily& y) {
    return x.one == y.one && x.two_minus_one == y.two_minus_one && x.two == y.two && x.three == y.three &&
           x.four == y.four;
  }
};

inline constexpr std::array<const char*, 5> kFamilyNames = {"(1)", "(2)-(1)", "(2)", "(3)", "(4)"};

/// Formal anchors (3)_{-1} = (b-1)/0 and (4)_{-1} = 0/(b-1).
ExactFraction anchor_three(const BasePoint& pt);
ExactFraction anchor_four(const BasePoint& pt);

/// Word-value route for one index; needs words through k+1.
FractionFamily fraction_family_from_words(const WordFamily& words, SturmianParams& params, const BasePoint& pt,
                                          std::size_t k);
/// Same from values carried along the word recursions.
FractionFamily fraction_family_from_values(const WordValueFamily& values, SturmianParams& params, const BasePoint& pt,
                                           std::size_t k);
/// Word-value route for k = 0..K. Words of at most max_len letters are also
/// evaluated letter by letter and must agree with the recursion.
std::vector<FractionFamily> fraction_families(SturmianParams& params, const BasePoint& pt, std::size_t K,
                                              std::size_t max_len = kDefaultMaxLen);

/// Farey-chain route from the element quads, k = 0..quads.size()-1.
std::vector<FractionFamily> farey_chain(const std::vector<ElementQuad>& quads, const BasePoint& pt);

/// P_j, Q_j for j = -1..n from P_{-1} = b-1, P_0 = 0, Q_{-1} = 0, Q_0 = b-1.
struct MatrixConvergents {
  std::vector<Rational> P, Q;
  const Rational& p(long j) const { return P.at(static_cast<std::size_t>(j + 1)); }
  const Rational& q(long j) const { return Q.at(static_cast<std::size_t>(j + 1)); }
  /// Last index n.
  long size() const { return static_cast<long>(P.size()) - 2; }
};
MatrixConvergents matrix_convergents(const std::vector<Rational>& elements, unsigned long b);

/// gamma_k = 1/G_k and sigma_k = S_k/G_k at (1/b, 1/a) for k = 0..K, with
/// G_k = b^{q_k} a^{p_k}; S_k is the integer value of the word V_k.
struct SigmaGamma {
  std::vector<Int> G, S;
  Rational gamma(std::size_t k) const { return Rational(Int(1), G.at(k)); }
  Rational sigma(std::size_t k) const {
    Rational r(S.at(k), G.at(k));
    r.canonicalize();
    return r;
  }
};
/// sigma_k by the three-term recurrence (cleared of denominators), cross-checked
/// against the letters of V_k when q_k <= max_len.
SigmaGamma sigma_gamma(SturmianParams& params, const BasePoint& pt, std::size_t K,
                       std::size_t max_len = kDefaultMaxLen);
/// (1-gamma_k) sigma_{k+1} - (1-gamma_{k+1}) sigma_k = (-1)^k (1/beta-1) beta^{r_{k+1}+q_k} alpha^{r~_{k+1}+p_k}.
bool telescoped_identity(SturmianParams& params, const BasePoint& pt, const SigmaGamma& sg, std::size_t k);

/// (3)_k = (4)_{k-1} + (-1)^k (1/beta-1)^2 beta^{r_{k+1}+q_k} alpha^{r~_{k+1}+p_k} / (1-gamma_k).
bool identity_difference(SturmianParams& params, const BasePoint& pt, std::size_t k,
                         const std::vector<FractionFamily>& families);

/// sigma_k / (1-gamma_k) = xi of V_k^infinity = (4)_{k-1} / (1/beta - 1), k >= 1.
bool sigma_period_identity(const SigmaGamma& sg, const BasePoint& pt, std::size_t k, const WordFamily& words,
                           const std::vector<FractionFamily>& families);

struct ErrorExponents {
  Int u, v;
};
/// Exponents u_k, v_k of the approximation errors of (4)_{k-1} and (3)_k.
ErrorExponents error_exponents(SturmianParams& params, std::size_t k);

}  // namespace hecke
