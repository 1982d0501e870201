#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hecke/bigint.hpp"
#include "hecke/expansion.hpp"
#include "hecke/interval.hpp"
#include "hecke/ostrowski.hpp"

namespace hecke {

inline constexpr long kDefaultBits = 512;
inline constexpr long kDefaultMaxBits = 16384;

/// beta = 1/B and alpha = 1/A, with B, A >= 1 and B A^theta > 1.
struct SeriesPoint {
  Int B = 2;
  Int A = 1;
};

struct SeriesValue {
  RealInterval value;
  std::size_t terms = 0;
  long bits = 0;
};

/// xi_s(beta, alpha): exact partial sum over n <= n_terms plus a geometric tail
/// majorant, rounded outward to 2^-bits.
SeriesValue eval_direct(SturmianParams& params, const SeriesPoint& x, std::size_t n_terms, long bits);
/// Same with n_terms chosen so that the width is at most 2^-bits.
SeriesValue eval_to_precision(SturmianParams& params, const SeriesPoint& x, long bits);

/// Alternating series over k <= K in the exponents r_{k+1} + q_k, with the tail
/// bounded by 2 beta^(E_{K+1}-1) / (1-beta)^2.
SeriesValue eval_fast(SturmianParams& params, const BasePoint& pt, std::size_t K, long bits);

/// Parameters of the shifted word s_m: slope theta_m and digits b_{m+1}, b_{m+2}, ...
SturmianParams shifted_params(SturmianParams& params, std::size_t m);

struct FunctionalEquationReport {
  std::size_t m = 0;
  long bits = 0;
  RealInterval lhs, rhs, residual;
  std::string shifted_intercept;
  bool contains_zero() const { return residual.contains_zero(); }
};

/// Both sides of the Mahler-type relation between xi_s(beta, alpha) and
/// xi_{s_m}(gamma_m, gamma_{m-1}).
FunctionalEquationReport verify_functional_equation(SturmianParams& params, const BasePoint& pt, std::size_t m,
                                                    long bits);

struct ExponentReport {
  std::string route;
  std::size_t depth = 0;
  std::size_t window_start = 0;
  /// Formula route: nu[i][k] is nu_k(i+1), empty where ineligible.
  std::array<std::vector<std::optional<long double>>, 4> nu;
  std::array<std::optional<long double>, 4> running_max;
  /// Last eligible index per family; families whose eligible set stops early are
  /// reported as ineligible beyond it.
  std::array<std::optional<std::size_t>, 4> last_eligible;
  /// Convergent route: log Q_j for j = 0..J and 1 + log Q_{j+1} / log Q_j.
  std::vector<long double> log_Q;
  std::vector<std::optional<long double>> ratios;
  std::optional<long double> estimate;
};

/// Running maxima of nu_k(1..4) over k in [window_start, K]; window_start defaults to K/2.
ExponentReport exponent_by_formula(SturmianParams& params, std::size_t K,
                                   std::optional<std::size_t> window_start = {});
/// 1 + max log Q_{j+1} / log Q_j over j in [W, J-1], with Q_{-1} = 0, Q_0 = b-1.
ExponentReport exponent_by_convergents(LogQuotientStream& stream, std::size_t J, unsigned long b,
                                       std::size_t W = 5);
/// Same from exact elements (a rational head is allowed).
ExponentReport exponent_by_convergents(const std::vector<Rational>& elements, unsigned long b, std::size_t W = 5);

struct ApproximationError {
  std::size_t k = 0;
  int family = 4;  // 4: (4)_{k-1}, 3: (3)_k
  long double log_error = 0;
  Int exponent;  // u_k + q_k or v_k + q_{k+1}
  long double normalized = 0;
  bool exact = false;
};

/// log|xi_s - (beta/(1-beta)) approximant| from the tail of the alternating series.
ApproximationError approximation_error(SturmianParams& params, const BasePoint& pt, int family, std::size_t k);
/// Same from a certified evaluation of xi_s and the Farey-chain fraction; empty when
/// the evaluation would need more than max_bits.
std::optional<ApproximationError> approximation_error_exact(SturmianParams& params, const BasePoint& pt, int family,
                                                            std::size_t k, long max_bits);

struct OracleResult {
  std::vector<Int> quotients;
  std::size_t certified = 0;
  long bits = 0;
  RealInterval xi;
};

/// Regular partial quotients of xi = (b-1) xi_s(1/b, 1/a) read off a certified
/// evaluation, doubling precision from start_bits until n are certified or max_bits
/// is reached. With a head A_1, the quotients are those of 1/xi - A_1.
OracleResult oracle_cf(SturmianParams& params, const BasePoint& pt, std::size_t n,
                       const std::optional<Rational>& head = {}, long start_bits = 2048,
                       long max_bits = kDefaultMaxBits);

}  // namespace hecke
