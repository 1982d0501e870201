#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hecke/bigint.hpp"
#include "hecke/cf_core.hpp"
#include "hecke/quadratic.hpp"

namespace hecke {

/// The intercept rho: a number (rational or quadratic surd) or a formal digit sequence.
class InterceptSpec {
 public:
  enum class Kind { numeric, formal };
  using Generator = std::function<std::uint64_t(std::size_t)>;

  /// Requires 0 <= rho < 1 unless `any_real` is set (used for shifted words,
  /// whose letters only depend on rho modulo 1).
  static InterceptSpec numeric(QuadraticNumber rho, bool any_real = false);
  static InterceptSpec rational(const Rational& rho) { return numeric(QuadraticNumber::rational(rho)); }
  static InterceptSpec surd(const Int& P, const Int& D, const Int& Q) { return numeric(QuadraticNumber::surd(P, D, Q)); }
  /// Digits b_1, b_2, ...; missing trailing digits are zero.
  static InterceptSpec formal(std::vector<std::uint64_t> digits);
  /// Digits b_k = gen(k) for k >= 1.
  static InterceptSpec formal(Generator gen, std::string label);

  Kind kind() const { return kind_; }
  const QuadraticNumber& value() const { return value_; }
  const std::vector<std::uint64_t>& digits() const { return digits_; }
  bool has_generator() const { return static_cast<bool>(gen_); }
  /// b_k of a formal intercept (k >= 1).
  std::uint64_t formal_digit(std::size_t k) const;

  /// Input-grammar form: rho:rat(p/q), rho:surd(P,D,Q) or rho:digits[...].
  std::string to_string() const;

 private:
  InterceptSpec() = default;
  Kind kind_ = Kind::formal;
  QuadraticNumber value_;
  std::string surd_text_;
  std::vector<std::uint64_t> digits_;
  Generator gen_;
  std::string label_;
};

/// Ostrowski digits b_1..b_K and the derived sequences for k = 0..K.
struct OstrowskiDigits {
  std::vector<std::uint64_t> b;  // b[0] unused, b[k] = b_k
  std::vector<Int> t, t_tilde, r, r_tilde;
  std::size_t depth() const { return b.empty() ? 0 : b.size() - 1; }
};

struct DigitOptions {
  long max_bits = 4096;
};

/// Slope, intercept and every integer sequence derived from them, extended on
/// demand. Single consumer: accessors extend internal tables.
class SturmianParams {
 public:
  SturmianParams(SlopeSpec slope, InterceptSpec intercept, DigitOptions options = {});

  /// Makes a_k, p_k, q_k, b_k, t_k, r_k (and tilde variants) available through k.
  void ensure(std::size_t k);

  std::uint64_t a(std::size_t k) { return ensure(k), conv_.a(k); }
  std::uint64_t b(std::size_t k) { return ensure(k), b_.at(k); }
  const Int& p(long k) { return ensure(static_cast<std::size_t>(std::max(k, 0l))), conv_.p(k); }
  const Int& q(long k) { return ensure(static_cast<std::size_t>(std::max(k, 0l))), conv_.q(k); }
  const Int& t(std::size_t k) { return ensure(k), t_.at(k); }
  const Int& t_tilde(std::size_t k) { return ensure(k), tt_.at(k); }
  const Int& r(std::size_t k) { return ensure(k), r_.at(k); }
  const Int& r_tilde(std::size_t k) { return ensure(k), rt_.at(k); }
  /// a_k - b_k.
  std::uint64_t gap(std::size_t k) { return a(k) - b(k); }

  Convergents& convergents() { return conv_; }
  const SlopeSpec& slope() const { return slope_; }
  const InterceptSpec& intercept() const { return intercept_; }
  const DigitOptions& options() const { return options_; }

  /// rho as an element of theta's field, when it is exactly known there
  /// (numeric rho of that field, or finitely many formal digits).
  std::optional<QuadraticNumber> exact_intercept() const;

  OstrowskiDigits snapshot(std::size_t K);

 private:
  void extend_one();
  std::uint64_t next_numeric_digit(std::size_t j);

  SlopeSpec slope_;
  InterceptSpec intercept_;
  DigitOptions options_;
  Convergents conv_;
  std::optional<QuadraticNumber> rho_in_field_;
  std::vector<std::uint64_t> b_{0};
  std::vector<Int> t_{0}, tt_{0}, r_{1}, rt_{0};
  // Remainder x_j = rho + U + V*theta of the greedy expansion.
  Int U_ = 0, V_ = -1;
};

/// True iff 0 <= b_1 <= a_1-1, 0 <= b_k <= a_k and b_{k+1} = a_{k+1} forces b_k = 0.
bool validate_digits(const SlopeSpec& slope, const std::vector<std::uint64_t>& digits);

/// Greedy Ostrowski digits of a numeric intercept.
OstrowskiDigits digits_from_intercept(const SlopeSpec& slope, const InterceptSpec& rho, std::size_t K,
                                      DigitOptions options = {});

/// Fills t, t_tilde (defining sums) and r, r_tilde (recurrence) and checks that both routes agree.
void derived_sequences(OstrowskiDigits& digits, const Convergents& conv, std::size_t K);

/// rho = theta + sum_k b_{k+1} (q_k theta - p_k) for finitely many digits.
QuadraticNumber intercept_from_digits(const SlopeSpec& slope, const std::vector<std::uint64_t>& digits);

/// Intercept of the shifted word s_m: slope theta_m and digits b_{m+1}, b_{m+2}, ...
/// Exact (numeric, any real) when rho is known in theta's field.
std::optional<QuadraticNumber> shifted_intercept_value(SturmianParams& params, std::size_t m);
/// Formal intercept b_{m+1}, b_{m+2}, ... read lazily from a shared parent.
InterceptSpec shifted_formal_intercept(std::shared_ptr<SturmianParams> parent, std::size_t m);

}  // namespace hecke
