#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hecke/bigint.hpp"
#include "hecke/interval.hpp"
#include "hecke/quadratic.hpp"

namespace hecke {

class SlopeCursor;

/// Irrational slope theta in (0,1): an eventually periodic partial quotient list
/// or a quadratic surd (P + sqrt(D)) / Q.
class SlopeSpec {
 public:
  enum class Kind { periodic, surd };

  static SlopeSpec periodic(std::vector<std::uint64_t> prefix, std::vector<std::uint64_t> period);
  /// Normalizes so that Q | D - P^2.
  static SlopeSpec surd(const Int& P, const Int& D, const Int& Q);

  Kind kind() const { return kind_; }
  /// Exact value in Q(sqrt(D)).
  const QuadraticNumber& value() const { return value_; }
  const std::vector<std::uint64_t>& prefix() const { return prefix_; }
  const std::vector<std::uint64_t>& period() const { return period_; }
  const Int& surd_P() const { return P_; }
  const Int& surd_D() const { return D_; }
  const Int& surd_Q() const { return Q_; }

  SlopeCursor cursor() const;
  /// theta_m = [0; a_{m+1}, a_{m+2}, ...], same representation kind.
  SlopeSpec shifted(std::size_t m) const;

  /// Input-grammar form: per:[...;...] or surd:(P,D,Q).
  std::string to_string() const;

 private:
  SlopeSpec() = default;
  Kind kind_ = Kind::periodic;
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> period_;
  Int P_ = 0, D_ = 0, Q_ = 1;
  QuadraticNumber value_;
};

/// Resettable single-consumer stream a_1, a_2, ... of partial quotients.
class SlopeCursor {
 public:
  explicit SlopeCursor(const SlopeSpec& slope);
  std::uint64_t next();
  void reset();
  /// Number of partial quotients produced so far.
  std::size_t position() const { return position_; }
  /// Surd state (P, Q) of the current remainder (P + sqrt(D)) / Q.
  std::pair<Int, Int> surd_state() const { return {P_, Q_}; }

 private:
  SlopeSpec slope_;
  std::size_t position_ = 0;
  Int P_, Q_, D_;
};

/// Preperiod and period length of a surd stream, found by state recurrence.
struct SurdCycle {
  std::size_t preperiod;
  std::size_t period;
};
std::optional<SurdCycle> detect_cycle(const SlopeSpec& slope, std::size_t max_steps = 100000);

/// Partial quotients and convergents p_k/q_k for k = -1..depth, extended on demand.
class Convergents {
 public:
  explicit Convergents(const SlopeSpec& slope, std::size_t depth = 0);

  void extend(std::size_t depth);
  std::size_t depth() const { return a_.size() - 1; }

  /// a_k for 1 <= k <= depth.
  std::uint64_t a(std::size_t k) const { return a_.at(k); }
  const Int& p(long k) const { return p_.at(static_cast<std::size_t>(k + 1)); }
  const Int& q(long k) const { return q_.at(static_cast<std::size_t>(k + 1)); }
  /// delta_k = q_k theta - p_k, exactly.
  QuadraticNumber delta(long k) const;
  const SlopeSpec& slope() const { return slope_; }

 private:
  SlopeSpec slope_;
  SlopeCursor cursor_;
  std::vector<std::uint64_t> a_;  // a_[0] unused
  std::vector<Int> p_, q_;        // shifted by one: index 0 is k = -1
};

Convergents convergents(const SlopeSpec& slope, std::size_t K);

/// Interval of width <= 2^-bits containing theta, bracketed by consecutive convergents.
RealInterval theta_interval(const SlopeSpec& slope, long bits);

struct CfExtraction {
  std::vector<Int> quotients;
  std::size_t certified_count = 0;
};

/// Partial quotients of [0; A_1, A_2, ...] shared by every real in [lo, hi].
CfExtraction cf_extract(const Rational& lo, const Rational& hi, std::size_t max_terms);
CfExtraction cf_extract(const RealInterval& value, std::size_t max_terms);

}  // namespace hecke
