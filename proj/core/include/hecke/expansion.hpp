#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hecke/bigint.hpp"
#include "hecke/interval.hpp"
#include "hecke/ostrowski.hpp"

namespace hecke {

/// Point (1/b, 1/a) of evaluation; b >= 2, a >= 1.
struct BasePoint {
  unsigned long b = 2;
  unsigned long a = 1;
};
void validate(const BasePoint& pt);
/// a is not congruent to 1 modulo b-1: the first partial quotient is a proper rational.
bool is_improper(const BasePoint& pt);

struct ElementQuad {
  Rational c;  // integral except possibly at k = 0
  Int d, e, f;
};

ElementQuad element_quad(SturmianParams& params, const BasePoint& pt, std::size_t k);
std::vector<ElementQuad> element_quads(SturmianParams& params, const BasePoint& pt, std::size_t K);
/// c_0, d_0, 1, e_0, f_0, c_1, ... for the given quads.
std::vector<Rational> raw_stream(const std::vector<ElementQuad>& quads);

enum class Slot { c, d, one, e, f, merged };
const char* slot_name(Slot s);

struct RawTag {
  std::size_t k = 0;
  Slot slot = Slot::c;
};

/// One contraction event: rule "i" at k, or a zero pattern "ii_1".."ii_6" at k
/// ("ii_0" for the leading zeros c_0, d_0).
struct CaseLogEntry {
  std::string rule;
  std::size_t k = 0;
  std::vector<RawTag> zeros;
};

/// Asserts the digit conditions under which `entry` may fire; throws InternalCheckFailure otherwise.
void check_case_preconditions(SturmianParams& params, const CaseLogEntry& entry);

/// Regular continued fraction [0; A_1, A_2, ...] of xi = (b-1) xi_s(1/b, 1/a), produced lazily.
class PartialQuotientStream {
 public:
  PartialQuotientStream(SturmianParams params, BasePoint pt, bool verify_blocks = true);
  ~PartialQuotientStream();
  PartialQuotientStream(PartialQuotientStream&&) noexcept;
  PartialQuotientStream& operator=(PartialQuotientStream&&) noexcept;

  bool improper() const;
  /// A_1 when it is a non-integral rational.
  const std::optional<Rational>& head();
  /// Next integral element (A_1 first in the proper case, A_2 first otherwise).
  Int next_tail();
  std::vector<Int> take(std::size_t n);
  std::size_t emitted_count() const;
  const std::vector<CaseLogEntry>& case_log() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Natural logarithms of A_1, A_2, ... from the same contraction run in the log domain,
/// for depths where exact elements are too large.
class LogQuotientStream {
 public:
  LogQuotientStream(SturmianParams params, BasePoint pt);
  ~LogQuotientStream();
  LogQuotientStream(LogQuotientStream&&) noexcept;
  long double next();
  std::vector<long double> take(std::size_t n);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ExpansionResult {
  bool improper = false;
  std::optional<Rational> head;
  std::vector<Int> A;  // N integral elements
  std::vector<CaseLogEntry> case_log;
};

ExpansionResult expand_xi(SturmianParams params, const BasePoint& pt, std::size_t N);

/// floor(theta + rho), decided exactly or with certified intervals.
int floor_theta_plus_rho(SturmianParams& params);

/// xi_s = (1-beta) F + beta^2 alpha floor(theta+rho) and xi = (b-1) xi_s.
Rational xi_s_from_F(const Rational& F, const BasePoint& pt, int floor_sum);
Rational xi_from_F(const Rational& F, const BasePoint& pt, int floor_sum);
Rational F_from_xi(const Rational& xi, const BasePoint& pt, int floor_sum);
RealInterval xi_from_F(const RealInterval& F, const BasePoint& pt, int floor_sum);

}  // namespace hecke
