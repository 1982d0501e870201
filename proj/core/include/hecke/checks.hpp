#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hecke/analysis.hpp"
#include "hecke/expansion.hpp"
#include "hecke/words.hpp"

namespace hecke {

/// One parameter set of the verification grid.
struct SuiteCase {
  std::string slope;
  std::string intercept;
  BasePoint pt;
  std::string name() const;
};

/// Slopes per:[;1], per:[;2], per:[;3], surd:(-3,13,2); digits [], [1], [0,2] where
/// admissible; (b,a) in {(2,1),(2,3),(3,3)}.
std::vector<SuiteCase> default_grid();
/// One case per slope at (b,a) = (2,3).
std::vector<SuiteCase> quick_grid();
/// Cases with random admissible digits drawn from `seed`.
std::vector<SuiteCase> fuzz_grid(unsigned long seed, std::size_t count);

struct SuiteOptions {
  std::size_t oracle_terms = 25;   // N
  long oracle_start_bits = 2048;
  long oracle_max_bits = 1l << 20;
  std::size_t family_depth = 20;   // k <= 20 for fraction routes and identities
  /// Exact integers are used while q_{k+1} + q_k stays below this; deeper indices
  /// are checked modulo kFingerprintPrimes only.
  unsigned long exact_max_exponent = kMaxExactExponent;
  std::size_t word_max_len = kDefaultMaxLen;  // word invariants and sigma cross-checks
  std::size_t fast_K = 25;
  long fast_bits = 512;
  double fast_tolerance = 1e-50;
  std::size_t fe_max_m = 6;
  long fe_bits = 512;
  double fe_tolerance = 1e-40;
  std::size_t exponent_K = 40;
  std::size_t exponent_J = 200;
  double exponent_tolerance = 0.05;
  std::size_t error_k_min = 8, error_k_max = 20;
  double error_band = 6;
  long error_exact_max_bits = 1l << 16;
};

/// Check names, one per verified property.
inline constexpr const char* kCheckOracle = "expansion_oracle";
inline constexpr const char* kCheckFractions = "fraction_routes";
inline constexpr const char* kCheckIdentities = "identities";
inline constexpr const char* kCheckSeries = "series_routes";
inline constexpr const char* kCheckWords = "words";
inline constexpr const char* kCheckExponent = "exponent_routes";
inline constexpr const char* kCheckErrors = "approximation_errors";
inline constexpr const char* kCheckFunctional = "functional_equation";

struct CheckResult {
  std::string name;
  bool pass = false;
  /// Passed on a reduced scope (e.g. fewer oracle positions than requested).
  bool partial = false;
  std::string detail;
  double seconds = 0;
};

struct CaseReport {
  SuiteCase c;
  std::vector<CheckResult> checks;
  bool pass() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs the selected checks (all when empty) on one case.
CaseReport run_case(const SuiteCase& c, const SuiteOptions& opt, const std::vector<std::string>& only = {});
/// Runs cases on `jobs` worker threads; reports come back in input order.
std::vector<CaseReport> run_suite(const std::vector<SuiteCase>& cases, const SuiteOptions& opt, unsigned jobs,
                                  const std::vector<std::string>& only = {});

/// Every slope and digit pattern of the default grid at (b, a) = (2, 1) and (3, 1).
std::vector<SuiteCase> a1_grid();

/// Deterministic text dump of the a = 1 pipeline (element quads, contracted
/// stream, case log, fraction families) used as a regression fixture. K stops
/// before q_{K+1} exceeds 4096 and N before the elements pass 2^15 bits.
std::string a1_fixture(const SuiteCase& c, std::size_t K = 12, std::size_t N = 25);
/// Fixture file name for a case, e.g. "per_2_digits_1_b2a1.txt".
std::string fixture_file_name(const SuiteCase& c);

}  // namespace hecke
