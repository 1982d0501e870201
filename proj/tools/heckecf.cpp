#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "hecke/analysis.hpp"
#include "hecke/approximants.hpp"
#include "hecke/checks.hpp"
#include "hecke/errors.hpp"
#include "hecke/expansion.hpp"
#include "hecke/parse.hpp"
#include "hecke/words.hpp"

using json = nlohmann::ordered_json;
using namespace hecke;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitUndecidable = 3;
constexpr int kExitMismatch = 4;

struct Common {
  std::string slope;
  std::string rho = "digits[]";
  unsigned long b = 2;
  unsigned long a = 1;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--slope", c.slope, "per:[a1,...;c1,...] or surd:(P,D,Q)")->required();
  cmd->add_option("--rho", c.rho, "digits[b1,...], rat(p/q) or surd(P,D,Q)")->capture_default_str();
  cmd->add_option("--b", c.b, "evaluation point beta = 1/b")->capture_default_str();
  cmd->add_option("--a", c.a, "evaluation point alpha = 1/a")->capture_default_str();
  cmd->add_flag("--json", c.json, "machine-readable output");
}

struct Case {
  SturmianParams params;
  BasePoint pt;
};

Case make_case(const Common& c) {
  const SlopeSpec s = parse_slope(c.slope);
  BasePoint pt{c.b, c.a};
  validate(pt);
  return {SturmianParams(s, parse_intercept(c.rho, s)), pt};
}

long max_bits(long fallback) {
  const char* env = std::getenv("HM_MAX_BITS");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 64) throw InvalidInput(std::string("HM_MAX_BITS must be an integer >= 64, got ") + env);
  return v;
}

json params_json(const Common& c, const Case& k) {
  return {{"slope", k.params.slope().to_string()},
          {"rho", k.params.intercept().to_string()},
          {"b", c.b},
          {"a", c.a}};
}

json interval_json(const RealInterval& x) {
  return {{"lo", to_string(x.lower())}, {"hi", to_string(x.upper())}, {"bits", x.bits()}};
}

std::string decimal(const RealInterval& x, int digits = 40) {
  std::ostringstream os;
  os.precision(digits);
  os << to_long_double(x.midpoint());
  return os.str();
}

std::string join(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
  return out;
}

json opt_json(const std::optional<long double>& x) {
  return x ? json(static_cast<double>(*x)) : json(nullptr);
}

int cmd_expand(const Common& c, std::size_t n, bool verify) {
  Case k = make_case(c);
  const ExpansionResult ex = expand_xi(k.params, k.pt, n);
  json out = {{"params", params_json(c, k)}, {"improper", ex.improper}};
  if (ex.head) out["head"] = to_string(*ex.head);
  out["A"] = json::array();
  for (const Int& x : ex.A) out["A"].push_back(x.get_str());
  out["case_log"] = json::array();
  for (const CaseLogEntry& e : ex.case_log) {
    json z = json::array();
    for (const RawTag& t : e.zeros) z.push_back(std::string(slot_name(t.slot)) + "_" + std::to_string(t.k));
    out["case_log"].push_back({{"rule", e.rule}, {"k", e.k}, {"zeros", z}});
  }
  int code = kExitOk;
  std::string verdict;
  if (verify) {
    const OracleResult orc = oracle_cf(k.params, k.pt, n, ex.head, 2048, max_bits(SuiteOptions{}.oracle_max_bits));
    std::size_t matched = 0;
    while (matched < std::min(orc.certified, n) && orc.quotients[matched] == ex.A[matched]) ++matched;
    const bool mismatch = matched < std::min(orc.certified, n);
    out["verify"] = {{"matched", matched}, {"certified", orc.certified}, {"bits", orc.bits},
                     {"xi", interval_json(orc.xi)}};
    if (mismatch) {
      code = kExitMismatch;
      verdict = "MISMATCH at position " + std::to_string(matched + 1);
    } else if (orc.certified < n) {
      code = kExitUndecidable;
      verdict = "only " + std::to_string(orc.certified) + " positions certified at " + std::to_string(orc.bits) +
                " bits";
    } else {
      verdict = "verified " + std::to_string(matched) + "/" + std::to_string(n) + " at " + std::to_string(orc.bits) +
                " bits";
    }
    out["verify"]["status"] = verdict;
  }
  if (c.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    if (ex.head) std::cout << "head: " << to_string(*ex.head) << "\n";
    std::cout << "A: " << join(ex.A) << "\n";
    for (const CaseLogEntry& e : ex.case_log) {
      std::cout << "case " << e.rule << " at k=" << e.k;
      for (const RawTag& t : e.zeros) std::cout << " " << slot_name(t.slot) << "_" << t.k;
      std::cout << "\n";
    }
    if (verify) std::cout << verdict << "\n";
  }
  return code;
}

int cmd_words(const Common& c, std::size_t K, std::size_t prefix_len, std::size_t max_len) {
  Case k = make_case(c);
  const WordFamily w = build_word_family(k.params, K, max_len);
  json rows = json::array();
  for (long i = 0; i <= static_cast<long>(K); ++i) {
    const BinaryWord& V = w.V(i);
    rows.push_back({{"k", i}, {"len", V.size()}, {"ones", V.ones()}, {"prefix", V.to_string(prefix_len)}});
  }
  if (c.json) {
    std::cout << rows.dump(2) << "\n";
  } else {
    for (const auto& r : rows)
      std::cout << "V_" << r["k"].get<long>() << " len=" << r["len"].get<std::size_t>()
                << " ones=" << r["ones"].get<std::size_t>() << " " << r["prefix"].get<std::string>() << "\n";
  }
  return kExitOk;
}

int cmd_ostrowski(const Common& c, std::size_t K) {
  Case k = make_case(c);
  SturmianParams& P = k.params;
  json rows = json::array();
  for (std::size_t i = 1; i <= K; ++i)
    rows.push_back({{"k", i},
                    {"a", P.a(i)},
                    {"b", P.b(i)},
                    {"p", P.p(static_cast<long>(i)).get_str()},
                    {"q", P.q(static_cast<long>(i)).get_str()},
                    {"t", P.t(i).get_str()},
                    {"t_tilde", P.t_tilde(i).get_str()},
                    {"r", P.r(i).get_str()},
                    {"r_tilde", P.r_tilde(i).get_str()}});
  if (c.json) {
    std::cout << rows.dump(2) << "\n";
  } else {
    std::cout << "k a_k b_k p_k q_k t_k t~_k r_k r~_k\n";
    for (const auto& r : rows)
      std::cout << r["k"].get<std::size_t>() << " " << r["a"].get<std::uint64_t>() << " "
                << r["b"].get<std::uint64_t>() << " " << r["p"].get<std::string>() << " "
                << r["q"].get<std::string>() << " " << r["t"].get<std::string>() << " "
                << r["t_tilde"].get<std::string>() << " " << r["r"].get<std::string>() << " "
                << r["r_tilde"].get<std::string>() << "\n";
  }
  return kExitOk;
}

int cmd_approx(const Common& c, std::size_t K) {
  Case k = make_case(c);
  const std::vector<FractionFamily> chain = farey_chain(element_quads(k.params, k.pt, K), k.pt);
  json rows = json::array();
  for (std::size_t i = 0; i <= K; ++i) {
    const auto cyc = chain[i].cycle();
    for (std::size_t f = 0; f < cyc.size(); ++f)
      rows.push_back({{"k", i}, {"family", kFamilyNames[f]}, {"num", cyc[f]->num.get_str()},
                      {"den", cyc[f]->den.get_str()}});
  }
  if (c.json) {
    std::cout << rows.dump(2) << "\n";
  } else {
    for (const auto& r : rows)
      std::cout << r["family"].get<std::string>() << "_" << r["k"].get<std::size_t>() << " = "
                << r["num"].get<std::string>() << "/" << r["den"].get<std::string>() << "\n";
  }
  return kExitOk;
}

int cmd_eval(const Common& c, const std::string& route, long bits, std::size_t K) {
  Case k = make_case(c);
  const long cap = max_bits(kDefaultMaxBits);
  if (bits > cap) throw InvalidInput("--bits exceeds the precision cap " + std::to_string(cap));
  json out = {{"params", params_json(c, k)}, {"route", route}};
  std::vector<std::pair<std::string, SeriesValue>> values;
  if (route == "direct" || route == "both")
    values.emplace_back("direct", eval_to_precision(k.params, {Int(c.b), Int(c.a)}, bits));
  if (route == "fast" || route == "both") values.emplace_back("fast", eval_fast(k.params, k.pt, K, bits));
  for (const auto& [name, v] : values) {
    const RealInterval xi = Rational(static_cast<unsigned long>(c.b - 1)) * v.value;
    out[name] = {{"terms", v.terms},
                 {"bits", v.bits},
                 {"xi_s", interval_json(v.value)},
                 {"xi", interval_json(xi)},
                 {"log10_width", v.value.log10_width()},
                 {"xi_approx", decimal(xi)}};
  }
  if (values.size() == 2) out["intersect"] = values[0].second.value.intersects(values[1].second.value);
  if (c.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& [name, v] : values)
      std::cout << name << ": xi ~ " << out[name]["xi_approx"].get<std::string>() << " (" << v.terms
                << " terms, width 10^" << v.value.log10_width() << ")\n";
    if (values.size() == 2) std::cout << (out["intersect"].get<bool>() ? "intervals intersect" : "intervals DISJOINT") << "\n";
  }
  return values.size() == 2 && !out["intersect"].get<bool>() ? kExitMismatch : kExitOk;
}

json report_json(const CaseReport& r) {
  json checks = json::array();
  for (const CheckResult& x : r.checks)
    checks.push_back({{"name", x.name}, {"pass", x.pass}, {"partial", x.partial}, {"detail", x.detail},
                      {"seconds", x.seconds}});
  return {{"case", r.c.name()}, {"pass", r.pass()}, {"checks", checks}};
}

void print_report(const CaseReport& r) {
  std::cout << (r.pass() ? "PASS " : "FAIL ") << r.c.name() << "\n";
  for (const CheckResult& x : r.checks) {
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << x.seconds;
    std::cout << "  " << (x.pass ? (x.partial ? "ok* " : "ok  ") : "FAIL") << " " << x.name << ": " << x.detail << " ["
              << t.str() << "s]\n";
  }
}

SuiteOptions suite_options() {
  SuiteOptions opt;
  opt.oracle_max_bits = max_bits(opt.oracle_max_bits);
  return opt;
}

int cmd_verify(const Common& c, bool all, std::size_t max_m, long bits) {
  Case k = make_case(c);
  if (all) {
    const CaseReport r = run_case({k.params.slope().to_string(), k.params.intercept().to_string(), k.pt},
                                  suite_options());
    if (c.json)
      std::cout << report_json(r).dump(2) << "\n";
    else
      print_report(r);
    return r.pass() ? kExitOk : kExitMismatch;
  }
  json rows = json::array();
  bool ok = true;
  for (std::size_t m = 1; m <= max_m; ++m) {
    const FunctionalEquationReport r = verify_functional_equation(k.params, k.pt, m, bits);
    ok = ok && r.contains_zero();
    rows.push_back({{"m", m},
                    {"bits", r.bits},
                    {"shifted_intercept", r.shifted_intercept},
                    {"residual", interval_json(r.residual)},
                    {"log10_width", r.residual.log10_width()},
                    {"contains_zero", r.contains_zero()}});
  }
  if (c.json) {
    std::cout << json{{"params", params_json(c, k)}, {"functional_equation", rows}}.dump(2) << "\n";
  } else {
    for (const auto& r : rows)
      std::cout << "m=" << r["m"].get<std::size_t>() << " residual width 10^" << r["log10_width"].get<double>()
                << (r["contains_zero"].get<bool>() ? " contains 0" : " EXCLUDES 0") << " (s_m intercept "
                << r["shifted_intercept"].get<std::string>() << ")\n";
  }
  return ok ? kExitOk : kExitMismatch;
}

int cmd_exponent(const Common& c, const std::string& route, std::size_t K, std::size_t J) {
  Case k = make_case(c);
  json out = {{"params", params_json(c, k)}};
  std::optional<long double> ef, ec;
  if (route == "formula" || route == "both") {
    const ExponentReport f = exponent_by_formula(k.params, K);
    json fam = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      json row = {{"family", i + 1}, {"running_max", opt_json(f.running_max[i])}};
      if (f.last_eligible[i]) row["last_eligible"] = *f.last_eligible[i];
      fam.push_back(row);
    }
    out["formula"] = {{"depth", f.depth}, {"window_start", f.window_start}, {"families", fam},
                      {"estimate", opt_json(f.estimate)}};
    ef = f.estimate;
  }
  if (route == "convergents" || route == "both") {
    LogQuotientStream s(k.params, k.pt);
    const ExponentReport g = exponent_by_convergents(s, J, c.b, J / 2);
    out["convergents"] = {{"depth", g.depth}, {"window_start", g.window_start}, {"estimate", opt_json(g.estimate)}};
    ec = g.estimate;
  }
  if (c.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    if (out.contains("formula")) {
      std::cout << "formula (k <= " << K << "): " << out["formula"]["estimate"] << "\n";
      for (const auto& f : out["formula"]["families"]) {
        std::cout << "  nu(" << f["family"] << ") running max " << f["running_max"];
        if (f.contains("last_eligible")) std::cout << ", eligible through k = " << f["last_eligible"];
        std::cout << "\n";
      }
    }
    if (out.contains("convergents"))
      std::cout << "convergents (j <= " << J << "): " << out["convergents"]["estimate"] << "\n";
  }
  return (route == "both" && (!ef || !ec)) ? kExitUndecidable : kExitOk;
}

struct SuiteArgs {
  bool quick = false;
  std::optional<std::size_t> depth;
  std::optional<unsigned long> fuzz;
  std::size_t fuzz_count = 8;
  std::vector<std::string> only;
  std::string filter;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string json_path;
};

int cmd_suite(const SuiteArgs& s, const Common& c, bool single) {
  std::vector<SuiteCase> cases;
  if (single) {
    Case k = make_case(c);
    cases.push_back({k.params.slope().to_string(), k.params.intercept().to_string(), k.pt});
  } else if (s.fuzz) {
    cases = fuzz_grid(*s.fuzz, s.fuzz_count);
  } else {
    cases = s.quick ? quick_grid() : default_grid();
  }
  if (!s.filter.empty())
    std::erase_if(cases, [&](const SuiteCase& x) { return x.name().find(s.filter) == std::string::npos; });
  SuiteOptions opt = suite_options();
  if (s.depth)
    opt.family_depth = *s.depth;
  else if (s.quick)
    opt.family_depth = 12;
  const std::vector<CaseReport> reports = run_suite(cases, opt, s.jobs, s.only);
  std::size_t passed = 0;
  json all = json::array();
  for (const CaseReport& r : reports) {
    passed += r.pass();
    all.push_back(report_json(r));
    if (!c.json) print_report(r);
  }
  const json summary = {{"cases", reports.size()}, {"passed", passed}, {"reports", all}};
  if (!s.json_path.empty()) std::ofstream(s.json_path) << summary.dump(2) << "\n";
  if (c.json)
    std::cout << summary.dump(2) << "\n";
  else
    std::cout << reports.size() << " cases, " << passed << " passed\n";
  return passed == reports.size() ? kExitOk : kExitMismatch;
}

int cmd_fixture(const std::string& dir, bool write) {
  int code = kExitOk;
  for (const SuiteCase& c : a1_grid()) {
    const std::string text = a1_fixture(c);
    const std::filesystem::path path = std::filesystem::path(dir) / fixture_file_name(c);
    if (write) {
      std::filesystem::create_directories(dir);
      std::ofstream(path, std::ios::binary) << text;
      std::cout << "wrote " << path.string() << "\n";
      continue;
    }
    std::ifstream in(path, std::ios::binary);
    std::stringstream stored;
    stored << in.rdbuf();
    const bool same = in.good() || in.eof() ? stored.str() == text : false;
    std::cout << (same ? "match " : "DIFFERS ") << path.string() << "\n";
    if (!same) code = kExitMismatch;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continued fractions of Hecke-Mahler series at Sturmian parameters"};
  app.require_subcommand(1);

  Common common;
  std::size_t n = 10, K = 10, J = 200, prefix_len = 64, max_len = kDefaultMaxLen, max_m = 6;
  long bits = kDefaultBits;
  bool verify = false, all = false, write = false;
  std::string route = "both", dir = "tests/fixtures/a1";
  SuiteArgs sargs;

  auto* expand = app.add_subcommand("expand", "partial quotients of xi = (b-1) xi_s(1/b, 1/a)");
  add_common(expand, common);
  expand->add_option("-n", n, "number of elements")->capture_default_str()->check(CLI::PositiveNumber);
  expand->add_flag("--verify", verify, "cross-check against the series oracle");

  auto* words = app.add_subcommand("words", "the words V_k");
  add_common(words, common);
  words->add_option("-K", K, "largest index")->capture_default_str();
  words->add_option("--prefix", prefix_len, "letters shown per word")->capture_default_str();
  words->add_option("--max-len", max_len, "length budget")->capture_default_str();

  auto* ostrowski = app.add_subcommand("ostrowski", "digits b_k and the sequences t_k, r_k");
  add_common(ostrowski, common);
  ostrowski->add_option("-K", K, "largest index")->capture_default_str()->check(CLI::PositiveNumber);

  auto* approx = app.add_subcommand("approx", "the five approximating fractions per index");
  add_common(approx, common);
  approx->add_option("-K", K, "largest index")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "certified value of xi_s(1/b, 1/a)");
  add_common(eval, common);
  eval->add_option("--route", route, "direct, fast or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"direct", "fast", "both"}));
  eval->add_option("--bits", bits, "target precision")->capture_default_str()->check(CLI::Range(8l, 1l << 24));
  eval->add_option("-K", K, "depth of the alternating series")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "functional equation, or every check with --all");
  add_common(verify_cmd, common);
  verify_cmd->add_flag("--all", all, "run the full identity suite on this case");
  verify_cmd->add_option("--m", max_m, "largest shift")->capture_default_str()->check(CLI::PositiveNumber);
  verify_cmd->add_option("--bits", bits, "precision")->capture_default_str()->check(CLI::Range(64l, 1l << 20));

  auto* exponent = app.add_subcommand("exponent", "irrationality exponent estimates");
  add_common(exponent, common);
  exponent->add_option("--route", route, "formula, convergents or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"formula", "convergents", "both"}));
  exponent->add_option("-K", K, "formula depth")->capture_default_str()->check(CLI::PositiveNumber);
  exponent->add_option("-J", J, "number of convergents")->capture_default_str()->check(CLI::PositiveNumber);

  Common suite_common;
  auto* suite = app.add_subcommand("suite", "invariant suite over the parameter grid");
  suite->add_flag("--quick", sargs.quick, "one case per slope, fraction families to k = 12");
  suite->add_option("--depth", sargs.depth, "fraction family depth (default 20)")->check(CLI::PositiveNumber);
  suite->add_option("--fuzz", sargs.fuzz, "random admissible digits from this seed");
  suite->add_option("--count", sargs.fuzz_count, "fuzz cases")->capture_default_str();
  suite->add_option("--check", sargs.only, "restrict to these checks");
  suite->add_option("--filter", sargs.filter, "keep cases whose name contains this text");
  suite->add_option("--jobs", sargs.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  suite->add_option("--report", sargs.json_path, "write the JSON report here");
  auto* case_opt = suite->add_option("--slope", suite_common.slope, "run a single case");
  suite->add_option("--rho", suite_common.rho)->needs(case_opt);
  suite->add_option("--b", suite_common.b)->needs(case_opt);
  suite->add_option("--a", suite_common.a)->needs(case_opt);
  suite->add_flag("--json", suite_common.json, "machine-readable output");

  auto* fixture = app.add_subcommand("fixture", "compare or regenerate the a = 1 fixtures");
  fixture->add_option("--dir", dir, "fixture directory")->capture_default_str();
  fixture->add_flag("--write", write, "regenerate instead of comparing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*expand) return cmd_expand(common, n, verify);
    if (*words) return cmd_words(common, K, prefix_len, max_len);
    if (*ostrowski) return cmd_ostrowski(common, K);
    if (*approx) return cmd_approx(common, K);
    if (*eval) return cmd_eval(common, route, bits, K);
    if (*verify_cmd) return cmd_verify(common, all, max_m, bits);
    if (*exponent) return cmd_exponent(common, route, K, J);
    if (*suite) return cmd_suite(sargs, suite_common, case_opt->count() > 0);
    if (*fixture) return cmd_fixture(dir, write);
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const InternalCheckFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const Error& e) {
    std::cerr << "undecidable: " << e.what() << "\n";
    return kExitUndecidable;
  }
  return kExitOk;
}
