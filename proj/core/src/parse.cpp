#include "hecke/parse.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

bool consume(std::string_view& s, std::string_view token) {
  if (!s.starts_with(token)) return false;
  s.remove_prefix(token.size());
  return true;
}

std::string_view enclosed(std::string_view s, char open, char close, std::string_view what) {
  if (s.size() < 2 || s.front() != open || s.back() != close)
    throw InvalidInput(std::string(what) + ": expected " + open + "..." + close);
  return s.substr(1, s.size() - 2);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

std::vector<std::uint64_t> parse_list(std::string_view s, std::string_view what) {
  std::vector<std::uint64_t> out;
  for (std::string_view item : split(s, ',')) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw InvalidInput(std::string(what) + ": bad entry '" + std::string(item) + "'");
    out.push_back(v);
  }
  return out;
}

Int parse_big(std::string_view s, std::string_view what) {
  try {
    return parse_int(std::string(s));
  } catch (const std::exception&) {
    throw InvalidInput(std::string(what) + ": bad integer '" + std::string(s) + "'");
  }
}

std::vector<Int> parse_triple(std::string_view s, std::string_view what) {
  const auto parts = split(enclosed(s, '(', ')', what), ',');
  if (parts.size() != 3) throw InvalidInput(std::string(what) + ": expected (P,D,Q)");
  return {parse_big(parts[0], what), parse_big(parts[1], what), parse_big(parts[2], what)};
}

}  // namespace

SlopeSpec parse_slope(std::string_view text) {
  const std::string clean = strip_spaces(text);
  std::string_view s = clean;
  if (consume(s, "per:")) {
    const std::string_view body = enclosed(s, '[', ']', "slope");
    const auto semi = body.find(';');
    if (semi == std::string_view::npos) throw InvalidInput("slope: expected per:[prefix;period]");
    auto prefix = parse_list(body.substr(0, semi), "slope prefix");
    auto period = parse_list(body.substr(semi + 1), "slope period");
    if (period.empty()) throw InvalidInput("slope: empty period gives a rational slope");
    for (std::uint64_t a : prefix)
      if (a == 0) throw InvalidInput("slope: partial quotients must be positive");
    for (std::uint64_t a : period)
      if (a == 0) throw InvalidInput("slope: partial quotients must be positive");
    return SlopeSpec::periodic(std::move(prefix), std::move(period));
  }
  if (consume(s, "surd:")) {
    const auto v = parse_triple(s, "slope");
    return SlopeSpec::surd(v[0], v[1], v[2]);
  }
  throw InvalidInput("slope: expected per:[...] or surd:(P,D,Q), got '" + clean + "'");
}

InterceptSpec parse_intercept(std::string_view text, const SlopeSpec& slope) {
  const std::string clean = strip_spaces(text);
  std::string_view s = clean;
  consume(s, "rho:");
  if (consume(s, "digits")) {
    auto digits = parse_list(enclosed(s, '[', ']', "intercept"), "intercept digits");
    if (!validate_digits(slope, digits)) throw InvalidInput("intercept: digits are not admissible for this slope");
    return InterceptSpec::formal(std::move(digits));
  }
  if (consume(s, "rat")) {
    const std::string_view body = enclosed(s, '(', ')', "intercept");
    Rational r;
    try {
      r = parse_rational(std::string(body));
    } catch (const std::exception&) {
      throw InvalidInput("intercept: bad rational '" + std::string(body) + "'");
    }
    return InterceptSpec::rational(r);
  }
  if (consume(s, "surd")) {
    const auto v = parse_triple(s, "intercept");
    if (sgn(v[1]) <= 0 || sgn(v[2]) == 0) throw InvalidInput("intercept: surd needs D > 0 and Q != 0");
    return InterceptSpec::surd(v[0], v[1], v[2]);
  }
  throw InvalidInput("intercept: expected rho:rat(p/q), rho:surd(P,D,Q) or rho:digits[...], got '" + clean + "'");
}

}  // namespace hecke
