#include "flexgraph/rational.hpp"

#include <cctype>
#include <string>

#include "flexgraph/error.hpp"

namespace flexgraph {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::ParseError, "not an exact rational", std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad(text);
    value = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) bad(text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole), 10);
    value = Rational(w * scale + mpz_class(std::string(frac), 10), scale);
  } else {
    if (!all_digits(body)) bad(text);
    value = Rational(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

Rational sum(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational rational_gcd(std::span<const Rational> values) {
  mpz_class lcm_den = 1;
  bool any_positive = false;
  for (const auto& v : values) {
    if (sgn(v) < 0) throw Error(ErrorCode::NegativeRate, "negative entry", format_rational(v));
    if (sgn(v) > 0) any_positive = true;
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
  }
  if (!any_positive) throw Error(ErrorCode::ZeroVector, "all entries are zero");
  mpz_class g = 0;
  for (const auto& v : values) {
    if (sgn(v) == 0) continue;
    mpz_class scaled = v.get_num() * (lcm_den / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational result(g, lcm_den);
  result.canonicalize();
  return result;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace flexgraph
