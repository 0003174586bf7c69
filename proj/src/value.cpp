#include "ocg/value.hpp"

#include "ocg/error.hpp"

#include <cctype>

namespace ocg {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad_value(std::string_view text) {
  throw Error(ErrorKind::InvalidInput, "not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Value parse_value(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Integer num;
  Integer den(1);
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto p = body.substr(0, slash);
    auto q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) bad_value(text);
    num = Integer(std::string(p));
    den = Integer(std::string(q));
    if (den == 0) bad_value(text);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      bad_value(text);
    num = Integer(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  } else {
    if (!all_digits(body)) bad_value(text);
    num = Integer(std::string(body));
  }
  Value out = Value(num) / Value(den);
  return negative ? Value(-out) : out;
}

std::string format_value(const Value& v) {
  const Integer den = boost::multiprecision::denominator(v);
  const Integer num = boost::multiprecision::numerator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer floor_integer(const Value& v) {
  const Integer num = boost::multiprecision::numerator(v);
  const Integer den = boost::multiprecision::denominator(v);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Integer ceil_integer(const Value& v) {
  Integer f = floor_integer(v);
  return Value(f) == v ? f : Integer(f + 1);
}

double to_double(const Value& v) { return v.convert_to<double>(); }

Value sqrt_lower(const Value& x, const Value& rel_tol) {
  if (x < 0) throw Error(ErrorKind::InvalidInput, "sqrt of a negative value");
  if (x == 0) return Value(0);

  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  const Integer rn = boost::multiprecision::sqrt(num);
  const Integer rd = boost::multiprecision::sqrt(den);
  if (rn * rn == num && rd * rd == den) return Value(rn) / Value(rd);

  // Bisection on rationals keeps lo^2 <= x < hi^2 throughout.
  Value lo(0);
  Value hi = x > 1 ? x : Value(1);
  while (hi - lo > rel_tol * lo || lo == 0) {
    Value mid = (lo + hi) / 2;
    if (mid * mid <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidGame: return "InvalidGame";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::OverlappingBlocks: return "OverlappingBlocks";
    case ErrorKind::PlayerAlreadyMember: return "PlayerAlreadyMember";
    case ErrorKind::UnknownCoalition: return "UnknownCoalition";
    case ErrorKind::NegativeBank: return "NegativeBank";
    case ErrorKind::InvalidPolicy: return "InvalidPolicy";
    case ErrorKind::TooManyPlayers: return "TooManyPlayers";
    case ErrorKind::BranchExplosion: return "BranchExplosion";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::BadParams: return "BadParams";
  }
  return "Unknown";
}

}  // namespace ocg
