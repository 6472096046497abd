#include "rankone/numeric.hpp"

#include "rankone/errors.hpp"

#include <mpfr.h>

#include <cctype>
#include <limits>
#include <memory>

namespace rankone {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::StageOutOfRange: return "stage-out-of-range";
    case ErrorKind::StageMismatch: return "stage-mismatch";
    case ErrorKind::HeadroomViolation: return "headroom-violation";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::Overlap: return "overlap-error";
    case ErrorKind::CountCap: return "count-cap";
    case ErrorKind::NegativeAtomMeasure: return "negative-atom-measure";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Formats a digit string d1 d2 ... dn meaning 0.d1d2...dn * 10^(exp10 + 1), i.e. the
// leading digit has weight 10^exp10. Trailing zeros are dropped.
std::string format_digits(bool negative, std::string digits, long exp10) {
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = negative ? "-" : "";
  const long n = static_cast<long>(digits.size());
  if (exp10 >= -5 && exp10 < std::max<long>(n, 16)) {
    if (exp10 < 0) {
      out += "0.";
      out.append(static_cast<std::size_t>(-exp10 - 1), '0');
      out += digits;
    } else if (exp10 + 1 >= n) {
      out += digits;
      out.append(static_cast<std::size_t>(exp10 + 1 - n), '0');
    } else {
      out += digits.substr(0, static_cast<std::size_t>(exp10 + 1));
      out += '.';
      out += digits.substr(static_cast<std::size_t>(exp10 + 1));
    }
    return out;
  }
  out += digits[0];
  if (n > 1) {
    out += '.';
    out += digits.substr(1);
  }
  out += 'e';
  out += exp10 < 0 ? '-' : '+';
  const long mag = exp10 < 0 ? -exp10 : exp10;
  if (mag < 10) out += '0';
  out += std::to_string(mag);
  return out;
}

// Boost's string constructor reads a leading 0 as an octal prefix.
BigInt decimal_digits(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return BigInt(std::string(digits));
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) {
    throw Error(ErrorKind::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  }
  BigInt value = decimal_digits(body);
  return negative ? BigInt(-value) : value;
}

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_bigint(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw Error(ErrorKind::InvalidArgument, "bad denominator in '" + std::string(text) + "'");
    }
    BigInt den = decimal_digits(den_text);
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) {
      throw Error(ErrorKind::InvalidArgument, "not a decimal: '" + std::string(text) + "'");
    }
    bool negative = !whole.empty() && whole.front() == '-';
    BigInt w = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : parse_bigint(whole);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    Rational f(decimal_digits(frac), scale);
    Rational a(boost::multiprecision::abs(w));
    Rational v = a + f;
    return negative ? Rational(-v) : v;
  }
  return Rational(parse_bigint(text));
}

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string render_decimal(const Rational& q, unsigned digits) {
  if (digits == 0 || digits > kMaxRenderDigits) {
    throw Error(ErrorKind::InvalidArgument, "render precision out of range");
  }
  if (q == 0) return "0";
  const bool negative = q < 0;
  BigInt num = boost::multiprecision::abs(numerator(q));
  BigInt den = denominator(q);

  // Find e with 10^e <= num/den < 10^(e+1).
  long e = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
  auto ge_pow = [&](long k) {
    // num/den >= 10^k
    if (k >= 0) return num >= den * boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(k));
    return num * boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-k)) >= den;
  };
  while (!ge_pow(e)) --e;
  while (ge_pow(e + 1)) ++e;

  // scaled = num/den * 10^(digits-1-e), then round half even to an integer.
  const long shift = static_cast<long>(digits) - 1 - e;
  BigInt sn = num, sd = den;
  if (shift >= 0) {
    sn *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift));
  } else {
    sd *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift));
  }
  BigInt quot = sn / sd;
  BigInt rem = sn - quot * sd;
  BigInt twice = rem * 2;
  if (twice > sd || (twice == sd && (quot % 2) == 1)) ++quot;
  std::string ds = quot.str();
  if (ds.size() > digits) {
    // Rounding carried into a new leading digit (e.g. 9.99 -> 10.0).
    ds.pop_back();
    ++e;
  }
  return format_digits(negative, ds, e);
}

std::string render_decimal(const Real& x, unsigned digits) {
  if (digits == 0 || digits > kMaxRenderDigits) {
    throw Error(ErrorKind::InvalidArgument, "render precision out of range");
  }
  if (x == 0) return "0";
  mpfr_exp_t exp = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp, 10, digits, x.backend().data(), MPFR_RNDN), mpfr_free_str);
  std::string s(raw.get());
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.erase(0, 1);
  }
  return format_digits(negative, s, static_cast<long>(exp) - 1);
}

Real to_real(const Rational& q) {
  return Real(Real(numerator(q)) / Real(denominator(q)));
}

std::int64_t to_int64(const BigInt& n) {
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::InvalidArgument, "integer does not fit in 64 bits: " + n.str());
  }
  return n.convert_to<std::int64_t>();
}

}  // namespace rankone
