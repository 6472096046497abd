#ifndef RANKONE_NUMERIC_HPP
#define RANKONE_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace rankone {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Working precision of every real-valued computation, in decimal digits.
/// Rendering precision is chosen per call and must not exceed kMaxRenderDigits.
inline constexpr unsigned kRealDigits = 120;
inline constexpr unsigned kMaxRenderDigits = 100;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kRealDigits>>;

/// Parses a decimal integer ("-12", "2158472"). Throws InvalidArgument on junk.
BigInt parse_bigint(std::string_view text);

/// Parses "p", "p/q" or a finite decimal "1.25" into an exact rational.
Rational parse_rational(std::string_view text);

/// "201/4", "67", "-1/2".
std::string to_string(const Rational& q);
std::string to_string(const BigInt& n);

/// Decimal rendering with `digits` significant digits, round-half-even on the exact value.
std::string render_decimal(const Rational& q, unsigned digits);

/// Decimal rendering of a real with `digits` significant digits (round to nearest on
/// the working-precision value).
std::string render_decimal(const Real& x, unsigned digits);

Real to_real(const Rational& q);

/// Narrowing conversion; throws InvalidArgument when `n` does not fit.
std::int64_t to_int64(const BigInt& n);

}  // namespace rankone

#endif
