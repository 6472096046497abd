#include "rankone/errors.hpp"
#include "rankone/numeric.hpp"

#include <gtest/gtest.h>

using namespace rankone;

TEST(Numeric, ParsesIntegersAndRationals) {
  EXPECT_EQ(parse_bigint("2158472"), BigInt(2158472));
  EXPECT_EQ(parse_bigint("-12"), BigInt(-12));
  EXPECT_EQ(parse_rational("201/4"), Rational(201, 4));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(parse_bigint("123456789012345678901234567890").str(), "123456789012345678901234567890");
  EXPECT_THROW(parse_bigint("12a"), Error);
  EXPECT_THROW(parse_bigint(""), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Numeric, RationalToString) {
  EXPECT_EQ(to_string(Rational(201, 4)), "201/4");
  EXPECT_EQ(to_string(Rational(134, 2)), "67");
  EXPECT_EQ(to_string(Rational(-1, 2)), "-1/2");
}

TEST(Numeric, RenderRationalRoundsHalfEven) {
  EXPECT_EQ(render_decimal(Rational(1, 3), 5), "0.33333");
  EXPECT_EQ(render_decimal(Rational(2, 3), 3), "0.667");
  EXPECT_EQ(render_decimal(Rational(125, 100), 2), "1.2");   // tie -> even
  EXPECT_EQ(render_decimal(Rational(135, 100), 2), "1.4");   // tie -> even
  EXPECT_EQ(render_decimal(Rational(999, 100), 2), "10");    // carry
  EXPECT_EQ(render_decimal(Rational(269809), 12), "269809");
  EXPECT_EQ(render_decimal(Rational(-201, 4), 12), "-50.25");
  EXPECT_EQ(render_decimal(Rational(1, 1024), 4), "0.0009766");
  EXPECT_EQ(render_decimal(Rational(0), 4), "0");
  EXPECT_EQ(render_decimal(Rational(BigInt("100000000000000000000")), 3), "1e+20");
}

TEST(Numeric, RenderRealMatchesKnownConstant) {
  const Real e_inv = exp(Real(-1));
  EXPECT_EQ(render_decimal(e_inv, 10), "0.3678794412");
  EXPECT_EQ(render_decimal(e_inv, 50), "0.36787944117144232159552377016146086744581113103177");
}

TEST(Numeric, RenderIsMonotoneOnRationals) {
  // Rendering at fixed precision never reverses order.
  Rational prev(0);
  std::string prev_text = render_decimal(Rational(1, 1000), 3);
  for (int k = 2; k < 400; ++k) {
    Rational q(k, 1000);
    const std::string text = render_decimal(q, 3);
    EXPECT_LE(parse_rational(prev_text), parse_rational(text)) << k;
    prev_text = text;
  }
}
