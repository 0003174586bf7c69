#include "ocg/error.hpp"
#include "ocg/value.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ocg;

TEST(Value, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_value("3"), Value(3));
  EXPECT_EQ(parse_value("5/2"), Value(5) / 2);
  EXPECT_EQ(parse_value("-5/2"), Value(-5) / 2);
  EXPECT_EQ(parse_value("0.01"), Value(1) / 100);
  EXPECT_EQ(parse_value(" 2.5 "), Value(5) / 2);
  EXPECT_EQ(parse_value(".5"), Value(1) / 2);
}

TEST(Value, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "1e5", "--1", "2/-3"}) {
    try {
      parse_value(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidInput) << bad;
    }
  }
}

TEST(Value, FormatsInLowestTerms) {
  EXPECT_EQ(format_value(parse_value("10/4")), "5/2");
  EXPECT_EQ(format_value(parse_value("6/3")), "2");
  EXPECT_EQ(format_value(parse_value("0/7")), "0");
  EXPECT_EQ(format_value(Value(-3) / 6), "-1/2");
}

TEST(Value, RoundTripIsIdentityOnRandomFractions) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const long long p = static_cast<long long>(rng() % 20001) - 10000;
    const long long q = static_cast<long long>(rng() % 999) + 1;
    const Value v = Value(p) / Value(q);
    const std::string text = format_value(v);
    EXPECT_EQ(parse_value(text), v);
    EXPECT_EQ(format_value(parse_value(std::to_string(p) + "/" + std::to_string(q))), text);
  }
}

TEST(Value, FloorAndCeil) {
  EXPECT_EQ(floor_integer(Value(7) / 2), 3);
  EXPECT_EQ(ceil_integer(Value(7) / 2), 4);
  EXPECT_EQ(floor_integer(Value(-7) / 2), -4);
  EXPECT_EQ(ceil_integer(Value(-7) / 2), -3);
  EXPECT_EQ(floor_integer(Value(4)), 4);
  EXPECT_EQ(ceil_integer(Value(4)), 4);
}

TEST(Value, SqrtLowerIsExactOnSquares) {
  EXPECT_EQ(sqrt_lower(Value(9), Value(1) / 1000000), Value(3));
  EXPECT_EQ(sqrt_lower(Value(9) / 4, Value(1) / 1000000), Value(3) / 2);
  EXPECT_EQ(sqrt_lower(Value(0), Value(1) / 1000000), Value(0));
}

TEST(Value, SqrtLowerBracketsTheRootWithinTolerance) {
  const Value tol = Value(1) / 1'000'000'000;
  for (int x : {2, 3, 5, 11, 21, 1000}) {
    const Value r = sqrt_lower(Value(x), tol);
    EXPECT_LE(r * r, Value(x));
    // (r (1 + tol))^2 >= x means sqrt(x) - r <= tol * r <= tol * sqrt(x)
    const Value up = r * (1 + tol);
    EXPECT_GE(up * up, Value(x));
    EXPECT_NEAR(to_double(r), std::sqrt(static_cast<double>(x)), 2e-9 * std::sqrt(static_cast<double>(x)));
  }
}
