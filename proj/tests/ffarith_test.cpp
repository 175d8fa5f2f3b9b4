#include <gtest/gtest.h>

#include "ellsurf/parse.hpp"
#include "ellsurf/place.hpp"
#include "test_util.hpp"

using namespace ellsurf;

namespace {

RatFunc rf(const char* s) { return parse_ratfunc(s); }
Place pl(const char* s) { return parse_place(s); }

}  // namespace

TEST(Poly, CanonicalPrinting) {
  EXPECT_EQ(parse_poly("4 - 1/2*t + t^3").to_string(), "t^3 - 1/2*t + 4");
  EXPECT_EQ(parse_poly(" -t^2+ 3 t ").to_string(), "-t^2 + 3*t");
  EXPECT_EQ(Poly().to_string(), "0");
  EXPECT_EQ(rf("t^2/(2*t-2)").to_string(), "1/2*t^2 / (t - 1)");
  EXPECT_EQ(rf("(t-1)/t^2").to_string(), "(t - 1) / t^2");
}

TEST(Poly, ParserRejectsGarbage) {
  EXPECT_THROW(parse_ratfunc("t +"), Error);
  EXPECT_THROW(parse_ratfunc("x^2"), Error);
  EXPECT_THROW(parse_ratfunc("1/(t-t)"), Error);
  EXPECT_THROW(parse_poly("1/t"), Error);
}

TEST(Poly, DivmodAndGcd) {
  Poly a = parse_poly("t^4 - 1"), b = parse_poly("t^2 + 3*t + 2");
  auto [q, r] = divmod(a, b);
  EXPECT_EQ(q * b + r, a);
  EXPECT_LT(r.degree(), b.degree());
  EXPECT_EQ(gcd(a, b), parse_poly("t + 1"));
  EXPECT_EQ(gcd(parse_poly("6*t^2 - 6"), parse_poly("4*t - 4")), parse_poly("t - 1"));
}

TEST(Valuation, SpecExamples) {
  RatFunc x = rf("t^2/(t-1)");
  EXPECT_EQ(valuation(x, pl("(t)")), 2);
  EXPECT_EQ(valuation(x, pl("inf")), -1);
  EXPECT_EQ(valuation(x, pl("(t-1)")), -1);
  EXPECT_EQ(valuation(RatFunc(1), pl("(t^2+1)")), 0);
  EXPECT_EQ(valuation(RatFunc(1), pl("inf")), 0);
  EXPECT_EQ(valuation(RatFunc(), pl("(t)")), kValInfinity);
}

TEST(DivisorOf, SpecExamples) {
  P1Divisor d1 = divisor_of(rf("t"));
  EXPECT_EQ(d1.size(), 2u);
  EXPECT_EQ(d1[pl("(t)")], 1);
  EXPECT_EQ(d1[pl("inf")], -1);

  P1Divisor d2 = divisor_of(rf("(t-1)/t^2"));
  EXPECT_EQ(d2[pl("(t-1)")], 1);
  EXPECT_EQ(d2[pl("(t)")], -2);
  EXPECT_EQ(d2[pl("inf")], 1);
  EXPECT_EQ(d2.degree(), 0);

  EXPECT_TRUE(divisor_of(RatFunc(5)).empty());
  EXPECT_THROW(divisor_of(RatFunc()), Error);
}

TEST(Place, Parsing) {
  EXPECT_TRUE(pl("inf").is_infinity());
  EXPECT_EQ(pl("(2*t - 2)").to_string(), "(t - 1)");
  EXPECT_EQ(pl("(t^3 + 27/4)").degree(), 3);
  EXPECT_THROW(pl("(t^2 - 1)"), Error);
  EXPECT_THROW(pl("(3)"), Error);
  auto list = parse_place_list("inf, (t-1), (t)");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[0].to_string(), "(t - 1)");
  EXPECT_EQ(list[1].to_string(), "(t)");
  EXPECT_TRUE(list[2].is_infinity());
}

TEST(FieldProperties, RandomTriples) {
  test::Gen gen(20261018);
  for (int i = 0; i < 500; ++i) {
    RatFunc a = gen.ratfunc(), b = gen.ratfunc(), c = gen.ratfunc();
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a - a, RatFunc());
    if (!a.is_zero()) {
      ASSERT_EQ(a * a.inverse(), RatFunc(1));
    }
    if (!b.is_zero()) {
      ASSERT_EQ((a / b) * b, a);
    }
    ASSERT_TRUE(parse_ratfunc(a.to_string()) == a) << a.to_string();
  }
}

TEST(FieldProperties, ValuationAdditivityAndUltrametric) {
  test::Gen gen(7);
  std::vector<Place> places = {pl("(t)"), pl("(t-1)"), pl("(t+1)"), pl("(t^2+1)"), pl("(t-1/2)"), pl("inf")};
  for (int i = 0; i < 300; ++i) {
    RatFunc x = gen.nonzero_ratfunc(), y = gen.nonzero_ratfunc();
    // bias toward actual zeros and poles at the test places
    x *= RatFunc(Poly::t()).pow(gen.integer(-2, 2));
    y *= RatFunc(parse_poly("t-1")).pow(gen.integer(-2, 2));
    for (const auto& v : places) {
      ASSERT_EQ(valuation(x * y, v), valuation(x, v) + valuation(y, v));
      RatFunc s = x + y;
      if (!s.is_zero()) {
        ASSERT_GE(valuation(s, v), std::min(valuation(x, v), valuation(y, v)));
      }
    }
  }
}

TEST(FieldProperties, ProductFormula) {
  test::Gen gen(99);
  for (int i = 0; i < 500; ++i) {
    RatFunc x = gen.nonzero_ratfunc(4);
    P1Divisor d = divisor_of(x);
    ASSERT_EQ(d.degree(), 0) << x.to_string();
    for (const auto& [v, m] : d.entries()) ASSERT_EQ(valuation(x, v), m);
  }
}

TEST(Poly, ModularGcdMatchesRemainderSequence) {
  test::Gen gen(99);
  for (int i = 0; i < 300; ++i) {
    Poly common = gen.nonzero_poly(4);
    Poly a = gen.nonzero_poly(6) * common, b = gen.nonzero_poly(6) * common;
    if (i % 5 == 0) b = b * common;
    Poly g = gcd(a, b);
    ASSERT_EQ(g, gcd_prs(a, b)) << a << " | " << b;
    if (!common.is_constant()) {
      ASSERT_TRUE((g % common.monic()).is_zero());
    }
    ASSERT_TRUE((a % g).is_zero());
    ASSERT_TRUE((b % g).is_zero());
  }
  // large coefficients force several primes
  Poly big = parse_poly("123456789123456789*t^3 - 987654321987654321*t + 5");
  EXPECT_EQ(gcd(big * parse_poly("t^2+1"), big * parse_poly("t-7")), big.monic());
}
