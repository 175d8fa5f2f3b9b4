#include <gtest/gtest.h>

#include "corpus_curves.hpp"
#include "ellsurf/surface.hpp"
#include "test_util.hpp"

using namespace ellsurf;
using test::F;

namespace {

Place pl(const char* s) { return parse_place(s); }

std::map<std::string, std::pair<std::string, long>> bad_table(const WeierstrassModel& m) {
  std::map<std::string, std::pair<std::string, long>> out;
  for (const auto& ld : EllipticSurface(m).bad_fibers())
    out[ld.place.to_string()] = {ld.kodaira.to_string(), ld.v_delta_min};
  return out;
}

}  // namespace

TEST(Weierstrass, StandardIdentities) {
  for (const auto& m : {test::legendre(), test::tx1(), test::rank2(),
                        WeierstrassModel::parse("t", "1/t", "t^2-1", "3", "t/(t+2)")}) {
    EXPECT_EQ(RatFunc(1728) * m.discriminant(), m.c4() * m.c4() * m.c4() - m.c6() * m.c6());
    EXPECT_EQ(m.j_invariant() * m.discriminant(), m.c4().pow(3));
  }
  EXPECT_THROW(WeierstrassModel::short_form(F("0"), F("0")), Error);
}

TEST(Weierstrass, SubstitutionAlgebra) {
  auto m = WeierstrassModel::parse("t", "1", "0", "t^2", "t-1");
  Substitution a{F("t"), F("1/t"), F("2"), F("t^2+1")};
  Substitution b{F("3/(t+1)"), F("t"), F("-1"), F("0")};
  EXPECT_EQ(m.transform(a).transform(b), m.transform(compose(a, b)));
  EXPECT_EQ(m.transform(a).transform(invert(a)), m);
  EXPECT_EQ(m.transform(a).discriminant(), m.discriminant() / a.u.pow(12));
}

TEST(Tate, LegendreFibers) {
  auto m = test::legendre();
  LocalData at0 = tate_at(m, pl("(t)"));
  EXPECT_EQ(at0.kodaira.to_string(), "I2");
  EXPECT_EQ(at0.v_delta_min, 2);
  EXPECT_EQ(at0.component_count, 2);
  EXPECT_EQ(at0.conductor_exponent, 1);
  EXPECT_TRUE(at0.minimal_substitution.is_identity());

  LocalData at1 = tate_at(m, pl("(t-1)"));
  EXPECT_EQ(at1.kodaira.to_string(), "I2");

  LocalData inf = tate_at(m, Place::infinity());
  EXPECT_EQ(inf.kodaira.to_string(), "I2*");
  EXPECT_EQ(inf.v_delta_min, 8);
  EXPECT_EQ(inf.component_count, 7);
  EXPECT_EQ(inf.conductor_exponent, 2);
  // the returned substitution really produces the minimal model
  EXPECT_EQ(m.transform(inf.minimal_substitution), inf.minimal_model);
}

TEST(Tate, TxPlusOneAtInfinity) {
  auto m = test::tx1();
  LocalData inf = tate_at(m, Place::infinity());
  EXPECT_EQ(inf.kodaira.to_string(), "III*");
  EXPECT_EQ(inf.v_delta_min, 9);
  EXPECT_EQ(inf.v_c4_min, 3);
  EXPECT_EQ(inf.component_count, 8);
  LocalData cubic = tate_at(m, pl("(t^3 + 27/4)"));
  EXPECT_EQ(cubic.kodaira.to_string(), "I1");
  EXPECT_EQ(tate_at(m, pl("(t)")).kodaira.to_string(), "I0");
}

TEST(Tate, AdditiveTable) {
  struct Case {
    const char* a4;
    const char* a6;
    const char* a2;
    const char* type;
    long vd;
  };
  // fibers at (t)
  std::vector<Case> cases = {
      {"t", "t", "0", "II", 2},
      {"t", "0", "t", "III", 3},
      {"t^3", "t^2", "0", "IV", 4},
      {"2*t^2 + t^3", "0", "-3*t - t^2", "I0*", 6},
      {"t^3", "t^4", "0", "IV*", 8},
      {"t^3", "t^5 + t^6", "0", "III*", 9},
      {"t^4", "t^5", "0", "II*", 10},
      {"0", "t^4", "t", "I1*", 7},
  };
  for (const auto& c : cases) {
    auto m = WeierstrassModel::parse("0", c.a2, "0", c.a4, c.a6);
    LocalData ld = tate_at(m, pl("(t)"));
    EXPECT_EQ(ld.kodaira.to_string(), c.type) << c.a4 << " " << c.a6;
    EXPECT_EQ(ld.v_delta_min, c.vd) << c.type;
    EXPECT_EQ(ld.conductor_exponent, 2);
  }
}

TEST(Tate, NonMinimalInputIsReduced) {
  // Legendre scaled by t^-1 at every coordinate: x -> t^2 x, y -> t^3 y
  auto m = test::legendre();
  Substitution scale{F("1/t"), F("0"), F("0"), F("0")};
  auto big = m.transform(scale);
  EXPECT_EQ(valuation(big.discriminant(), pl("(t)")), 14);
  LocalData ld = tate_at(big, pl("(t)"));
  EXPECT_EQ(ld.kodaira.to_string(), "I2");
  EXPECT_EQ(ld.v_delta_min, 2);
  EXPECT_LE(ld.v_delta_min, valuation(big.discriminant(), pl("(t)")));
}

TEST(Surface, LegendreInvariants) {
  auto inv = surface_invariants(test::legendre());
  EXPECT_EQ(inv.chi, 1);
  EXPECT_EQ(inv.euler, 12);
  ASSERT_EQ(inv.type_T.size(), 3u);
  EXPECT_EQ(inv.type_T[0], pl("(t-1)"));
  EXPECT_EQ(inv.type_T[1], pl("(t)"));
  EXPECT_EQ(inv.type_T[2], Place::infinity());
  EXPECT_EQ(inv.t_weighted, 3);
  EXPECT_EQ(inv.genus_g, 0);
  EXPECT_EQ(inv.fundamental_line_degree, 1);
}

TEST(Surface, TxPlusOneInvariants) {
  auto inv = surface_invariants(test::tx1());
  EXPECT_EQ(inv.chi, 1);
  ASSERT_EQ(inv.type_T.size(), 2u);
  EXPECT_EQ(inv.type_T[0], pl("(t^3 + 27/4)"));
  EXPECT_TRUE(inv.type_T[1].is_infinity());
  EXPECT_EQ(inv.t_weighted, 4);
}

TEST(Surface, QuadraticTwists) {
  // twist by t moves the I2* fiber from infinity to (t); chi unchanged
  auto by_t = WeierstrassModel::parse("0", "-(t+t^2)", "0", "t^3", "0");
  EXPECT_EQ(surface_invariants(by_t).chi, 1);
  EXPECT_EQ(bad_table(by_t).at("(t)").first, "I2*");
  EXPECT_EQ(bad_table(by_t).at("inf").first, "I2");

  // twist by d = t(t - 1): y^2 = x(x - d)(x - d t), three I2* fibers
  auto by_d = WeierstrassModel::parse("0", "-(t^2-t)*(1+t)", "0", "(t^2-t)^2*t", "0");
  auto inv = surface_invariants(by_d);
  EXPECT_GT(inv.chi, surface_invariants(test::legendre()).chi);
  EXPECT_EQ(inv.chi, 2);
  for (const char* v : {"(t)", "(t - 1)", "inf"}) EXPECT_EQ(bad_table(by_d).at(v).first, "I2*") << v;
}

TEST(Surface, Isotriviality) {
  EXPECT_TRUE(is_isotrivial(WeierstrassModel::short_form(F("0"), F("t^6"))));
  EXPECT_FALSE(is_isotrivial(test::legendre()));
  EXPECT_FALSE(is_isotrivial(test::tx1()));
  EXPECT_EQ(test::tx1().j_invariant(), F("6912*t^3/(4*t^3+27)"));
  EXPECT_THROW(surface_invariants(WeierstrassModel::short_form(F("0"), F("t^6"))), Error);
}

TEST(Surface, RankBounds) {
  EXPECT_EQ(rank_bounds(1, 0, 3).picard_bound, 10);
  EXPECT_EQ(rank_bounds(1, 0, 3).shioda_tate_bound, 2);
  EXPECT_EQ(rank_bounds(1, 0, 3).combined, 2);
  EXPECT_EQ(rank_bounds(1, 0, 1).shioda_tate_bound, 0);
  EXPECT_EQ(rank_bounds(surface_invariants(test::rank2())).combined, 6);
}

TEST(Surface, TwelveDividesDiscriminantDegree) {
  std::vector<WeierstrassModel> corpus = {
      test::legendre(), test::tx1(), test::rank2(),
      WeierstrassModel::parse("0", "-(t+t^2)", "0", "t^3", "0"),
      WeierstrassModel::parse("t", "t^2 - 1", "1", "t^3", "t^5 + 2"),
      WeierstrassModel::short_form(F("t^3"), F("t^2")),
      WeierstrassModel::short_form(F("1/t"), F("t^2/(t-1)")),
  };
  for (const auto& m : corpus) {
    EllipticSurface s(m);
    EXPECT_EQ(s.minimal_discriminant_degree() % 12, 0) << m.a4() << " " << m.a6();
    for (const auto& [v, ld] : s.special()) {
      // conductor bookkeeping
      if (ld.kodaira.is_good()) {
        EXPECT_EQ(ld.v_delta_min, 0);
        EXPECT_EQ(ld.conductor_exponent, 0);
      } else if (ld.kodaira.is_multiplicative()) {
        EXPECT_EQ(ld.conductor_exponent, 1);
        EXPECT_EQ(ld.kodaira.n, ld.v_delta_min);
      } else {
        EXPECT_EQ(ld.conductor_exponent, 2);
      }
      EXPECT_EQ(valuation(ld.minimal_model.discriminant(), v), ld.v_delta_min);
    }
  }
}

TEST(Surface, ChartInvariance) {
  test::Gen gen(424242);
  std::vector<WeierstrassModel> corpus = {test::legendre(), test::tx1(), test::rank2()};
  for (const auto& m : corpus) {
    auto expected = bad_table(m);
    long chi = surface_invariants(m).chi;
    for (int i = 0; i < 20; ++i) {
      Substitution sub{gen.nonzero_ratfunc(1), gen.ratfunc(2), gen.ratfunc(1), gen.ratfunc(2)};
      auto moved = m.transform(sub);
      ASSERT_EQ(bad_table(moved), expected);
      ASSERT_EQ(surface_invariants(moved).chi, chi);
    }
  }
}
