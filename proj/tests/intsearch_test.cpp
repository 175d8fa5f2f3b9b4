#include <gtest/gtest.h>

#include "corpus_curves.hpp"
#include "ellsurf/intsearch.hpp"
#include "intsearch_oracle.hpp"
#include "test_util.hpp"

using namespace ellsurf;
using test::F;
using test::oracle_integral;
using test::oracle_meets_zero;

namespace {

std::set<Place> places(const char* list) {
  auto v = parse_place_list(list);
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Bounds, HindrySilverman) {
  EXPECT_EQ(hs_height_bound(1, 0, 0), 25);
  EXPECT_EQ(hs_height_bound(1, 0, 3), 31);
  EXPECT_EQ(hs_height_bound(2, 1, 5), 66);
  EXPECT_THROW(hs_height_bound(0, 0, 0), Error);
}

TEST(Bounds, CountBound) {
  EXPECT_EQ(packing_count_bound(1, 1, 0, 7), 1);
  EXPECT_EQ(packing_count_bound(2, 3, 2, 1), 25);
  EXPECT_EQ(packing_count_bound(1, 1, 3, 2), 27);
  EXPECT_EQ(packing_count_bound(make_rat(1, 2), 0, 1, 3), 2);
  EXPECT_THROW(packing_count_bound(1, 1, -1, 0), Error);
}

TEST(Meets, AgreesWithOracleAndIntersection) {
  for (const auto& [m, gens] :
       std::vector<std::pair<WeierstrassModel, std::vector<MWPoint>>>{
           {test::tx1(), {test::tx1_generator()}},
           {test::rank2(), {test::rank2_p1(), test::rank2_p2()}}}) {
    EllipticSurface s(m);
    for (int a = -3; a <= 3; ++a) {
      for (int b = -2; b <= 2; ++b) {
        if (gens.size() == 1 && b != 0) continue;
        MWPoint p = mul(m, a, gens[0]);
        if (gens.size() > 1) p = add(m, p, mul(m, b, gens[1]));
        if (p.is_zero()) continue;
        auto got = meets(s, p, DivisorSpec::zero_section());
        EXPECT_EQ(got, oracle_meets_zero(m, p)) << p.to_string();
        auto io = intersection_with_zero(s, p);
        EXPECT_EQ(got, std::set<Place>(io.meeting_places.begin(), io.meeting_places.end()));
      }
    }
  }
}

TEST(Meets, PolynomialPointRescaledAtInfinity) {
  // no nonisotrivial curve is minimal at infinity in the naive chart, so the
  // pole of a polynomial x is partly absorbed: with u = t, x' = x / t^2
  EllipticSurface s(test::tx1());
  MWPoint p4 = mul(s.model(), 4, test::tx1_generator());
  ASSERT_EQ(tate_at(s.model(), Place::infinity()).minimal_substitution.u, F("t"));
  MWPoint p2 = mul(s.model(), 2, test::tx1_generator());
  ASSERT_TRUE(p2.x().is_polynomial());
  EXPECT_EQ(p2.x().num().degree(), 2);
  EXPECT_TRUE(meets(s, p2, DivisorSpec::zero_section()).empty());
  EXPECT_EQ(intersection_with_zero(s, p4).value, 3);
}

TEST(Meets, PointUnionTranslates) {
  EllipticSurface s(test::rank2());
  const auto& m = s.model();
  MWPoint q = test::rank2_p1();
  int checked = 0;
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      MWPoint r = add(m, mul(m, a, test::rank2_p1()), mul(m, b, test::rank2_p2()));
      if (r.is_zero()) continue;
      auto zero_meet = meets(s, r, DivisorSpec::zero_section());
      MWPoint p = add(m, q, r);
      EXPECT_EQ(meets(s, p, DivisorSpec::point_union({q})), zero_meet);
      if (zero_meet.size() == 1) ++checked;
    }
  }
  EXPECT_GT(checked, 0);
  EXPECT_THROW(meets(s, q, DivisorSpec::point_union({q})), Error);
  EXPECT_THROW(meets(s, MWPoint(), DivisorSpec::zero_section()), Error);
}

TEST(Integrality, Examples) {
  EllipticSurface s(test::rank2());
  const auto& m = s.model();
  // find points meeting O at exactly one place, and at two
  std::optional<std::pair<MWPoint, std::set<Place>>> one, two;
  for (int a = -3; a <= 3 && !(one && two); ++a) {
    for (int b = -3; b <= 3; ++b) {
      MWPoint p = add(m, mul(m, a, test::rank2_p1()), mul(m, b, test::rank2_p2()));
      if (p.is_zero()) continue;
      auto ms = meets(s, p, DivisorSpec::zero_section());
      if (ms.size() == 1 && !one) one = {{p, ms}};
      if (ms.size() == 2 && !two) two = {{p, ms}};
    }
  }
  ASSERT_TRUE(one && two);
  IntegralityConfig empty{{}, DivisorSpec::zero_section()};
  EXPECT_TRUE(is_integral(s, test::rank2_p1(), empty));
  EXPECT_TRUE(is_integral(s, one->first, {one->second, DivisorSpec::zero_section()}));
  std::set<Place> just_first{*two->second.begin()};
  EXPECT_FALSE(is_integral(s, two->first, {just_first, DivisorSpec::zero_section()}));
  EXPECT_TRUE(is_integral(s, two->first, {two->second, DivisorSpec::zero_section()}));
}

TEST(Lattice, BallMatchesBoxScan) {
  test::Gen gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    // G = A^T A + I/4 with small rational A is positive definite
    const int r = 1 + trial % 3;
    std::vector<std::vector<Rat>> a(r, std::vector<Rat>(r));
    for (auto& row : a)
      for (auto& x : row) x = gen.rat(3);
    Gram g(r, std::vector<Rat>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        for (int k = 0; k < r; ++k) g[i][j] += a[k][i] * a[k][j];
        if (i == j) g[i][j] += make_rat(1, 4);
        g[i][j].canonicalize();
      }
    Rat bound = make_rat(gen.integer(1, 12), 2);
    auto ball = lattice_ball(g, bound);
    // any n in the ball has |n_i| <= sqrt(bound / lambda_min) <= sqrt(4 bound)
    const long box = isqrt_ratio(4 * bound, 1).get_si() + 1;
    std::vector<std::vector<long>> scan;
    std::vector<long> n(r, -box);
    while (true) {
      if (quadratic_form(g, n) <= bound) scan.push_back(n);
      int i = r - 1;
      while (i >= 0 && n[i] == box) n[i--] = -box;
      if (i < 0) break;
      ++n[i];
    }
    std::sort(scan.begin(), scan.end());
    ASSERT_EQ(ball, scan) << "trial " << trial;
  }
}

TEST(Lattice, MinimumAndDependence) {
  EllipticSurface s(test::rank2());
  Gram g = gram_matrix(s, {test::rank2_p1(), test::rank2_p2()});
  EXPECT_EQ(g[0][0], make_rat(1, 3));
  EXPECT_EQ(g[0][1], make_rat(-1, 6));
  EXPECT_EQ(lattice_minimum(g), make_rat(1, 3));
  // A2 scaled: six minimal vectors
  long minimal = 0;
  for (const auto& n : lattice_ball(g, make_rat(1, 3)))
    if (quadratic_form(g, n) == make_rat(1, 3)) ++minimal;
  EXPECT_EQ(minimal, 6);

  IntegralityConfig cfg{{}, DivisorSpec::zero_section()};
  MWPoint p = test::rank2_p1();
  EXPECT_THROW(enumerate_integral(s, cfg, {p, mul(s.model(), 2, p)}, {}), Error);
  EXPECT_THROW(enumerate_integral(s, cfg, {MWPoint(F("1"), F("1"))}, {}), Error);
}

TEST(Enumerate, RankZeroTorsionOnly) {
  EllipticSurface s(test::legendre());
  std::vector<MWPoint> tors = {MWPoint(), MWPoint(F("0"), F("0")), MWPoint(F("1"), F("0")),
                               MWPoint(F("t"), F("0"))};
  auto rep = enumerate_integral(s, {{}, DivisorSpec::zero_section()}, {}, tors);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_EQ(rep.candidates, 4);
  ASSERT_EQ(rep.found.size(), 3u);
  for (const auto& fp : rep.found) {
    EXPECT_TRUE(fp.meeting_places.empty());
    EXPECT_EQ(fp.breakdown.hhat, 0);
  }
}

TEST(Enumerate, RankOneMatchesBruteForce) {
  EllipticSurface s(test::tx1());
  const auto& m = s.model();
  MWPoint g = test::tx1_generator();
  Rat hg = height(s, g);
  for (const char* list : {"", "(t)", "inf", "(t^3+27/4), inf", "(t), (t-1), inf"}) {
    std::set<Place> S = places(list);
    IntegralityConfig cfg{S, DivisorSpec::zero_section()};
    auto rep = enumerate_integral(s, cfg, {g}, {});
    ASSERT_TRUE(rep.exhaustive);
    // brute force over the same ball with the independent oracle
    long nmax = ceil_rat(Rat(isqrt_ratio(rep.height_bound, hg) + 1)).get_si();
    std::vector<MWPoint> brute;
    for (long n = -nmax; n <= nmax; ++n) {
      if (n == 0 || Rat(n * n) * hg > rep.height_bound) continue;
      MWPoint p = mul(m, n, g);
      if (oracle_integral(m, p, S)) brute.push_back(p);
    }
    std::sort(brute.begin(), brute.end());
    std::vector<MWPoint> got;
    for (const auto& fp : rep.found) got.push_back(fp.point);
    EXPECT_EQ(got, brute) << "S = {" << list << "}";
    for (const auto& fp : rep.found) {
      EXPECT_LE(fp.breakdown.hhat, rep.height_bound);
      EXPECT_EQ(fp.breakdown.hhat, hg * fp.coefficients[0] * fp.coefficients[0]);
      EXPECT_TRUE(is_integral(s, fp.point, cfg));
    }
  }
}

TEST(Enumerate, MonotoneDeterministicParallel) {
  EllipticSurface s(test::rank2());
  std::vector<MWPoint> basis = {test::rank2_p1(), test::rank2_p2()};
  SearchOptions small;
  small.bound_override = Rat(4);
  std::vector<std::set<Place>> chain = {{}, places("inf"), places("inf, (t+1)")};
  std::vector<MWPoint> previous;
  for (const auto& S : chain) {
    auto rep = enumerate_integral(s, {S, DivisorSpec::zero_section()}, basis, {}, small);
    std::vector<MWPoint> pts;
    for (const auto& fp : rep.found) pts.push_back(fp.point);
    EXPECT_TRUE(std::includes(pts.begin(), pts.end(), previous.begin(), previous.end()));
    previous = pts;
  }
  SearchOptions par = small;
  par.jobs = 4;
  auto a = enumerate_integral(s, {places("inf"), DivisorSpec::zero_section()}, basis, {}, small);
  auto b = enumerate_integral(s, {places("inf"), DivisorSpec::zero_section()}, basis, {}, par);
  auto c = enumerate_integral(s, {places("inf"), DivisorSpec::zero_section()}, {basis[1], basis[0]}, {}, small);
  ASSERT_EQ(a.found.size(), b.found.size());
  ASSERT_EQ(a.found.size(), c.found.size());
  for (size_t i = 0; i < a.found.size(); ++i) {
    EXPECT_EQ(a.found[i].point, b.found[i].point);
    EXPECT_EQ(a.found[i].point, c.found[i].point);
  }
}

TEST(Enumerate, PackingBoundHolds) {
  EllipticSurface s(test::rank2());
  std::vector<MWPoint> basis = {test::rank2_p1(), test::rank2_p2()};
  auto inv = surface_invariants(s);
  Rat mu = lattice_minimum(gram_matrix(s, basis));
  auto pc = packing_constants(inv.chi, 0, 1, rank_bounds(inv).combined, mu);
  EXPECT_EQ(pc.gamma, 3);
  SearchOptions opts;
  opts.jobs = 4;
  auto rep = enumerate_integral(s, {places("inf"), DivisorSpec::zero_section()}, basis, {}, opts);
  EXPECT_EQ(rep.height_bound, 27);
  EXPECT_LE(Integer(rep.found.size()), packing_count_bound(pc.alpha, pc.beta, pc.gamma, rep.s_weighted));
  // the raw packing count also dominates the whole ball
  EXPECT_LE(Integer(rep.candidates), packing_count_bound(pc.alpha, pc.beta, pc.gamma, rep.s_weighted));
}
