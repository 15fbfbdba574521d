#include <gtest/gtest.h>

#include "angle_forge/census.hpp"
#include "angle_forge/configurations.hpp"

using namespace angle_forge;

namespace {

Rational R(long n, long d = 1) { return make_rational(n, d); }

// Strict convex position by brute force: no three collinear and no point in a
// closed triangle of three others.
bool convex_oracle(const std::vector<RatPoint>& p) {
  const std::size_t n = p.size();
  auto o = [&](std::size_t a, std::size_t b, std::size_t c) { return sign(wedge(p[b] - p[a], p[c] - p[a])); };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        if (o(a, b, c) == 0) return false;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == a || d == b || d == c) continue;
          const int s1 = o(a, b, d), s2 = o(b, c, d), s3 = o(c, a, d);
          if (s1 == s2 && s2 == s3) return false;
        }
      }
  return true;
}

}  // namespace

TEST(Generators, NgonArcs) {
  auto sq = gen_ngon(4, false);
  ASSERT_EQ(sq.arcs.size(), 4u);
  EXPECT_EQ(sq.arcs[1].turns, R(1, 4));
  EXPECT_EQ(config_meta(Config{gen_ngon(4, true), std::nullopt}).max_cocircular, 4u);
  EXPECT_LE(distinct_angles_arcs(gen_ngon(12, true)).count, 4u * 13u);
  for (long n = 3; n <= 30; ++n) {
    const auto c = distinct_angles_arcs(gen_ngon(n, false));
    for (const auto& a : std::get<std::vector<TurnAngle>>(c.distinct)) EXPECT_EQ(Rational(a.turns * 4 * n).get_den(), 1);
  }
  EXPECT_THROW(gen_ngon(2, false), Error);
}

TEST(Generators, LineApIsRationalProgression) {
  auto ap = gen_line_ap(5);
  ASSERT_EQ(ap.config.points.size(), 5u);
  // tangent recursion from 1/7 with step 1/5
  EXPECT_EQ(ap.config.points[2].x1, R(1, 7));
  EXPECT_EQ(ap.config.points[3].x1, R(6, 17));
  // equal consecutive apex angles
  std::vector<CotKey> keys;
  for (std::size_t k = 2; k + 1 < ap.config.points.size(); ++k)
    keys.push_back(*coord_angle(ap.config.points, 0, k, k + 1));
  for (const auto& k : keys) EXPECT_EQ(k, keys.front());
  try {
    gen_line_ap(40);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PoleInAP);
  }
  EXPECT_THROW(gen_line_ap(5, R(1, 7), R(0)), Error);
  // census grows linearly
  std::size_t prev = 0;
  for (long n = 5; n <= 9; ++n) {
    const auto c = distinct_angles_coords(gen_line_ap(n).config).count;
    EXPECT_GT(c, prev);
    EXPECT_LE(c, static_cast<std::size_t>(3 * n * n));
    prev = c;
  }
}

TEST(Generators, ParabolaHyperbolaConvex) {
  for (long n = 3; n <= 10; ++n) {
    auto p = gen_parabola(n);
    EXPECT_EQ(p.points.back(), RatPoint(R(n), R(n * n)));
    EXPECT_TRUE(convex_position(p.points));
    EXPECT_TRUE(convex_oracle(p.points));
    auto h = gen_hyperbola(n);
    EXPECT_EQ(h.points.front(), RatPoint(R(2), R(1, 2)));
    EXPECT_TRUE(convex_position(h.points));
    EXPECT_TRUE(convex_oracle(h.points));
  }
  EXPECT_THROW(gen_hyperbola(5, R(1)), Error);
}

TEST(Generators, LogSpiralApproximate) {
  auto s = gen_log_spiral(8);
  EXPECT_TRUE(s.approximate);
  EXPECT_EQ(s.points.size(), 8u);
  EXPECT_EQ(convex_position(s.points), convex_oracle(s.points));
  for (long n = 4; n <= 10; ++n) {
    const auto a = distinct_angles_coords(gen_log_spiral(n, 32)).count;
    const auto b = distinct_angles_coords(gen_log_spiral(n, 64)).count;
    EXPECT_EQ(a, b) << n;
  }
}

TEST(Generators, ConvexPerturbedDeterministicAndCertified) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto a = gen_convex_perturbed(10, seed);
    auto b = gen_convex_perturbed(10, seed);
    EXPECT_EQ(a.points, b.points);
    EXPECT_TRUE(convex_oracle(a.points));
  }
  EXPECT_NE(gen_convex_perturbed(10, 1).points, gen_convex_perturbed(10, 2).points);
  EXPECT_EQ(gen_circle_arcs(9, 3).arcs, gen_circle_arcs(9, 3).arcs);
}

TEST(Meta, Grids) {
  auto g3 = config_meta(Config{gen_grid(3), std::nullopt});
  EXPECT_EQ(g3.max_collinear, 3u);
  EXPECT_EQ(g3.max_cocircular, 4u);
  EXPECT_EQ(g3.max_line_or_circle, 4u);
  EXPECT_FALSE(g3.convex_position);
  auto g4 = config_meta(Config{gen_grid(4), std::nullopt});
  EXPECT_EQ(g4.max_collinear, 4u);
}

TEST(Meta, CirclesAndCentre) {
  auto c = rational_circle_realization(gen_ngon(10, false));
  auto m = config_meta(Config{c, std::nullopt});
  EXPECT_EQ(m.max_cocircular, 10u);
  EXPECT_TRUE(m.convex_position);
  auto arcs = config_meta(Config{gen_ngon(10, true), std::nullopt});
  EXPECT_EQ(arcs.max_cocircular, 10u);
  EXPECT_EQ(arcs.max_collinear, 3u);
  EXPECT_FALSE(arcs.convex_position);
  // realisation of the same arcs agrees on the exact metadata
  auto real = config_meta(Config{rational_circle_realization(gen_ngon(10, true)), std::nullopt});
  EXPECT_EQ(real.max_cocircular, 10u);
  EXPECT_EQ(real.convex_position, false);
  ArcConfig cap{"cap", {TurnAngle(R(0)), TurnAngle(R(1, 10)), TurnAngle(R(1, 5))}, true};
  auto capm = config_meta(Config{cap, std::nullopt});
  EXPECT_TRUE(capm.convex_position);
  EXPECT_EQ(capm.max_collinear, 2u);
  EXPECT_TRUE(convex_oracle(rational_circle_realization(cap).points));
}

TEST(Meta, RandomMatchesConvexOracle) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto c = gen_convex_perturbed(9, seed);
    auto m = config_meta(Config{c, std::nullopt});
    EXPECT_TRUE(m.convex_position);
    EXPECT_GE(m.max_cocircular, 3u);
    EXPECT_LE(m.max_cocircular, 9u);
    EXPECT_EQ(m.max_collinear, 2u);
  }
  std::vector<RatPoint> many(61, RatPoint(0, 0));
  for (long i = 0; i < 61; ++i) many[i] = RatPoint(R(i), R(i * i));
  EXPECT_THROW(point_meta(many), Error);
}
