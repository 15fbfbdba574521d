#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "angle_forge/configurations.hpp"
#include "angle_forge/order_graph.hpp"
#include "oracles.hpp"

using namespace angle_forge;

namespace {

Rational R(long n, long d = 1) { return make_rational(n, d); }

std::vector<oracle::P> float_points(const std::vector<RatPoint>& v) {
  std::vector<oracle::P> out;
  for (const auto& p : v) out.push_back(oracle::to_p(p));
  return out;
}

std::vector<oracle::P> float_points(const std::vector<ArcPoint>& v) {
  std::vector<oracle::P> out;
  for (const auto& p : v) {
    if (p.centre) {
      out.push_back({0, 0});
    } else {
      const double t = 2 * std::numbers::pi * p.pos.turns.get_d();
      out.push_back({std::cos(t), std::sin(t)});
    }
  }
  return out;
}

std::vector<TurnAngle> turns(std::initializer_list<long> nums, long den) {
  std::vector<TurnAngle> out;
  for (long k : nums) out.emplace_back(R(k, den));
  return out;
}

}  // namespace

TEST(SplitConvex, ParabolaPairsAtEqualHeights) {
  CoordConfig c{"p", {{-3, 9}, {-2, 4}, {-1, 1}, {1, 1}, {2, 4}, {3, 9}}, false};
  auto pair = split_convex(c);
  EXPECT_EQ(pair.p1.size(), 2u);
  EXPECT_EQ(pair.p2.size(), 2u);
  EXPECT_TRUE(check_order_assumption(pair).ok);
}

TEST(SplitConvex, RationalOctagon) {
  CoordConfig c{"oct", {}, false};
  // half-angle tangents approximating tan(pi k / 8)
  for (long k = 0; k < 8; ++k) {
    const double u = std::tan(std::numbers::pi * (k + 0.5) / 8);
    c.points.push_back(circle_point(R(std::lround(u * 1000), 1000)));
  }
  auto pair = split_convex(c);
  EXPECT_GE(pair.p1.size(), 3u);
  EXPECT_LE(pair.p1.size(), 4u);
  EXPECT_GE(pair.p2.size(), 3u);
  EXPECT_TRUE(check_order_assumption(pair).ok);
}

TEST(SplitConvex, Errors) {
  CoordConfig line{"l", {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}, false};
  try {
    split_convex(line);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotConvexPosition);
  }
  CoordConfig small{"s", {{0, 0}, {1, 0}, {0, 1}}, false};
  EXPECT_THROW(split_convex(small), Error);
}

TEST(SplitConvex, RandomConvexSizes) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto c = gen_convex_perturbed(7 + static_cast<long>(seed), seed);
    auto pair = split_convex(c);
    const std::size_t n = c.points.size();
    EXPECT_GE(pair.p1.size() + 1, n / 2);
    EXPECT_GE(pair.p2.size() + 1, n / 2);
    EXPECT_TRUE(check_order_assumption(pair).ok);
  }
}

TEST(OrderAssumption, WitnessWhenOrdersDiffer) {
  OrderedPair<CoordGeometry> pair;
  pair.p2 = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  pair.p1 = {{1, 2}, {8, -1}};
  auto chk = check_order_assumption(pair);
  EXPECT_FALSE(chk.ok);
  ASSERT_TRUE(chk.witness.has_value());
  EXPECT_EQ((*chk.witness)[0], 1u);
  pair.p1 = {{1, 2}, {2, 2}};
  EXPECT_FALSE(check_order_assumption(pair).ok);  // (2,2) is on the diagonal
  pair.p1 = {{1, 2}};
  EXPECT_TRUE(check_order_assumption(pair).ok);
}

TEST(OrderAssumption, SingletonP2) {
  OrderedPair<CoordGeometry> pair;
  pair.p2 = {{0, 0}};
  pair.p1 = {{1, 2}, {5, 1}};
  EXPECT_TRUE(check_order_assumption(pair).ok);
}

TEST(OrderAssumption, OrderMatchesNeighbourOrderFromEveryVertex) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto pair = split_convex(gen_convex_perturbed(14, seed));
    auto order = neighbour_order(pair, 5);
    for (const auto& x : pair.p1) {
      auto o = direction_order<CoordGeometry>(x, pair.p2);
      std::rotate(o.begin(), std::find(o.begin(), o.end(), std::size_t{0}), o.end());
      EXPECT_EQ(o, order.cyclic);
    }
  }
}

TEST(NeighbourUniqueness, ValidAndBroken) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto pair = split_convex(gen_convex_perturbed(20, seed));
    EXPECT_TRUE(verify_neighbour_uniqueness(pair).ok);
  }
  OrderedPair<CoordGeometry> bad;
  bad.p1 = {{0, 0}};
  bad.p2 = {{1, 1}, {2, 2}, {3, 0}};
  try {
    verify_neighbour_uniqueness(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LemmaViolation);
  }
  OrderedPair<CoordGeometry> two;
  two.p1 = {{0, 0}};
  two.p2 = {{1, 1}, {2, 1}};
  EXPECT_TRUE(verify_neighbour_uniqueness(two).ok);
}

TEST(BuildGraph, TwoPointsOnlyDiagonal) {
  OrderedPair<CoordGeometry> pair;
  pair.p1 = {{0, 3}, {1, 4}};
  pair.p2 = {{0, 0}, {1, 0}};
  auto g = build_graph(pair, neighbour_order(pair, 5));
  EXPECT_TRUE(g.restricted.empty());
  for (const auto& e : g.edges) EXPECT_EQ(e.p, e.s);
  EXPECT_EQ(g.edges.size(), 2u);
}

TEST(BuildGraph, MatchesFloatOracleOnArcs) {
  auto cfg = gen_ngon(12, false);
  auto pair = split_arcs(cfg);
  for (std::size_t w : {1u, 3u, 5u}) {
    auto g = build_graph(pair, neighbour_order(pair, w));
    auto ref = oracle::graph_edges(float_points(pair.p1), float_points(pair.p2), w);
    EXPECT_EQ(g.edges.size(), ref.all) << w;
    EXPECT_EQ(g.restricted.size(), ref.restricted) << w;
    EXPECT_EQ(g.per_x, ref.per_x);
  }
}

TEST(BuildGraph, MatchesFloatOracleOnCoords) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto pair = split_convex(gen_convex_perturbed(16, seed));
    auto g = build_graph(pair, neighbour_order(pair, 5));
    auto ref = oracle::graph_edges(float_points(pair.p1), float_points(pair.p2), 5);
    EXPECT_EQ(g.edges.size(), ref.all);
    EXPECT_EQ(g.restricted.size(), ref.restricted);
  }
  auto par = split_convex(gen_parabola(12));
  auto g = build_graph(par, neighbour_order(par, 5));
  auto ref = oracle::graph_edges(float_points(par.p1), float_points(par.p2), 5);
  EXPECT_EQ(g.edges.size(), ref.all);
  EXPECT_EQ(g.restricted.size(), ref.restricted);
}

TEST(BuildGraph, WindowMonotoneAndRestrictedSubset) {
  auto pair = split_arcs(gen_ngon(16, false));
  std::size_t prev = 0;
  for (std::size_t w = 1; w <= 6; ++w) {
    auto g = build_graph(pair, neighbour_order(pair, w));
    EXPECT_GE(g.edges.size(), prev);
    prev = g.edges.size();
    std::set<std::array<std::size_t, 3>> all;
    for (const auto& e : g.edges) all.insert({e.x, e.p, e.s});
    for (const auto& e : g.restricted) EXPECT_TRUE(all.count({e.x, e.p, e.s}));
    for (const auto& e : g.edges) {
      EXPECT_LE(neighbour_order(pair, w).steps(e.p, e.q), w);
    }
  }
}

TEST(BuildGraph, SimilarityInvariant) {
  auto c = gen_convex_perturbed(14, 3);
  auto pair = split_convex(c);
  auto g = build_graph(pair, neighbour_order(pair, 5));
  OrderedPair<CoordGeometry> moved = pair;
  // rotation by the angle with tan 3/4 followed by scaling and translation
  auto f = [](const RatPoint& p) {
    return R(7, 3) * RatPoint(R(4, 5) * p.x1 - R(3, 5) * p.x2, R(3, 5) * p.x1 + R(4, 5) * p.x2) + RatPoint(R(2), R(-9, 4));
  };
  for (auto& p : moved.p1) p = f(p);
  for (auto& p : moved.p2) p = f(p);
  auto h = build_graph(moved, neighbour_order(moved, 5));
  EXPECT_EQ(g.edges.size(), h.edges.size());
  EXPECT_EQ(g.restricted.size(), h.restricted.size());
}

TEST(DiffLadder, Examples) {
  std::vector<TanBranchAngle> one{TanBranchAngle::arctan(R(1))};
  EXPECT_TRUE(diff_ladder<TanBranchAngle>(one).empty());
  std::vector<TanBranchAngle> three{TanBranchAngle::arctan(R(1)), TanBranchAngle::arctan(R(2)),
                                    TanBranchAngle::arctan(R(3))};
  auto l = diff_ladder<TanBranchAngle>(three);
  EXPECT_EQ(l.size(), 3u);
  // atan 3 - atan 1 = atan(1/2)
  EXPECT_EQ(l.back(), TanBranchAngle::arctan(R(1, 2)));
  auto ap = turns({1, 2, 3, 4, 5, 6, 7}, 30);
  EXPECT_EQ(diff_ladder<TurnAngle>(ap).size(), 6u);
}

TEST(Plunnecke, ApAndRandom) {
  auto ap = turns({1, 2, 3, 4, 5, 6}, 50);
  auto r = plunnecke_subset<TurnAngle, TurnAngleHash>(ap, {ap});
  EXPECT_EQ(r.subset.size(), 4u);
  EXPECT_EQ(r.sumset_size, 9u);
  EXPECT_TRUE(r.holds);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> num(1, 200);
  std::vector<TurnAngle> x;
  while (x.size() < 8) {
    TurnAngle a(R(num(rng), 401));
    if (std::find(x.begin(), x.end(), a) == x.end()) x.push_back(a);
  }
  auto b = difference_set<TurnAngle, TurnAngleHash>(x);
  auto rx = plunnecke_subset<TurnAngle, TurnAngleHash>(x, {b});
  EXPECT_GT(2 * rx.subset.size(), x.size());
  EXPECT_TRUE(rx.holds);
  // brute force check of minimality over all 5-subsets
  std::size_t best = SIZE_MAX;
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (std::popcount(mask) <= 4) continue;
    std::vector<TurnAngle> s;
    for (int i = 0; i < 8; ++i)
      if (mask & (1u << i)) s.push_back(x[i]);
    best = std::min(best, sumset<TurnAngle, TurnAngleHash>(s, b).size());
  }
  EXPECT_EQ(rx.sumset_size, best);
  std::vector<TurnAngle> big;
  for (long k = 1; k <= 13; ++k) big.emplace_back(R(k, 100));
  try {
    plunnecke_subset<TurnAngle, TurnAngleHash>(big, {big});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ScaleExceeded);
  }
}

TEST(NormalIntervals, ArithmeticProgressionAllNormal) {
  auto d = turns({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 40);
  std::vector<std::size_t> all{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto r = normal_intervals<TurnAngle, TurnAngleHash>(d, all, Integer(1), 10);
  EXPECT_EQ(r.intervals, 9u);
  EXPECT_EQ(r.normal, 9u);
  EXPECT_TRUE(r.claim1a);
  EXPECT_TRUE(r.claim1b);
  EXPECT_EQ(r.diff_size, 19u);
  EXPECT_EQ(r.sumset_size, 28u);
  EXPECT_EQ(r.nu, (std::vector<std::size_t>{9}));
}

TEST(NormalIntervals, HugeGapFailsConditionTwo) {
  auto d = turns({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, 40);
  std::vector<std::size_t> dp{0, 6, 7, 8, 9, 10, 11};
  auto r = normal_intervals<TurnAngle, TurnAngleHash>(d, dp, Integer(1), 12);
  EXPECT_FALSE(r.cond_ii[0]);
  EXPECT_EQ(r.dirs_inside[0], 5u);
  EXPECT_EQ(r.normal, 5u);
}

TEST(NormalIntervals, CountsMatchBruteForce) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> num(1, 239);
  for (int it = 0; it < 30; ++it) {
    std::set<long> ks;
    while (ks.size() < 9) ks.insert(num(rng));
    std::vector<long> kv(ks.begin(), ks.end());
    std::vector<TurnAngle> d;
    for (long k : kv) d.emplace_back(R(k, 480));
    std::vector<std::size_t> dp{0, 2, 3, 5, 6, 8};
    auto r = normal_intervals<TurnAngle, TurnAngleHash>(d, dp, Integer(1), 9);
    // integer brute force in units of 1/480
    std::set<long> diffs, sums;
    for (long a : kv)
      for (long b : kv) diffs.insert(a - b);
    for (std::size_t i : dp)
      for (long e : diffs) sums.insert(kv[i] + e);
    EXPECT_EQ(r.sumset_size, sums.size());
    for (std::size_t j = 0; j + 1 < dp.size(); ++j) {
      const long lo = kv[dp[j]], hi = kv[dp[j + 1]];
      std::size_t c = 0;
      for (long s : sums) c += (s >= lo && s < hi);
      EXPECT_EQ(r.sums_inside[j], c);
      EXPECT_EQ(r.cond_i[j], c < 49);
    }
  }
}

TEST(LowerBound, RegularPolygonsChainHolds) {
  for (long n : {8L, 12L, 16L, 20L, 24L}) {
    auto cfg = gen_ngon(n, false);
    auto pair = split_arcs(cfg);
    auto g = build_graph(pair, neighbour_order(pair, 5));
    auto cen = distinct_angles_arcs(cfg);
    auto rep = verify_lower_bound(pair, g, cfg.size(), cen.count);
    EXPECT_TRUE(rep.all(&VertexBound::square_bound)) << n;
    EXPECT_TRUE(rep.all(&VertexBound::cauchy_schwarz)) << n;
    EXPECT_TRUE(rep.all(&VertexBound::claim1b)) << n;
    EXPECT_GT(rep.ratio, 0.0);
  }
}

TEST(LowerBound, LineApChainHolds) {
  auto ap = gen_line_ap(9);
  auto pair = split_from<CoordGeometry>(std::span<const RatPoint>(ap.config.points), ap.split);
  ASSERT_TRUE(check_order_assumption(pair).ok);
  auto g = build_graph(pair, neighbour_order(pair, 5));
  auto rep = verify_lower_bound(pair, g, ap.config.points.size(), distinct_angles_coords(ap.config).count);
  EXPECT_TRUE(rep.all(&VertexBound::square_bound));
  EXPECT_TRUE(rep.all(&VertexBound::cauchy_schwarz));
  // the apex sees an arithmetic progression: one difference class
  EXPECT_EQ(rep.vertices[0].normal, 6u);
  EXPECT_EQ(rep.vertices[0].sum_nu_sq, 36u);
}
