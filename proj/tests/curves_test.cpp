#include <gtest/gtest.h>

#include <random>

#include "angle_forge/configurations.hpp"
#include "angle_forge/curves.hpp"
#include "oracles.hpp"

using namespace angle_forge;

namespace {

Rational R(long n, long d = 1) { return make_rational(n, d); }

// f built directly from N_p D_s - N_s D_p by polynomial arithmetic
Poly2 definition_poly(const RatPoint& p, const RatPoint& q, const RatPoint& s, const RatPoint& t) {
  const Poly2 x1 = Poly2::x1(), x2 = Poly2::x2();
  auto n = [&](const RatPoint& a, const RatPoint& b) {
    return (Poly2(a.x1) - x1) * (Poly2(b.x1) - x1) + (Poly2(a.x2) - x2) * (Poly2(b.x2) - x2);
  };
  auto d = [&](const RatPoint& a, const RatPoint& b) {
    return (Poly2(a.x1) - x1) * (Poly2(b.x2) - x2) - (Poly2(a.x2) - x2) * (Poly2(b.x1) - x1);
  };
  return n(p, q) * d(s, t) - n(s, t) * d(p, q);
}

RatPoint rnd(std::mt19937_64& rng, long b = 9) { return oracle::random_point(rng, b); }

std::array<RatPoint, 4> distinct4(std::mt19937_64& rng) {
  for (;;) {
    std::array<RatPoint, 4> a{rnd(rng), rnd(rng), rnd(rng), rnd(rng)};
    bool ok = true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) ok = ok && a[i] != a[j];
    if (ok) return a;
  }
}

// random line through two lattice points
Line random_line(std::mt19937_64& rng) {
  for (;;) {
    RatPoint a = rnd(rng, 5), b = rnd(rng, 5);
    if (a != b) return Line::through(a, b);
  }
}

RatPoint point_on(const Line& l, const Rational& s) {
  // base point plus s times the direction (-b, a)
  RatPoint base = l.b != 0 ? RatPoint(Rational(0), Rational(-l.c / l.b)) : RatPoint(Rational(-l.c / l.a), Rational(0));
  return base + s * RatPoint(-l.b, l.a);
}

Poly2 product(const CurveClass& c) {
  Poly2 g(Rational(1));
  for (const auto& comp : c.components) g = g * component_poly(comp);
  return g;
}

}  // namespace

TEST(CurvePoly, MatchesDefinitionAndAntisymmetry) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 200; ++it) {
    auto [p, q, s, t] = distinct4(rng);
    const auto f = curve_poly(p, q, s, t);
    EXPECT_EQ(f.poly(), definition_poly(p, q, s, t));
    const auto g = curve_poly(s, t, p, q);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(g.c[i], -f.c[i]);
    const RatPoint x = rnd(rng);
    EXPECT_EQ(f.eval(x), f.poly().eval(x));
  }
}

TEST(CurvePoly, NormalisedCoefficientMap) {
  // with p = (1, 0), q = (-1, 0), m = s + t, l = s - t the coefficients over
  // (x1^3, x1^2 x2, x1 x2^2, x2^3, x1^2, x1 x2, x2^2, x1, x2, 1) are proportional to
  // (-l2 : l1-2 : -l2 : l1-2 : m^l/2 : 2m1 : m^l/2+2m2 : l2 : -l1-(|m|^2-|l|^2)/2 : -m^l/2)
  std::mt19937_64 rng(2);
  for (int it = 0; it < 50; ++it) {
    RatPoint s = rnd(rng), t = rnd(rng);
    if (s == t) continue;
    const RatPoint p(1, 0), q(-1, 0);
    if (s == p && t == q) continue;
    const RatPoint m = s + t, l = s - t;
    const Rational ml = wedge(m, l);
    Poly2 paper;
    paper.add_term(3, 0, -l.x2);
    paper.add_term(2, 1, l.x1 - 2);
    paper.add_term(1, 2, -l.x2);
    paper.add_term(0, 3, l.x1 - 2);
    paper.add_term(2, 0, ml / 2);
    paper.add_term(1, 1, 2 * m.x1);
    paper.add_term(0, 2, ml / 2 + 2 * m.x2);
    paper.add_term(1, 0, l.x2);
    paper.add_term(0, 1, -l.x1 - (norm2(m) - norm2(l)) / 2);
    paper.add_term(0, 0, -ml / 2);
    EXPECT_TRUE(proportional(curve_poly(p, q, s, t).poly(), paper));
  }
}

TEST(CurvePoly, CubicTermsVanishIffTranslate) {
  std::mt19937_64 rng(3);
  std::size_t forced = 0;
  for (int it = 0; it < 500; ++it) {
    auto [p, q, s, t] = distinct4(rng);
    if (it % 10 == 0) {
      t = s - (p - q);
      if (t == s || (p == s && q == t)) continue;
      ++forced;
    }
    const auto f = curve_poly(p, q, s, t);
    EXPECT_EQ(!f.cubic(), p - q == s - t);
  }
  EXPECT_GE(forced, 45u);
}

TEST(CurvePoly, Errors) {
  const RatPoint a(0, 0), b(1, 0), c(2, 3);
  try {
    curve_poly(a, a, b, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegeneratePair);
  }
  try {
    curve_poly(a, b, a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IdenticalPairs);
  }
}

TEST(Membership, SymmetricInstancesLieOnCurve) {
  std::mt19937_64 rng(4);
  int checked = 0;
  for (int it = 0; it < 100; ++it) {
    const Line l = random_line(rng);
    const RatPoint p = rnd(rng), q = rnd(rng);
    const RatPoint t = l.reflect(p), s = l.reflect(q);
    if (p == q || p == t || q == s || p == s) continue;
    const RatPoint x = point_on(l, R(static_cast<long>(rng() % 11) - 5, 3));
    if (x == p || x == q || x == s || x == t) continue;
    const auto v = on_curve_iff_equal_cot(x, p, q, s, t);
    EXPECT_TRUE(v.on_curve);
    if (v.equal_cots) {
      EXPECT_TRUE(*v.equal_cots);
    }
    ++checked;
  }
  EXPECT_GE(checked, 90);
}

TEST(Membership, RotatedScaledPairsLieOnCurve) {
  // s - x, t - x are p - x, q - x rotated by the same rational rotation and scaled independently
  std::mt19937_64 rng(5);
  const std::array<std::pair<Rational, Rational>, 3> rots{{{R(3, 5), R(4, 5)}, {R(5, 13), R(-12, 13)}, {R(0), R(1)}}};
  int checked = 0;
  for (int it = 0; it < 100; ++it) {
    const RatPoint x = rnd(rng), p = rnd(rng), q = rnd(rng);
    if (x == p || x == q || p == q || wedge(p - x, q - x) == 0) continue;
    const auto& [c, sn] = rots[it % 3];
    auto rot = [&](const RatPoint& v) { return RatPoint(c * v.x1 - sn * v.x2, sn * v.x1 + c * v.x2); };
    const Rational lam = R(1 + static_cast<long>(rng() % 5), 2), mu = R(1 + static_cast<long>(rng() % 7), 3);
    const RatPoint s = x + lam * rot(p - x), t = x + mu * rot(q - x);
    if (p == s && q == t) continue;
    const auto v = on_curve_iff_equal_cot(x, p, q, s, t);
    EXPECT_TRUE(v.on_curve);
    ASSERT_TRUE(v.equal_cots.has_value());
    EXPECT_TRUE(*v.equal_cots);
    ++checked;
  }
  EXPECT_GE(checked, 90);
}

TEST(Membership, RandomPointsOffCurve) {
  std::mt19937_64 rng(6);
  for (int it = 0; it < 100; ++it) {
    auto [p, q, s, t] = distinct4(rng);
    const RatPoint x(R(static_cast<long>(rng() % 1000), 97), R(static_cast<long>(rng() % 1000), 89));
    const auto v = on_curve_iff_equal_cot(x, p, q, s, t);
    if (v.mod_pi_case) continue;
    EXPECT_EQ(v.on_curve, v.equal_cots.value_or(false));
    if (!v.on_curve) {
      // float confirmation that the cotangents differ
      const auto px = oracle::to_p(p - x), qx = oracle::to_p(q - x), sx = oracle::to_p(s - x), tx = oracle::to_p(t - x);
      const double c1 = (px.x * qx.x + px.y * qx.y) / (px.x * qx.y - px.y * qx.x);
      const double c2 = (sx.x * tx.x + sx.y * tx.y) / (sx.x * tx.y - sx.y * tx.x);
      EXPECT_GT(std::abs(c1 - c2), 1e-12);
    }
  }
}

TEST(Membership, ModPiCaseOnBothLines) {
  const RatPoint p(0, 0), q(2, 0), s(1, 1), t(1, 3);
  const RatPoint x(1, 0);  // on line pq and on line st
  const auto v = on_curve_iff_equal_cot(x, p, q, s, t);
  EXPECT_TRUE(v.mod_pi_case);
  EXPECT_TRUE(v.on_curve);
  EXPECT_FALSE(v.equal_cots.has_value());
  EXPECT_THROW(on_curve_iff_equal_cot(p, p, q, s, t), Error);
}

TEST(Classify, WorkedR2Instance) {
  const RatPoint t(0, 0), p(3, 0), q(1, 1), s(1, -1);
  const auto c = classify_curve(p, q, s, t);
  ASSERT_EQ(c.tag, CurveTag::R2);
  ASSERT_EQ(c.components.size(), 2u);
  EXPECT_EQ(std::get<Line>(c.components[0]), Line::make(R(0), R(1), R(0)));
  // the factor x1^2 + x2^2 + 4 x1 - 6 of f
  const auto& circ = std::get<Circle>(c.components[1]);
  EXPECT_EQ(circ.centre, RatPoint(-2, 0));
  EXPECT_EQ(circ.radius2, R(10));
  EXPECT_TRUE(proportional(curve_poly(p, q, s, t).poly(), product(c)));
  // the completed-square display gives centre (2, 0), radius^2 5, which does not divide f
  const auto alt = r2_circle_completed_square(p, q, t);
  EXPECT_EQ(alt.centre, RatPoint(2, 0));
  EXPECT_EQ(alt.radius2, R(5));
  EXPECT_FALSE(curve_poly(p, q, s, t).poly().divide(alt.poly()).has_value());
}

TEST(Classify, SquareIsTwoPerpendicularLines) {
  const RatPoint p(1, 0), q(-1, 0), s(1, 2), t(-1, 2);
  const auto f = curve_poly(p, q, s, t);
  EXPECT_FALSE(f.cubic());
  const auto c = classify_curve(p, q, s, t);
  ASSERT_EQ(c.tag, CurveTag::QuadraticDegenerate);
  ASSERT_EQ(c.components.size(), 2u);
  const Line a = std::get<Line>(c.components[0]), b = std::get<Line>(c.components[1]);
  EXPECT_EQ(a, Line::through(p, t));
  EXPECT_EQ(b, Line::through(q, s));
  EXPECT_EQ(a.a * b.a + a.b * b.b, 0);
  // the non-square translate is a hyperbola
  EXPECT_EQ(classify_curve(p, q, RatPoint(1, 3), RatPoint(-1, 3)).tag, CurveTag::Irreducible);
}

TEST(Classify, ConstructedR1Instances) {
  std::mt19937_64 rng(7);
  int done = 0;
  while (done < 100) {
    const Line l = random_line(rng);
    const RatPoint p = rnd(rng), q = rnd(rng);
    const RatPoint t = l.reflect(p), s = l.reflect(q);
    if (p == q || p == t || q == s || p == s || q == t) continue;
    if (p - q == s - t) continue;
    const auto c = classify_curve(p, q, s, t);
    ASSERT_EQ(c.tag, CurveTag::R1);
    EXPECT_EQ(std::get<Line>(c.components[0]), l);
    const auto& circ = std::get<Circle>(c.components[1]);
    EXPECT_TRUE(circ.contains(p) && circ.contains(q) && circ.contains(s) && circ.contains(t));
    EXPECT_TRUE(proportional(curve_poly(p, q, s, t).poly(), product(c)));
    ++done;
  }
}

TEST(Classify, ConstructedR2Instances) {
  std::mt19937_64 rng(8);
  int done = 0;
  while (done < 100) {
    const RatPoint p = rnd(rng), t = rnd(rng), q = rnd(rng);
    if (p == t) continue;
    const Line pt = Line::through(p, t);
    const RatPoint s = pt.reflect(q);
    if (q == s || p == q || p == s || q == t || s == t) continue;
    if (p - q == s - t) continue;  // rhombus
    if (mirror_line(p, q, s, t)) continue;
    const auto c = classify_curve(p, q, s, t);
    ASSERT_EQ(c.tag, CurveTag::R2);
    EXPECT_EQ(std::get<Line>(c.components[0]), pt);
    EXPECT_TRUE(proportional(curve_poly(p, q, s, t).poly(), product(c)));
    const auto& circ = std::get<Circle>(c.components[1]);
    EXPECT_TRUE(pt.contains(circ.centre));
    ++done;
  }
}

TEST(Classify, GenericQuadruplesIrreducible) {
  std::mt19937_64 rng(9);
  int irreducible = 0;
  for (int it = 0; it < 100; ++it) {
    auto [p, q, s, t] = distinct4(rng);
    const auto c = classify_curve(p, q, s, t);
    if (c.tag != CurveTag::Irreducible) continue;
    ++irreducible;
    const Poly2 f = curve_poly(p, q, s, t).poly();
    const std::array<RatPoint, 4> pts{p, q, s, t};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        EXPECT_FALSE(f.divide(Line::through(pts[i], pts[j]).poly()).has_value());
        EXPECT_FALSE(f.divide(Line::bisector(pts[i], pts[j]).poly()).has_value());
      }
  }
  EXPECT_GE(irreducible, 90);
}

TEST(CanonicalKey, ScalarsSwapsAndDistinct) {
  std::mt19937_64 rng(10);
  std::vector<CurveKey> keys;
  for (int it = 0; it < 60; ++it) {
    auto [p, q, s, t] = distinct4(rng);
    auto f = curve_poly(p, q, s, t);
    auto g = f;
    for (auto& c : g.c) c *= R(-7, 3);
    EXPECT_EQ(canonical_key(f), canonical_key(g));
    EXPECT_EQ(canonical_key(f), canonical_key(curve_poly(s, t, p, q)));
    keys.push_back(canonical_key(f));
  }
  std::size_t dup = 0;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j) dup += keys[i] == keys[j];
  EXPECT_EQ(dup, 0u);
  CurvePoly zero;
  EXPECT_THROW(canonical_key(zero), Error);
}

TEST(Multiplicity, RandomConvexSplitsPass) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto pair = split_convex(gen_convex_perturbed(12, seed));
    auto fam = multiplicity_census(pair, neighbour_order(pair, 5), 12);
    EXPECT_TRUE(fam.lemma4.ok);
    EXPECT_LE(fam.lemma4.max_per_pair, 2u);
    EXPECT_TRUE(fam.r2_ok);
    std::size_t total = 0;
    for (const auto& c : fam.curves) total += c.multiplicity;
    EXPECT_EQ(total, fam.quadruples);
  }
}

TEST(Multiplicity, TwoPointsAndCocircular) {
  OrderedPair<CoordGeometry> two;
  two.p1 = {{0, 5}, {1, 6}};
  two.p2 = {{0, 0}, {1, 0}};
  auto fam = multiplicity_census(two, neighbour_order(two, 5), 4);
  EXPECT_EQ(fam.curves.size(), 0u);  // the only quadruples are excluded by p != t
  EXPECT_TRUE(fam.lemma4.ok);
  // eight equally spaced rational points on the unit circle: powers of one rational rotation
  OrderedPair<CoordGeometry> circ;
  const RatPoint rot = circle_point(R(1, 10));
  RatPoint z(1, 0);
  for (int k = 0; k < 8; ++k) {
    circ.p2.push_back(z);
    z = RatPoint(rot.x1 * z.x1 - rot.x2 * z.x2, rot.x2 * z.x1 + rot.x1 * z.x2);
  }
  circ.p1 = {{R(-1, 3), R(1, 7)}, {R(-1, 2), R(-1, 5)}};
  ASSERT_TRUE(check_order_assumption(circ).ok);
  auto cf = multiplicity_census(circ, neighbour_order(circ, 5), 10);
  EXPECT_TRUE(cf.lemma4.ok);
  // the circle itself is a component of many R1 curves
  EXPECT_GT(cf.r1_circle_max, 8u);
}

TEST(Classify, CollinearBase) {
  // four points on the x-axis: the axis divides f, the cofactor is a circle centred on it
  const RatPoint p(1, 0), q(3, 0), s(2, 0), t(7, 0);
  const auto c = classify_curve(p, q, s, t);
  ASSERT_EQ(c.tag, CurveTag::Collinear);
  ASSERT_EQ(c.components.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<Line>(c.components[0]));
  const auto& k = std::get<Circle>(c.components[1]);
  EXPECT_EQ(k.centre.x2, 0);
  EXPECT_TRUE(detail::product_matches(curve_poly(p, q, s, t).poly(), c.components));
}

TEST(Multiplicity, CollinearP2HasNoR2Circles) {
  auto l = gen_line_ap(8);
  auto pair = split_from<CoordGeometry>(std::span<const RatPoint>(l.config.points), l.split);
  const auto fam = multiplicity_census(pair, neighbour_order(pair, 5), 8);
  EXPECT_EQ(fam.by_tag.count(CurveTag::R2), 0u);
  EXPECT_GT(fam.by_tag.at(CurveTag::Collinear), 0u);
  EXPECT_EQ(fam.r2_circle_max, 0u);
}
