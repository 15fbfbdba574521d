#pragma once

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "angle_forge/errors.hpp"
#include "angle_forge/order_graph.hpp"
#include "angle_forge/poly.hpp"
#include "angle_forge/rational.hpp"

namespace angle_forge {

/// f_pqst = N_p D_s - N_s D_p with N_p = (p - x).(q - x) and
/// D_p = p^q - (p - q)^x. Coefficients c0..c7 over
/// (1, x2, x1, x1 x2, x2^2, x1^2, x2^3, x1^3); the cubic part is
/// |x|^2 (c7 x1 + c6 x2), so x1 x2^2 carries c7 and x1^2 x2 carries c6.
struct CurvePoly {
  std::array<Rational, 8> c;
  std::array<std::size_t, 4> pqst{0, 0, 0, 0};

  Poly2 poly() const {
    Poly2 f;
    f.add_term(0, 0, c[0]);
    f.add_term(0, 1, c[1]);
    f.add_term(1, 0, c[2]);
    f.add_term(1, 1, c[3]);
    f.add_term(0, 2, c[4]);
    f.add_term(2, 0, c[5]);
    f.add_term(0, 3, c[6]);
    f.add_term(3, 0, c[7]);
    f.add_term(2, 1, c[6]);
    f.add_term(1, 2, c[7]);
    return f;
  }

  Rational eval(const RatPoint& x) const {
    const Rational r2 = norm2(x);
    return c[0] + c[1] * x.x2 + c[2] * x.x1 + c[3] * x.x1 * x.x2 + c[4] * x.x2 * x.x2 + c[5] * x.x1 * x.x1 +
           r2 * (c[7] * x.x1 + c[6] * x.x2);
  }

  bool cubic() const { return c[7] != 0 || c[6] != 0; }
};

inline CurvePoly curve_poly(const RatPoint& p, const RatPoint& q, const RatPoint& s, const RatPoint& t) {
  if (p == q || s == t) fail(Errc::DegeneratePair, "a pair has coincident points");
  if (p == s && q == t) fail(Errc::IdenticalPairs, "(p, q) equals (s, t)");
  // N_p D_s with A = p + q, B = s - t, sigma = s^t, pi = p.q; then the mirror term
  auto half = [](const RatPoint& p, const RatPoint& q, const RatPoint& s, const RatPoint& t) {
    const RatPoint a = p + q, b = s - t;
    const Rational sigma = wedge(s, t), pi = dot(p, q);
    std::array<Rational, 8> h;
    h[7] = b.x2;
    h[6] = -b.x1;
    h[5] = sigma - b.x2 * a.x1;
    h[4] = sigma + b.x1 * a.x2;
    h[3] = a.x1 * b.x1 - a.x2 * b.x2;
    h[2] = b.x2 * pi - sigma * a.x1;
    h[1] = -b.x1 * pi - sigma * a.x2;
    h[0] = pi * sigma;
    return h;
  };
  const auto u = half(p, q, s, t), v = half(s, t, p, q);
  CurvePoly f;
  for (std::size_t i = 0; i < 8; ++i) f.c[i] = u[i] - v[i];
  return f;
}

struct EqualCotVerdict {
  bool on_curve = false;
  std::optional<bool> equal_cots;  // unset when both angles are 0 or pi
  bool mod_pi_case = false;         // x on both lines pq and st
  bool converse_exception = false;  // f(x) = 0 with different cotangents
};

/// Checks the forward implication equal cotangents => f(x) = 0 exactly.
inline EqualCotVerdict on_curve_iff_equal_cot(const RatPoint& x, const RatPoint& p, const RatPoint& q,
                                              const RatPoint& s, const RatPoint& t) {
  if (x == p || x == q || x == s || x == t) fail(Errc::DegenerateAngle, "x coincides with a base point");
  const CurvePoly f = curve_poly(p, q, s, t);
  EqualCotVerdict v;
  v.on_curve = f.eval(x) == 0;
  const Rational dp = wedge(p - x, q - x), ds = wedge(s - x, t - x);
  if (dp == 0 && ds == 0) {
    v.mod_pi_case = true;
    return v;
  }
  if (dp == 0 || ds == 0) {
    v.equal_cots = false;
    v.converse_exception = v.on_curve;
    return v;
  }
  v.equal_cots = Rational(dot(p - x, q - x) / dp) == Rational(dot(s - x, t - x) / ds);
  if (*v.equal_cots && !v.on_curve) fail(Errc::LemmaViolation, "equal cotangents off the curve");
  v.converse_exception = v.on_curve && !*v.equal_cots;
  return v;
}

/// Line a x1 + b x2 + c = 0 normalised so that the first nonzero coefficient is 1.
struct Line {
  Rational a, b, c;

  static Line make(Rational a, Rational b, Rational c) {
    if (a == 0 && b == 0) fail(Errc::InvalidArgument, "degenerate line");
    const Rational lead = a != 0 ? a : b;
    return {a / lead, b / lead, c / lead};
  }
  static Line through(const RatPoint& p, const RatPoint& q) {
    if (p == q) fail(Errc::CoincidentPoint, "line through one point");
    const Rational a = q.x2 - p.x2, b = p.x1 - q.x1;
    return make(a, b, -(a * p.x1 + b * p.x2));
  }
  static Line bisector(const RatPoint& p, const RatPoint& t) {
    if (p == t) fail(Errc::CoincidentPoint, "bisector of one point");
    return make(2 * (t.x1 - p.x1), 2 * (t.x2 - p.x2), norm2(p) - norm2(t));
  }

  Rational value(const RatPoint& x) const { return a * x.x1 + b * x.x2 + c; }
  bool contains(const RatPoint& x) const { return value(x) == 0; }
  RatPoint reflect(const RatPoint& x) const {
    const Rational k = 2 * value(x) / (a * a + b * b);
    return {x.x1 - k * a, x.x2 - k * b};
  }
  Poly2 poly() const { return Poly2::linear(a, b, c); }

  friend bool operator==(const Line& u, const Line& v) { return u.a == v.a && u.b == v.b && u.c == v.c; }
  friend bool operator<(const Line& u, const Line& v) {
    if (u.a != v.a) return u.a < v.a;
    if (u.b != v.b) return u.b < v.b;
    return u.c < v.c;
  }
};

struct Circle {
  RatPoint centre;
  Rational radius2;

  static std::optional<Circle> from_poly(const Poly2& q) {
    if (q.degree() != 2) return std::nullopt;
    const Rational k = q.coeff(2, 0);
    if (k == 0 || q.coeff(0, 2) != k || q.coeff(1, 1) != 0) return std::nullopt;
    const RatPoint o(-q.coeff(1, 0) / (2 * k), -q.coeff(0, 1) / (2 * k));
    return Circle{o, norm2(o) - q.coeff(0, 0) / k};
  }

  bool contains(const RatPoint& x) const { return norm2(x - centre) == radius2; }
  Poly2 poly() const {
    Poly2 f;
    f.add_term(2, 0, Rational(1));
    f.add_term(0, 2, Rational(1));
    f.add_term(1, 0, -2 * centre.x1);
    f.add_term(0, 1, -2 * centre.x2);
    f.add_term(0, 0, norm2(centre) - radius2);
    return f;
  }

  friend bool operator==(const Circle& u, const Circle& v) { return u.centre == v.centre && u.radius2 == v.radius2; }
  friend bool operator<(const Circle& u, const Circle& v) {
    if (u.centre != v.centre) return u.centre < v.centre;
    return u.radius2 < v.radius2;
  }
};

using Component = std::variant<Line, Circle>;

inline Poly2 component_poly(const Component& c) {
  return std::visit([](const auto& v) { return v.poly(); }, c);
}

inline bool component_contains(const Component& c, const RatPoint& x) {
  return std::visit([&](const auto& v) { return v.contains(x); }, c);
}

/// R1 and R2 are the two reducible scenarios for four points without three on
/// a line; Collinear is the carrier line of four collinear points times a circle.
enum class CurveTag { Irreducible, R1, R2, QuadraticDegenerate, Collinear };

constexpr std::string_view tag_name(CurveTag t) {
  switch (t) {
    case CurveTag::Irreducible: return "Irreducible";
    case CurveTag::R1: return "R1";
    case CurveTag::R2: return "R2";
    case CurveTag::QuadraticDegenerate: return "QuadraticDegenerate";
    case CurveTag::Collinear: return "Collinear";
  }
  return "Unknown";
}

struct CurveClass {
  CurveTag tag = CurveTag::Irreducible;
  std::vector<Component> components;  // empty for irreducible curves
};

/// The line reflecting p to t and q to s, when one exists.
inline std::optional<Line> mirror_line(const RatPoint& p, const RatPoint& q, const RatPoint& s, const RatPoint& t) {
  if (p != t) {
    Line l = Line::bisector(p, t);
    if (l.reflect(q) == s) return l;
    return std::nullopt;
  }
  if (q != s) {
    Line l = Line::bisector(q, s);
    if (l.contains(p)) return l;
    return std::nullopt;
  }
  return Line::through(p, q);
}

/// Circle component when q and s are mirror images in the line pt, read off
///   x2 [(p1 - 2 q1)(x1^2 + x2^2) + 2 (q1^2 + q2^2) x1 - p1 (q1^2 + q2^2)]
/// in the frame t = 0, p on the positive x1 axis: centre at x1 = -Q / (p1 - 2 q1)
/// and radius^2 = Q |p - q|^2 / (p1 - 2 q1)^2 with Q = |q - t|^2, rewritten
/// without the frame.
inline Circle r2_circle(const RatPoint& p, const RatPoint& q, const RatPoint& t) {
  const RatPoint u = p - t, v = q - t;
  const Rational den = norm2(u) - 2 * dot(v, u);
  if (den == 0) fail(Errc::SingularDenominator, "rhombus: the second component is a line");
  const RatPoint centre = t - Rational(norm2(v) / den) * u;
  return {centre, norm2(v) * norm2(p - q) * norm2(u) / (den * den)};
}

/// The completed square printed alongside that factorisation, centre
/// x1 = +Q / (p1 - 2 q1) and radius^2 = ((p1 - q1)^2 + q2^2) / (p1 - 2 q1)^2,
/// in the same frame-free form. Kept for comparison; it is not a component.
inline Circle r2_circle_completed_square(const RatPoint& p, const RatPoint& q, const RatPoint& t) {
  const RatPoint u = p - t, v = q - t;
  const Rational den = norm2(u) - 2 * dot(v, u);
  if (den == 0) fail(Errc::SingularDenominator, "rhombus: the second component is a line");
  const RatPoint centre = t + Rational(norm2(v) / den) * u;
  return {centre, norm2(p - q) * norm2(u) / (den * den)};
}

namespace detail {

inline bool product_matches(const Poly2& f, const std::vector<Component>& comps) {
  Poly2 g(Rational(1));
  for (const auto& c : comps) g = g * component_poly(c);
  return proportional(f, g);
}

/// Lines through two of the points and perpendicular bisectors of two of them.
inline std::vector<Line> candidate_lines(const std::array<RatPoint, 4>& pts) {
  std::vector<Line> out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (pts[i] != pts[j]) {
        out.push_back(Line::through(pts[i], pts[j]));
        out.push_back(Line::bisector(pts[i], pts[j]));
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::optional<Line> as_line(const Poly2& q) {
  if (q.degree() != 1) return std::nullopt;
  return Line::make(q.coeff(1, 0), q.coeff(0, 1), q.coeff(0, 0));
}

}  // namespace detail

/// Reducibility classification: exact reflection tests first, components
/// confirmed by exact polynomial identity.
inline CurveClass classify_curve(const RatPoint& p, const RatPoint& q, const RatPoint& s, const RatPoint& t) {
  const CurvePoly cp = curve_poly(p, q, s, t);
  const Poly2 f = cp.poly();
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "curve polynomial vanishes identically");
  CurveClass out;
  auto confirm = [&](CurveTag tag, std::vector<Component> comps) {
    if (!detail::product_matches(f, comps)) {
      fail(Errc::OracleMismatch, "components do not multiply to the curve polynomial");
    }
    out.tag = tag;
    out.components = std::move(comps);
    return out;
  };
  const std::array<RatPoint, 4> pts{p, q, s, t};

  if (!cp.cubic()) {
    if (f.degree() <= 1) {
      if (auto l = detail::as_line(f)) return confirm(CurveTag::QuadraticDegenerate, {*l});
    }
    // rhombus with diagonals pt and qs
    if (p != t && q != s) {
      const Line pt = Line::through(p, t), qs = Line::through(q, s);
      if (pt.reflect(q) == s && qs.reflect(p) == t) return confirm(CurveTag::QuadraticDegenerate, {pt, qs});
    }
    // collinear symmetric pair: mirror line and the carrier line
    if (auto m = mirror_line(p, q, s, t)) {
      if (auto quot = f.divide(m->poly())) {
        if (auto l = detail::as_line(*quot)) return confirm(CurveTag::QuadraticDegenerate, {*m, *l});
      }
    }
    for (const auto& l : detail::candidate_lines(pts))
      if (auto quot = f.divide(l.poly()))
        if (auto l2 = detail::as_line(*quot)) return confirm(CurveTag::QuadraticDegenerate, {l, *l2});
    return out;
  }

  if (auto m = mirror_line(p, q, s, t)) {
    auto quot = f.divide(m->poly());
    if (!quot) fail(Errc::OracleMismatch, "mirror line does not divide the curve");
    auto circ = Circle::from_poly(*quot);
    if (!circ) fail(Errc::OracleMismatch, "cofactor of the mirror line is not a circle");
    return confirm(CurveTag::R1, {*m, *circ});
  }
  if (p != t && q != s) {
    const Line pt = Line::through(p, t);
    if (pt.reflect(q) == s) return confirm(CurveTag::R2, {pt, r2_circle(p, q, t)});
    const Line qs = Line::through(q, s);
    if (qs.reflect(p) == t) return confirm(CurveTag::R2, {qs, r2_circle(q, p, s)});
  }
  // collinear base points, or coincident points outside the restricted family
  for (const auto& l : detail::candidate_lines(pts)) {
    auto quot = f.divide(l.poly());
    if (!quot) continue;
    auto circ = Circle::from_poly(*quot);
    if (!circ) fail(Errc::OracleMismatch, "cofactor of a line is not a circle");
    if (l.contains(p) && l.contains(q) && l.contains(s) && l.contains(t)) return confirm(CurveTag::Collinear, {l, *circ});
    const bool all4 = circ->contains(p) && circ->contains(q) && circ->contains(s) && circ->contains(t);
    return confirm(all4 ? CurveTag::R1 : CurveTag::R2, {l, *circ});
  }
  return out;
}

/// Coefficients c7..c0 scaled so that the first nonzero one is 1.
struct CurveKey {
  std::array<Rational, 8> v;
  friend bool operator==(const CurveKey& a, const CurveKey& b) { return a.v == b.v; }
};

struct CurveKeyHash {
  std::size_t operator()(const CurveKey& k) const noexcept {
    std::size_t h = 0;
    RationalHash rh;
    for (const auto& r : k.v) h = h * 1000003u ^ rh(r);
    return h;
  }
};

inline CurveKey canonical_key(const CurvePoly& f) {
  CurveKey k;
  std::optional<Rational> lead;
  for (std::size_t i = 0; i < 8; ++i) {
    const Rational& c = f.c[7 - i];
    if (!lead && c != 0) lead = c;
    k.v[i] = c;
  }
  if (!lead) fail(Errc::ZeroPolynomial, "zero curve has no key");
  for (auto& r : k.v) r /= *lead;
  return k;
}

inline bool restricted_quadruple(std::size_t p, std::size_t q, std::size_t s, std::size_t t) {
  return p != s && t != q && p != t && s != q;
}

struct FamilyCurve {
  CurveKey key;
  CurvePoly poly;
  CurveClass cls;
  std::size_t multiplicity = 0;
};

struct Lemma4Verdict {
  bool ok = true;
  std::size_t max_per_pair = 0;  // most (s, t) sharing one full curve with a fixed (p, q)
  std::string detail;
};

struct CurveFamily {
  std::vector<FamilyCurve> curves;   // distinct curves, first-seen order
  std::size_t quadruples = 0;        // sum of multiplicities
  std::size_t max_multiplicity = 0;
  Lemma4Verdict lemma4;
  std::size_t r2_circle_max = 0;     // largest multiplicity of an R2 circle component
  std::size_t r2_circle_bound = 0;   // 2N
  bool r2_ok = true;
  std::size_t r1_circle_max = 0;     // R1 circles may be shared by many curves; reported
  std::map<CurveTag, std::size_t> by_tag;  // distinct curves per tag
};

/// Builds the multiset of curves over restricted neighbour quadruples,
/// groups them by key and checks the multiplicity lemma. `n` is |P|.
inline CurveFamily multiplicity_census(const OrderedPair<CoordGeometry>& pair, const NeighbourOrder& order,
                                       std::size_t n, bool throw_on_violation = true) {
  CurveFamily fam;
  const auto& pts = pair.p2;
  const std::size_t n2 = pts.size();
  std::unordered_map<CurveKey, std::size_t, CurveKeyHash> index;
  std::vector<std::vector<std::array<std::size_t, 4>>> quads;
  for (std::size_t p = 0; p < n2; ++p)
    for (std::size_t q : order.within(p)) {
      std::unordered_map<CurveKey, std::vector<std::pair<std::size_t, std::size_t>>, CurveKeyHash> per_pair;
      for (std::size_t s = 0; s < n2; ++s)
        for (std::size_t t : order.within(s)) {
          if (!restricted_quadruple(p, q, s, t)) continue;
          CurvePoly f = curve_poly(pts[p], pts[q], pts[s], pts[t]);
          f.pqst = {p, q, s, t};
          CurveKey key = canonical_key(f);
          auto [it, fresh] = index.try_emplace(key, fam.curves.size());
          if (fresh) {
            fam.curves.push_back({key, f, {}, 0});
            quads.emplace_back();
          }
          ++fam.curves[it->second].multiplicity;
          quads[it->second].push_back({p, q, s, t});
          ++fam.quadruples;
          per_pair[key].emplace_back(s, t);
        }
      for (const auto& [key, list] : per_pair) {
        fam.lemma4.max_per_pair = std::max(fam.lemma4.max_per_pair, list.size());
        if (list.size() > 2 && fam.lemma4.ok) {
          fam.lemma4.ok = false;
          std::ostringstream os;
          os << "(p, q) = (" << p << ", " << q << ") shares one curve with";
          for (const auto& [s, t] : list) os << " (" << s << ", " << t << ")";
          fam.lemma4.detail = os.str();
        }
      }
    }
  std::map<Circle, std::size_t> r1, r2;
  for (std::size_t i = 0; i < fam.curves.size(); ++i) {
    auto& c = fam.curves[i];
    const auto& [p, q, s, t] = c.poly.pqst;
    c.cls = classify_curve(pts[p], pts[q], pts[s], pts[t]);
    ++fam.by_tag[c.cls.tag];
    fam.max_multiplicity = std::max(fam.max_multiplicity, c.multiplicity);
    for (const auto& comp : c.cls.components)
      if (const auto* circ = std::get_if<Circle>(&comp)) {
        if (c.cls.tag == CurveTag::R1) r1[*circ] += c.multiplicity;
        if (c.cls.tag == CurveTag::R2) r2[*circ] += c.multiplicity;
      }
  }
  for (const auto& [circ, m] : r1) fam.r1_circle_max = std::max(fam.r1_circle_max, m);
  for (const auto& [circ, m] : r2) fam.r2_circle_max = std::max(fam.r2_circle_max, m);
  fam.r2_circle_bound = 2 * n;
  fam.r2_ok = fam.r2_circle_max <= fam.r2_circle_bound;
  if (throw_on_violation && !fam.lemma4.ok) fail(Errc::LemmaViolation, fam.lemma4.detail);
  return fam;
}

}  // namespace angle_forge
