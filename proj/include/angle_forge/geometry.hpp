#pragma once

#include <optional>
#include <sstream>

#include "angle_forge/angles.hpp"
#include "angle_forge/config.hpp"
#include "angle_forge/errors.hpp"
#include "angle_forge/predicates.hpp"

namespace angle_forge {

// Two geometry policies share the order-graph code. Each supplies a point
// type, an absolute direction angle in [0, full_turn), and the key of the
// oriented angle pxq when it lies in (0, half_turn).

/// A point of the open arc strictly inside the counterclockwise arc from a to b.
inline TanBranchAngle angle_between(const TanBranchAngle& a, const TanBranchAngle& b) {
  const RatPoint u = a.to_vector(), v = b.to_vector();
  auto unit = [](const RatPoint& w) { return Rational(1) / (rabs(w.x1) + rabs(w.x2)) * w; };
  TanBranchAngle gap = (b - a).reduced();
  if (gap == TanBranchAngle::zero()) return TanBranchAngle::from_vector(-u);
  if (gap == TanBranchAngle::half_turn()) return TanBranchAngle::from_vector(rot90(u));
  const RatPoint mid = unit(u) + unit(v);
  if (gap < TanBranchAngle::half_turn()) return TanBranchAngle::from_vector(mid);
  return TanBranchAngle::from_vector(-mid);
}

inline TurnAngle angle_between(const TurnAngle& a, const TurnAngle& b) {
  TurnAngle gap = (b - a).canonical();
  if (gap == TurnAngle::zero()) gap = TurnAngle::full_turn();
  return TurnAngle(a.turns + gap.turns / 2).canonical();
}

inline TanBranchAngle reduce_full(const TanBranchAngle& a) { return a.reduced(); }
inline TurnAngle reduce_full(const TurnAngle& a) { return a.canonical(); }

struct CoordGeometry {
  using Point = RatPoint;
  using Angle = TanBranchAngle;
  using AngleHash = TanBranchAngleHash;
  using Key = CotKey;
  using KeyHash = CotKeyHash;

  static constexpr const char* name = "coords";

  static Angle direction(const Point& x, const Point& p) {
    if (x == p) fail(Errc::CoincidentPoint, "direction from a point to itself");
    return TanBranchAngle::from_vector(p - x);
  }

  static std::optional<Key> oriented_key(const Point& x, const Point& p, const Point& q) {
    const RatPoint u = p - x, v = q - x;
    const Rational w = wedge(u, v);
    if (w <= 0) return std::nullopt;
    return CotKey{dot(u, v) / w};
  }

  static bool same_point(const Point& a, const Point& b) { return a == b; }
};

struct ArcGeometry {
  using Point = ArcPoint;
  using Angle = TurnAngle;
  using AngleHash = TurnAngleHash;
  using Key = TurnAngle;
  using KeyHash = TurnAngleHash;

  static constexpr const char* name = "arcs";

  static Angle direction(const Point& x, const Point& p) {
    if (x == p) fail(Errc::CoincidentPoint, "direction from a point to itself");
    if (x.centre) return p.pos;
    if (p.centre) return TurnAngle(x.pos.turns + Rational(1, 2)).canonical();
    const Rational d = (p.pos - x.pos).canonical().turns;
    return TurnAngle(x.pos.turns + d / 2 + Rational(1, 4)).canonical();
  }

  static std::optional<Key> oriented_key(const Point& x, const Point& p, const Point& q) {
    const TurnAngle a = (direction(x, q) - direction(x, p)).canonical();
    if (a == TurnAngle::zero() || !(a < TurnAngle::half_turn())) return std::nullopt;
    return a;
  }

  static bool same_point(const Point& a, const Point& b) { return a == b; }
};

}  // namespace angle_forge
