#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

#include "angle_forge/angles.hpp"
#include "angle_forge/errors.hpp"
#include "angle_forge/rational.hpp"

namespace angle_forge {

struct OrientedCot {
  Rational cot;
  int wedge_sign;  // +1 iff the oriented angle pxq lies in (0, pi)
};

/// cot of the oriented angle pxq, (p-x).(q-x) / (p-x)^(q-x).
inline OrientedCot oriented_cot(const RatPoint& x, const RatPoint& p, const RatPoint& q) {
  const RatPoint u = p - x;
  const RatPoint v = q - x;
  const Rational w = wedge(u, v);
  if (w == 0) {
    std::ostringstream os;
    os << "collinear triple x=" << x << " p=" << p << " q=" << q;
    fail(Errc::DegenerateAngle, os.str());
  }
  return {dot(u, v) / w, sgn(w)};
}

/// Key of the unoriented angle pxq in (0, pi).
inline CotKey unoriented_cot(const RatPoint& x, const RatPoint& p, const RatPoint& q) {
  auto oc = oriented_cot(x, p, q);
  return {oc.wedge_sign > 0 ? oc.cot : Rational(-oc.cot)};
}

inline int orientation(const RatPoint& a, const RatPoint& b, const RatPoint& c) {
  return sgn(wedge(b - a, c - a));
}

/// Indices of `pts` in counterclockwise order of the directions x->p_i,
/// starting just above angle -pi/2.
inline std::vector<std::size_t> cyclic_direction_order(const RatPoint& x, std::span<const RatPoint> pts) {
  std::vector<Direction> dirs;
  dirs.reserve(pts.size());
  for (const auto& p : pts) {
    if (p == x) {
      std::ostringstream os;
      os << "point " << p << " coincides with the vertex";
      fail(Errc::CoincidentPoint, os.str());
    }
    dirs.emplace_back(p - x);
  }
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dirs[a] < dirs[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (dirs[order[i - 1]] == dirs[order[i]]) {
      std::ostringstream os;
      os << "points " << pts[order[i - 1]] << " and " << pts[order[i]] << " lie on one ray from " << x;
      fail(Errc::TiedDirection, os.str());
    }
  }
  return order;
}

/// Lifted 4x4 determinant; true iff the four points are on one circle or line.
inline bool cocircular(const RatPoint& p, const RatPoint& q, const RatPoint& r, const RatPoint& s) {
  const RatPoint a = p - s, b = q - s, c = r - s;
  const Rational la = norm2(a), lb = norm2(b), lc = norm2(c);
  const Rational det = a.x1 * (b.x2 * lc - lb * c.x2) - a.x2 * (b.x1 * lc - lb * c.x1) + la * (b.x1 * c.x2 - b.x2 * c.x1);
  return det == 0;
}

/// True iff every point is a strict vertex of the convex hull (no three on a
/// hull edge, none inside).
inline bool convex_position(std::span<const RatPoint> pts) {
  const std::size_t n = pts.size();
  if (n <= 2) {
    return n < 2 || !(pts[0] == pts[1]);
  }
  std::vector<RatPoint> sorted(pts.begin(), pts.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  // Andrew monotone chain keeping only strict turns.
  std::vector<RatPoint> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], sorted[i]) <= 0) --k;
    hull[k++] = sorted[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orientation(hull[k - 2], hull[k - 1], sorted[i]) <= 0) --k;
    hull[k++] = sorted[i];
  }
  const std::size_t hull_size = k - 1;
  return hull_size == n;
}

}  // namespace angle_forge
