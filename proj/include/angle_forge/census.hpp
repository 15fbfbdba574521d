#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "angle_forge/angles.hpp"
#include "angle_forge/config.hpp"
#include "angle_forge/errors.hpp"
#include "angle_forge/geometry.hpp"
#include "angle_forge/predicates.hpp"

namespace angle_forge {

struct AngleCensus {
  std::string name;
  std::size_t n = 0;
  std::string engine;
  std::size_t count = 0;
  Rational K;
  std::variant<std::vector<CotKey>, std::vector<TurnAngle>> distinct;  // increasing angle
};

namespace detail {

inline void require_three(std::size_t n) {
  if (n < 3) fail(Errc::TooFewPoints, "need at least 3 points, got " + std::to_string(n));
}

}  // namespace detail

/// Unoriented angle at pts[i] between pts[j] and pts[k]; nullopt when collinear.
inline std::optional<CotKey> coord_angle(std::span<const RatPoint> pts, std::size_t i, std::size_t j, std::size_t k) {
  const RatPoint u = pts[j] - pts[i], v = pts[k] - pts[i];
  const Rational w = wedge(u, v);
  if (w == 0) return std::nullopt;
  return CotKey{dot(u, v) / rabs(w)};
}

/// Angle at pts[i] between pts[j] and pts[k] for points on the unit circle or
/// its centre, in turns; nullopt when the angle is 0 or a straight angle.
inline std::optional<TurnAngle> arc_angle(std::span<const ArcPoint> pts, std::size_t i, std::size_t j, std::size_t k) {
  const ArcPoint &v = pts[i], &u = pts[j], &w = pts[k];
  auto minor = [](const TurnAngle& a, const TurnAngle& b) {
    const Rational c = (b - a).canonical().turns;
    return std::min(c, Rational(1 - c));
  };
  if (v.centre) {
    const Rational c = minor(u.pos, w.pos);
    if (c == Rational(1, 2)) return std::nullopt;
    return TurnAngle(c);
  }
  if (u.centre || w.centre) {
    const ArcPoint& other = u.centre ? w : u;
    const Rational c = minor(v.pos, other.pos);
    if (c == Rational(1, 2)) return std::nullopt;
    // base angle of the isosceles triangle with apex at the centre
    return TurnAngle(Rational(1, 4) - c / 2);
  }
  const Rational du = (u.pos - v.pos).canonical().turns;
  const Rational dw = (w.pos - v.pos).canonical().turns;
  return TurnAngle(rabs(du - dw) / 2);
}

inline AngleCensus distinct_angles_coords(const CoordConfig& cfg) {
  const auto& pts = cfg.points;
  const std::size_t n = pts.size();
  detail::require_three(n);
  std::unordered_set<CotKey, CotKeyHash> seen;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (k == i) continue;
        if (auto key = coord_angle(pts, i, j, k)) seen.insert(*key);
      }
    }
  std::vector<CotKey> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end());
  AngleCensus out{cfg.name, n, "coords", sorted.size(), make_rational(static_cast<long>(sorted.size()), static_cast<long>(n)), {}};
  out.distinct = std::move(sorted);
  return out;
}

inline AngleCensus distinct_angles_arcs(const ArcConfig& cfg) {
  const auto pts = arc_points(cfg);
  const std::size_t n = pts.size();
  detail::require_three(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pts[i] == pts[j]) fail(Errc::CoincidentPoint, "arc positions must be distinct mod 1");
  std::unordered_set<TurnAngle, TurnAngleHash> seen;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (k == i) continue;
        if (auto a = arc_angle(pts, i, j, k)) seen.insert(*a);
      }
    }
  std::vector<TurnAngle> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end());
  AngleCensus out{cfg.name, n, "arcs", sorted.size(), make_rational(static_cast<long>(sorted.size()), static_cast<long>(n)), {}};
  out.distinct = std::move(sorted);
  return out;
}

inline AngleCensus census(const Config& cfg) {
  return cfg.is_coords() ? distinct_angles_coords(cfg.coords()) : distinct_angles_arcs(cfg.arcs());
}

/// Directions from a vertex to P2, measured from a zero direction chosen so
/// that as many as possible fall in the open half turn (0, pi).
template <class Angle>
struct DirectionSet {
  Angle zero;                          // absolute zero direction
  std::vector<Angle> dirs;             // relative to zero, strictly increasing, in (0, half_turn)
  std::vector<std::size_t> members;    // P2 index of each entry of dirs
  std::size_t total = 0;               // |P2|
};

template <class G>
DirectionSet<typename G::Angle> direction_set(const typename G::Point& x, std::span<const typename G::Point> p2) {
  using Angle = typename G::Angle;
  const Angle half = Angle::half_turn();
  const std::size_t n = p2.size();
  DirectionSet<Angle> out;
  out.total = n;
  if (n == 0) return out;

  std::vector<Angle> phi;
  phi.reserve(n);
  for (const auto& p : p2) phi.push_back(G::direction(x, p));
  std::vector<std::size_t> ord(n);
  for (std::size_t i = 0; i < n; ++i) ord[i] = i;
  std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return phi[a] < phi[b]; });
  for (std::size_t i = 1; i < n; ++i)
    if (phi[ord[i - 1]] == phi[ord[i]]) fail(Errc::TiedDirection, "two points of P2 on one ray from the vertex");

  // For each start direction, count directions in the half-open half turn
  // [phi, phi + pi); the best start leaves the most directions retained.
  std::size_t best = 0, best_count = 0, best_last = 0;
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t count = 0, last = s;
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t j = ord[(s + r) % n];
      if (reduce_full(phi[j] - phi[ord[s]]) < half) {
        ++count;
        last = j;
      } else {
        break;
      }
    }
    if (count > best_count) {
      best = s;
      best_count = count;
      best_last = last;
    }
  }
  const Angle start = phi[ord[best]];
  // zero goes strictly between the previous direction (or w - pi for the last
  // retained w, whichever is closer to start) and start
  const Angle prev = phi[ord[(best + n - 1) % n]];
  const Angle back = reduce_full(phi[best_last] - half);
  auto gap_to_start = [&](const Angle& c) {
    Angle g = reduce_full(start - c);
    return g == Angle::zero() ? Angle::full_turn() : g;
  };
  const Angle lo = gap_to_start(prev) < gap_to_start(back) ? prev : back;
  out.zero = angle_between(lo, start);

  std::vector<std::pair<Angle, std::size_t>> rel;
  for (std::size_t j = 0; j < n; ++j) {
    Angle r = reduce_full(phi[j] - out.zero);
    if (Angle::zero() < r && r < half) rel.emplace_back(std::move(r), j);
  }
  std::sort(rel.begin(), rel.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (rel.size() != best_count) fail(Errc::OracleMismatch, "zero direction lost a retained direction");
  for (auto& [a, j] : rel) {
    out.dirs.push_back(a);
    out.members.push_back(j);
  }
  return out;
}

struct CrosscheckReport {
  std::size_t exact = 0;
  std::size_t oracle = 0;
  bool match = false;
};

namespace detail {

struct FloatTriple {
  double value;
  std::size_t i, j, k;
  std::size_t key;  // index of the exact key class
};

inline std::string triple_text(const FloatTriple& t) {
  std::ostringstream os;
  os << "(" << t.i << "," << t.j << "," << t.k << ")=" << t.value;
  return os.str();
}

inline CrosscheckReport cluster_compare(std::vector<FloatTriple> vals, std::size_t exact_count, double eps) {
  std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  std::size_t clusters = vals.empty() ? 0 : 1;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    const bool close = vals[i].value - vals[i - 1].value <= eps;
    const bool same = vals[i].key == vals[i - 1].key;
    if (!close) ++clusters;
    if (close != same) {
      fail(Errc::OracleMismatch, "triples " + triple_text(vals[i - 1]) + " and " + triple_text(vals[i]) +
                                     (same ? " share an exact angle but float apart" : " differ exactly but cluster"));
    }
  }
  CrosscheckReport r{exact_count, clusters, clusters == exact_count};
  if (!r.match) fail(Errc::OracleMismatch, "exact " + std::to_string(exact_count) + " vs oracle " + std::to_string(clusters));
  return r;
}

}  // namespace detail

/// Compares the exact census with a double-precision brute force that
/// clusters angle values closer than eps.
inline CrosscheckReport census_crosscheck(const Config& cfg, double eps = 1e-9) {
  const std::size_t n = cfg.size();
  if (n > 14) fail(Errc::ScaleExceeded, "float oracle limited to 14 points");
  detail::require_three(n);
  std::vector<detail::FloatTriple> vals;
  if (cfg.is_coords()) {
    const auto& pts = cfg.coords().points;
    std::unordered_map<CotKey, std::size_t, CotKeyHash> ids;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          if (i == j || i == k) continue;
          auto key = coord_angle(pts, i, j, k);
          if (!key) continue;
          const double ux = to_double(pts[j].x1) - to_double(pts[i].x1), uy = to_double(pts[j].x2) - to_double(pts[i].x2);
          const double vx = to_double(pts[k].x1) - to_double(pts[i].x1), vy = to_double(pts[k].x2) - to_double(pts[i].x2);
          const double a = std::abs(std::atan2(ux * vy - uy * vx, ux * vx + uy * vy));
          auto id = ids.emplace(*key, ids.size()).first->second;
          vals.push_back({a, i, j, k, id});
        }
    return detail::cluster_compare(std::move(vals), ids.size(), eps);
  }
  const auto pts = arc_points(cfg.arcs());
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : pts) {
    if (p.centre) {
      xy.emplace_back(0.0, 0.0);
    } else {
      const double t = 2 * std::numbers::pi * to_double(p.pos.turns);
      xy.emplace_back(std::cos(t), std::sin(t));
    }
  }
  std::unordered_map<TurnAngle, std::size_t, TurnAngleHash> ids;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (i == j || i == k) continue;
        auto key = arc_angle(pts, i, j, k);
        if (!key) continue;
        const double ux = xy[j].first - xy[i].first, uy = xy[j].second - xy[i].second;
        const double vx = xy[k].first - xy[i].first, vy = xy[k].second - xy[i].second;
        const double a = std::abs(std::atan2(ux * vy - uy * vx, ux * vx + uy * vy));
        auto id = ids.emplace(*key, ids.size()).first->second;
        vals.push_back({a, i, j, k, id});
      }
  return detail::cluster_compare(std::move(vals), ids.size(), eps);
}

}  // namespace angle_forge
