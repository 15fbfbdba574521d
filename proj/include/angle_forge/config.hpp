#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "angle_forge/angles.hpp"
#include "angle_forge/rational.hpp"

namespace angle_forge {

/// Points in rational coordinates.
struct CoordConfig {
  std::string name;
  std::vector<RatPoint> points;
  bool approximate = false;  // rational approximants of an irrational construction
};

/// Points on the unit circle at rational turn positions, optionally with the centre.
struct ArcConfig {
  std::string name;
  std::vector<TurnAngle> arcs;
  bool with_centre = false;

  std::size_t size() const { return arcs.size() + (with_centre ? 1 : 0); }
};

/// A point of an arc configuration: a circle position or the centre.
struct ArcPoint {
  bool centre = false;
  TurnAngle pos;

  static ArcPoint on_circle(TurnAngle t) { return {false, t.canonical()}; }
  static ArcPoint the_centre() { return {true, TurnAngle::zero()}; }

  friend bool operator==(const ArcPoint& a, const ArcPoint& b) {
    return a.centre == b.centre && (a.centre || a.pos == b.pos);
  }
};

/// Explicit P1/P2 index lists; overrides the horizontal split.
struct SplitSpec {
  std::vector<std::size_t> p1;
  std::vector<std::size_t> p2;
};

struct Config {
  std::variant<CoordConfig, ArcConfig> body;
  std::optional<SplitSpec> split;

  bool is_coords() const { return std::holds_alternative<CoordConfig>(body); }
  bool is_arcs() const { return std::holds_alternative<ArcConfig>(body); }
  const CoordConfig& coords() const { return std::get<CoordConfig>(body); }
  const ArcConfig& arcs() const { return std::get<ArcConfig>(body); }
  const std::string& name() const { return is_coords() ? coords().name : arcs().name; }
  std::size_t size() const { return is_coords() ? coords().points.size() : arcs().size(); }
};

/// The arc configuration as a list of ArcPoints, centre last.
inline std::vector<ArcPoint> arc_points(const ArcConfig& cfg) {
  std::vector<ArcPoint> out;
  out.reserve(cfg.size());
  for (const auto& a : cfg.arcs) out.push_back(ArcPoint::on_circle(a));
  if (cfg.with_centre) out.push_back(ArcPoint::the_centre());
  return out;
}

}  // namespace angle_forge
