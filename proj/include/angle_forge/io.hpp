#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "angle_forge/census.hpp"
#include "angle_forge/config.hpp"
#include "angle_forge/configurations.hpp"
#include "angle_forge/errors.hpp"
#include "angle_forge/rational.hpp"

namespace angle_forge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "angle-forge/1";

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Json point_json(const RatPoint& p) { return Json::array({to_string(p.x1), to_string(p.x2)}); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump(), 10));
  fail(Errc::ParseError, "expected a rational string, got " + j.dump());
}

inline Json split_json(const SplitSpec& s) { return Json{{"p1", s.p1}, {"p2", s.p2}}; }

inline Json config_json(const Config& cfg) {
  Json j;
  j["schema"] = kSchema;
  j["name"] = cfg.name();
  if (cfg.is_coords()) {
    const auto& c = cfg.coords();
    Json pts = Json::array();
    for (const auto& p : c.points) pts.push_back(point_json(p));
    j["coords"] = pts;
    if (c.approximate) j["approximate"] = true;
  } else {
    const auto& a = cfg.arcs();
    Json arcs = Json::array();
    for (const auto& t : a.arcs) arcs.push_back(rational_json(t.turns));
    j["arcs"] = arcs;
    j["withCentre"] = a.with_centre;
  }
  if (cfg.split) j["split"] = split_json(*cfg.split);
  return j;
}

inline Config config_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::ParseError, "config must be a JSON object");
  if (j.contains("schema") && j["schema"] != kSchema)
    fail(Errc::ParseError, "unsupported schema " + j["schema"].dump());
  const std::string name = j.value("name", std::string("unnamed"));
  Config cfg;
  try {
    if (j.contains("coords") == j.contains("arcs")) fail(Errc::ParseError, "config needs exactly one of coords or arcs");
    if (j.contains("coords")) {
      CoordConfig c{name, {}, j.value("approximate", false)};
      for (const auto& p : j.at("coords")) {
        if (!p.is_array() || p.size() != 2) fail(Errc::ParseError, "a point is a pair [x1, x2]");
        c.points.emplace_back(rational_from_json(p[0]), rational_from_json(p[1]));
      }
      for (std::size_t i = 0; i < c.points.size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
          if (c.points[i] == c.points[k]) fail(Errc::CoincidentPoint, "duplicate point " + std::to_string(i));
      cfg.body = std::move(c);
    } else {
      ArcConfig a{name, {}, j.value("withCentre", false)};
      for (const auto& t : j.at("arcs")) a.arcs.emplace_back(rational_from_json(t));
      cfg.body = std::move(a);
    }
    if (j.contains("split")) {
      SplitSpec s;
      s.p1 = j.at("split").at("p1").get<std::vector<std::size_t>>();
      s.p2 = j.at("split").at("p2").get<std::vector<std::size_t>>();
      cfg.split = s;
    }
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, std::string("malformed config: ") + e.what());
  }
  return cfg;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

inline Config load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

/// Generator parameters; unused fields are ignored by the chosen kind.
struct GeneratorSpec {
  std::string kind;
  long n = 12;
  std::uint64_t seed = 1;
  unsigned precision = 32;
  Rational ratio = 2;
  bool with_centre = false;
  long den = 360;
};

inline const std::vector<std::string>& generator_kinds() {
  static const std::vector<std::string> kinds{"ngon",      "circle-arcs", "line-ap",          "parabola",
                                              "hyperbola", "log-spiral",  "convex-perturbed", "grid"};
  return kinds;
}

inline GeneratorSpec generator_from_json(const Json& j) {
  GeneratorSpec g;
  try {
    g.kind = j.at("kind").get<std::string>();
    g.n = j.value("n", g.n);
    g.seed = j.value("seed", g.seed);
    g.precision = j.value("precision", g.precision);
    if (j.contains("ratio")) g.ratio = rational_from_json(j["ratio"]);
    g.with_centre = j.value("withCentre", g.with_centre);
    g.den = j.value("den", g.den);
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, std::string("malformed generator spec: ") + e.what());
  }
  return g;
}

inline Config generate(const GeneratorSpec& g) {
  if (g.kind == "ngon") return Config{gen_ngon(g.n, g.with_centre), std::nullopt};
  if (g.kind == "circle-arcs") return Config{gen_circle_arcs(g.n, g.seed, g.den, g.with_centre), std::nullopt};
  if (g.kind == "line-ap") {
    auto l = gen_line_ap(g.n);
    return Config{l.config, l.split};
  }
  if (g.kind == "parabola") return Config{gen_parabola(g.n), std::nullopt};
  if (g.kind == "hyperbola") return Config{gen_hyperbola(g.n, g.ratio), std::nullopt};
  if (g.kind == "log-spiral") return Config{gen_log_spiral(g.n, g.precision), std::nullopt};
  if (g.kind == "convex-perturbed") return Config{gen_convex_perturbed(g.n, g.seed), std::nullopt};
  if (g.kind == "grid") return Config{gen_grid(g.n), std::nullopt};
  fail(Errc::InvalidArgument, "unknown generator kind '" + g.kind + "'");
}

inline Json census_json(const AngleCensus& c) {
  Json j;
  j["name"] = c.name;
  j["N"] = c.n;
  j["engine"] = c.engine;
  j["convention"] = "unoriented";
  j["distinct"] = c.count;
  j["K"] = rational_json(c.K);
  Json vals = Json::array();
  if (const auto* keys = std::get_if<std::vector<CotKey>>(&c.distinct)) {
    for (const auto& k : *keys) vals.push_back(rational_json(k.value));
    j["valueKind"] = "cot";
  } else {
    for (const auto& t : std::get<std::vector<TurnAngle>>(c.distinct)) vals.push_back(rational_json(t.turns));
    j["valueKind"] = "turns";
  }
  j["values"] = vals;
  return j;
}

/// Fixed-notation decimal text used for every floating value in reports.
inline std::string fixed(double v, int precision = 6) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

}  // namespace angle_forge
