#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "angle_forge/census.hpp"
#include "angle_forge/config.hpp"
#include "angle_forge/configurations.hpp"
#include "angle_forge/convexity.hpp"
#include "angle_forge/curves.hpp"
#include "angle_forge/errors.hpp"
#include "angle_forge/incidence.hpp"
#include "angle_forge/io.hpp"
#include "angle_forge/order_graph.hpp"

namespace angle_forge {

enum class Status { Pass, Fail, NotApplicable };

constexpr const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

struct Verdict {
  std::string name;
  Status status = Status::NotApplicable;
  std::string reason;
};

inline Status pass_if(bool ok) { return ok ? Status::Pass : Status::Fail; }

struct VerifyOptions {
  std::size_t window = 5;
  double branch_c = 2;
  std::size_t c_cubic = 9;
  std::size_t c_conic = 2;
  std::size_t max_pipeline = 40;  // largest N for the curve stages
};

struct VerifyReport {
  Json json;
  std::vector<Verdict> verdicts;

  void add(std::string name, Status s, std::string reason) { verdicts.push_back({std::move(name), s, std::move(reason)}); }
  bool failed() const {
    return std::any_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.status == Status::Fail; });
  }
  /// Writes the verdict list and the overall status into the JSON document.
  void finish() {
    Json vs = Json::array();
    for (const auto& v : verdicts) vs.push_back(Json{{"name", v.name}, {"status", status_name(v.status)}, {"reason", v.reason}});
    json["verdicts"] = vs;
    json["status"] = failed() ? "fail" : "pass";
  }
  std::string csv() const {
    std::string out = "verdict,status,reason\n";
    for (const auto& v : verdicts) out += v.name + "," + status_name(v.status) + ",\"" + v.reason + "\"\n";
    return out;
  }
};

/// Error codes that mean "outside the scope of this check" rather than a failed check.
inline bool scope_error(Errc e) {
  return e == Errc::ScaleExceeded || e == Errc::HypothesisUnmet || e == Errc::TooFewPoints ||
         e == Errc::NotConvexPosition || e == Errc::DegenerateSplit;
}

inline std::string error_text(const std::string& stage, const Error& e) {
  return stage + ": " + e.what();
}

inline Json meta_json(const ConfigMeta& m) {
  return Json{{"convexPosition", m.convex_position},
              {"maxCocircular", m.max_cocircular},
              {"maxCollinear", m.max_collinear},
              {"maxOnLineOrCircle", m.max_line_or_circle}};
}

inline Json census_summary_json(const AngleCensus& c) {
  return Json{{"name", c.name}, {"N", c.n}, {"engine", c.engine}, {"convention", "unoriented"},
              {"distinct", c.count}, {"K", rational_json(c.K)}};
}

template <class G>
Json pair_json(const OrderedPair<G>& pair) {
  return Json{{"p1", pair.p1_index}, {"p2", pair.p2_index}};
}

inline Json order_json(const OrderCheck& chk) {
  Json j{{"orderAssumption", chk.ok}, {"reason", chk.reason}};
  if (chk.witness) j["witness"] = Json{(*chk.witness)[0], (*chk.witness)[1], (*chk.witness)[2]};
  if (chk.ok) j["cyclicOrder"] = chk.cyclic;
  return j;
}

inline Json lower_bound_json(const LowerBoundReport& lb) {
  Json per = Json::array();
  for (const auto& v : lb.vertices)
    per.push_back(Json{{"x", v.x},
                       {"m", v.m},
                       {"neighbours", v.neighbours},
                       {"intervals", v.intervals},
                       {"normalCount", v.normal},
                       {"sumNu", v.sum_nu},
                       {"sumNuSq", v.sum_nu_sq},
                       {"diffSize", v.diff_size},
                       {"sumsetSize", v.sumset_size},
                       {"eq1", v.eq1},
                       {"eq2", v.eq2},
                       {"c1a", v.claim1a},
                       {"c1b", v.claim1b}});
  return Json{{"window", lb.window},
              {"G", lb.edges},
              {"restrictedG", lb.restricted_edges},
              {"angles", lb.angles},
              {"K", rational_json(lb.K)},
              {"Kceil", lb.k_threshold.get_str()},
              {"ratioGK2overN3", lb.ratio},
              {"perVertex", per}};
}

/// Verdicts of the pigeonhole chain; Claim 1(1) is judged only where the
/// measured sumset bound holds.
inline void lower_bound_verdicts(const LowerBoundReport& lb, VerifyReport& rep) {
  const auto& vs = lb.vertices;
  rep.add("eq1", pass_if(lb.all(&VertexBound::eq1)), "|D_x - D_x| <= 2|A(P)| at every x");
  rep.add("eq2measured", pass_if(lb.all(&VertexBound::eq2)), "|D'_x + (D_x - D_x)| <= 16 K^2 N at every x");
  std::size_t judged = 0, bad = 0;
  for (const auto& v : vs)
    if (v.eq2) {
      ++judged;
      bad += !v.claim1a;
    }
  if (judged == 0) {
    rep.add("claim1a", Status::NotApplicable, "no vertex meets the measured sumset bound");
  } else {
    rep.add("claim1a", pass_if(bad == 0),
            std::to_string(judged - bad) + " of " + std::to_string(judged) + " vertices have >= 1/3 normal intervals");
  }
  rep.add("claim1b", pass_if(lb.all(&VertexBound::claim1b)), "normal diameters below delta_{49K^2+1}");
  rep.add("squareBound", pass_if(lb.all(&VertexBound::square_bound)), "|N(x)| >= sum nu^2");
  rep.add("cauchySchwarz", pass_if(lb.all(&VertexBound::cauchy_schwarz)), "49 K^2 |N(x)| >= (sum nu)^2");
}

/// Order assumption, neighbour uniqueness and the lower-bound chain on one pair.
template <class G>
bool order_stages(const OrderedPair<G>& pair, std::size_t n, std::size_t angles, const VerifyOptions& opt,
                  VerifyReport& rep) {
  const auto chk = check_order_assumption(pair);
  rep.json["order"] = order_json(chk);
  rep.add("orderAssumption", pass_if(chk.ok), chk.ok ? "common cyclic order" : chk.reason);
  if (!chk.ok) return false;
  try {
    verify_neighbour_uniqueness(pair);
    rep.add("lemma1", Status::Pass, "equal oriented angles pxq = sxq force p = s");
  } catch (const Error& e) {
    rep.add("lemma1", Status::Fail, error_text("lemma1", e));
  }
  const NeighbourOrder order(chk.cyclic, opt.window);
  const auto graph = build_graph(pair, order);
  const auto lb = verify_lower_bound(pair, graph, n, angles);
  rep.json["graph"] = lower_bound_json(lb);
  lower_bound_verdicts(lb, rep);
  return true;
}

inline Json curve_json(const FamilyCurve& c) {
  Json coeffs = Json::array();
  for (const auto& v : c.poly.c) coeffs.push_back(rational_json(v));
  Json comps = Json::array();
  for (const auto& comp : c.cls.components) {
    if (const auto* l = std::get_if<Line>(&comp)) {
      comps.push_back(Json{{"line", Json{rational_json(l->a), rational_json(l->b), rational_json(l->c)}}});
    } else {
      const auto& k = std::get<Circle>(comp);
      comps.push_back(Json{{"circle", Json{{"centre", point_json(k.centre)}, {"radius2", rational_json(k.radius2)}}}});
    }
  }
  return Json{{"pqst", c.poly.pqst}, {"coeffs", coeffs}, {"class", tag_name(c.cls.tag)}, {"components", comps},
              {"multiplicity", c.multiplicity}};
}

inline Json family_json(const CurveFamily& fam, bool with_curves) {
  Json tags = Json::object();
  for (const auto& [t, c] : fam.by_tag) tags[std::string(tag_name(t))] = c;
  Json j{{"curves", fam.curves.size()},
         {"quadruples", fam.quadruples},
         {"maxMultiplicity", fam.max_multiplicity},
         {"lemma4", fam.lemma4.ok ? "pass" : "fail"},
         {"lemma4MaxPerPair", fam.lemma4.max_per_pair},
         {"r1CircleMax", fam.r1_circle_max},
         {"r2CircleMax", fam.r2_circle_max},
         {"r2CircleBound", fam.r2_circle_bound},
         {"byClass", tags}};
  if (!fam.lemma4.ok) j["lemma4Detail"] = fam.lemma4.detail;
  if (with_curves) {
    Json list = Json::array();
    for (const auto& c : fam.curves) list.push_back(curve_json(c));
    j["list"] = list;
  }
  return j;
}

inline Json incidence_json(const IncidenceReport& r) {
  return Json{{"irreducible", r.irr}, {"circR1", r.circ_r1}, {"circR2", r.circ_r2}, {"lines", r.lin},
              {"total", r.total},     {"recount", r.recount}, {"mMax", r.m_max},   {"sumM", r.sum_m}};
}

inline Json bound_json(const IncidenceBound& b) {
  return Json{{"family", b.family}, {"curves", b.curves}, {"incidences", b.incidences}, {"mMax", b.m_max},
              {"sumM", b.sum_m},    {"points", b.points}, {"C", b.c},                   {"bound", b.bound},
              {"holds", b.holds}};
}

inline Json bisector_json(const BisectorEnergy& e) {
  return Json{{"N", e.n}, {"Q", e.q}, {"bisectors", e.lines}, {"maxN", e.max_n}, {"Mprime", e.m_prime},
              {"ratio", e.ratio}};
}

inline Json tradeoff_json(const Tradeoff& t) {
  return Json{{"N", t.n},           {"angles", t.angles},     {"K", rational_json(t.k)}, {"M", t.m},
              {"c", t.c},           {"kBranch", t.k_branch},  {"mBranch", t.m_branch},   {"branch", t.branch},
              {"KN", t.kn},         {"growth", t.growth},     {"combined", t.combined},  {"floor", t.floor}};
}

/// Distinct circles and lines among the components of a family, as polynomials.
inline std::vector<Poly2> circles_and_lines(const CurveFamily& fam) {
  std::set<Circle> circles;
  std::set<Line> lines;
  for (const auto& c : fam.curves)
    for (const auto& comp : c.cls.components) {
      if (const auto* l = std::get_if<Line>(&comp)) {
        lines.insert(*l);
      } else {
        circles.insert(std::get<Circle>(comp));
      }
    }
  std::vector<Poly2> out;
  for (const auto& k : circles) out.push_back(k.poly());
  for (const auto& l : lines) out.push_back(l.poly());
  return out;
}

/// Smallest k with k^2 >= 16 n.
inline std::size_t rich_threshold(std::size_t n) {
  std::size_t k = 0;
  while (k * k < 16 * n) ++k;
  return k;
}

/// Curves, classification, multiplicities, incidences and the incidence
/// lemmas on a coordinate pair satisfying the order assumption.
inline void curve_stages(const OrderedPair<CoordGeometry>& pair, std::size_t n, const VerifyOptions& opt,
                         std::optional<std::size_t> restricted_edges, VerifyReport& rep) {
  const auto chk = check_order_assumption(pair);
  if (!chk.ok) {
    rep.add("lemma4", Status::NotApplicable, "curve pair fails the order assumption: " + chk.reason);
    return;
  }
  const NeighbourOrder order(chk.cyclic, opt.window);
  const auto fam = multiplicity_census(pair, order, n, false);
  rep.json["curves"] = family_json(fam, false);
  rep.add("lemma4", pass_if(fam.lemma4.ok),
          fam.lemma4.ok ? "at most " + std::to_string(fam.lemma4.max_per_pair) + " pairs (s, t) per (p, q) and curve"
                        : fam.lemma4.detail);
  rep.add("r2CircleMultiplicity", pass_if(fam.r2_ok),
          std::to_string(fam.r2_circle_max) + " <= 2N = " + std::to_string(fam.r2_circle_bound));

  const auto inc = weighted_incidences(pair.p1, fam);
  rep.json["incidence"] = incidence_json(inc);
  rep.add("incidenceRecount", pass_if(inc.total == inc.recount && inc.total == inc.irr + inc.circ_r1 + inc.circ_r2 + inc.lin),
          "decomposition total " + std::to_string(inc.total) + ", recount " + std::to_string(inc.recount));
  if (restricted_edges) {
    rep.add("edgesViaIncidences", pass_if(*restricted_edges <= inc.total),
            "restricted |G| = " + std::to_string(*restricted_edges) + " <= weighted incidences " + std::to_string(inc.total));
  }

  Json bounds = Json::array();
  try {
    const auto checks = incidence_bound_checks(pair.p1, fam, opt.c_cubic, opt.c_conic);
    bool ok = true;
    for (const auto& b : checks) {
      bounds.push_back(bound_json(b));
      ok = ok && b.holds;
    }
    rep.add("incidenceLemma", pass_if(ok), "m_max|P| + C^(1/2) (sum m) |P|^(1/2) on four sub-families");
  } catch (const Error& e) {
    rep.add("incidenceLemma", scope_error(e.code()) ? Status::NotApplicable : Status::Fail, error_text("incidence", e));
  }
  rep.json["incidenceBounds"] = bounds;

  try {
    const auto curves = circles_and_lines(fam);
    const std::size_t k0 = rich_threshold(pair.p1.size());
    std::vector<RichCurves> rows;
    for (std::size_t k : {std::size_t{3}, std::size_t{4}, k0}) rows.push_back(rich_curves(pair.p1, curves, k));
    Json rich = Json::array();
    bool ok = true;
    for (const auto& r : rows) {
      rich.push_back(Json{{"k", r.k}, {"richCount", r.count}, {"applies", r.applies}, {"holds", r.holds}});
      ok = ok && r.holds;
    }
    rep.json["richCurves"] = rich;
    rep.add("richCurves", pass_if(ok), "k >= 4 sqrt(|P1|) gives count < 2|P1|/k; k0 = " + std::to_string(k0));
  } catch (const Error& e) {
    rep.add("richCurves", scope_error(e.code()) ? Status::NotApplicable : Status::Fail, error_text("rich", e));
  }

  if (pair.p2.size() >= 2) rep.json["bisectorEnergy"] = bisector_json(bisector_energy(pair.p2));
}

inline VerifyReport report_header(const Config& cfg, const std::string& command, const VerifyOptions& opt) {
  VerifyReport rep;
  rep.json["schema"] = kSchema;
  rep.json["command"] = command;
  rep.json["config"] = Json{{"name", cfg.name()}, {"kind", cfg.is_coords() ? "coords" : "arcs"}, {"N", cfg.size()}, {"window", opt.window}};
  return rep;
}

inline OrderedPair<CoordGeometry> coord_split(const Config& cfg) {
  return cfg.split ? split_from<CoordGeometry>(cfg.coords().points, *cfg.split) : split_convex(cfg.coords());
}

inline OrderedPair<ArcGeometry> arc_split(const Config& cfg) {
  if (!cfg.split) return split_arcs(cfg.arcs());
  const auto pts = arc_points(cfg.arcs());
  return split_from<ArcGeometry>(pts, *cfg.split);
}

/// The coordinate pair used by the curve stages; arc configs go through their
/// rational unit-circle realization with the arc split's indices.
inline OrderedPair<CoordGeometry> curve_pair(const Config& cfg, VerifyReport& rep) {
  if (cfg.is_coords()) return coord_split(cfg);
  const auto pair = arc_split(cfg);
  const auto real = rational_circle_realization(cfg.arcs());
  rep.json["curveRealization"] = "rational unit-circle points near each arc position";
  return split_from<CoordGeometry>(real.points, SplitSpec{pair.p1_index, pair.p2_index});
}

/// Runs one stage, recording a module error as fail or not-applicable.
template <class F>
void guarded(VerifyReport& rep, const std::string& stage, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    rep.add(stage, scope_error(e.code()) ? Status::NotApplicable : Status::Fail, error_text(stage, e));
  }
}

inline VerifyReport check_order_report(const Config& cfg, const VerifyOptions& opt = {}) {
  auto rep = report_header(cfg, "check-order", opt);
  guarded(rep, "split", [&] {
    auto run = [&](const auto& pair) {
      rep.json["split"] = pair_json(pair);
      const auto chk = check_order_assumption(pair);
      rep.json["order"] = order_json(chk);
      rep.add("orderAssumption", pass_if(chk.ok), chk.ok ? "common cyclic order" : chk.reason);
    };
    if (cfg.is_coords()) run(coord_split(cfg)); else run(arc_split(cfg));
  });
  rep.finish();
  return rep;
}

inline VerifyReport graph_report(const Config& cfg, const VerifyOptions& opt = {}) {
  auto rep = report_header(cfg, "graph", opt);
  guarded(rep, "split", [&] {
    const std::size_t angles = census(cfg).count;
    auto run = [&](const auto& pair) {
      rep.json["split"] = pair_json(pair);
      order_stages(pair, cfg.size(), angles, opt, rep);
    };
    if (cfg.is_coords()) run(coord_split(cfg)); else run(arc_split(cfg));
  });
  rep.finish();
  return rep;
}

inline void require_pipeline_scale(const Config& cfg, const VerifyOptions& opt) {
  if (cfg.size() > opt.max_pipeline)
    fail(Errc::ScaleExceeded, "curve stages limited to N <= " + std::to_string(opt.max_pipeline));
}

inline VerifyReport curves_report(const Config& cfg, const VerifyOptions& opt = {}) {
  auto rep = report_header(cfg, "curves", opt);
  guarded(rep, "curves", [&] {
    require_pipeline_scale(cfg, opt);
    const auto pair = curve_pair(cfg, rep);
    rep.json["split"] = pair_json(pair);
    const auto chk = check_order_assumption(pair);
    rep.add("orderAssumption", pass_if(chk.ok), chk.ok ? "common cyclic order" : chk.reason);
    if (!chk.ok) return;
    const auto fam = multiplicity_census(pair, NeighbourOrder(chk.cyclic, opt.window), cfg.size(), false);
    rep.json["curves"] = family_json(fam, true);
    rep.add("lemma4", pass_if(fam.lemma4.ok), fam.lemma4.ok ? "at most 2 pairs (s, t) per (p, q) and curve" : fam.lemma4.detail);
    rep.add("r2CircleMultiplicity", pass_if(fam.r2_ok),
            std::to_string(fam.r2_circle_max) + " <= 2N = " + std::to_string(fam.r2_circle_bound));
  });
  rep.finish();
  return rep;
}

inline VerifyReport incidence_report(const Config& cfg, const VerifyOptions& opt = {}) {
  auto rep = report_header(cfg, "incidence", opt);
  guarded(rep, "incidence", [&] {
    require_pipeline_scale(cfg, opt);
    const auto pair = curve_pair(cfg, rep);
    rep.json["split"] = pair_json(pair);
    curve_stages(pair, cfg.size(), opt, std::nullopt, rep);
  });
  rep.finish();
  return rep;
}

inline VerifyReport bisector_report(const Config& cfg, const VerifyOptions& opt = {}) {
  auto rep = report_header(cfg, "bisector-energy", opt);
  guarded(rep, "bisectorEnergy", [&] {
    const auto pair = curve_pair(cfg, rep);
    rep.json["split"] = pair_json(pair);
    rep.json["bisectorEnergy"] = bisector_json(bisector_energy(pair.p2));
  });
  rep.finish();
  return rep;
}

/// The full pipeline on one configuration.
inline VerifyReport verify_all(const Config& cfg, const VerifyOptions& opt = {}) {
  auto rep = report_header(cfg, "verify-all", opt);
  const std::size_t n = cfg.size();

  std::optional<ConfigMeta> meta;
  try {
    meta = config_meta(cfg);
    rep.json["meta"] = meta_json(*meta);
  } catch (const Error& e) {
    rep.json["meta"] = nullptr;
    rep.add("meta", Status::NotApplicable, error_text("meta", e));
  }

  AngleCensus cen;
  try {
    cen = census(cfg);
  } catch (const Error& e) {
    rep.add("census", Status::Fail, error_text("census", e));
    rep.finish();
    return rep;
  }
  rep.json["census"] = census_summary_json(cen);
  if (n <= 14) {
    try {
      const auto cc = census_crosscheck(cfg);
      rep.add("censusOracle", pass_if(cc.match), "exact " + std::to_string(cc.exact) + ", float oracle " + std::to_string(cc.oracle));
    } catch (const Error& e) {
      rep.add("censusOracle", Status::Fail, error_text("census oracle", e));
    }
  } else {
    rep.add("censusOracle", Status::NotApplicable, "float oracle limited to N <= 14");
  }

  std::optional<OrderedPair<CoordGeometry>> coord_pair;
  std::optional<std::size_t> restricted;
  try {
    if (cfg.is_coords()) {
      auto pair = coord_split(cfg);
      rep.json["split"] = pair_json(pair);
      if (order_stages(pair, n, cen.count, opt, rep)) {
        coord_pair = pair;
        restricted = rep.json["graph"]["restrictedG"].get<std::size_t>();
      }
    } else {
      auto pair = arc_split(cfg);
      rep.json["split"] = pair_json(pair);
      if (order_stages(pair, n, cen.count, opt, rep)) {
        const auto real = rational_circle_realization(cfg.arcs());
        coord_pair = split_from<CoordGeometry>(real.points, SplitSpec{pair.p1_index, pair.p2_index});
        rep.json["curveRealization"] = "rational unit-circle points near each arc position";
      }
    }
  } catch (const Error& e) {
    rep.add("split", scope_error(e.code()) ? Status::NotApplicable : Status::Fail, error_text("split", e));
  }

  if (coord_pair) {
    if (n > opt.max_pipeline) {
      rep.add("lemma4", Status::NotApplicable, "curve stages limited to N <= " + std::to_string(opt.max_pipeline));
    } else {
      try {
        curve_stages(*coord_pair, n, opt, restricted, rep);
      } catch (const Error& e) {
        rep.add("curves", scope_error(e.code()) ? Status::NotApplicable : Status::Fail, error_text("curves", e));
      }
    }
  }

  if (meta) {
    const auto t = theorem_main_tradeoff(cen, meta->max_cocircular, opt.branch_c);
    rep.json["branch"] = tradeoff_json(t);
  }
  rep.finish();
  return rep;
}

/// Second-derivative sign scan at x and the angle-growth table for AP arcs
/// seen from a and from (x, 0).
inline Json convexity_json(const Rational& x, const TurnAngle& a, const std::vector<std::size_t>& sizes, unsigned bits) {
  if (sizes.empty()) fail(Errc::InvalidArgument, "convexity needs at least one size");
  PrecisionGuard guard(bits);
  const Real rx = to_real(x);
  const auto scan = sign_scan(rx);
  Json sign{{"x", to_string(x)},           {"grid", scan.grid},         {"positive", scan.positive},
            {"negative", scan.negative}, {"zero", scan.zero},         {"singular", scan.singular},
            {"constant", scan.constant}, {"branchConstant", scan.branch_constant}};
  if (x > 1) sign["tangency"] = fixed(Real(acos(1 / rx)).convert_to<double>(), 12);
  const std::size_t top = *std::max_element(sizes.begin(), sizes.end());
  const auto g = growth_measure({a, rx, ap_quadrant_arcs(top)}, sizes, bits);
  Json rows = Json::array();
  for (const auto& r : g.rows)
    rows.push_back(Json{{"size", r.size}, {"anglesAtA", r.at_a}, {"anglesAtX", r.at_x}, {"union", r.union_count},
                        {"BminusB", r.b_diff}, {"fBminusfB", r.fb_diff}});
  Json growth{{"a", to_string(a.turns)}, {"rows", rows}, {"precision", g.precision},
              {"epsCoarse", g.eps_coarse}, {"epsFine", g.eps_fine}};
  if (g.rows.size() >= 2) {
    growth["exponent"] = fixed(g.exponent);
    growth["residual"] = fixed(g.residual);
  }
  growth["reference"] = "13/10";
  return Json{{"schema", kSchema}, {"command", "convexity"}, {"sign", sign}, {"growth", growth}};
}

struct SweepRow {
  long n = 0;
  std::size_t points = 0;
  std::size_t angles = 0;
  double k = 0;
  std::optional<std::size_t> edges;
};

struct SweepReport {
  std::string kind;
  std::vector<SweepRow> rows;
  PowerFit angles_fit;
  std::optional<PowerFit> edges_fit;
};

/// Census and graph size across generator sizes, with power-law fits.
inline SweepReport sweep(GeneratorSpec spec, const std::vector<long>& sizes, std::size_t window = 5) {
  if (sizes.size() < 3) fail(Errc::InvalidArgument, "sweep needs at least three sizes");
  SweepReport rep;
  rep.kind = spec.kind;
  std::vector<double> xs, ya, ye;
  bool all_edges = true;
  for (long sz : sizes) {
    spec.n = sz;
    const Config cfg = generate(spec);
    const auto cen = census(cfg);
    SweepRow row;
    row.n = sz;
    row.points = cfg.size();
    row.angles = cen.count;
    row.k = to_double(cen.K);
    try {
      if (cfg.is_coords()) {
        auto pair = coord_split(cfg);
        row.edges = build_graph(pair, neighbour_order(pair, window)).edges.size();
      } else {
        auto pair = arc_split(cfg);
        row.edges = build_graph(pair, neighbour_order(pair, window)).edges.size();
      }
    } catch (const Error&) {
      all_edges = false;
    }
    xs.push_back(static_cast<double>(row.points));
    ya.push_back(static_cast<double>(row.angles));
    if (row.edges) ye.push_back(static_cast<double>(std::max<std::size_t>(*row.edges, 1)));
    rep.rows.push_back(row);
  }
  rep.angles_fit = fit_power(xs, ya);
  if (all_edges) rep.edges_fit = fit_power(xs, ye);
  return rep;
}

inline Json sweep_json(const SweepReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"n", row.n}, {"N", row.points}, {"angles", row.angles}, {"K", row.k}};
    j["edges"] = row.edges ? Json(*row.edges) : Json(nullptr);
    rows.push_back(j);
  }
  Json fits{{"angles", Json{{"exponent", r.angles_fit.exponent}, {"residual", r.angles_fit.residual}}}};
  if (r.edges_fit) fits["edges"] = Json{{"exponent", r.edges_fit->exponent}, {"residual", r.edges_fit->residual}};
  return Json{{"schema", kSchema}, {"command", "sweep"}, {"kind", r.kind}, {"rows", rows}, {"fits", fits}};
}

inline std::string sweep_csv(const SweepReport& r) {
  std::string out = "kind,n,N,angles,K,edges\n";
  for (const auto& row : r.rows)
    out += r.kind + "," + std::to_string(row.n) + "," + std::to_string(row.points) + "," + std::to_string(row.angles) + "," +
           fixed(row.k) + "," + (row.edges ? std::to_string(*row.edges) : std::string()) + "\n";
  out += "\nseries,exponent,residual\n";
  out += "angles," + fixed(r.angles_fit.exponent) + "," + fixed(r.angles_fit.residual) + "\n";
  if (r.edges_fit) out += "edges," + fixed(r.edges_fit->exponent) + "," + fixed(r.edges_fit->residual) + "\n";
  return out;
}

}  // namespace angle_forge
