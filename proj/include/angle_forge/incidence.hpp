#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "angle_forge/configurations.hpp"
#include "angle_forge/curves.hpp"
#include "angle_forge/errors.hpp"
#include "angle_forge/poly.hpp"

namespace angle_forge {

/// Incidence of a P1 point with a curve, attributed to the first component
/// of the curve that contains the point.
struct IncidenceReport {
  std::size_t irr = 0;      // irreducible curves, and the conic of a collinear base
  std::size_t circ_r1 = 0;  // circles through p, q, s, t
  std::size_t circ_r2 = 0;  // circles centred on the line pt (or qs)
  std::size_t lin = 0;      // linear components
  std::size_t total = 0;    // sum of the four parts
  std::size_t recount = 0;  // sum over curves of m times on-curve points, other loop order
  std::size_t m_max = 0;
  std::size_t sum_m = 0;
};

inline IncidenceReport weighted_incidences(std::span<const RatPoint> p1, const CurveFamily& fam) {
  IncidenceReport r;
  for (const auto& c : fam.curves) {
    r.m_max = std::max(r.m_max, c.multiplicity);
    r.sum_m += c.multiplicity;
    for (const auto& x : p1) {
      if (c.cls.components.empty()) {
        if (c.poly.eval(x) == 0) r.irr += c.multiplicity;
        continue;
      }
      for (const auto& comp : c.cls.components) {
        if (!component_contains(comp, x)) continue;
        if (std::holds_alternative<Line>(comp)) {
          r.lin += c.multiplicity;
        } else if (c.cls.tag == CurveTag::R1) {
          r.circ_r1 += c.multiplicity;
        } else if (c.cls.tag == CurveTag::R2) {
          r.circ_r2 += c.multiplicity;
        } else {
          r.irr += c.multiplicity;
        }
        break;
      }
    }
  }
  r.total = r.irr + r.circ_r1 + r.circ_r2 + r.lin;
  for (const auto& x : p1)
    for (const auto& c : fam.curves)
      if (c.poly.eval(x) == 0) r.recount += c.multiplicity;
  return r;
}

/// A curve of a weighted multiset: its polynomial and multiplicity.
struct WeightedCurve {
  Poly2 poly;
  std::size_t multiplicity = 1;
};

struct IncidenceBound {
  std::string family;
  std::size_t curves = 0;
  std::size_t incidences = 0;
  std::size_t m_max = 0;
  std::size_t sum_m = 0;
  std::size_t points = 0;
  std::size_t c = 0;
  double bound = 0;  // m_max |P| + C^(1/2) (sum m) |P|^(1/2)
  bool holds = true;
};

namespace detail {

using Mask = std::vector<std::uint64_t>;

inline Mask incidence_mask(const Poly2& f, std::span<const RatPoint> pts) {
  Mask m((pts.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (f.eval(pts[i]) == 0) m[i / 64] |= std::uint64_t{1} << (i % 64);
  return m;
}

inline std::size_t popcount(const Mask& m) {
  std::size_t c = 0;
  for (auto w : m) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

inline std::size_t common(const Mask& a, const Mask& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

/// Throws HypothesisUnmet if two distinct curves share more than c points of P.
inline void check_pairwise(const std::vector<Mask>& masks, std::size_t c, const std::string& family) {
  std::vector<std::size_t> rich;
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (popcount(masks[i]) > c) rich.push_back(i);
  for (std::size_t a = 0; a < rich.size(); ++a)
    for (std::size_t b = a + 1; b < rich.size(); ++b)
      if (common(masks[rich[a]], masks[rich[b]]) > c) {
        std::ostringstream os;
        os << family << ": curves " << rich[a] << " and " << rich[b] << " share more than " << c << " points";
        fail(Errc::HypothesisUnmet, os.str());
      }
}

}  // namespace detail

/// |I(P, Gamma)| <= m_max |P| + C^(1/2) (sum m) |P|^(1/2), decided exactly.
inline IncidenceBound incidence_bound_check(std::span<const RatPoint> pts, const std::vector<WeightedCurve>& curves,
                                            std::size_t c, const std::string& family = "curves") {
  IncidenceBound r;
  r.family = family;
  r.curves = curves.size();
  r.points = pts.size();
  r.c = c;
  std::vector<detail::Mask> masks;
  for (const auto& w : curves) {
    masks.push_back(detail::incidence_mask(w.poly, pts));
    r.incidences += w.multiplicity * detail::popcount(masks.back());
    r.m_max = std::max(r.m_max, w.multiplicity);
    r.sum_m += w.multiplicity;
  }
  detail::check_pairwise(masks, c, family);
  const double np = static_cast<double>(r.points);
  r.bound = static_cast<double>(r.m_max) * np + std::sqrt(static_cast<double>(c)) * static_cast<double>(r.sum_m) * std::sqrt(np);
  // exact: I - m_max |P| <= sum_m sqrt(C |P|)
  const Integer lhs = Integer(static_cast<unsigned long>(r.incidences)) -
                      Integer(static_cast<unsigned long>(r.m_max)) * Integer(static_cast<unsigned long>(r.points));
  const Integer sm(static_cast<unsigned long>(r.sum_m));
  r.holds = lhs <= 0 || lhs * lhs <= sm * sm * Integer(static_cast<unsigned long>(c)) * Integer(static_cast<unsigned long>(r.points));
  return r;
}

/// The four sub-families of a curve family as weighted multisets of
/// irreducible curves, with the default intersection constants.
struct SplitFamilies {
  std::vector<WeightedCurve> irr, circ_r1, circ_r2, lin;
};

inline SplitFamilies split_families(const CurveFamily& fam) {
  std::map<Circle, std::size_t> r1, r2, conics;
  std::map<Line, std::size_t> lines;
  SplitFamilies out;
  for (const auto& c : fam.curves) {
    if (c.cls.components.empty()) {
      out.irr.push_back({c.poly.poly(), c.multiplicity});
      continue;
    }
    for (const auto& comp : c.cls.components) {
      if (const auto* l = std::get_if<Line>(&comp)) {
        lines[*l] += c.multiplicity;
      } else {
        const auto& circ = std::get<Circle>(comp);
        if (c.cls.tag == CurveTag::R1) {
          r1[circ] += c.multiplicity;
        } else if (c.cls.tag == CurveTag::R2) {
          r2[circ] += c.multiplicity;
        } else {
          conics[circ] += c.multiplicity;
        }
      }
    }
  }
  for (const auto& [k, m] : conics) out.irr.push_back({k.poly(), m});
  for (const auto& [k, m] : r1) out.circ_r1.push_back({k.poly(), m});
  for (const auto& [k, m] : r2) out.circ_r2.push_back({k.poly(), m});
  for (const auto& [k, m] : lines) out.lin.push_back({k.poly(), m});
  return out;
}

inline std::vector<IncidenceBound> incidence_bound_checks(std::span<const RatPoint> pts, const CurveFamily& fam,
                                                          std::size_t c_cubic = 9, std::size_t c_conic = 2) {
  const auto sf = split_families(fam);
  return {incidence_bound_check(pts, sf.irr, c_cubic, "irreducible"),
          incidence_bound_check(pts, sf.circ_r1, c_conic, "circles R1"),
          incidence_bound_check(pts, sf.circ_r2, c_conic, "circles R2"),
          incidence_bound_check(pts, sf.lin, c_conic, "lines")};
}

struct RichCurves {
  std::size_t k = 0;
  std::size_t count = 0;
  bool applies = false;  // k >= 4 N^(1/2)
  bool holds = true;     // count < 2N / k when it applies
};

/// Curves with at least k points of P; the curves must pairwise meet at most twice.
inline RichCurves rich_curves(std::span<const RatPoint> pts, const std::vector<Poly2>& curves, std::size_t k) {
  std::vector<detail::Mask> masks;
  for (const auto& f : curves) masks.push_back(detail::incidence_mask(f, pts));
  detail::check_pairwise(masks, 2, "rich curves");
  RichCurves r;
  r.k = k;
  for (const auto& m : masks) r.count += detail::popcount(m) >= k;
  const std::size_t n = pts.size();
  r.applies = k * k >= 16 * n;
  if (r.applies) r.holds = r.count * k < 2 * n;
  return r;
}

inline std::string rich_csv(const std::vector<RichCurves>& rows) {
  std::ostringstream os;
  os << "k,rich_count,applies,holds\n";
  for (const auto& r : rows) os << r.k << "," << r.count << "," << (r.applies ? 1 : 0) << "," << (r.holds ? 1 : 0) << "\n";
  return os.str();
}

struct BisectorEnergy {
  std::size_t n = 0;
  std::size_t q = 0;          // sum over bisectors of n(l)^2, ordered pairs
  std::size_t lines = 0;      // distinct bisectors
  std::size_t max_n = 0;
  std::size_t m_prime = 0;    // max points of P2 on a line or circle
  double ratio = 0;           // Q / (M' N^2 + N^(5/2) log^(1/2) N)
};

inline BisectorEnergy bisector_energy(std::span<const RatPoint> p2) {
  if (p2.size() < 2) fail(Errc::TooFewPoints, "bisector energy needs two points");
  std::map<Line, std::size_t> count;
  for (std::size_t i = 0; i < p2.size(); ++i)
    for (std::size_t j = 0; j < p2.size(); ++j)
      if (i != j) ++count[Line::bisector(p2[i], p2[j])];
  BisectorEnergy e;
  e.n = p2.size();
  e.lines = count.size();
  for (const auto& [l, c] : count) {
    e.q += c * c;
    e.max_n = std::max(e.max_n, c);
  }
  e.m_prime = p2.size() <= 60 ? point_meta(p2).max_line_or_circle : 0;
  const double n = static_cast<double>(e.n);
  const double denom = static_cast<double>(e.m_prime) * n * n + std::pow(n, 2.5) * std::sqrt(std::log(n));
  e.ratio = static_cast<double>(e.q) / denom;
  return e;
}

}  // namespace angle_forge
