#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "angle_forge/census.hpp"
#include "angle_forge/config.hpp"
#include "angle_forge/errors.hpp"
#include "angle_forge/geometry.hpp"
#include "angle_forge/predicates.hpp"

namespace angle_forge {

/// Two disjoint parts of a configuration; indices refer to the configuration.
template <class G>
struct OrderedPair {
  using Point = typename G::Point;
  std::vector<Point> p1;
  std::vector<Point> p2;
  std::vector<std::size_t> p1_index;
  std::vector<std::size_t> p2_index;
};

struct OrderCheck {
  bool ok = false;
  std::string reason;
  std::optional<std::array<std::size_t, 3>> witness;  // (x in P1, p in P2, q in P2)
  std::vector<std::size_t> cyclic;                    // common ccw order of P2 indices, starting at 0
};

/// Counterclockwise order of P2 seen from x, by direction angle in [0, full_turn).
template <class G>
std::vector<std::size_t> direction_order(const typename G::Point& x, std::span<const typename G::Point> p2) {
  std::vector<typename G::Angle> phi;
  phi.reserve(p2.size());
  for (const auto& p : p2) phi.push_back(G::direction(x, p));
  std::vector<std::size_t> ord(p2.size());
  std::iota(ord.begin(), ord.end(), std::size_t{0});
  std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return phi[a] < phi[b]; });
  return ord;
}

template <class G>
bool collinear(const typename G::Point& x, const typename G::Point& p, const typename G::Point& s) {
  const auto a = reduce_full(G::direction(x, s) - G::direction(x, p));
  return a == G::Angle::zero() || a == G::Angle::half_turn();
}

template <class G>
OrderCheck check_order_assumption(const OrderedPair<G>& pair) {
  OrderCheck out;
  const std::size_t n2 = pair.p2.size();
  for (const auto& x : pair.p1)
    for (const auto& p : pair.p2)
      if (G::same_point(x, p)) {
        out.reason = "P1 and P2 intersect";
        return out;
      }
  if (pair.p1.empty() || n2 == 0) {
    out.reason = "empty part";
    return out;
  }
  for (std::size_t i = 0; i < pair.p1.size(); ++i)
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t b = a + 1; b < n2; ++b)
        if (collinear<G>(pair.p1[i], pair.p2[a], pair.p2[b])) {
          out.reason = "a point of P1 lies on a line through two points of P2";
          out.witness = {i, a, b};
          return out;
        }
  auto rotate_to_zero = [](std::vector<std::size_t> o) {
    std::rotate(o.begin(), std::find(o.begin(), o.end(), std::size_t{0}), o.end());
    return o;
  };
  const auto ref = rotate_to_zero(direction_order<G>(pair.p1[0], pair.p2));
  for (std::size_t i = 1; i < pair.p1.size(); ++i) {
    const auto o = rotate_to_zero(direction_order<G>(pair.p1[i], pair.p2));
    for (std::size_t k = 0; k + 1 < n2; ++k) {
      if (o[k + 1] != ref[k + 1]) {
        out.reason = "cyclic direction orders differ";
        out.witness = {i, ref[k], ref[k + 1]};
        return out;
      }
    }
  }
  out.ok = true;
  out.cyclic = ref;
  return out;
}

/// The common cyclic order of P2 and the "within w" relation it induces.
struct NeighbourOrder {
  std::vector<std::size_t> cyclic;
  std::vector<std::size_t> position;
  std::size_t window = 5;

  NeighbourOrder() = default;
  NeighbourOrder(std::vector<std::size_t> order, std::size_t w) : cyclic(std::move(order)), position(cyclic.size()), window(w) {
    for (std::size_t k = 0; k < cyclic.size(); ++k) position[cyclic[k]] = k;
  }

  /// The first `window` points met after p going counterclockwise.
  std::vector<std::size_t> within(std::size_t p) const {
    const std::size_t n = cyclic.size();
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k <= window && k < n; ++k) out.push_back(cyclic[(position[p] + k) % n]);
    return out;
  }

  /// Step count from p to q counterclockwise.
  std::size_t steps(std::size_t p, std::size_t q) const {
    const std::size_t n = cyclic.size();
    return (position[q] + n - position[p]) % n;
  }
};

template <class G>
NeighbourOrder neighbour_order(const OrderedPair<G>& pair, std::size_t window) {
  auto chk = check_order_assumption(pair);
  if (!chk.ok) fail(Errc::HypothesisUnmet, "order assumption fails: " + chk.reason);
  return NeighbourOrder(chk.cyclic, window);
}

struct LemmaCheck {
  bool ok = true;
  std::string detail;
};

/// Oriented angle pxq equal to sxq forces p == s.
template <class G>
LemmaCheck verify_neighbour_uniqueness(const OrderedPair<G>& pair) {
  using Angle = typename G::Angle;
  const std::size_t n2 = pair.p2.size();
  for (std::size_t i = 0; i < pair.p1.size(); ++i) {
    const auto& x = pair.p1[i];
    std::vector<Angle> phi;
    for (const auto& p : pair.p2) phi.push_back(G::direction(x, p));
    for (std::size_t q = 0; q < n2; ++q) {
      std::unordered_map<Angle, std::size_t, typename G::AngleHash> seen;
      for (std::size_t p = 0; p < n2; ++p) {
        if (p == q) continue;
        auto [it, fresh] = seen.emplace(reduce_full(phi[q] - phi[p]), p);
        if (!fresh) {
          std::ostringstream os;
          os << "x=" << i << " q=" << q << " p=" << it->second << " s=" << p;
          fail(Errc::LemmaViolation, "equal oriented angles with p != s: " + os.str());
        }
      }
    }
  }
  return {};
}

struct GraphEdge {
  std::size_t x, p, s, q, t;
};

struct BipartiteGraph {
  std::size_t window = 5;
  std::vector<GraphEdge> edges;       // one lexicographically least witness (q, t) per edge
  std::vector<GraphEdge> restricted;  // edges having a witness with p != s, t != q, p != t, s != q
  std::vector<std::size_t> per_x;
  std::vector<std::size_t> per_x_restricted;
};

template <class G>
BipartiteGraph build_graph(const OrderedPair<G>& pair, const NeighbourOrder& order) {
  using Key = typename G::Key;
  const std::size_t n1 = pair.p1.size(), n2 = pair.p2.size();
  BipartiteGraph g;
  g.window = order.window;
  g.per_x.assign(n1, 0);
  g.per_x_restricted.assign(n1, 0);
  for (std::size_t xi = 0; xi < n1; ++xi) {
    const auto& x = pair.p1[xi];
    std::unordered_map<Key, std::vector<std::pair<std::size_t, std::size_t>>, typename G::KeyHash> by_key;
    for (std::size_t p = 0; p < n2; ++p)
      for (std::size_t q : order.within(p))
        if (auto k = G::oriented_key(x, pair.p2[p], pair.p2[q])) by_key[*k].emplace_back(p, q);
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> best, best_r;
    auto consider = [](auto& m, std::size_t p, std::size_t s, std::size_t q, std::size_t t) {
      auto [it, fresh] = m.try_emplace({p, s}, q, t);
      if (!fresh && std::make_pair(q, t) < it->second) it->second = {q, t};
    };
    for (const auto& [key, list] : by_key)
      for (const auto& [p, q] : list)
        for (const auto& [s, t] : list) {
          consider(best, p, s, q, t);
          if (p != s && t != q && p != t && s != q) consider(best_r, p, s, q, t);
        }
    for (const auto& [ps, qt] : best) g.edges.push_back({xi, ps.first, ps.second, qt.first, qt.second});
    for (const auto& [ps, qt] : best_r) g.restricted.push_back({xi, ps.first, ps.second, qt.first, qt.second});
    g.per_x[xi] = best.size();
    g.per_x_restricted[xi] = best_r.size();
  }
  return g;
}

/// Distinct positive differences of an increasing list, increasing.
template <class Angle>
std::vector<Angle> diff_ladder(std::span<const Angle> d) {
  std::vector<Angle> out;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) out.push_back(d[j] - d[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class Angle, class Hash>
std::vector<Angle> sumset(std::span<const Angle> a, std::span<const Angle> b) {
  std::unordered_set<Angle, Hash> s;
  for (const auto& u : a)
    for (const auto& v : b) s.insert(u + v);
  std::vector<Angle> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

template <class Angle, class Hash>
std::vector<Angle> difference_set(std::span<const Angle> a) {
  std::unordered_set<Angle, Hash> s;
  for (const auto& u : a)
    for (const auto& v : a) s.insert(u - v);
  std::vector<Angle> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

template <class Angle>
struct PlunneckeResult {
  std::vector<std::size_t> subset;  // indices into X, increasing
  std::size_t sumset_size = 0;       // |X' + B_1 + ... + B_k|
  std::vector<Rational> alpha;       // |X + B_i| / |X|
  Rational bound;                    // alpha_1 ... alpha_k 2^k |X|
  bool holds = false;
};

/// Exhaustive search for X' of size > |X|/2 minimising |X' + B_1 + ... + B_k|.
template <class Angle, class Hash>
PlunneckeResult<Angle> plunnecke_subset(std::span<const Angle> x, const std::vector<std::vector<Angle>>& bs) {
  const std::size_t n = x.size();
  if (n > 12) fail(Errc::ScaleExceeded, "exhaustive subset search is limited to |X| <= 12");
  if (n == 0) fail(Errc::InvalidArgument, "empty X");
  PlunneckeResult<Angle> out;
  out.bound = Rational(static_cast<long>(n));
  for (const auto& b : bs) {
    const auto xb = sumset<Angle, Hash>(x, b);
    out.alpha.push_back(make_rational(static_cast<long>(xb.size()), static_cast<long>(n)));
    out.bound *= out.alpha.back() * 2;
  }
  std::size_t best = SIZE_MAX;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (2 * static_cast<std::size_t>(std::popcount(mask)) <= n) continue;
    std::vector<Angle> acc;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) acc.push_back(x[i]);
    for (const auto& b : bs) acc = sumset<Angle, Hash>(acc, b);
    if (acc.size() < best || (acc.size() == best && mask < best_mask)) {
      best = acc.size();
      best_mask = mask;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (best_mask & (1u << i)) out.subset.push_back(i);
  out.sumset_size = best;
  out.holds = Rational(static_cast<long>(best)) <= out.bound;
  return out;
}

template <class Angle>
struct VertexIntervals {
  std::size_t m = 0;             // |D_x|
  std::size_t m_prime = 0;       // |D'_x|
  std::size_t intervals = 0;     // consecutive pairs of D'_x
  std::size_t normal = 0;
  std::vector<bool> cond_i, cond_ii;
  std::vector<std::size_t> sums_inside, dirs_inside;
  std::vector<Angle> diameters;
  std::size_t diff_size = 0;       // |D_x - D_x|, zero included
  std::size_t positive_diffs = 0;
  std::size_t sumset_size = 0;     // |D'_x + (D_x - D_x)|
  Integer threshold;               // 49 K^2
  Integer eq2_bound;               // 16 K^2 n
  bool eq2 = false;                // measured |D' + (D - D)| <= 16 K^2 n
  bool claim1a = false;            // 3 * normal >= intervals
  bool claim1b = false;            // every normal diameter < delta_{49K^2 + 1}
  std::vector<std::size_t> nu;     // difference class sizes of normal intervals
  std::size_t sum_nu = 0;
  std::size_t sum_nu_sq = 0;
  std::vector<std::size_t> normal_left;  // index into D_x of each normal left endpoint
};

/// Classifies the intervals [d_i, d_{i+1}) of D' against the normality
/// conditions (i) and (ii), and checks both parts of the interval claim.
/// `dprime` indexes into d and must be increasing; k is the integer K used in
/// the thresholds, n the size in the sumset bound 16 K^2 n.
template <class Angle, class Hash>
VertexIntervals<Angle> normal_intervals(std::span<const Angle> d, std::span<const std::size_t> dprime, const Integer& k,
                                        std::size_t n, std::size_t window = 5) {
  VertexIntervals<Angle> r;
  r.m = d.size();
  r.m_prime = dprime.size();
  r.threshold = 49 * k * k;
  r.eq2_bound = 16 * k * k * Integer(static_cast<unsigned long>(n));
  std::vector<Angle> dp;
  for (std::size_t i : dprime) dp.push_back(d[i]);
  const auto diffs = difference_set<Angle, Hash>(d);
  r.diff_size = diffs.size();
  const auto ladder = diff_ladder<Angle>(d);
  r.positive_diffs = ladder.size();
  const auto sums = sumset<Angle, Hash>(std::span<const Angle>(dp), std::span<const Angle>(diffs));
  r.sumset_size = sums.size();
  r.eq2 = Integer(static_cast<unsigned long>(r.sumset_size)) <= r.eq2_bound;

  const std::size_t cut = r.threshold.fits_ulong_p() ? r.threshold.get_ui() : SIZE_MAX;
  const std::optional<Angle> delta_next = cut < ladder.size() ? std::optional<Angle>(ladder[cut]) : std::nullopt;

  r.claim1b = true;
  std::map<Angle, std::size_t> classes;
  for (std::size_t i = 0; i + 1 < dp.size(); ++i) {
    const Angle& lo = dp[i];
    const Angle& hi = dp[i + 1];
    const auto a = std::lower_bound(sums.begin(), sums.end(), lo);
    const auto b = std::lower_bound(sums.begin(), sums.end(), hi);
    const std::size_t in_sums = static_cast<std::size_t>(b - a);
    const std::size_t in_dirs = dprime[i + 1] - dprime[i] - 1;
    const bool ci = Integer(static_cast<unsigned long>(in_sums)) < r.threshold;
    const bool cii = in_dirs + 1 <= window;
    r.cond_i.push_back(ci);
    r.cond_ii.push_back(cii);
    r.sums_inside.push_back(in_sums);
    r.dirs_inside.push_back(in_dirs);
    r.diameters.push_back(hi - lo);
    if (ci && cii) {
      ++r.normal;
      r.normal_left.push_back(dprime[i]);
      ++classes[hi - lo];
      if (delta_next && !(hi - lo < *delta_next)) r.claim1b = false;
    }
  }
  r.intervals = dp.size() < 2 ? 0 : dp.size() - 1;
  r.claim1a = 3 * r.normal >= r.intervals;
  for (const auto& [delta, c] : classes) {
    r.nu.push_back(c);
    r.sum_nu += c;
    r.sum_nu_sq += c * c;
  }
  return r;
}

inline Integer ceil_rational(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

struct VertexBound {
  std::size_t x = 0;
  std::size_t m = 0;
  std::size_t neighbours = 0;  // |N(x)| in the unrestricted graph
  std::size_t normal = 0;
  std::size_t intervals = 0;
  std::size_t sum_nu = 0;
  std::size_t sum_nu_sq = 0;
  std::size_t diff_size = 0;
  std::size_t sumset_size = 0;
  bool eq1 = false;            // |D_x - D_x| <= 2 |A(P)|
  bool eq2 = false;
  bool claim1a = false;
  bool claim1b = false;
  bool square_bound = false;   // |N(x)| >= sum nu^2
  bool cauchy_schwarz = false; // 49 K^2 |N(x)| >= (sum nu)^2
};

struct LowerBoundReport {
  std::size_t n = 0;
  std::size_t angles = 0;  // |A(P)|
  Rational K;              // measured |A(P)| / N
  Integer k_threshold;     // ceil(K)
  std::size_t window = 5;
  std::size_t edges = 0;
  std::size_t restricted_edges = 0;
  double ratio = 0;        // |G| K^2 / N^3
  std::vector<VertexBound> vertices;

  bool all(bool VertexBound::*field) const {
    return std::all_of(vertices.begin(), vertices.end(), [&](const VertexBound& v) { return v.*field; });
  }
};

/// Runs the per-vertex pigeonhole chain: direction sets, normal intervals and
/// the two lower bounds for |N(x)|, against the measured census.
template <class G>
LowerBoundReport verify_lower_bound(const OrderedPair<G>& pair, const BipartiteGraph& graph, std::size_t n,
                                    std::size_t angle_count) {
  using Angle = typename G::Angle;
  LowerBoundReport rep;
  rep.n = n;
  rep.angles = angle_count;
  rep.K = make_rational(static_cast<long>(angle_count), static_cast<long>(n));
  rep.k_threshold = std::max(Integer(1), ceil_rational(rep.K));
  rep.window = graph.window;
  rep.edges = graph.edges.size();
  rep.restricted_edges = graph.restricted.size();
  const double kk = to_double(rep.K);
  rep.ratio = static_cast<double>(rep.edges) * kk * kk / (static_cast<double>(n) * n * n);
  for (std::size_t xi = 0; xi < pair.p1.size(); ++xi) {
    const auto ds = direction_set<G>(pair.p1[xi], pair.p2);
    std::vector<std::size_t> all(ds.dirs.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto iv = normal_intervals<Angle, typename G::AngleHash>(ds.dirs, all, rep.k_threshold, n, graph.window);
    VertexBound v;
    v.x = xi;
    v.m = iv.m;
    v.neighbours = graph.per_x[xi];
    v.normal = iv.normal;
    v.intervals = iv.intervals;
    v.sum_nu = iv.sum_nu;
    v.sum_nu_sq = iv.sum_nu_sq;
    v.diff_size = iv.diff_size;
    v.sumset_size = iv.sumset_size;
    v.eq1 = iv.diff_size <= 2 * angle_count;
    v.eq2 = iv.eq2;
    v.claim1a = iv.claim1a;
    v.claim1b = iv.claim1b;
    v.square_bound = v.neighbours >= v.sum_nu_sq;
    v.cauchy_schwarz = iv.threshold * Integer(static_cast<unsigned long>(v.neighbours)) >=
                       Integer(static_cast<unsigned long>(v.sum_nu)) * Integer(static_cast<unsigned long>(v.sum_nu));
    rep.vertices.push_back(v);
  }
  return rep;
}

/// Horizontal split of a convex configuration: points strictly above and
/// strictly below a horizontal line through the median height.
inline OrderedPair<CoordGeometry> split_convex(const CoordConfig& cfg) {
  const auto& pts = cfg.points;
  const std::size_t n = pts.size();
  if (n < 6) fail(Errc::TooFewPoints, "split needs at least 6 points");
  if (!convex_position(pts)) fail(Errc::NotConvexPosition, "configuration is not in convex position");
  std::vector<std::size_t> ord(n);
  std::iota(ord.begin(), ord.end(), std::size_t{0});
  std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return pts[a].x2 < pts[b].x2; });
  // a horizontal line meets at most two points of a convex set
  for (std::size_t i = 0; i + 2 < n; ++i)
    if (pts[ord[i]].x2 == pts[ord[i + 2]].x2) fail(Errc::DegenerateSplit, "three points share a height");
  Rational line;
  if (n % 2 == 0) {
    line = (pts[ord[n / 2 - 1]].x2 + pts[ord[n / 2]].x2) / 2;
  } else {
    line = pts[ord[n / 2]].x2;
  }
  OrderedPair<CoordGeometry> out;
  for (std::size_t i : ord) {
    if (pts[i].x2 > line) {
      out.p1.push_back(pts[i]);
      out.p1_index.push_back(i);
    } else if (pts[i].x2 < line) {
      out.p2.push_back(pts[i]);
      out.p2_index.push_back(i);
    }
  }
  // keep the configuration order inside each part
  auto sort_part = [&](std::vector<RatPoint>& part, std::vector<std::size_t>& idx) {
    std::vector<std::size_t> o(idx.size());
    std::iota(o.begin(), o.end(), std::size_t{0});
    std::sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) { return idx[a] < idx[b]; });
    std::vector<RatPoint> p;
    std::vector<std::size_t> i2;
    for (std::size_t k : o) {
      p.push_back(part[k]);
      i2.push_back(idx[k]);
    }
    part = std::move(p);
    idx = std::move(i2);
  };
  sort_part(out.p1, out.p1_index);
  sort_part(out.p2, out.p2_index);
  return out;
}

/// Split of circle points into two complementary chains of consecutive
/// positions (separated by a chord); the centre, if present, is left out.
inline OrderedPair<ArcGeometry> split_arcs(const ArcConfig& cfg) {
  const auto pts = arc_points(cfg);
  const std::size_t c = cfg.arcs.size();
  if (c < 4) fail(Errc::TooFewPoints, "split needs at least 4 circle points");
  std::vector<std::size_t> ord(c);
  std::iota(ord.begin(), ord.end(), std::size_t{0});
  std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return pts[a].pos < pts[b].pos; });
  OrderedPair<ArcGeometry> out;
  for (std::size_t k = 0; k < c; ++k) {
    const std::size_t i = ord[k];
    if (k < c / 2) {
      out.p1.push_back(pts[i]);
      out.p1_index.push_back(i);
    } else {
      out.p2.push_back(pts[i]);
      out.p2_index.push_back(i);
    }
  }
  return out;
}

/// Split from explicit index lists.
template <class G>
OrderedPair<G> split_from(std::span<const typename G::Point> pts, const SplitSpec& spec) {
  OrderedPair<G> out;
  auto take = [&](const std::vector<std::size_t>& idx, auto& part, auto& part_idx) {
    for (std::size_t i : idx) {
      if (i >= pts.size()) fail(Errc::InvalidArgument, "split index out of range");
      part.push_back(pts[i]);
      part_idx.push_back(i);
    }
  };
  take(spec.p1, out.p1, out.p1_index);
  take(spec.p2, out.p2, out.p2_index);
  return out;
}

}  // namespace angle_forge
