#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "angle_forge/angles.hpp"
#include "angle_forge/config.hpp"
#include "angle_forge/errors.hpp"
#include "angle_forge/predicates.hpp"
#include "angle_forge/rational.hpp"

namespace angle_forge {

inline void require_n(long n, long min = 3) {
  if (n < min) fail(Errc::InvalidArgument, "n must be at least " + std::to_string(min));
}

inline ArcConfig gen_ngon(long n, bool with_centre) {
  require_n(n);
  ArcConfig c{"ngon" + std::to_string(n) + (with_centre ? "+centre" : ""), {}, with_centre};
  for (long k = 0; k < n; ++k) c.arcs.emplace_back(make_rational(k, n));
  return c;
}

/// n distinct random positions k/den on the circle.
inline ArcConfig gen_circle_arcs(long n, std::uint64_t seed, long den = 360, bool with_centre = false) {
  require_n(n);
  if (den < n) fail(Errc::InvalidArgument, "denominator too small for n distinct arcs");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(0, den - 1);
  std::vector<long> ks;
  while (static_cast<long>(ks.size()) < n) {
    long k = pick(rng);
    if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  ArcConfig c{"arcs" + std::to_string(n) + "-s" + std::to_string(seed), {}, with_centre};
  for (long k : ks) c.arcs.emplace_back(make_rational(k, den));
  return c;
}

struct LineApConfig {
  CoordConfig config;
  SplitSpec split;  // top apex against the base points
};

/// Two apexes (0, 1), (0, -1) and n - 2 base points (tan(phi0 + k delta), 0),
/// so that the apex angles form an arithmetic progression.
inline LineApConfig gen_line_ap(long n, const Rational& tan_phi0 = make_rational(1, 7),
                                const Rational& tan_delta = make_rational(1, 5)) {
  require_n(n);
  if (tan_delta == 0) fail(Errc::InvalidArgument, "tan delta = 0 gives a degenerate progression");
  LineApConfig out;
  out.config.name = "line-ap" + std::to_string(n);
  out.config.points = {RatPoint(0, 1), RatPoint(0, -1)};
  Rational t = tan_phi0;
  for (long k = 0; k < n - 2; ++k) {
    out.config.points.emplace_back(t, Rational(0));
    if (k + 1 == n - 2) break;
    const Rational den = 1 - t * tan_delta;
    if (den <= 0) fail(Errc::PoleInAP, "progression reaches pi/2 after " + std::to_string(k + 1) + " base points");
    t = (t + tan_delta) / den;
  }
  out.split.p1 = {0};
  for (long k = 0; k < n - 2; ++k) out.split.p2.push_back(static_cast<std::size_t>(k + 2));
  return out;
}

inline CoordConfig gen_parabola(long n) {
  require_n(n);
  CoordConfig c{"parabola" + std::to_string(n), {}, false};
  for (long k = 1; k <= n; ++k) c.points.emplace_back(k, k * k);
  return c;
}

inline CoordConfig gen_hyperbola(long n, const Rational& r = Rational(2)) {
  require_n(n);
  if (r <= 1) fail(Errc::InvalidArgument, "hyperbola ratio must exceed 1");
  CoordConfig c{"hyperbola" + std::to_string(n), {}, false};
  Rational x = r;
  for (long k = 1; k <= n; ++k, x *= r) c.points.emplace_back(x, Rational(1) / x);
  return c;
}

namespace detail {

/// Nearest multiple of 2^-bits to v.
inline Rational round_dyadic(const mpfr_t v, unsigned bits) {
  mpfr_t s;
  mpfr_init2(s, mpfr_get_prec(v));
  mpfr_mul_2ui(s, v, bits, MPFR_RNDN);
  mpfr_rint(s, s, MPFR_RNDN);
  Integer z;
  mpfr_get_z(z.get_mpz_t(), s, MPFR_RNDN);
  mpfr_clear(s);
  Rational r(z);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
  return r;
}

}  // namespace detail

/// Rational approximants of e^(b theta_k) (cos theta_k, sin theta_k) with
/// theta_k = k * step, rounded to multiples of 2^-precision.
inline CoordConfig gen_log_spiral(long n, unsigned precision = 32, const Rational& step = make_rational(1, 2),
                                  const Rational& growth = make_rational(1, 5)) {
  require_n(n);
  CoordConfig c{"log-spiral" + std::to_string(n), {}, true};
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision + 64);
  mpfr_t th, rad, cs, sn, tmp;
  for (auto* v : {&th, &rad, &cs, &sn, &tmp}) mpfr_init2(*v, prec);
  for (long k = 0; k < n; ++k) {
    const Rational theta = step * k;
    const Rational e = growth * theta;
    mpfr_set_q(th, theta.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(tmp, e.get_mpq_t(), MPFR_RNDN);
    mpfr_exp(rad, tmp, MPFR_RNDN);
    mpfr_sin_cos(sn, cs, th, MPFR_RNDN);
    mpfr_mul(cs, cs, rad, MPFR_RNDN);
    mpfr_mul(sn, sn, rad, MPFR_RNDN);
    c.points.emplace_back(detail::round_dyadic(cs, precision), detail::round_dyadic(sn, precision));
  }
  for (auto* v : {&th, &rad, &cs, &sn, &tmp}) mpfr_clear(*v);
  return c;
}

/// Rational point on the unit circle from the half-angle tangent u.
inline RatPoint circle_point(const Rational& u) {
  const Rational d = 1 + u * u;
  return {(1 - u * u) / d, 2 * u / d};
}

/// A random convex configuration: jittered rational circle points pushed
/// radially by random factors in [1 - 1/n^2, 1 + 1/n^2], resampled until the
/// result is in strict convex position.
inline CoordConfig gen_convex_perturbed(long n, std::uint64_t seed) {
  require_n(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::uniform_int_distribution<long> scale(-1000, 1000);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CoordConfig c{"convex" + std::to_string(n) + "-s" + std::to_string(seed), {}, false};
    for (long k = 0; k < n; ++k) {
      const double half = std::numbers::pi * (static_cast<double>(k) + jitter(rng)) / static_cast<double>(n);
      const Rational u = make_rational(std::lround(std::tan(half) * 10000), 10000);
      const Rational r = 1 + make_rational(scale(rng), 1000 * n * n);
      c.points.push_back(r * circle_point(u));
    }
    if (convex_position(c.points)) return c;
  }
  fail(Errc::InvalidArgument, "could not sample a convex configuration");
}

inline CoordConfig gen_grid(long m) {
  require_n(m, 1);
  CoordConfig c{"grid" + std::to_string(m), {}, false};
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) c.points.emplace_back(i, j);
  return c;
}

/// Rational points on the unit circle close to the given arc positions
/// (exact unit circle, approximate angles); the centre maps to the origin.
inline CoordConfig rational_circle_realization(const ArcConfig& cfg, unsigned bits = 24) {
  CoordConfig out{cfg.name + "-realized", {}, true};
  mpfr_t v;
  mpfr_init2(v, static_cast<mpfr_prec_t>(bits + 64));
  for (const auto& a0 : cfg.arcs) {
    const TurnAngle a = a0.canonical();
    if (a.turns == Rational(1, 2)) {
      out.points.emplace_back(-1, 0);
      continue;
    }
    // u = tan(pi a), with a in [0, 1) \ {1/2}
    mpfr_const_pi(v, MPFR_RNDN);
    mpfr_t q;
    mpfr_init2(q, static_cast<mpfr_prec_t>(bits + 64));
    mpfr_set_q(q, a.turns.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(v, v, q, MPFR_RNDN);
    mpfr_tan(v, v, MPFR_RNDN);
    mpfr_clear(q);
    out.points.push_back(circle_point(detail::round_dyadic(v, bits)));
  }
  mpfr_clear(v);
  if (cfg.with_centre) out.points.emplace_back(0, 0);
  return out;
}

struct ConfigMeta {
  bool convex_position = false;
  std::size_t max_cocircular = 0;       // M
  std::size_t max_collinear = 0;        // L
  std::size_t max_line_or_circle = 0;   // M'
};

namespace detail {

struct LineOrCircle {
  bool line;
  RatPoint centre;  // unused for lines
  Rational a, b, c; // normalised line a x1 + b x2 + c = 0
  friend bool operator<(const LineOrCircle& u, const LineOrCircle& v) {
    if (u.line != v.line) return u.line < v.line;
    if (u.line) {
      if (u.a != v.a) return u.a < v.a;
      if (u.b != v.b) return u.b < v.b;
      return u.c < v.c;
    }
    return u.centre < v.centre;
  }
};

inline LineOrCircle through(const RatPoint& p, const RatPoint& q, const RatPoint& r) {
  const Rational w = wedge(q - p, r - p);
  if (w == 0) {
    Rational a = q.x2 - p.x2, b = p.x1 - q.x1;
    Rational c = -(a * p.x1 + b * p.x2);
    const Rational lead = a != 0 ? a : b;
    return {true, {}, a / lead, b / lead, c / lead};
  }
  // circumcentre
  const Rational d = 2 * w;
  const RatPoint u = q - p, v = r - p;
  const Rational nu = norm2(u), nv = norm2(v);
  const RatPoint o{(v.x2 * nu - u.x2 * nv) / d, (u.x1 * nv - v.x1 * nu) / d};
  return {false, p + o, 0, 0, 0};
}

}  // namespace detail

/// Maximum number of points on a circle, on a line, and on either, among the
/// given points, by grouping the third points of every pair.
inline ConfigMeta point_meta(std::span<const RatPoint> pts) {
  const std::size_t n = pts.size();
  if (n > 60) fail(Errc::ScaleExceeded, "meta is exhaustive and limited to 60 points");
  ConfigMeta m;
  m.convex_position = convex_position(pts);
  m.max_collinear = std::min<std::size_t>(n, 2);
  m.max_cocircular = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::map<detail::LineOrCircle, std::size_t> groups;
      for (std::size_t k = j + 1; k < n; ++k) ++groups[detail::through(pts[i], pts[j], pts[k])];
      for (const auto& [g, count] : groups) {
        if (g.line) {
          m.max_collinear = std::max(m.max_collinear, count + 2);
        } else {
          m.max_cocircular = std::max(m.max_cocircular, count + 2);
        }
      }
    }
  m.max_line_or_circle = std::max(m.max_collinear, m.max_cocircular);
  return m;
}

inline ConfigMeta arc_meta(const ArcConfig& cfg) {
  if (cfg.size() > 60) fail(Errc::ScaleExceeded, "meta is exhaustive and limited to 60 points");
  ConfigMeta m;
  const std::size_t c = cfg.arcs.size();
  m.max_cocircular = c >= 3 ? c : 0;
  m.max_collinear = std::min<std::size_t>(cfg.size(), 2);
  std::vector<Rational> pos;
  for (const auto& a : cfg.arcs) pos.push_back(a.canonical().turns);
  std::sort(pos.begin(), pos.end());
  if (cfg.with_centre) {
    for (const auto& a : pos)
      if (std::binary_search(pos.begin(), pos.end(), TurnAngle(a + Rational(1, 2)).canonical().turns))
        m.max_collinear = 3;
  }
  // circles through the centre and two circle points hold no third circle point
  if (cfg.with_centre && c >= 2) m.max_cocircular = std::max<std::size_t>(m.max_cocircular, 3);
  m.max_line_or_circle = std::max(m.max_cocircular, m.max_collinear);
  if (!cfg.with_centre) {
    m.convex_position = c >= 1;
  } else {
    Rational gap = c == 0 ? Rational(1) : Rational(pos.front() + 1 - pos.back());
    for (std::size_t i = 1; i < pos.size(); ++i) gap = std::max(gap, Rational(pos[i] - pos[i - 1]));
    m.convex_position = gap > Rational(1, 2);
  }
  return m;
}

inline ConfigMeta config_meta(const Config& cfg) {
  return cfg.is_coords() ? point_meta(cfg.coords().points) : arc_meta(cfg.arcs());
}

}  // namespace angle_forge
