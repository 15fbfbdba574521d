#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "angle_forge/angles.hpp"
#include "angle_forge/census.hpp"
#include "angle_forge/config.hpp"
#include "angle_forge/errors.hpp"

namespace angle_forge {

using Real = boost::multiprecision::mpfr_float;

/// Sets the working precision of Real for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits) : saved_(Real::default_precision()) {
    Real::default_precision(digits10_for(bits));
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  static unsigned digits10_for(unsigned bits) { return std::max(10u, static_cast<unsigned>(bits * 0.30103) + 1); }

 private:
  unsigned saved_;
};

inline Real real_pi() {
  Real pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
  return pi;
}

inline Real to_real(const Rational& r) { return Real(r.get_num().get_str()) / Real(r.get_den().get_str()); }

/// Turn position as radians.
inline Real radians(const TurnAngle& t) { return 2 * real_pi() * to_real(t.turns); }

namespace detail {

/// Representative of an angle mod pi in [0, pi).
inline Real mod_pi(Real v) {
  const Real pi = real_pi();
  while (v < 0) v += pi;
  while (v >= pi) v -= pi;
  return v;
}

/// Half the working precision, in absolute terms: a denominator below it is singular.
inline Real singular_threshold() {
  return pow(Real(10), -static_cast<int>(Real::default_precision() / 2));
}

}  // namespace detail

/// Slope angle in [0, pi) of the line from (cos t, sin t) to (x, 0); a vertical line gives pi/2.
inline Real beta(const Real& t, const Real& x) { return detail::mod_pi(atan2(sin(t), cos(t) - x)); }

/// True when the line from p_t to (x, 0) is vertical at working precision.
inline bool vertical_slope(const Real& t, const Real& x) { return abs(cos(t) - x) < detail::singular_threshold(); }

/// Slope angle in [0, pi) of the chord from p_a to p_t, with t and a in radians.
inline Real alpha(const Real& t, const Real& a) {
  if (abs(sin((t - a) / 2)) < detail::singular_threshold()) fail(Errc::CoincidentParameter, "alpha needs t != a");
  return detail::mod_pi(atan2(sin(t) - sin(a), cos(t) - cos(a)));
}

inline Real alpha(const TurnAngle& t, const TurnAngle& a) {
  if ((t - a).canonical().turns == 0) fail(Errc::CoincidentParameter, "alpha needs t != a");
  return alpha(radians(t), radians(a));
}

namespace detail {

inline Real tangency(const Real& t, const Real& x) {
  const Real d = 1 - x * cos(t);
  if (abs(d) < singular_threshold()) fail(Errc::SingularDenominator, "1 - x cos t vanishes");
  return d;
}

}  // namespace detail

/// d alpha / d beta = 1 + (x^2 - 1) / (2 (1 - x cos t)).
inline Real dalpha_dbeta(const Real& t, const Real& x) {
  const Real d = detail::tangency(t, x);
  return 1 + (x * x - 1) / (2 * d);
}

/// d^2 alpha / d beta^2 = -x (x^2 - 1) (x^2 - 2x cos t + 1) sin t / (2 (1 - x cos t)^3).
inline Real d2alpha_dbeta2(const Real& t, const Real& x) {
  const Real d = detail::tangency(t, x);
  return -x * (x * x - 1) * (x * x - 2 * x * cos(t) + 1) * sin(t) / (2 * d * d * d);
}

/// Sign of the second derivative over an open grid of (0, pi/2).
struct SignScan {
  Real x;
  std::size_t grid = 0;
  std::size_t positive = 0, negative = 0, zero = 0, singular = 0;
  bool constant = false;        // one strict sign over the whole grid
  bool branch_constant = true;  // constant on each side of the tangency t = arccos(1/x)
};

inline SignScan sign_scan(const Real& x, std::size_t grid = 200) {
  SignScan s;
  s.x = x;
  s.grid = grid;
  const Real half_pi = real_pi() / 2;
  const bool has_tangency = x > 1;
  const Real t0 = has_tangency ? Real(acos(1 / x)) : Real(0);
  int sign_below = 0, sign_above = 0;
  for (std::size_t k = 0; k < grid; ++k) {
    const Real t = half_pi * (Real(k) + Real(0.5)) / grid;
    int sg = 0;
    try {
      const Real v = d2alpha_dbeta2(t, x);
      sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
    } catch (const Error&) {
      ++s.singular;
      continue;
    }
    if (sg > 0) ++s.positive;
    if (sg < 0) ++s.negative;
    if (sg == 0) ++s.zero;
    int& side = (has_tangency && t > t0) ? sign_above : sign_below;
    if (side == 0) side = sg;
    if (side != sg) s.branch_constant = false;
  }
  s.constant = s.singular == 0 && s.zero == 0 && (s.positive == 0 || s.negative == 0);
  return s;
}

/// A fixed circle point a, the abscissa point (x, 0) and circle positions A.
struct CircleSetup {
  TurnAngle a;
  Real x;
  std::vector<TurnAngle> arcs;
};

/// n positions k / (4 (n + 1)) turns, k = 1..n, in the open first quadrant.
inline std::vector<TurnAngle> ap_quadrant_arcs(std::size_t n, std::size_t denominator_n = 0) {
  const long m = static_cast<long>(denominator_n ? denominator_n : n);
  std::vector<TurnAngle> out;
  for (long k = 1; k <= static_cast<long>(n); ++k) out.emplace_back(make_rational(k, 4 * (m + 1)));
  return out;
}

struct GrowthRow {
  std::size_t size = 0;         // |A|
  std::size_t at_a = 0;         // distinct angles a1 a a2, exact
  std::size_t at_x = 0;         // distinct angles a1 x a2, clustered
  std::size_t union_count = 0;  // distinct values among both
  std::size_t b_diff = 0;       // |B - B| for the slopes B from (x, 0)
  std::size_t fb_diff = 0;      // |f(B) - f(B)| for the chord slopes f(B) from a
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  double exponent = 0;  // least-squares slope of log union on log |A|
  double residual = 0;  // root mean square residual of that fit
  double reference = 1.3;
  unsigned precision = 0;
  double eps_coarse = 0, eps_fine = 0;
};

/// Least-squares slope and RMS residual of log y on log x.
struct PowerFit {
  double exponent = 0;
  double residual = 0;
};

inline PowerFit fit_power(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) fail(Errc::InvalidArgument, "power fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  const double den = dn * sxx - sx * sx;
  if (den == 0) fail(Errc::InvalidArgument, "power fit needs two distinct sizes");
  PowerFit f;
  f.exponent = (dn * sxy - sx * sy) / den;
  const double icpt = (sy - f.exponent * sx) / dn;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::log(ys[i]) - (icpt + f.exponent * std::log(xs[i]));
    ss += e * e;
  }
  f.residual = std::sqrt(ss / dn);
  return f;
}

namespace detail {

/// Number of clusters of sorted values whose consecutive gaps are at most eps.
inline std::size_t cluster_count(std::vector<Real> v, const Real& eps) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t c = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] - v[i - 1] > eps) ++c;
  return c;
}

inline std::size_t stable_count(const std::vector<Real>& v, const Real& coarse, const Real& fine, const char* what) {
  const std::size_t a = cluster_count(v, coarse), b = cluster_count(v, fine);
  if (a != b)
    fail(Errc::UnstableClustering, std::string(what) + ": " + std::to_string(a) + " clusters at the coarse epsilon, " +
                                       std::to_string(b) + " at the fine one");
  return a;
}

inline std::vector<Real> differences(const std::vector<Real>& b) {
  std::vector<Real> out;
  for (const auto& u : b)
    for (const auto& v : b) out.push_back(u - v);
  return out;
}

}  // namespace detail

/// Angle counts at a and at (x, 0) over nested prefixes of A. Angles at a are
/// exact inscribed angles; angles at x are clustered at two epsilons.
inline GrowthReport growth_measure(const CircleSetup& s, const std::vector<std::size_t>& sizes, unsigned bits = 128,
                                   double eps_coarse = 1e-20, double eps_fine = 1e-28) {
  if (s.x == 0 || s.x == 1) fail(Errc::InvalidArgument, "x must avoid 0 and 1");
  for (std::size_t i = 0; i < s.arcs.size(); ++i) {
    if (s.arcs[i].turns <= 0 || s.arcs[i].turns >= Rational(1, 4)) fail(Errc::InvalidArgument, "arcs must lie in (0, 1/4) turns");
    if ((s.arcs[i] - s.a).canonical().turns == 0) fail(Errc::InvalidArgument, "a must not belong to A");
    for (std::size_t j = 0; j < i; ++j)
      if (s.arcs[i] == s.arcs[j]) fail(Errc::CoincidentPoint, "arcs must be distinct");
  }
  for (auto n : sizes)
    if (n < 4 || n > s.arcs.size()) fail(Errc::TooFewPoints, "growth prefixes need 4 <= |A| <= arcs");
  PrecisionGuard guard(bits);
  const Real x = s.x;
  const Real coarse(eps_coarse), fine(eps_fine);
  GrowthReport rep;
  rep.precision = bits;
  rep.eps_coarse = eps_coarse;
  rep.eps_fine = eps_fine;
  const Real pi = real_pi();
  const Real ra = radians(s.a);
  std::vector<double> xs, ys;
  for (auto n : sizes) {
    GrowthRow row;
    row.size = n;
    std::vector<ArcPoint> pts{ArcPoint::on_circle(s.a)};
    for (std::size_t i = 0; i < n; ++i) pts.push_back(ArcPoint::on_circle(s.arcs[i]));
    std::vector<Rational> exact;
    for (std::size_t j = 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        if (auto v = arc_angle(pts, 0, j, k)) exact.push_back(v->turns);
    std::sort(exact.begin(), exact.end());
    exact.erase(std::unique(exact.begin(), exact.end()), exact.end());
    row.at_a = exact.size();
    std::vector<Real> xang, all;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Real tj = radians(s.arcs[j]), tk = radians(s.arcs[k]);
        const Real ux = cos(tj) - x, uy = sin(tj), vx = cos(tk) - x, vy = sin(tk);
        const Real cr = ux * vy - uy * vx;
        if (abs(cr) < detail::singular_threshold()) continue;
        xang.push_back(atan2(abs(cr), ux * vx + uy * vy));
      }
    row.at_x = detail::stable_count(xang, coarse, fine, "angles at x");
    all = xang;
    for (const auto& e : exact) all.push_back(2 * pi * to_real(e));
    row.union_count = detail::stable_count(all, coarse, fine, "union of angles");
    std::vector<Real> b, fb;
    for (std::size_t i = 0; i < n; ++i) {
      const Real t = radians(s.arcs[i]);
      b.push_back(beta(t, x));
      fb.push_back(alpha(t, ra));
    }
    row.b_diff = detail::stable_count(detail::differences(b), coarse, fine, "B - B");
    row.fb_diff = detail::stable_count(detail::differences(fb), coarse, fine, "f(B) - f(B)");
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(row.union_count));
    rep.rows.push_back(row);
  }
  if (sizes.size() >= 2) {
    const auto f = fit_power(xs, ys);
    rep.exponent = f.exponent;
    rep.residual = f.residual;
  }
  return rep;
}

inline std::string growth_csv(const GrowthReport& r) {
  std::string out = "size,angles_at_a,angles_at_x,union,b_minus_b,fb_minus_fb\n";
  for (const auto& row : r.rows)
    out += std::to_string(row.size) + "," + std::to_string(row.at_a) + "," + std::to_string(row.at_x) + "," +
           std::to_string(row.union_count) + "," + std::to_string(row.b_diff) + "," + std::to_string(row.fb_diff) + "\n";
  return out;
}

/// Which alternative of the K versus co-circularity dichotomy a configuration
/// witnesses, and the two-sided estimate max(KN, (N/K)^(13/10)).
struct Tradeoff {
  std::size_t n = 0;
  std::size_t angles = 0;
  Rational k;
  std::size_t m = 0;
  double c = 2;
  bool k_branch = false;  // K >= N^(1/4) / c
  bool m_branch = false;  // M >= N / (c K)
  std::string branch;     // "K", "M", "both" or "none"
  double kn = 0;
  double growth = 0;    // (N / K)^(13/10)
  double combined = 0;  // max of the two
  double floor = 0;     // N^(1 + 3/23), the minimum of combined over K
};

inline Tradeoff theorem_main_tradeoff(const AngleCensus& census, std::size_t m, double c = 2) {
  if (c <= 0) fail(Errc::InvalidArgument, "tradeoff constant must be positive");
  if (census.n == 0 || census.count == 0) fail(Errc::TooFewPoints, "tradeoff needs a nonempty census");
  Tradeoff t;
  t.n = census.n;
  t.angles = census.count;
  t.k = census.K;
  t.m = m;
  t.c = c;
  const double n = static_cast<double>(t.n), k = to_double(t.k);
  t.k_branch = k >= std::pow(n, 0.25) / c;
  // M >= N / (c K)  <=>  c K M >= N, with K = angles / N
  t.m_branch = c * static_cast<double>(t.angles) * static_cast<double>(m) >= n * n;
  t.branch = t.k_branch ? (t.m_branch ? "both" : "K") : (t.m_branch ? "M" : "none");
  t.kn = k * n;
  t.growth = std::pow(n / k, 1.3);
  t.combined = std::max(t.kn, t.growth);
  t.floor = std::pow(n, 1.0 + 3.0 / 23.0);
  return t;
}

}  // namespace angle_forge
