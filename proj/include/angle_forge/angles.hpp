#pragma once

#include <mpfr.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "angle_forge/errors.hpp"
#include "angle_forge/rational.hpp"

namespace angle_forge {

/// The angle theta in (0, pi) with cot(theta) == value. Equal keys iff equal angles.
struct CotKey {
  Rational value;

  friend bool operator==(const CotKey&, const CotKey&) = default;
  friend std::strong_ordering operator<=>(const CotKey& a, const CotKey& b) {
    // cot is decreasing on (0, pi): larger cot means smaller angle.
    return compare(b.value, a.value);
  }
};

struct CotKeyHash {
  std::size_t operator()(const CotKey& k) const noexcept { return RationalHash{}(k.value); }
};

/// An oriented direction; equal under positive scaling only.
struct Direction {
  Rational dx;
  Rational dy;

  Direction(Rational x, Rational y) : dx(std::move(x)), dy(std::move(y)) {
    if (dx == 0 && dy == 0) fail(Errc::CoincidentPoint, "zero direction vector");
  }
  explicit Direction(const RatPoint& v) : Direction(v.x1, v.x2) {}

  RatPoint vector() const { return {dx, dy}; }

  /// 0 for angles in (-pi/2, pi/2], 1 for (pi/2, 3pi/2].
  int half() const { return (dx > 0 || (dx == 0 && dy > 0)) ? 0 : 1; }

  friend bool operator==(const Direction& a, const Direction& b) {
    return a.dx * b.dy == a.dy * b.dx && sgn(a.dx) == sgn(b.dx) && sgn(a.dy) == sgn(b.dy);
  }

  /// Counterclockwise order of the angle in (-pi/2, 3pi/2].
  friend std::strong_ordering operator<=>(const Direction& a, const Direction& b) {
    if (a.half() != b.half()) return a.half() <=> b.half();
    const int w = sgn(wedge(a.vector(), b.vector()));
    return w > 0 ? std::strong_ordering::less : w < 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
};

/// Position on a circle, or an angle, measured in full revolutions.
///
/// Arithmetic is plain rational arithmetic so that differences and sums of
/// angles keep their real value; canonical() reduces mod 1 into [0, 1).
struct TurnAngle {
  Rational turns;

  TurnAngle() = default;
  explicit TurnAngle(Rational t) : turns(std::move(t)) {}

  static TurnAngle zero() { return TurnAngle{}; }
  static TurnAngle half_turn() { return TurnAngle(Rational(1, 2)); }
  static TurnAngle full_turn() { return TurnAngle(Rational(1)); }

  TurnAngle canonical() const {
    Rational f = turns;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), f.get_num_mpz_t(), f.get_den_mpz_t());
    f -= q;
    return TurnAngle(f);
  }

  double radians() const { return to_double(turns) * 2.0 * std::numbers::pi; }

  friend TurnAngle operator+(const TurnAngle& a, const TurnAngle& b) { return TurnAngle(a.turns + b.turns); }
  friend TurnAngle operator-(const TurnAngle& a, const TurnAngle& b) { return TurnAngle(a.turns - b.turns); }
  friend TurnAngle operator-(const TurnAngle& a) { return TurnAngle(-a.turns); }
  friend bool operator==(const TurnAngle& a, const TurnAngle& b) { return a.turns == b.turns; }
  friend std::strong_ordering operator<=>(const TurnAngle& a, const TurnAngle& b) { return compare(a.turns, b.turns); }
  friend std::ostream& operator<<(std::ostream& os, const TurnAngle& a) { return os << to_string(a.turns) << "turn"; }
};

struct TurnAngleHash {
  std::size_t operator()(const TurnAngle& a) const noexcept { return RationalHash{}(a.turns); }
};

/// Closed interval with rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational width() const { return hi - lo; }
  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend RationalInterval operator-(const RationalInterval& a) { return {-a.hi, -a.lo}; }
};

namespace detail {

inline Rational mpfr_to_rational(const mpfr_t v) {
  Integer m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
  Rational r(m);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

/// Enclosure of atan(t) / pi with dyadic endpoints, computed at `bits` precision.
inline RationalInterval atan_over_pi(const Rational& t, unsigned bits) {
  mpfr_t tl, th, al, ah, pl, ph, lo, hi;
  for (auto* v : {&tl, &th, &al, &ah, &pl, &ph, &lo, &hi}) mpfr_init2(*v, bits);
  mpfr_set_q(tl, t.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(th, t.get_mpq_t(), MPFR_RNDU);
  mpfr_atan(al, tl, MPFR_RNDD);
  mpfr_atan(ah, th, MPFR_RNDU);
  mpfr_const_pi(pl, MPFR_RNDD);
  mpfr_const_pi(ph, MPFR_RNDU);
  if (mpfr_sgn(al) >= 0) {
    mpfr_div(lo, al, ph, MPFR_RNDD);
  } else {
    mpfr_div(lo, al, pl, MPFR_RNDD);
  }
  if (mpfr_sgn(ah) >= 0) {
    mpfr_div(hi, ah, pl, MPFR_RNDU);
  } else {
    mpfr_div(hi, ah, ph, MPFR_RNDU);
  }
  RationalInterval out{mpfr_to_rational(lo), mpfr_to_rational(hi)};
  for (auto* v : {&tl, &th, &al, &ah, &pl, &ph, &lo, &hi}) mpfr_clear(*v);
  return out;
}

}  // namespace detail

/// An exact real angle theta = branch*pi + atan(tan), or branch*pi + pi/2 when
/// tan is the point at infinity. Every real angle whose tangent is rational or
/// infinite has exactly one such representation, so equality and order are
/// decided exactly on (branch, tan).
class TanBranchAngle {
 public:
  TanBranchAngle() = default;
  TanBranchAngle(std::optional<Rational> tan, long branch) : tan_(std::move(tan)), branch_(branch) {}

  static TanBranchAngle zero() { return {Rational(0), 0}; }
  static TanBranchAngle half_turn() { return {Rational(0), 1}; }
  static TanBranchAngle full_turn() { return {Rational(0), 2}; }
  static TanBranchAngle right_angle() { return {std::nullopt, 0}; }
  static TanBranchAngle arctan(const Rational& t) { return {t, 0}; }

  /// Direction angle of a nonzero vector, in [0, 2pi).
  static TanBranchAngle from_vector(const RatPoint& v) {
    if (v.x1 == 0) {
      if (v.x2 == 0) fail(Errc::CoincidentPoint, "direction of zero vector");
      return {std::nullopt, v.x2 > 0 ? 0 : 1};
    }
    Rational t = v.x2 / v.x1;
    if (v.x1 < 0) return {std::move(t), 1};
    return {t, v.x2 >= 0 ? 0 : 2};
  }

  const std::optional<Rational>& tan() const { return tan_; }
  bool is_pole() const { return !tan_.has_value(); }
  long branch() const { return branch_; }

  /// A vector pointing along the angle.
  RatPoint to_vector() const {
    RatPoint v = tan_ ? RatPoint(Rational(1), *tan_) : RatPoint(0, 1);
    return (branch_ % 2 == 0) ? v : -v;
  }

  /// Same angle mod 2pi, in [0, 2pi).
  TanBranchAngle reduced() const {
    long k = ((branch_ % 2) + 2) % 2;
    if (k == 0 && tan_ && *tan_ < 0) k = 2;
    return {tan_, k};
  }

  friend TanBranchAngle operator-(const TanBranchAngle& a) {
    if (a.tan_) return {Rational(-*a.tan_), -a.branch_};
    return {std::nullopt, -a.branch_ - 1};
  }

  friend TanBranchAngle operator+(const TanBranchAngle& a, const TanBranchAngle& b) {
    auto [t, carry] = add_principal(a.tan_, b.tan_);
    return {std::move(t), a.branch_ + b.branch_ + carry};
  }
  friend TanBranchAngle operator-(const TanBranchAngle& a, const TanBranchAngle& b) { return a + (-b); }

  friend bool operator==(const TanBranchAngle& a, const TanBranchAngle& b) {
    return a.branch_ == b.branch_ && a.tan_ == b.tan_;
  }
  friend std::strong_ordering operator<=>(const TanBranchAngle& a, const TanBranchAngle& b) {
    if (a.branch_ != b.branch_) return a.branch_ <=> b.branch_;
    if (!a.tan_ || !b.tan_) return (a.tan_ ? 0 : 1) <=> (b.tan_ ? 0 : 1);
    return compare(*a.tan_, *b.tan_);
  }

  /// Certified enclosure of theta / pi; width is about 2^-bits.
  RationalInterval enclosure(unsigned bits = 64) const {
    const Rational k(branch_);
    if (!tan_) {
      const Rational v = k + Rational(1, 2);
      return {v, v};
    }
    if (*tan_ == 0) return {k, k};
    auto j = detail::atan_over_pi(*tan_, bits);
    return {j.lo + k, j.hi + k};
  }

  double radians() const {
    const double base = static_cast<double>(branch_) * std::numbers::pi;
    return base + (tan_ ? std::atan(to_double(*tan_)) : std::numbers::pi / 2);
  }

  friend std::ostream& operator<<(std::ostream& os, const TanBranchAngle& a) {
    return os << "(tan " << (a.tan_ ? to_string(*a.tan_) : std::string("inf")) << ", branch " << a.branch_ << ")";
  }

  /// Tangent addition with the exact carry: atan(a) + atan(b) = atan(c) + carry*pi,
  /// where each principal value lies in (-pi/2, pi/2] (pi/2 for the pole).
  static std::pair<std::optional<Rational>, long> add_principal(const std::optional<Rational>& a,
                                                                const std::optional<Rational>& b) {
    if (!a && !b) return {Rational(0), 1};
    if (!a || !b) {
      const Rational& f = a ? *a : *b;
      if (f == 0) return {std::nullopt, 0};
      return {Rational(-1 / f), f > 0 ? 1 : 0};
    }
    const Rational prod = *a * *b;
    if (prod == 1) {
      if (*a > 0) return {std::nullopt, 0};
      return {std::nullopt, -1};
    }
    Rational c = (*a + *b) / (1 - prod);
    if (prod < 1) return {std::move(c), 0};
    return {std::move(c), *a > 0 ? 1 : -1};
  }

 private:
  std::optional<Rational> tan_ = Rational(0);
  long branch_ = 0;
};

struct TanBranchAngleHash {
  std::size_t operator()(const TanBranchAngle& a) const noexcept {
    const std::size_t t = a.tan() ? RationalHash{}(*a.tan()) : 0x51ed270b;
    return t * 131 + static_cast<std::size_t>(a.branch());
  }
};

/// One signed operand of a tangent combination.
struct SignedAngle {
  int sign;  // +1 or -1
  TanBranchAngle angle;
};

/// Exact value of a signed sum of angles.
inline TanBranchAngle tan_combine(std::span<const SignedAngle> terms) {
  TanBranchAngle acc = TanBranchAngle::zero();
  for (const auto& term : terms) acc = term.sign >= 0 ? acc + term.angle : acc - term.angle;
  return acc;
}

/// Same result as tan_combine, with the branch fixed by interval arithmetic
/// on certified enclosures rather than by the exact carry rule. Precision
/// doubles until exactly one integer branch is compatible.
inline TanBranchAngle tan_combine_certified(std::span<const SignedAngle> terms, unsigned bits = 32) {
  // tan of the combination, poles included.
  std::optional<Rational> t = Rational(0);
  for (const auto& term : terms) {
    std::optional<Rational> u = term.angle.tan();
    if (term.sign < 0 && u) u = -*u;
    t = TanBranchAngle::add_principal(t, u).first;
  }
  for (;; bits *= 2) {
    RationalInterval sum{Rational(0), Rational(0)};
    for (const auto& term : terms) {
      auto e = term.angle.enclosure(bits);
      sum = sum + (term.sign >= 0 ? e : -e);
    }
    RationalInterval principal = t ? TanBranchAngle(t, 0).enclosure(bits)
                                   : RationalInterval{Rational(1, 2), Rational(1, 2)};
    // branch = theta/pi - principal/pi is an integer inside this interval.
    const Rational lo = sum.lo - principal.hi;
    const Rational hi = sum.hi - principal.lo;
    Integer klo, khi;
    mpz_cdiv_q(klo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(khi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (klo == khi) return {t, klo.get_si()};
    if (klo > khi) fail(Errc::OracleMismatch, "empty branch interval in certified combine");
    if (bits > (1u << 16)) fail(Errc::OracleMismatch, "certified combine did not separate branches");
  }
}

}  // namespace angle_forge
