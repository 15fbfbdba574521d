#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "angle_forge/errors.hpp"

namespace angle_forge {

// GMP keeps mpq_class canonical after every arithmetic operation; the only
// entry points that can produce a non-canonical value are the constructors
// below, which all call canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) fail(Errc::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(Errc::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "n", "n/d" or a plain decimal such as "-1.25" into an exact value.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { fail(Errc::ParseError, "not a rational: '" + s + "'"); };
  if (s.empty()) bad();
  try {
    if (auto dot = s.find('.'); dot != std::string::npos && s.find('/') == std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+") bad();
      Integer num(digits, 10);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
      return make_rational(num, den);
    }
    Rational r;
    if (r.set_str(s, 10) != 0) bad();
    if (r.get_den() == 0) bad();
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    bad();
  }
  return {};
}

/// Canonical "num/den" text; integers keep the "/1".
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline int sign(const Rational& r) { return sgn(r); }

inline Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::size_t hash_integer(const Integer& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 2);
  const std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept {
    return hash_integer(r.get_num()) * 31 + hash_integer(r.get_den());
  }
};

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

/// Exact plane point; also used as a vector.
struct RatPoint {
  Rational x1;
  Rational x2;

  RatPoint() = default;
  RatPoint(Rational a, Rational b) : x1(std::move(a)), x2(std::move(b)) {}
  RatPoint(long a, long b) : x1(a), x2(b) {}

  friend bool operator==(const RatPoint& a, const RatPoint& b) { return a.x1 == b.x1 && a.x2 == b.x2; }
  friend std::strong_ordering operator<=>(const RatPoint& a, const RatPoint& b) {
    if (auto c = compare(a.x1, b.x1); c != 0) return c;
    return compare(a.x2, b.x2);
  }

  friend RatPoint operator+(const RatPoint& a, const RatPoint& b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend RatPoint operator-(const RatPoint& a, const RatPoint& b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend RatPoint operator-(const RatPoint& a) { return {-a.x1, -a.x2}; }
  friend RatPoint operator*(const Rational& k, const RatPoint& a) { return {k * a.x1, k * a.x2}; }

  friend std::ostream& operator<<(std::ostream& os, const RatPoint& p) {
    return os << "(" << to_string(p.x1) << ", " << to_string(p.x2) << ")";
  }
};

struct RatPointHash {
  std::size_t operator()(const RatPoint& p) const noexcept {
    RationalHash h;
    return h(p.x1) * 1000003u ^ h(p.x2);
  }
};

inline Rational dot(const RatPoint& a, const RatPoint& b) { return a.x1 * b.x1 + a.x2 * b.x2; }

/// a1 b2 - a2 b1
inline Rational wedge(const RatPoint& a, const RatPoint& b) { return a.x1 * b.x2 - a.x2 * b.x1; }

inline Rational norm2(const RatPoint& a) { return dot(a, a); }

/// Counterclockwise quarter turn.
inline RatPoint rot90(const RatPoint& a) { return {-a.x2, a.x1}; }

}  // namespace angle_forge
