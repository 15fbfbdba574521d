#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "angle_forge/errors.hpp"
#include "angle_forge/rational.hpp"

namespace angle_forge {

/// Sparse bivariate polynomial over the rationals; exponent pair (i, j) is x1^i x2^j.
class Poly2 {
 public:
  using Exp = std::pair<int, int>;

  Poly2() = default;
  explicit Poly2(const Rational& c) { add_term(0, 0, c); }

  static Poly2 x1() { return monomial(1, 0, Rational(1)); }
  static Poly2 x2() { return monomial(0, 1, Rational(1)); }
  static Poly2 monomial(int i, int j, const Rational& c) {
    Poly2 p;
    p.add_term(i, j, c);
    return p;
  }
  /// a x1 + b x2 + c
  static Poly2 linear(const Rational& a, const Rational& b, const Rational& c) {
    Poly2 p;
    p.add_term(1, 0, a);
    p.add_term(0, 1, b);
    p.add_term(0, 0, c);
    return p;
  }

  void add_term(int i, int j, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace({i, j}, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::map<Exp, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
  }

  Rational eval(const RatPoint& x) const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational m = c;
      for (int k = 0; k < e.first; ++k) m *= x.x1;
      for (int k = 0; k < e.second; ++k) m *= x.x2;
      s += m;
    }
    return s;
  }

  friend Poly2 operator+(Poly2 a, const Poly2& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e.first, e.second, c);
    return a;
  }
  friend Poly2 operator-(Poly2 a, const Poly2& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e.first, e.second, -c);
    return a;
  }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return r;
  }
  friend Poly2 operator*(const Rational& k, const Poly2& a) { return Poly2(k) * a; }
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  /// Leading exponent in graded lexicographic order (x1 > x2).
  Exp leading() const {
    if (terms_.empty()) fail(Errc::ZeroPolynomial, "leading term of the zero polynomial");
    Exp best = terms_.begin()->first;
    for (const auto& [e, c] : terms_) {
      const int d = e.first + e.second, bd = best.first + best.second;
      if (d > bd || (d == bd && e.first > best.first)) best = e;
    }
    return best;
  }

  /// Exact quotient when g divides this polynomial, nullopt otherwise. With one
  /// divisor the division remainder is unique, so zero remainder iff g | f.
  std::optional<Poly2> divide(const Poly2& g) const {
    if (g.is_zero()) fail(Errc::ZeroPolynomial, "division by the zero polynomial");
    const Exp lg = g.leading();
    const Rational cg = g.coeff(lg.first, lg.second);
    Poly2 r = *this, q;
    while (!r.is_zero()) {
      const Exp lr = r.leading();
      if (lr.first < lg.first || lr.second < lg.second) return std::nullopt;
      const Poly2 t = monomial(lr.first - lg.first, lr.second - lg.second, r.coeff(lr.first, lr.second) / cg);
      q = q + t;
      r = r - t * g;
    }
    return q;
  }

  /// True when a = k b for some nonzero rational k.
  friend bool proportional(const Poly2& a, const Poly2& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.terms_.size() != b.terms_.size()) return false;
    const Exp e = a.leading();
    const Rational cb = b.coeff(e.first, e.second);
    if (cb == 0) return false;
    return a == Rational(a.coeff(e.first, e.second) / cb) * b;
  }

  std::string to_string() const {
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + angle_forge::to_string(it->second) + ")";
      if (it->first.first) out += "*x1^" + std::to_string(it->first.first);
      if (it->first.second) out += "*x2^" + std::to_string(it->first.second);
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::map<Exp, Rational> terms_;
};

}  // namespace angle_forge
