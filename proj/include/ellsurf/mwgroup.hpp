#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ellsurf/errors.hpp"
#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

/// Point of E(Q(t)): the origin O or an affine point (x, y).
class MWPoint {
 public:
  MWPoint() = default;  // O
  MWPoint(RatFunc x, RatFunc y) : xy_(std::in_place, std::move(x), std::move(y)) {}

  static MWPoint zero() { return {}; }

  bool is_zero() const { return !xy_.has_value(); }
  const RatFunc& x() const { return xy_->first; }
  const RatFunc& y() const { return xy_->second; }

  std::string to_string() const {
    if (is_zero()) return "O";
    return "(" + x().to_string() + ", " + y().to_string() + ")";
  }

  friend bool operator==(const MWPoint& a, const MWPoint& b) { return a.xy_ == b.xy_; }
  /// O first, then by x, then by y.
  friend bool operator<(const MWPoint& a, const MWPoint& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && !b.is_zero();
    if (!(a.x() == b.x())) return a.x() < b.x();
    return a.y() < b.y();
  }

 private:
  std::optional<std::pair<RatFunc, RatFunc>> xy_;
};

inline bool on_curve(const WeierstrassModel& m, const MWPoint& p) {
  return p.is_zero() || m.contains(p.x(), p.y());
}

inline const MWPoint& require_on_curve(const WeierstrassModel& m, const MWPoint& p) {
  if (!on_curve(m, p)) throw Error(ErrorCode::PointNotOnCurve, p.to_string());
  return p;
}

/// Coordinates of p on the model obtained by `sub`.
inline MWPoint transform_point(const MWPoint& p, const Substitution& sub) {
  if (p.is_zero() || sub.is_identity()) return p;
  RatFunc u2 = sub.u * sub.u;
  RatFunc xd = p.x() - sub.r;
  RatFunc y = (p.y() - sub.s * xd - sub.w) / (u2 * sub.u);
  return {xd / u2, y};
}

inline MWPoint neg(const WeierstrassModel& m, const MWPoint& p) {
  if (p.is_zero()) return p;
  return {p.x(), -p.y() - m.a1() * p.x() - m.a3()};
}

/// Chord-tangent addition; inputs are assumed to lie on the curve.
inline MWPoint add_unchecked(const WeierstrassModel& m, const MWPoint& p, const MWPoint& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  RatFunc lambda, nu;
  if (p.x() == q.x()) {
    RatFunc denom = p.y() + q.y() + m.a1() * q.x() + m.a3();
    if (denom.is_zero()) return {};
    const RatFunc& x1 = p.x();
    const RatFunc& y1 = p.y();
    RatFunc d = RatFunc(2) * y1 + m.a1() * x1 + m.a3();
    lambda = (RatFunc(3) * x1 * x1 + RatFunc(2) * m.a2() * x1 + m.a4() - m.a1() * y1) / d;
    nu = (-x1 * x1 * x1 + m.a4() * x1 + RatFunc(2) * m.a6() - m.a3() * y1) / d;
  } else {
    RatFunc dx = q.x() - p.x();
    lambda = (q.y() - p.y()) / dx;
    nu = (p.y() * q.x() - q.y() * p.x()) / dx;
  }
  RatFunc x3 = lambda * lambda + m.a1() * lambda - m.a2() - p.x() - q.x();
  RatFunc y3 = -(lambda + m.a1()) * x3 - nu - m.a3();
  return {x3, y3};
}

inline MWPoint add(const WeierstrassModel& m, const MWPoint& p, const MWPoint& q) {
  require_on_curve(m, p);
  require_on_curve(m, q);
  return add_unchecked(m, p, q);
}

inline MWPoint sub(const WeierstrassModel& m, const MWPoint& p, const MWPoint& q) {
  return add(m, p, neg(m, q));
}

/// n * p by double-and-add.
inline MWPoint mul(const WeierstrassModel& m, long n, const MWPoint& p) {
  require_on_curve(m, p);
  MWPoint base = n < 0 ? neg(m, p) : p;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1UL : static_cast<unsigned long>(n);
  MWPoint acc;
  while (k) {
    if (k & 1UL) acc = add_unchecked(m, acc, base);
    k >>= 1UL;
    if (k) base = add_unchecked(m, base, base);
  }
  return acc;
}

/// Smallest n <= max_order with n p = O.
inline std::optional<long> torsion_order(const WeierstrassModel& m, const MWPoint& p, long max_order) {
  require_on_curve(m, p);
  MWPoint acc = p;
  for (long n = 1; n <= max_order; ++n) {
    if (acc.is_zero()) return n;
    acc = add_unchecked(m, acc, p);
  }
  return std::nullopt;
}

}  // namespace ellsurf
