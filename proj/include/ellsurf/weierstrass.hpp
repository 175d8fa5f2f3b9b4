#pragma once

#include <array>
#include <string>

#include "ellsurf/errors.hpp"
#include "ellsurf/parse.hpp"
#include "ellsurf/ratfunc.hpp"

namespace ellsurf {

/// Change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + w.
struct Substitution {
  RatFunc u = RatFunc(1);
  RatFunc r;
  RatFunc s;
  RatFunc w;

  bool is_identity() const { return u == RatFunc(1) && r.is_zero() && s.is_zero() && w.is_zero(); }
};

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q(t).
class WeierstrassModel {
 public:
  WeierstrassModel(RatFunc a1, RatFunc a2, RatFunc a3, RatFunc a4, RatFunc a6)
      : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {
    b2_ = a1_ * a1_ + RatFunc(4) * a2_;
    b4_ = a1_ * a3_ + RatFunc(2) * a4_;
    b6_ = a3_ * a3_ + RatFunc(4) * a6_;
    b8_ = a1_ * a1_ * a6_ + RatFunc(4) * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
    c4_ = b2_ * b2_ - RatFunc(24) * b4_;
    c6_ = -b2_ * b2_ * b2_ + RatFunc(36) * b2_ * b4_ - RatFunc(216) * b6_;
    disc_ = -b2_ * b2_ * b8_ - RatFunc(8) * b4_ * b4_ * b4_ - RatFunc(27) * b6_ * b6_ +
            RatFunc(9) * b2_ * b4_ * b6_;
    if (disc_.is_zero()) throw Error(ErrorCode::SingularModel, "discriminant vanishes identically");
  }

  /// y^2 = x^3 + a4 x + a6
  static WeierstrassModel short_form(RatFunc a4, RatFunc a6) {
    return {RatFunc(), RatFunc(), RatFunc(), std::move(a4), std::move(a6)};
  }

  static WeierstrassModel parse(const std::string& a1, const std::string& a2, const std::string& a3,
                                const std::string& a4, const std::string& a6) {
    return {parse_ratfunc(a1), parse_ratfunc(a2), parse_ratfunc(a3), parse_ratfunc(a4), parse_ratfunc(a6)};
  }

  const RatFunc& a1() const { return a1_; }
  const RatFunc& a2() const { return a2_; }
  const RatFunc& a3() const { return a3_; }
  const RatFunc& a4() const { return a4_; }
  const RatFunc& a6() const { return a6_; }
  std::array<RatFunc, 5> coefficients() const { return {a1_, a2_, a3_, a4_, a6_}; }

  const RatFunc& b2() const { return b2_; }
  const RatFunc& b4() const { return b4_; }
  const RatFunc& b6() const { return b6_; }
  const RatFunc& b8() const { return b8_; }
  const RatFunc& c4() const { return c4_; }
  const RatFunc& c6() const { return c6_; }
  const RatFunc& discriminant() const { return disc_; }
  RatFunc j_invariant() const { return c4_ * c4_ * c4_ / disc_; }

  bool contains(const RatFunc& x, const RatFunc& y) const {
    return y * y + a1_ * x * y + a3_ * y == x * x * x + a2_ * x * x + a4_ * x + a6_;
  }

  /// Model in the primed coordinates of the substitution.
  WeierstrassModel transform(const Substitution& sub) const {
    const RatFunc &u = sub.u, &r = sub.r, &s = sub.s, &w = sub.w;
    RatFunc u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    RatFunc n1 = a1_ + RatFunc(2) * s;
    RatFunc n2 = a2_ - s * a1_ + RatFunc(3) * r - s * s;
    RatFunc n3 = a3_ + r * a1_ + RatFunc(2) * w;
    RatFunc n4 = a4_ - s * a3_ + RatFunc(2) * r * a2_ - (w + r * s) * a1_ + RatFunc(3) * r * r -
                 RatFunc(2) * s * w;
    RatFunc n6 = a6_ + r * a4_ + r * r * a2_ + r * r * r - w * a3_ - w * w - r * w * a1_;
    return {n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6};
  }

  friend bool operator==(const WeierstrassModel& a, const WeierstrassModel& b) {
    return a.coefficients() == b.coefficients();
  }

 private:
  RatFunc a1_, a2_, a3_, a4_, a6_;
  RatFunc b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

/// Composition: applying `first` then `second` equals applying the result.
inline Substitution compose(const Substitution& first, const Substitution& second) {
  // x = u1^2 x1 + r1, x1 = u2^2 x2 + r2 ...
  Substitution out;
  out.u = first.u * second.u;
  out.r = first.u * first.u * second.r + first.r;
  out.s = first.s + first.u * second.s;
  out.w = first.u * first.u * first.u * second.w + first.s * first.u * first.u * second.r + first.w;
  return out;
}

inline Substitution invert(const Substitution& sub) {
  Substitution out;
  out.u = sub.u.inverse();
  out.r = -sub.r / (sub.u * sub.u);
  out.s = -sub.s / sub.u;
  out.w = (sub.r * sub.s - sub.w) / (sub.u * sub.u * sub.u);
  return out;
}

}  // namespace ellsurf
