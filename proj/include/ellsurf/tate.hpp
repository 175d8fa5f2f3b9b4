#pragma once

#include <algorithm>
#include <string>

#include "ellsurf/errors.hpp"
#include "ellsurf/place.hpp"
#include "ellsurf/weierstrass.hpp"

namespace ellsurf {

struct KodairaType {
  enum class Family { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };
  Family family = Family::I;
  long n = 0;  // meaningful for I and Istar only

  static KodairaType good() { return {}; }

  bool is_good() const { return family == Family::I && n == 0; }
  bool is_multiplicative() const { return family == Family::I && n > 0; }
  bool is_additive() const { return family != Family::I; }

  /// Number of irreducible components of the fiber.
  long component_count() const {
    switch (family) {
      case Family::I: return n == 0 ? 1 : n;
      case Family::Istar: return n + 5;
      case Family::II: return 1;
      case Family::III: return 2;
      case Family::IV: return 3;
      case Family::IVstar: return 7;
      case Family::IIIstar: return 8;
      case Family::IIstar: return 9;
    }
    return 0;
  }

  std::string to_string() const {
    switch (family) {
      case Family::I: return "I" + std::to_string(n);
      case Family::Istar: return "I" + std::to_string(n) + "*";
      case Family::II: return "II";
      case Family::III: return "III";
      case Family::IV: return "IV";
      case Family::IVstar: return "IV*";
      case Family::IIIstar: return "III*";
      case Family::IIstar: return "II*";
    }
    return "?";
  }

  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

/// Local data of the elliptic surface over one place.
struct LocalData {
  Place place;
  KodairaType kodaira;
  long v_delta_min = 0;
  long v_c4_min = 0;
  long v_c6_min = 0;
  int conductor_exponent = 0;
  long component_count = 1;
  Substitution minimal_substitution;  // input model -> minimal model at place
  WeierstrassModel minimal_model;
};

namespace detail {

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline KodairaType classify(long v_c4, long v_delta) {
  using F = KodairaType::Family;
  if (v_delta == 0) return {F::I, 0};
  if (v_c4 == 0) return {F::I, v_delta};
  // additive; v(j) = 3 v(c4) - v(delta), with c4 = 0 meaning j = 0
  bool potentially_multiplicative = v_c4 != kValInfinity && 3 * v_c4 < v_delta;
  if (potentially_multiplicative) return {F::Istar, v_delta - 6};
  switch (v_delta) {
    case 2: return {F::II, 0};
    case 3: return {F::III, 0};
    case 4: return {F::IV, 0};
    case 6: return {F::Istar, 0};
    case 8: return {F::IVstar, 0};
    case 9: return {F::IIIstar, 0};
    case 10: return {F::IIstar, 0};
    default: break;
  }
  throw Error(ErrorCode::MinimalityViolation,
              "no Kodaira type for v(c4)=" + std::to_string(v_c4) + ", v(delta)=" + std::to_string(v_delta));
}

inline bool integral_at(const WeierstrassModel& m, const Place& v) {
  for (const auto& a : m.coefficients())
    if (valuation(a, v) < 0) return false;
  return true;
}

}  // namespace detail

/// Tate's algorithm in residue characteristic 0. With 2 and 3 units in the
/// local ring, the model is reduced to y^2 = x^3 - c4/48 x - c6/864, scaled
/// by pi^k with k = min(floor(v(c4)/4), floor(v(c6)/6)) to be integral and
/// minimal; the Kodaira symbol then depends only on v(c4), v(delta) of the
/// minimal model. An input model that is already integral and minimal at v
/// is kept unchanged (identity substitution).
inline LocalData tate_at(const WeierstrassModel& model, const Place& v) {
  const long v4 = valuation(model.c4(), v);
  const long v6 = valuation(model.c6(), v);
  const long vd = valuation(model.discriminant(), v);
  long k = std::min(v4 == kValInfinity ? kValInfinity : detail::floor_div(v4, 4),
                    v6 == kValInfinity ? kValInfinity : detail::floor_div(v6, 6));

  Substitution sub;
  if (!(k == 0 && detail::integral_at(model, v))) {
    sub.r = -model.b2() / RatFunc(12);
    sub.s = -model.a1() / RatFunc(2);
    sub.w = -(model.a3() + sub.r * model.a1()) / RatFunc(2);
    sub.u = v.uniformizer().pow(k);
  }
  WeierstrassModel minimal = sub.is_identity() ? model : model.transform(sub);
  if (!detail::integral_at(minimal, v))
    throw Error(ErrorCode::MinimalityViolation, "minimal model not integral at " + v.to_string());

  LocalData out{v, {}, vd - 12 * k,
                v4 == kValInfinity ? kValInfinity : v4 - 4 * k,
                v6 == kValInfinity ? kValInfinity : v6 - 6 * k,
                0, 1, sub, minimal};
  out.kodaira = detail::classify(out.v_c4_min, out.v_delta_min);
  out.conductor_exponent = out.kodaira.is_good() ? 0 : out.kodaira.is_multiplicative() ? 1 : 2;
  out.component_count = out.kodaira.component_count();
  return out;
}

}  // namespace ellsurf
