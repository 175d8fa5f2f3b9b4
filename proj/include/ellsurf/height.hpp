#pragma once

// Canonical height on E(Q(t)) as
//   h(P) = chi + (P).(O) - 1/2 * sum_v deg(v) c_v(P),
// i.e. half of Shioda's height pairing <P, P>. The local terms c_v come from
// the component of the fiber at v met by the section of P; the component is
// read off valuations of the partial derivatives and of the 3-division
// polynomial on the v-minimal model.

#include <map>
#include <string>
#include <vector>

#include "ellsurf/errors.hpp"
#include "ellsurf/mwgroup.hpp"
#include "ellsurf/place.hpp"
#include "ellsurf/surface.hpp"

namespace ellsurf {

enum class HeightNorm { Half, Shioda };

inline Rat norm_factor(HeightNorm n) { return n == HeightNorm::Shioda ? Rat(2) : Rat(1); }

/// Contact of the section of P with the zero section, split into the
/// special places (handled on their minimal models) and a residual
/// polynomial collecting all remaining poles of x(P). No factoring needed.
struct ZeroContact {
  std::map<Place, long> at_special;  // local multiplicity > 0 only
  Poly residual;                      // = prod over other places p^(2m), monic
  Rat value;                          // sum m deg(v)
};

inline ZeroContact zero_contact(const EllipticSurface& surface, const MWPoint& p) {
  if (p.is_zero()) throw Error(ErrorCode::DomainViolation, "contact of O with itself");
  ZeroContact out;
  long total = 0;
  Poly residual = p.x().den();
  for (const auto& [v, ld] : surface.special()) {
    MWPoint pm = transform_point(p, ld.minimal_substitution);
    long vx = valuation(pm.x(), v);
    if (vx < 0) {
      if (vx % 2 != 0)
        throw Error(ErrorCode::MinimalityViolation,
                    "odd pole order " + std::to_string(vx) + " of x at " + v.to_string());
      out.at_special[v] = -vx / 2;
      total += (-vx / 2) * v.degree();
    }
    if (!v.is_infinity()) {
      while (true) {
        auto [q, r] = divmod(residual, v.poly());
        if (!r.is_zero()) break;
        residual = std::move(q);
      }
    }
  }
  out.residual = residual.monic();
  if (out.residual.degree() % 2 != 0)
    throw Error(ErrorCode::MinimalityViolation, "odd pole order of x at a good place");
  out.value = Rat(total) + make_rat(out.residual.degree(), 2);
  out.value.canonicalize();
  return out;
}

struct IntersectionWithZero {
  Rat value;
  std::vector<Place> meeting_places;
  std::map<Place, long> multiplicity;
};

inline IntersectionWithZero intersection_with_zero(const EllipticSurface& surface, const MWPoint& p) {
  ZeroContact zc = zero_contact(surface, p);
  IntersectionWithZero out{zc.value, {}, zc.at_special};
  if (!zc.residual.is_constant()) {
    for (const auto& [f, e] : factor(zc.residual).factors) {
      if (e % 2 != 0) throw Error(ErrorCode::MinimalityViolation, "odd pole order at good place");
      out.multiplicity[Place::finite_trusted(f)] = e / 2;
    }
  }
  for (const auto& [v, m] : out.multiplicity) out.meeting_places.push_back(v);
  return out;
}

struct ComponentId {
  enum class Kind { Identity, Cyclic, NonIdentity, Near, Far };
  Kind kind = Kind::Identity;
  long index = 0;   // component index for I_n; 1 near / 2 far for I_n^*
  Rat correction;   // Shioda's local term c_v (not yet weighted by degree)

  bool is_identity() const { return kind == Kind::Identity; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Identity: return "identity";
      case Kind::Cyclic: return "component " + std::to_string(index);
      case Kind::NonIdentity: return "non-identity";
      case Kind::Near: return "near";
      case Kind::Far: return "far";
    }
    return "?";
  }
};

/// Component of the fiber at local.place met by the section of p (given in
/// the coordinates of the model the local data was computed from).
inline ComponentId component_index(const LocalData& local, const MWPoint& p) {
  using Kind = ComponentId::Kind;
  ComponentId id;
  if (p.is_zero() || local.kodaira.is_good()) return id;
  const Place& v = local.place;
  const WeierstrassModel& m = local.minimal_model;
  MWPoint pm = transform_point(p, local.minimal_substitution);
  const RatFunc &x = pm.x(), &y = pm.y();
  if (valuation(x, v) < 0) return id;  // reduces to O

  long a = valuation(RatFunc(3) * x * x + RatFunc(2) * m.a2() * x + m.a4() - m.a1() * y, v);
  long b = valuation(RatFunc(2) * y + m.a1() * x + m.a3(), v);
  if (a <= 0 || b <= 0) return id;  // smooth point of the reduction

  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::ComponentIdentificationFailure,
                 local.kodaira.to_string() + " at " + v.to_string() + ": " + why);
  };

  if (local.kodaira.is_multiplicative()) {
    const long n = local.v_delta_min;
    // the section meets component i (or n - i), with i = min(b, n/2)
    Rat i = b == kValInfinity ? make_rat(n, 2) : std::min(Rat(b), make_rat(n, 2));
    i.canonicalize();
    if (i.get_den() != 1) throw fail("half-integral component index");
    id.kind = Kind::Cyclic;
    id.index = i.get_num().get_si();
    id.correction = i * (n - i) / n;
    return id;
  }

  // additive: Silverman's case split on b = v(psi_2) and c = v(psi_3)
  RatFunc psi3 = RatFunc(3) * x * x * x * x + m.b2() * x * x * x + RatFunc(3) * m.b4() * x * x +
                 RatFunc(3) * m.b6() * x + m.b8();
  long c = valuation(psi3, v);
  if (b == kValInfinity && c == kValInfinity) throw fail("point is both 2- and 3-torsion");
  Rat corr;
  if (c != kValInfinity && (b == kValInfinity || c < 3 * b)) {
    corr = make_rat(c, 4);
  } else {
    corr = make_rat(2 * b, 3);
  }
  corr.canonicalize();
  id.correction = corr;

  using F = KodairaType::Family;
  const KodairaType& k = local.kodaira;
  auto expect = [&](const Rat& want, Kind kind, long index) {
    if (corr != want) throw fail("local term " + to_string(corr) + " not in the table");
    id.kind = kind;
    id.index = index;
    return id;
  };
  switch (k.family) {
    case F::II:
    case F::IIstar: throw fail("fiber has no non-identity simple component");
    case F::III: return expect(make_rat(1, 2), Kind::NonIdentity, 1);
    case F::IV: return expect(make_rat(2, 3), Kind::NonIdentity, 1);
    case F::IVstar: return expect(make_rat(4, 3), Kind::NonIdentity, 1);
    case F::IIIstar: return expect(make_rat(3, 2), Kind::NonIdentity, 1);
    case F::Istar: {
      if (k.n == 0) return expect(Rat(1), Kind::NonIdentity, 1);
      if (corr == 1) return expect(Rat(1), Kind::Near, 1);
      Rat far = 1 + make_rat(k.n, 4);
      far.canonicalize();
      return expect(far, Kind::Far, 2);
    }
    case F::I: break;
  }
  throw fail("unexpected fiber type");
}

inline ComponentId component_index(const EllipticSurface& surface, const Place& v, const MWPoint& p) {
  return component_index(surface.local(v), p);
}

struct HeightBreakdown {
  Rat intersection_PO;
  std::map<Place, long> contact;               // local (P).(O) multiplicities
  std::map<Place, Rat> local_corrections;      // deg(v) * c_v, nonzero only
  std::map<Place, ComponentId> components;     // at every bad place
  long chi = 0;
  Rat hhat;
};

/// Breakdown with the contact at non-special places summarized (no
/// factoring); `contact` lists special places only.
inline HeightBreakdown canonical_height_fast(const EllipticSurface& surface, const MWPoint& p) {
  if (is_isotrivial(surface.model())) throw Error(ErrorCode::IsotrivialCurve, "height needs a nonisotrivial curve");
  require_on_curve(surface.model(), p);
  HeightBreakdown hb;
  hb.chi = surface.chi();
  if (p.is_zero()) {
    hb.intersection_PO = -hb.chi;  // (O).(O) = -chi
    hb.hhat = 0;
    return hb;
  }
  ZeroContact zc = zero_contact(surface, p);
  hb.intersection_PO = zc.value;
  hb.contact = zc.at_special;
  Rat corr_sum = 0;
  for (const auto& [v, ld] : surface.special()) {
    if (ld.kodaira.is_good()) continue;
    ComponentId id = component_index(ld, p);
    hb.components[v] = id;
    if (id.correction != 0) {
      Rat weighted = id.correction * v.degree();
      hb.local_corrections[v] = weighted;
      corr_sum += weighted;
    }
  }
  hb.hhat = Rat(hb.chi) + hb.intersection_PO - corr_sum / 2;
  hb.hhat.canonicalize();
  return hb;
}

inline HeightBreakdown canonical_height(const EllipticSurface& surface, const MWPoint& p) {
  HeightBreakdown hb = canonical_height_fast(surface, p);
  if (!p.is_zero()) hb.contact = intersection_with_zero(surface, p).multiplicity;
  return hb;
}

inline Rat height(const EllipticSurface& surface, const MWPoint& p) {
  return canonical_height_fast(surface, p).hhat;
}

/// <P, Q> in the same normalization as height(): h(P) = <P, P>.
inline Rat height_pairing(const EllipticSurface& surface, const MWPoint& p, const MWPoint& q) {
  const auto& m = surface.model();
  Rat v = (height(surface, add(m, p, q)) - height(surface, p) - height(surface, q)) / 2;
  v.canonicalize();
  return v;
}

inline std::optional<long> is_torsion(const WeierstrassModel& m, const MWPoint& p, long max_order) {
  if (max_order < 1) throw Error(ErrorCode::DomainViolation, "max_order must be >= 1");
  return torsion_order(m, p, max_order);
}

/// 2 g(Y) - 2 + deg (f^* D)_red
inline long tautological_rhs(long genus_y, long deg_pullback_red) {
  if (genus_y < 0 || deg_pullback_red < 0) throw Error(ErrorCode::DomainViolation, "negative genus or degree");
  return 2 * genus_y - 2 + deg_pullback_red;
}

}  // namespace ellsurf
