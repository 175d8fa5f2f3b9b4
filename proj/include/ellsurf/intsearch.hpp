#pragma once

// (S, D)-integrality of sections and the search for integral points in a
// ball of the Mordell-Weil lattice.

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ellsurf/errors.hpp"
#include "ellsurf/height.hpp"
#include "ellsurf/mwgroup.hpp"
#include "ellsurf/place.hpp"
#include "ellsurf/surface.hpp"

namespace ellsurf {

/// The horizontal divisor D: the zero section, or a union of sections.
struct DivisorSpec {
  enum class Kind { ZeroSection, PointUnion };
  Kind kind = Kind::ZeroSection;
  std::vector<MWPoint> points;

  static DivisorSpec zero_section() { return {}; }
  static DivisorSpec point_union(std::vector<MWPoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return {Kind::PointUnion, std::move(pts)};
  }

  bool contains(const MWPoint& p) const {
    if (kind == Kind::ZeroSection) return p.is_zero();
    return std::find(points.begin(), points.end(), p) != points.end();
  }
};

struct IntegralityConfig {
  std::set<Place> S;
  DivisorSpec D;

  long s_weighted() const {
    long s = 0;
    for (const auto& v : S) s += v.degree();
    return s;
  }
};

namespace detail {

inline void check_divisor(const EllipticSurface& surface, const MWPoint& p, const DivisorSpec& d) {
  require_on_curve(surface.model(), p);
  for (const auto& q : d.points) require_on_curve(surface.model(), q);
  if (d.contains(p)) throw Error(ErrorCode::PointOnDivisor, p.to_string() + " lies on D");
}

/// Sections whose meeting with O decides meeting with D.
inline std::vector<MWPoint> differences(const EllipticSurface& surface, const MWPoint& p, const DivisorSpec& d) {
  if (d.kind == DivisorSpec::Kind::ZeroSection) return {p};
  std::vector<MWPoint> out;
  for (const auto& q : d.points) out.push_back(sub(surface.model(), p, q));
  return out;
}

}  // namespace detail

/// Places over which the section of p meets D. For a union of sections,
/// sigma_P meets sigma_Q over v iff sigma_{P-Q} meets O over v.
inline std::set<Place> meets(const EllipticSurface& surface, const MWPoint& p, const DivisorSpec& d) {
  detail::check_divisor(surface, p, d);
  std::set<Place> out;
  for (const auto& diff : detail::differences(surface, p, d))
    for (const auto& v : intersection_with_zero(surface, diff).meeting_places) out.insert(v);
  return out;
}

/// meets(p, D) inside S; avoids factoring by stripping the places of S off
/// the residual pole polynomial.
inline bool is_integral(const EllipticSurface& surface, const MWPoint& p, const IntegralityConfig& config,
                        bool checked = true) {
  if (checked) {
    detail::check_divisor(surface, p, config.D);
  } else if (config.D.contains(p)) {
    throw Error(ErrorCode::PointOnDivisor, p.to_string() + " lies on D");
  }
  for (const auto& diff : detail::differences(surface, p, config.D)) {
    ZeroContact zc = zero_contact(surface, diff);
    for (const auto& [v, m] : zc.at_special)
      if (!config.S.count(v)) return false;
    Poly rest = zc.residual;
    for (const auto& v : config.S) {
      if (v.is_infinity() || surface.is_special(v)) continue;
      while (!rest.is_constant()) {
        auto [q, r] = divmod(rest, v.poly());
        if (!r.is_zero()) break;
        rest = std::move(q);
      }
    }
    if (!rest.is_constant()) return false;
  }
  return true;
}

inline Rat hs_height_bound(long chi, long g, long s_weighted) {
  if (chi < 1 || g < 0 || s_weighted < 0) throw Error(ErrorCode::DomainViolation, "need chi >= 1, g >= 0, s >= 0");
  return Rat(25 * chi + 6 * g + 2 * s_weighted);
}

/// ceil(alpha s + beta)^gamma
inline Integer packing_count_bound(const Rat& alpha, const Rat& beta, long gamma, long s) {
  if (gamma < 0) throw Error(ErrorCode::DomainViolation, "gamma must be >= 0");
  Rat base = alpha * s + beta;
  base.canonicalize();
  return ipow(ceil_rat(base), static_cast<unsigned long>(gamma));
}

// ---------------------------------------------------------------------------
// Lattice enumeration

using Gram = std::vector<std::vector<Rat>>;

/// Gram matrix of the height pairing on the basis.
inline Gram gram_matrix(const EllipticSurface& surface, const std::vector<MWPoint>& basis) {
  const size_t r = basis.size();
  Gram g(r, std::vector<Rat>(r));
  std::vector<Rat> h(r);
  for (size_t i = 0; i < r; ++i) h[i] = height(surface, basis[i]);
  for (size_t i = 0; i < r; ++i) {
    g[i][i] = h[i];
    for (size_t j = i + 1; j < r; ++j) {
      Rat v = (height(surface, add(surface.model(), basis[i], basis[j])) - h[i] - h[j]) / 2;
      v.canonicalize();
      g[i][j] = g[j][i] = v;
    }
  }
  return g;
}

/// Exact LDL^T of a symmetric matrix; nullopt unless positive definite.
struct LDL {
  std::vector<std::vector<Rat>> L;  // unit lower triangular
  std::vector<Rat> D;
};

inline std::optional<LDL> ldl(const Gram& g) {
  const size_t r = g.size();
  LDL out{std::vector<std::vector<Rat>>(r, std::vector<Rat>(r)), std::vector<Rat>(r)};
  for (size_t j = 0; j < r; ++j) {
    Rat d = g[j][j];
    for (size_t k = 0; k < j; ++k) d -= out.L[j][k] * out.L[j][k] * out.D[k];
    d.canonicalize();
    if (d <= 0) return std::nullopt;
    out.D[j] = d;
    out.L[j][j] = 1;
    for (size_t i = j + 1; i < r; ++i) {
      Rat v = g[i][j];
      for (size_t k = 0; k < j; ++k) v -= out.L[i][k] * out.L[j][k] * out.D[k];
      v /= d;
      v.canonicalize();
      out.L[i][j] = v;
    }
  }
  return out;
}

inline Rat quadratic_form(const Gram& g, const std::vector<long>& n) {
  Rat q = 0;
  for (size_t i = 0; i < n.size(); ++i)
    for (size_t j = 0; j < n.size(); ++j) q += g[i][j] * n[i] * n[j];
  q.canonicalize();
  return q;
}

/// All integer vectors n with n^T G n <= bound, in lexicographic order
/// (Fincke-Pohst with exact rational bounds). G must be positive definite.
inline std::vector<std::vector<long>> lattice_ball(const Gram& g, const Rat& bound) {
  const size_t r = g.size();
  std::vector<std::vector<long>> out;
  if (bound < 0) return out;
  if (r == 0) {
    out.emplace_back();
    return out;
  }
  auto fact = ldl(g);
  if (!fact) throw Error(ErrorCode::DependentBasis, "Gram matrix is not positive definite");
  // Q(n) = sum_i D_i (n_i + sum_{j>i} L_{ji} n_j)^2, so fix coordinates from the last one down.
  std::vector<long> n(r, 0);
  std::function<void(long, Rat)> rec = [&](long i, Rat remaining) {
    Rat centre = 0;
    for (size_t j = i + 1; j < r; ++j) centre -= fact->L[j][i] * n[j];
    centre.canonicalize();
    const Rat& d = fact->D[i];
    Integer k = isqrt_ratio(remaining, d);
    long lo = Integer(floor_rat(centre) - k - 1).get_si();
    long hi = Integer(ceil_rat(centre) + k + 1).get_si();
    for (long c = lo; c <= hi; ++c) {
      Rat off = Rat(c) - centre;
      Rat used = d * off * off;
      if (used > remaining) continue;
      n[i] = c;
      if (i == 0) {
        out.push_back(n);
      } else {
        rec(i - 1, remaining - used);
      }
    }
    n[i] = 0;
  };
  rec(static_cast<long>(r) - 1, bound);
  std::sort(out.begin(), out.end());
  return out;
}

/// Smallest nonzero value of n^T G n.
inline Rat lattice_minimum(const Gram& g) {
  if (g.empty()) throw Error(ErrorCode::DomainViolation, "empty lattice has no minimum");
  Rat bound = g[0][0];
  for (size_t i = 1; i < g.size(); ++i) bound = std::min(bound, g[i][i]);
  std::optional<Rat> best;
  for (const auto& n : lattice_ball(g, bound)) {
    if (std::all_of(n.begin(), n.end(), [](long c) { return c == 0; })) continue;
    Rat q = quadratic_form(g, n);
    if (!best || q < *best) best = q;
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Search

struct FoundPoint {
  MWPoint point;
  std::vector<long> coefficients;  // on the basis
  MWPoint torsion;                 // torsion summand
  HeightBreakdown breakdown;
  std::vector<Place> meeting_places;
};

struct SearchReport {
  long s_weighted = 0;
  Rat height_bound;
  std::vector<MWPoint> basis;
  std::vector<MWPoint> torsion;
  std::vector<FoundPoint> found;
  bool exhaustive = false;
  long candidates = 0;  // points of the ball that were tested
  std::optional<Rat> max_found_height;
};

struct SearchOptions {
  std::optional<Rat> bound_override;
  long genus = 0;
  unsigned jobs = 1;
};

/// Every P = sum n_i P_i + T with hhat(P) <= bound that is (S, D)-integral.
/// The torsion list should be the full torsion subgroup (O is added if absent).
inline SearchReport enumerate_integral(const EllipticSurface& surface, const IntegralityConfig& config,
                                       const std::vector<MWPoint>& basis, std::vector<MWPoint> torsion,
                                       const SearchOptions& opts = {}) {
  const auto& m = surface.model();
  for (const auto& b : basis)
    if (!on_curve(m, b)) throw Error(ErrorCode::BasisNotOnCurve, b.to_string());
  for (const auto& t : torsion) require_on_curve(m, t);
  if (std::find(torsion.begin(), torsion.end(), MWPoint()) == torsion.end()) torsion.push_back(MWPoint());
  std::sort(torsion.begin(), torsion.end());
  torsion.erase(std::unique(torsion.begin(), torsion.end()), torsion.end());

  SearchReport rep;
  rep.s_weighted = config.s_weighted();
  rep.height_bound = opts.bound_override ? *opts.bound_override
                                         : hs_height_bound(surface.chi(), opts.genus, rep.s_weighted);
  rep.basis = basis;
  rep.torsion = torsion;

  Gram g = gram_matrix(surface, basis);
  if (!basis.empty() && !ldl(g)) throw Error(ErrorCode::DependentBasis, "height pairing on the basis is singular");
  auto ball = lattice_ball(g, rep.height_bound);

  struct Candidate {
    std::vector<long> n;
    const MWPoint* t;
  };
  std::vector<Candidate> cands;
  for (const auto& n : ball)
    for (const auto& t : torsion) cands.push_back({n, &t});
  rep.candidates = static_cast<long>(cands.size());

  // multiples n P_j for every coordinate value that occurs in the ball
  std::vector<std::map<long, MWPoint>> multiples(basis.size());
  for (size_t j = 0; j < basis.size(); ++j) {
    long lo = 0, hi = 0;
    for (const auto& n : ball) {
      lo = std::min(lo, n[j]);
      hi = std::max(hi, n[j]);
    }
    MWPoint acc;
    for (long k = 0; k <= hi; ++k, acc = add_unchecked(m, acc, basis[j])) multiples[j][k] = acc;
    const MWPoint minus = neg(m, basis[j]);
    acc = minus;
    for (long k = -1; k >= lo; --k, acc = add_unchecked(m, acc, minus)) multiples[j][k] = acc;
  }

  auto work = [&](size_t lo, size_t hi) {
    std::vector<FoundPoint> local;
    for (size_t i = lo; i < hi; ++i) {
      MWPoint p = *cands[i].t;
      for (size_t j = 0; j < basis.size(); ++j)
        if (cands[i].n[j] != 0) p = add_unchecked(m, p, multiples[j].at(cands[i].n[j]));
      if (config.D.contains(p)) continue;
      if (!is_integral(surface, p, config, false)) continue;
      FoundPoint fp{p, cands[i].n, *cands[i].t, canonical_height(surface, p), {}};
      auto ms = meets(surface, p, config.D);
      fp.meeting_places.assign(ms.begin(), ms.end());
      local.push_back(std::move(fp));
    }
    return local;
  };

  unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1 || cands.size() < 2 * jobs) {
    rep.found = work(0, cands.size());
  } else {
    std::vector<std::future<std::vector<FoundPoint>>> parts;
    size_t chunk = (cands.size() + jobs - 1) / jobs;
    for (size_t lo = 0; lo < cands.size(); lo += chunk)
      parts.push_back(std::async(std::launch::async, work, lo, std::min(cands.size(), lo + chunk)));
    for (auto& f : parts) {
      auto got = f.get();
      std::move(got.begin(), got.end(), std::back_inserter(rep.found));
    }
  }
  std::sort(rep.found.begin(), rep.found.end(),
            [](const FoundPoint& a, const FoundPoint& b) { return a.point < b.point; });
  for (const auto& fp : rep.found)
    if (!rep.max_found_height || fp.breakdown.hhat > *rep.max_found_height) rep.max_found_height = fp.breakdown.hhat;
  rep.exhaustive = true;
  return rep;
}

/// Explicit (alpha, beta) for the count bound from lattice packing: the ball
/// hhat <= B holds at most (1 + 2 sqrt(B/mu))^r lattice points, and
/// (1 + 2x)^2 <= 2 + 8x^2, so with B = 25 chi + 6 g + 2 s and r <= 2 gamma
///   #I_s <= #T (2 + 8 B / mu)^gamma <= (alpha s + beta)^gamma.
struct PackingConstants {
  Rat alpha;
  Rat beta;
  long gamma = 0;
  std::optional<Rat> lattice_min;
};

inline PackingConstants packing_constants(long chi, long g, long torsion_count, long combined_rank_bound,
                                          std::optional<Rat> mu) {
  PackingConstants pc;
  pc.gamma = (combined_rank_bound + 1) / 2;
  pc.lattice_min = mu;
  Rat tors(torsion_count);
  if (!mu) {
    pc.alpha = 0;
    pc.beta = tors;
    return pc;
  }
  pc.alpha = 16 * tors / *mu;
  pc.beta = (2 + 8 * Rat(25 * chi + 6 * g) / *mu) * tors;
  pc.alpha.canonicalize();
  pc.beta.canonicalize();
  return pc;
}

}  // namespace ellsurf
