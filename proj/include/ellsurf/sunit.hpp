#pragma once

// The S-unit equation x + y = 1 over Q(t), S a finite set of places of P^1.
//
// Writing x = c f/h and y = c' g/h with f, g, h monic, pairwise coprime and
// supported on the finite places of S, a solution is the same thing as a
// relation c f + c' g = h. Mason-Stothers bounds the degrees when x is not
// constant, so the search is a finite enumeration of triples plus a 2x2
// linear solve.

#include <algorithm>
#include <array>
#include <future>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ellsurf/errors.hpp"
#include "ellsurf/place.hpp"
#include "ellsurf/ratfunc.hpp"

namespace ellsurf {

struct UnitEquationInstance {
  std::vector<Place> S;  // sorted, distinct

  explicit UnitEquationInstance(std::vector<Place> places) : S(std::move(places)) {
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
  }

  long finite_degree_sum() const {
    long d = 0;
    for (const auto& v : S)
      if (!v.is_infinity()) d += v.degree();
    return d;
  }
  long s_weighted() const { return weighted_size(S); }
  bool contains(const Place& v) const { return std::binary_search(S.begin(), S.end(), v); }
};

struct UnitSolution {
  RatFunc x;
  RatFunc y;
  bool nontrivial = true;

  friend bool operator<(const UnitSolution& a, const UnitSolution& b) {
    if (!(a.x == b.x)) return a.x < b.x;
    return a.y < b.y;
  }
  friend bool operator==(const UnitSolution& a, const UnitSolution& b) { return a.x == b.x && a.y == b.y; }
};

struct UnitSolveResult {
  std::vector<UnitSolution> solutions;  // nontrivial, ordered pairs, sorted
  long trivial_families = 1;            // x in Q \ {0, 1}
  long ms_bound = 0;

  long ordered_count() const { return static_cast<long>(solutions.size()); }
  long unordered_count() const { return ordered_count() / 2; }  // x != y for nontrivial pairs
};

inline long mason_stothers_bound(const UnitEquationInstance& inst) {
  return std::max(0L, inst.finite_degree_sum() - 1);
}

/// True iff divisor_of(f) is supported in S.
inline bool is_s_unit(const RatFunc& f, const UnitEquationInstance& inst) {
  if (f.is_zero()) return false;
  const P1Divisor d = divisor_of(f);
  for (const auto& [v, m] : d.entries())
    if (m != 0 && !inst.contains(v)) return false;
  return true;
}

namespace detail {

struct SProduct {
  Poly poly;
  unsigned long mask = 0;  // finite places in the support
  long support_degree = 0;
  long degree = 0;
};

/// All monic products of the given irreducibles of degree <= max_degree.
inline std::vector<SProduct> s_products(const std::vector<Place>& finite, long max_degree) {
  std::vector<SProduct> out{{Poly(1), 0, 0, 0}};
  for (size_t i = 0; i < finite.size(); ++i) {
    const long d = finite[i].degree();
    const size_t before = out.size();
    for (size_t k = 0; k < before; ++k) {
      SProduct cur = out[k];
      while (cur.degree + d <= max_degree) {
        cur.poly = cur.poly * finite[i].poly();
        cur.degree += d;
        if (!(cur.mask & (1UL << i))) {
          cur.mask |= 1UL << i;
          cur.support_degree += d;
        }
        out.push_back(cur);
      }
    }
  }
  return out;
}

/// (c, c') with c f + c' g = h, if any; f and g linearly independent.
inline std::optional<std::pair<Rat, Rat>> solve_two(const Poly& f, const Poly& g, const Poly& h) {
  const long n = std::max({f.degree(), g.degree(), h.degree()}) + 1;
  // rows [f_k, g_k | h_k], eliminate
  std::vector<std::array<Rat, 3>> rows;
  for (long k = 0; k < n; ++k) rows.push_back({f.coeff(k), g.coeff(k), h.coeff(k)});
  size_t rank = 0;
  for (int col = 0; col < 2; ++col) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) return std::nullopt;
    std::swap(rows[rank], rows[piv]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rat factor = rows[r][col] / rows[rank][col];
      for (int c = 0; c < 3; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  for (size_t r = 2; r < rows.size(); ++r)
    if (rows[r][2] != 0) return std::nullopt;
  Rat c = rows[0][2] / rows[0][0], cp = rows[1][2] / rows[1][1];
  c.canonicalize();
  cp.canonicalize();
  return std::make_pair(c, cp);
}

}  // namespace detail

inline UnitSolveResult solve(const UnitEquationInstance& inst, unsigned jobs = 1) {
  UnitSolveResult res;
  res.ms_bound = mason_stothers_bound(inst);
  std::vector<Place> finite;
  for (const auto& v : inst.S)
    if (!v.is_infinity()) finite.push_back(v);
  if (finite.size() >= 8 * sizeof(unsigned long)) throw Error(ErrorCode::DomainViolation, "too many places in S");
  const auto prods = detail::s_products(finite, res.ms_bound);

  // unordered in (f, g): each hit gives (x, y) and (y, x)
  auto work = [&](size_t lo, size_t hi) {
    std::vector<UnitSolution> out;
    for (size_t i = lo; i < hi; ++i) {
      const auto& f = prods[i];
      for (size_t j = i + 1; j < prods.size(); ++j) {
        const auto& g = prods[j];
        if (f.mask & g.mask) continue;
        for (const auto& h : prods) {
          if (h.mask & (f.mask | g.mask)) continue;
          // the two largest degrees in c f + c' g = h agree
          long d[3] = {f.degree, g.degree, h.degree};
          std::sort(d, d + 3);
          if (d[1] != d[2] || d[2] == 0) continue;
          if (d[2] > f.support_degree + g.support_degree + h.support_degree - 1) continue;
          auto cc = detail::solve_two(f.poly, g.poly, h.poly);
          if (!cc || cc->first == 0 || cc->second == 0) continue;
          RatFunc x(cc->first * f.poly, h.poly), y(cc->second * g.poly, h.poly);
          if (!(x + y == RatFunc(1))) continue;
          if (!is_s_unit(x, inst) || !is_s_unit(y, inst)) continue;
          out.push_back({x, y, true});
          out.push_back({y, x, true});
        }
      }
    }
    return out;
  };

  std::vector<UnitSolution> all;
  jobs = std::max(1u, jobs);
  if (jobs == 1 || prods.size() < 4 * jobs) {
    all = work(0, prods.size());
  } else {
    std::vector<std::future<std::vector<UnitSolution>>> parts;
    const size_t chunk = (prods.size() + jobs - 1) / jobs;
    for (size_t lo = 0; lo < prods.size(); lo += chunk)
      parts.push_back(std::async(std::launch::async, work, lo, std::min(prods.size(), lo + chunk)));
    for (auto& p : parts) {
      auto got = p.get();
      all.insert(all.end(), got.begin(), got.end());
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  res.solutions = std::move(all);
  return res;
}

/// 2 * 7^(2 s)
inline Integer evertse_bound(long s_weighted) {
  if (s_weighted < 0) throw Error(ErrorCode::DomainViolation, "s must be >= 0");
  return 2 * ipow(Integer(7), static_cast<unsigned long>(2 * s_weighted));
}

/// Automorphisms of P^1 permuting four given points: at most 4!.
inline long mobius_orbit_bound() { return 24; }

/// The six Moebius maps permuting {0, 1, inf}.
inline std::vector<RatFunc> anharmonic_maps() {
  const RatFunc t = RatFunc::t(), one(1);
  return {t, one - t, one / t, one / (one - t), t / (t - one), (t - one) / t};
}

}  // namespace ellsurf
