#pragma once

// Factorization in Q[t]: square-free decomposition (Yun), Berlekamp
// factorization modulo a small prime, linear Hensel lifting and exhaustive
// subset recombination (Zassenhaus). Everything is deterministic.

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "ellsurf/errors.hpp"
#include "ellsurf/poly.hpp"

namespace ellsurf {

struct Factorization {
  Rat lead;
  std::vector<std::pair<Poly, long>> factors;  // monic, irreducible, sorted

  Poly expand() const {
    Poly r(lead);
    for (const auto& [f, m] : factors) r *= f.pow(static_cast<unsigned long>(m));
    return r;
  }
};

namespace detail {

using u64 = std::uint64_t;
using FpPoly = std::vector<u64>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline u64 fp_pow(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return r;
}

inline u64 fp_inv(u64 a, u64 p) { return fp_pow(a, p - 2, p); }

inline FpPoly fp_from_z(const ZPoly& z, u64 p) {
  FpPoly r(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    Integer m;
    mpz_fdiv_r_ui(m.get_mpz_t(), z[i].get_mpz_t(), p);
    r[i] = m.get_ui();
  }
  fp_trim(r);
  return r;
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, u64 p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  fp_trim(a);
  return a;
}

inline FpPoly fp_add(FpPoly a, const FpPoly& b, u64 p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
  fp_trim(a);
  return a;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  fp_trim(r);
  return r;
}

inline std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, u64 p) {
  if (b.empty()) throw Error(ErrorCode::DivisionByZero, "F_p division by zero");
  if (a.size() < b.size()) return {{}, a};
  const u64 inv = fp_inv(b.back(), p);
  const std::size_t db = b.size() - 1;
  FpPoly q(a.size() - db, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    u64 c = a[k + db] * inv % p;
    q[k] = c;
    if (!c) continue;
    for (std::size_t j = 0; j <= db; ++j) a[k + j] = (a[k + j] + p - c * b[j] % p) % p;
  }
  a.resize(db);
  fp_trim(a);
  fp_trim(q);
  return {q, a};
}

inline FpPoly fp_monic(FpPoly a, u64 p) {
  if (a.empty()) return a;
  u64 inv = fp_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  while (!b.empty()) {
    FpPoly r = fp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

/// Returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<FpPoly, FpPoly, FpPoly> fp_xgcd(FpPoly a, FpPoly b, u64 p) {
  FpPoly s0{1}, s1{}, t0{}, t1{1};
  while (!b.empty()) {
    auto [q, r] = fp_divmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 inv = fp_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  return {a, s0, t0};
}

inline FpPoly fp_derivative(const FpPoly& a, u64 p) {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * (i % p) % p;
  fp_trim(r);
  return r;
}

/// Nullspace basis of the n x n matrix m over F_p.
inline std::vector<std::vector<u64>> fp_nullspace(std::vector<std::vector<u64>> m, u64 p) {
  const std::size_t n = m.size();
  std::vector<long> pivot_col_of_row;
  std::vector<long> pivot_row_of_col(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(m[sel], m[row]);
    u64 inv = fp_inv(m[row][col], p);
    for (auto& c : m[row]) c = c * inv % p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || m[r][col] == 0) continue;
      u64 f = m[r][col];
      for (std::size_t c = 0; c < n; ++c) m[r][c] = (m[r][c] + p - f * m[row][c] % p) % p;
    }
    pivot_row_of_col[col] = static_cast<long>(row);
    ++row;
  }
  std::vector<std::vector<u64>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (pivot_row_of_col[free] >= 0) continue;
    std::vector<u64> v(n, 0);
    v[free] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      long r = pivot_row_of_col[col];
      if (r >= 0) v[col] = (p - m[static_cast<std::size_t>(r)][free]) % p;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Berlekamp: irreducible monic factors of a monic square-free f over F_p.
inline std::vector<FpPoly> berlekamp(const FpPoly& f, u64 p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return {f};
  // row i holds x^(i*p) mod f
  std::vector<std::vector<u64>> rows(n, std::vector<u64>(n, 0));
  FpPoly xp = {0, 1};
  {
    FpPoly base = {0, 1}, acc = {1};
    u64 e = p;
    while (e) {
      if (e & 1U) acc = fp_divmod(fp_mul(acc, base, p), f, p).second;
      base = fp_divmod(fp_mul(base, base, p), f, p).second;
      e >>= 1U;
    }
    xp = acc;
  }
  FpPoly cur = {1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cur.size(); ++j) rows[i][j] = cur[j];
    cur = fp_divmod(fp_mul(cur, xp, p), f, p).second;
  }
  // solve g * (Q - I) = 0, i.e. (Q - I)^T g = 0
  std::vector<std::vector<u64>> mt(n, std::vector<u64>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mt[j][i] = (rows[i][j] + (i == j ? p - 1 : 0)) % p;
  auto kernel = fp_nullspace(mt, p);
  const std::size_t r = kernel.size();
  std::vector<FpPoly> factors{f};
  if (r == 1) return factors;
  for (const auto& kv : kernel) {
    FpPoly v(kv.begin(), kv.end());
    fp_trim(v);
    if (v.size() <= 1) continue;
    std::vector<FpPoly> next;
    for (auto& h : factors) {
      if (h.size() <= 2) {
        next.push_back(h);
        continue;
      }
      FpPoly rest = h;
      for (u64 s = 0; s < p && rest.size() > 2; ++s) {
        FpPoly vs = v;
        vs[0] = (vs[0] + p - s) % p;
        fp_trim(vs);
        FpPoly g = fp_gcd(rest, vs, p);
        if (g.size() > 1 && g.size() < rest.size()) {
          next.push_back(g);
          rest = fp_monic(fp_divmod(rest, g, p).first, p);
        }
      }
      next.push_back(rest);
    }
    factors = std::move(next);
    if (factors.size() == r) break;
  }
  return factors;
}

// ---- arithmetic in (Z / m)[x], representatives in [0, m)

inline ZPoly zmod(ZPoly a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  ztrim(a);
  return a;
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

inline ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Integer(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}

inline ZPoly z_from_fp(const FpPoly& a) {
  ZPoly r;
  r.reserve(a.size());
  for (u64 c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

/// Lifts f == g*h (mod p), g monic, to f == G*H (mod modulus).
inline std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, const FpPoly& g, const FpPoly& h, u64 p,
                                           const Integer& modulus) {
  auto [one, s, t] = fp_xgcd(g, h, p);
  (void)one;
  (void)s;
  ZPoly G = z_from_fp(g), H = z_from_fp(h);
  Integer m = static_cast<unsigned long>(p);
  while (m < modulus) {
    ZPoly err = zmod(zsub(f, zmul(G, H)), modulus);
    for (auto& c : err) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    FpPoly e = fp_from_z(err, p);
    FpPoly te = fp_mul(t, e, p);
    FpPoly a = fp_divmod(te, g, p).second;
    FpPoly b = fp_divmod(fp_sub(e, fp_mul(a, h, p), p), g, p).first;
    ZPoly A = z_from_fp(a), B = z_from_fp(b);
    if (A.size() < G.size()) A.resize(G.size(), Integer(0));
    if (B.size() < H.size()) B.resize(H.size(), Integer(0));
    if (G.size() < A.size()) G.resize(A.size(), Integer(0));
    if (H.size() < B.size()) H.resize(B.size(), Integer(0));
    for (std::size_t i = 0; i < A.size(); ++i) G[i] += m * A[i];
    for (std::size_t i = 0; i < B.size(); ++i) H[i] += m * B[i];
    m *= static_cast<unsigned long>(p);
    G = zmod(G, modulus);
    H = zmod(H, modulus);
  }
  return {G, H};
}

/// Lifts the modular factorization f == lc(f) * prod(gs) (mod p) to monic
/// factors modulo `modulus`.
inline std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<FpPoly>& gs, u64 p,
                                      const Integer& modulus) {
  if (gs.size() == 1) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), modulus.get_mpz_t());
    ZPoly r = f;
    for (auto& c : r) c *= inv;
    return {zmod(r, modulus)};
  }
  const FpPoly& g = gs.front();
  FpPoly h = {fp_from_z(ZPoly{f.back()}, p).front()};
  for (std::size_t i = 1; i < gs.size(); ++i) h = fp_mul(h, gs[i], p);
  auto [G, H] = hensel_pair(f, g, h, p, modulus);
  std::vector<FpPoly> rest(gs.begin() + 1, gs.end());
  auto lifted = hensel_lift(H, rest, p, modulus);
  lifted.insert(lifted.begin(), G);
  return lifted;
}

inline ZPoly symmetric(ZPoly a, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  ztrim(a);
  return a;
}

/// Zassenhaus factorization of a primitive square-free f in Z[x], deg >= 1.
inline std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return {f};
  // Pick the prime (among the first few admissible) giving fewest modular factors.
  u64 best_p = 0;
  std::vector<FpPoly> best;
  int tried = 0;
  for (u64 p = 3; tried < 6 && p < 50000; p += 2) {
    bool prime = true;
    for (u64 d = 3; d * d <= p; d += 2)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    FpPoly fp = fp_from_z(f, p);
    if (fp.size() != f.size()) continue;  // p divides lc
    if (fp_gcd(fp, fp_derivative(fp, p), p).size() != 1) continue;
    auto fs = berlekamp(fp_monic(fp, p), p);
    ++tried;
    if (best_p == 0 || fs.size() < best.size()) {
      best_p = p;
      best = std::move(fs);
    }
    if (best.size() == 1) break;
  }
  if (best.size() == 1) return {f};

  // Mignotte-style coefficient bound for lc(f) * (any factor).
  Integer maxc = 0;
  for (const auto& c : f) maxc = std::max(maxc, Integer(abs(c)));
  Integer bound = Integer(abs(f.back())) * maxc * static_cast<unsigned long>(n + 1);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
  Integer modulus = static_cast<unsigned long>(best_p);
  while (modulus <= 2 * bound) modulus *= static_cast<unsigned long>(best_p);

  std::vector<ZPoly> lifted = hensel_lift(f, best, best_p, modulus);

  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::size_t subset_size = 1;
  while (2 * subset_size <= lifted.size()) {
    bool found = false;
    const std::size_t r = lifted.size();
    std::vector<std::size_t> idx(subset_size);
    for (std::size_t i = 0; i < subset_size; ++i) idx[i] = i;
    while (true) {
      ZPoly cand{rest.back()};
      for (std::size_t i : idx) cand = zmod(zmul(cand, lifted[i]), modulus);
      cand = zprimitive(symmetric(cand, modulus));
      Poly pr = from_zpoly(rest), pc = from_zpoly(cand);
      auto [q, rem] = divmod(pr, pc);
      if (rem.is_zero()) {
        result.push_back(cand);
        rest = to_primitive_zpoly(q);
        std::vector<ZPoly> keep;
        for (std::size_t i = 0, k = 0; i < r; ++i) {
          if (k < idx.size() && idx[k] == i) {
            ++k;
            continue;
          }
          keep.push_back(lifted[i]);
        }
        lifted = std::move(keep);
        found = true;
        break;
      }
      // next combination
      std::size_t pos = subset_size;
      while (pos > 0 && idx[pos - 1] == r - subset_size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < subset_size; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++subset_size;
  }
  if (rest.size() > 1) result.push_back(rest);
  return result;
}

}  // namespace detail

/// Square-free decomposition p = lc * prod a_i^i of a nonzero polynomial;
/// returns the monic a_i paired with i (only nonconstant ones).
inline std::vector<std::pair<Poly, long>> squarefree_decomposition(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "square-free decomposition of 0");
  std::vector<std::pair<Poly, long>> out;
  Poly f = p.monic();
  if (f.is_constant()) return out;
  Poly df = f.derivative();
  Poly a = gcd(f, df);
  Poly b = exact_div(f, a);
  Poly c = exact_div(df, a);
  Poly d = c - b.derivative();
  long i = 1;
  while (!b.is_constant()) {
    Poly g = gcd(b, d);
    if (!g.is_constant()) out.emplace_back(g, i);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/// Complete factorization over Q into monic irreducibles.
inline Factorization factor(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  Factorization out{p.leading(), {}};
  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    for (const auto& z : detail::zassenhaus(to_primitive_zpoly(part)))
      out.factors.emplace_back(from_zpoly(z).monic(), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

inline bool is_irreducible(const Poly& p) {
  if (p.degree() < 1) return false;
  if (p.degree() == 1) return true;
  auto f = factor(p);
  return f.factors.size() == 1 && f.factors.front().second == 1;
}

}  // namespace ellsurf
