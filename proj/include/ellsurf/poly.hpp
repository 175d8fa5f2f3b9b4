#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/errors.hpp"
#include "ellsurf/rational.hpp"

namespace ellsurf {

/// Dense univariate polynomial in t over Q, constant term first.
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and degree() == size() - 1.
class Poly {
 public:
  Poly() = default;
  Poly(const Rat& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.push_back(c);
  }
  Poly(long c) : Poly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly t() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }
  static Poly monomial(const Rat& c, std::size_t deg) {
    std::vector<Rat> v(deg + 1, Rat(0));
    v[deg] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
  Rat leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  Poly monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    Rat lc = leading();
    for (auto& c : r.coeffs_) c /= lc;
    return r;
  }

  Rat eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rat> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return Poly(std::move(v));
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  /// Integer coefficients over one common denominator: *this = z / den.
  std::pair<std::vector<Integer>, Integer> scaled_integer() const {
    Integer l = 1;
    for (const auto& c : coeffs_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> z(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      mpz_divexact(z[i].get_mpz_t(), l.get_mpz_t(), coeffs_[i].get_den_mpz_t());
      z[i] *= coeffs_[i].get_num();
    }
    return {std::move(z), std::move(l)};
  }

  /// z / den with canonical rational coefficients.
  static Poly from_scaled(const std::vector<Integer>& z, const Integer& den) {
    std::vector<Rat> v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      mpq_set_num(v[i].get_mpq_t(), z[i].get_mpz_t());
      mpq_set_den(v[i].get_mpq_t(), den.get_mpz_t());
      v[i].canonicalize();
    }
    return Poly(std::move(v));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    // multiply over Z and divide once at the end
    auto [za, la] = a.scaled_integer();
    auto [zb, lb] = b.scaled_integer();
    std::vector<Integer> v(za.size() + zb.size() - 1);
    for (std::size_t i = 0; i < za.size(); ++i) {
      if (za[i] == 0) continue;
      for (std::size_t j = 0; j < zb.size(); ++j)
        mpz_addmul(v[i + j].get_mpz_t(), za[i].get_mpz_t(), zb[j].get_mpz_t());
    }
    return from_scaled(v, la * lb);
  }
  friend Poly operator*(Poly a, const Rat& c) {
    if (c == 0) return {};
    for (auto& x : a.coeffs_) x *= c;
    return a;
  }
  friend Poly operator*(const Rat& c, Poly a) { return std::move(a) * c; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  /// Total order used for canonical sorting: by degree, then coefficients
  /// from the leading term down.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = a.degree(); i >= 0; --i) {
      const auto idx = static_cast<std::size_t>(i);
      if (a.coeffs_[idx] != b.coeffs_[idx]) return a.coeffs_[idx] < b.coeffs_[idx];
    }
    return false;
  }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rat> rem = a.coeffs_;
    const std::size_t db = b.coeffs_.size() - 1;
    std::vector<Rat> quo(rem.size() - db, Rat(0));
    const Rat inv_lc = 1 / b.leading();
    for (std::size_t k = quo.size(); k-- > 0;) {
      Rat q = rem[k + db] * inv_lc;
      quo[k] = q;
      if (q == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
    }
    rem.resize(db);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  Poly pow(unsigned long e) const {
    Poly result(1), base = *this;
    while (e) {
      if (e & 1UL) result *= base;
      e >>= 1UL;
      if (e) base *= base;
    }
    return result;
  }

  /// Canonical text form in the variable t, descending powers:
  /// "t^3 - 1/2*t + 4".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
      const Rat& c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      Rat mag = abs(c);
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      if (i == 0) {
        out += ellsurf::to_string(mag);
        continue;
      }
      if (mag != 1) out += ellsurf::to_string(mag) + "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rat> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------
// Integer-coefficient helpers. gcd and factoring work on primitive integer
// polynomials to keep coefficient growth under control.

using ZPoly = std::vector<Integer>;  // constant term first, no trailing zeros

inline void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Integer zcontent(const ZPoly& p) {
  Integer g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Primitive part with positive leading coefficient.
inline ZPoly zprimitive(ZPoly p) {
  ztrim(p);
  if (p.empty()) return p;
  Integer g = zcontent(p);
  if (p.back() < 0) g = -g;
  if (g != 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return p;
}

/// Scales a rational polynomial to an integer one and takes the primitive
/// part (positive leading coefficient).
inline ZPoly to_primitive_zpoly(const Poly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  z.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) z.push_back(c.get_num() * (l / c.get_den()));
  return zprimitive(std::move(z));
}

inline Poly from_zpoly(const ZPoly& z) {
  std::vector<Rat> v;
  v.reserve(z.size());
  for (const auto& c : z) v.emplace_back(c);
  return Poly(std::move(v));
}

/// Pseudo-remainder of a by b over Z.
inline ZPoly zpseudo_rem(ZPoly a, const ZPoly& b) {
  const std::size_t db = b.size() - 1;
  const Integer& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    Integer la = a.back();
    Integer g = gcd(la, lb);
    Integer ma = lb / g, mb = la / g;
    for (auto& c : a) c *= ma;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= mb * b[j];
    ztrim(a);
  }
  return a;
}

namespace detail {

using u64 = std::uint64_t;

/// Primes just below 2^31, so products of residues fit in 64 bits.
inline const std::vector<u64>& gcd_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    Integer c = (Integer(1) << 31) - 1;
    while (out.size() < 4096) {
      if (mpz_probab_prime_p(c.get_mpz_t(), 25)) out.push_back(c.get_ui());
      c -= 2;
    }
    return out;
  }();
  return primes;
}

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline std::vector<u64> zreduce(const ZPoly& a, u64 p) {
  std::vector<u64> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

/// Monic gcd in F_p[t].
inline std::vector<u64> gcd_mod(std::vector<u64> a, std::vector<u64> b, u64 p) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const u64 inv = powmod(b.back(), p - 2, p);
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
      const u64 q = a.back() * inv % p;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j <= db; ++j) a[shift + j] = (a[shift + j] + (p - q) * b[j]) % p;
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const u64 inv = powmod(a.back(), p - 2, p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

/// Quotient a / b in Z[t] if b divides a exactly.
inline std::optional<ZPoly> zdivexact(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) return a.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
  const std::size_t db = b.size() - 1;
  ZPoly q(a.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    if (!mpz_divisible_p(a[k + db].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    mpz_divexact(q[k].get_mpz_t(), a[k + db].get_mpz_t(), b.back().get_mpz_t());
    if (q[k] == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[k + j] -= q[k] * b[j];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) return std::nullopt;
  return q;
}

/// gcd of primitive polynomials by reduction modulo many primes and CRT,
/// stopping when the lifted candidate divides both inputs.
inline ZPoly zgcd_modular(const ZPoly& a, const ZPoly& b) {
  const Integer lc = gcd(a.back(), b.back());
  long best = static_cast<long>(std::min(a.size(), b.size())) - 1;
  ZPoly acc;
  Integer modulus = 1;
  for (u64 p : gcd_primes()) {
    if (mpz_divisible_ui_p(a.back().get_mpz_t(), p) || mpz_divisible_ui_p(b.back().get_mpz_t(), p)) continue;
    std::vector<u64> g = gcd_mod(zreduce(a, p), zreduce(b, p), p);
    const long dg = static_cast<long>(g.size()) - 1;
    if (dg == 0) return {Integer(1)};
    if (dg > best) continue;  // unlucky prime
    if (dg < best) {
      best = dg;
      acc.clear();
      modulus = 1;
    }
    // the true gcd scaled to leading coefficient lc reduces to lc * g
    const u64 lcp = mpz_fdiv_ui(lc.get_mpz_t(), p);
    for (auto& c : g) c = c * lcp % p;
    ZPoly next(g.size());
    bool stable = !acc.empty();
    if (acc.empty()) acc.assign(g.size(), Integer(0));
    const Integer np = modulus * static_cast<unsigned long>(p);
    const Integer half = np / 2;
    const u64 minv = powmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p - 2, p);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const u64 ai = mpz_fdiv_ui(acc[i].get_mpz_t(), p);
      const u64 k = (g[i] + p - ai) % p * minv % p;
      next[i] = acc[i] + modulus * static_cast<unsigned long>(k);
      mpz_fdiv_r(next[i].get_mpz_t(), next[i].get_mpz_t(), np.get_mpz_t());
      if (next[i] > half) next[i] -= np;
      if (next[i] != acc[i]) stable = false;
    }
    acc = std::move(next);
    modulus = np;
    if (stable) {
      ZPoly cand = zprimitive(acc);
      if (zdivexact(a, cand) && zdivexact(b, cand)) return cand;
    }
  }
  throw Error(ErrorCode::DomainViolation, "modular gcd ran out of primes");
}

}  // namespace detail

/// Monic gcd over Q (modular algorithm on the primitive integer parts).
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  return from_zpoly(detail::zgcd_modular(to_primitive_zpoly(a), to_primitive_zpoly(b))).monic();
}

/// Same gcd by the primitive remainder sequence; kept as a cross-check.
inline Poly gcd_prs(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  ZPoly x = to_primitive_zpoly(a), y = to_primitive_zpoly(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    ZPoly r = zprimitive(zpseudo_rem(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return from_zpoly(x).monic();
}

/// Exact quotient a / b when b divides a; throws otherwise. Works in Z[t]:
/// a primitive divisor of an integer polynomial divides it over Z.
inline Poly exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.is_zero()) return {};
  auto [za, la] = a.scaled_integer();
  auto [zb, lb] = b.scaled_integer();
  Integer cb = zcontent(zb);
  for (auto& c : zb) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());
  auto q = detail::zdivexact(std::move(za), zb);
  if (!q) throw Error(ErrorCode::DomainViolation, "exact_div: nonzero remainder");
  // a / b = (za / la) / (cb zb' / lb) = (za / zb') * lb / (la cb)
  Integer den = la * cb;
  for (auto& c : *q) c *= lb;
  return Poly::from_scaled(*q, den);
}

/// Multiplicity of the (nonconstant) polynomial p in a != 0.
inline long multiplicity(Poly a, const Poly& p) {
  long m = 0;
  while (true) {
    auto [q, r] = divmod(a, p);
    if (!r.is_zero()) return m;
    a = std::move(q);
    ++m;
  }
}

}  // namespace ellsurf
