#pragma once

#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ellsurf/errors.hpp"
#include "ellsurf/factor.hpp"
#include "ellsurf/parse.hpp"
#include "ellsurf/ratfunc.hpp"

namespace ellsurf {

/// Valuation of zero.
inline constexpr long kValInfinity = std::numeric_limits<long>::max();

/// Closed point of P^1 over Q: a monic irreducible polynomial, or infinity.
class Place {
 public:
  static Place infinity() { return Place(); }

  /// Validates and normalizes (to monic) the generator.
  static Place finite(const Poly& p) {
    if (p.degree() < 1) throw Error(ErrorCode::NotIrreducible, "place generator must be nonconstant");
    Poly m = p.monic();
    if (!is_irreducible(m)) throw Error(ErrorCode::NotIrreducible, m.to_string() + " is reducible over Q");
    return Place(std::move(m));
  }

  /// For generators already known to be monic irreducible (factorization output).
  static Place finite_trusted(Poly monic_irreducible) { return Place(std::move(monic_irreducible)); }

  bool is_infinity() const { return infinite_; }
  const Poly& poly() const { return poly_; }
  long degree() const { return infinite_ ? 1 : poly_.degree(); }

  /// Uniformizer: the generator itself, or 1/t at infinity.
  RatFunc uniformizer() const { return infinite_ ? RatFunc(Poly(1), Poly::t()) : RatFunc(poly_); }

  std::string to_string() const { return infinite_ ? "inf" : "(" + poly_.to_string() + ")"; }

  friend bool operator==(const Place& a, const Place& b) {
    return a.infinite_ == b.infinite_ && a.poly_ == b.poly_;
  }
  /// Finite places by generator (degree first), infinity last.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.infinite_ != b.infinite_) return b.infinite_;
    return a.poly_ < b.poly_;
  }

 private:
  Place() : infinite_(true) {}
  explicit Place(Poly p) : infinite_(false), poly_(std::move(p)) {}

  bool infinite_;
  Poly poly_;
};

inline long valuation(const Poly& p, const Place& v) {
  if (p.is_zero()) return kValInfinity;
  if (v.is_infinity()) return -p.degree();
  return multiplicity(p, v.poly());
}

inline long valuation(const RatFunc& x, const Place& v) {
  if (x.is_zero()) return kValInfinity;
  if (v.is_infinity()) return x.den().degree() - x.num().degree();
  return multiplicity(x.num(), v.poly()) - multiplicity(x.den(), v.poly());
}

/// Finitely supported integer combination of places.
class P1Divisor {
 public:
  void add(const Place& v, long mult) {
    if (mult == 0) return;
    long& m = coeffs_[v];
    m += mult;
    if (m == 0) coeffs_.erase(v);
  }
  long operator[](const Place& v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? 0 : it->second;
  }
  long degree() const {
    long d = 0;
    for (const auto& [v, m] : coeffs_) d += m * v.degree();
    return d;
  }
  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  const std::map<Place, long>& entries() const { return coeffs_; }

  std::vector<Place> support() const {
    std::vector<Place> s;
    for (const auto& [v, m] : coeffs_) s.push_back(v);
    return s;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [v, m] : coeffs_) {
      if (!first) s += ", ";
      first = false;
      s += v.to_string() + ": " + std::to_string(m);
    }
    return s + "}";
  }

  friend bool operator==(const P1Divisor& a, const P1Divisor& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::map<Place, long> coeffs_;
};

/// Finite places dividing p (p nonzero).
inline std::vector<Place> places_dividing(const Poly& p) {
  std::vector<Place> out;
  if (p.is_constant()) return out;
  for (const auto& [f, m] : factor(p).factors) out.push_back(Place::finite_trusted(f));
  return out;
}

inline P1Divisor divisor_of(const RatFunc& x) {
  if (x.is_zero()) throw Error(ErrorCode::DomainViolation, "divisor of the zero function");
  P1Divisor d;
  if (!x.num().is_constant())
    for (const auto& [f, m] : factor(x.num()).factors) d.add(Place::finite_trusted(f), m);
  if (!x.den().is_constant())
    for (const auto& [f, m] : factor(x.den()).factors) d.add(Place::finite_trusted(f), -m);
  d.add(Place::infinity(), x.den().degree() - x.num().degree());
  return d;
}

/// "inf" / "infinity" / "oo" or a polynomial in t, optionally parenthesized.
inline Place parse_place(std::string_view s) {
  std::string trimmed;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  if (trimmed == "inf" || trimmed == "infinity" || trimmed == "oo" || trimmed == "Infinity")
    return Place::infinity();
  if (trimmed.empty()) throw Error(ErrorCode::ParseError, "empty place");
  return Place::finite(parse_poly(trimmed));
}

/// Comma-separated list of places; commas inside parentheses are not
/// separators. Result is sorted and deduplicated.
inline std::vector<Place> parse_place_list(std::string_view s) {
  std::vector<Place> out;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    bool blank = true;
    for (char c : cur)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) out.push_back(parse_place(cur));
    cur.clear();
  };
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    cur += c;
  }
  flush();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline long weighted_size(const std::vector<Place>& places) {
  long s = 0;
  for (const auto& v : places) s += v.degree();
  return s;
}

}  // namespace ellsurf
