#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "ellsurf/errors.hpp"
#include "ellsurf/poly.hpp"

namespace ellsurf {

/// Element of Q(t) as a reduced fraction num/den with den monic.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Rat& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(Rat(c)) {}         // NOLINT(google-explicit-constructor)
  RatFunc(Poly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc t() { return RatFunc(Poly::t()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Value of a constant function.
  Rat constant_value() const { return num_.coeff(0); }

  RatFunc inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero rational function");
    return RatFunc(den_, num_);
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    Poly g = gcd(a.den_, b.den_);
    if (g.is_constant()) return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, true);
    Poly ad = exact_div(a.den_, g), bd = exact_div(b.den_, g);
    return RatFunc(a.num_ * bd + b.num_ * ad, ad * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_, true); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    // cross-cancel first so the products stay reduced
    Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Poly n1 = g1.is_constant() ? a.num_ : exact_div(a.num_, g1);
    Poly d2 = g1.is_constant() ? b.den_ : exact_div(b.den_, g1);
    Poly n2 = g2.is_constant() ? b.num_ : exact_div(b.num_, g2);
    Poly d1 = g2.is_constant() ? a.den_ : exact_div(a.den_, g2);
    return RatFunc(n1 * n2, d1 * d2, true);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend bool operator<(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  RatFunc pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    return RatFunc(num_.pow(static_cast<unsigned long>(e)), den_.pow(static_cast<unsigned long>(e)), true);
  }

  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "evaluation at a pole");
    return num_.eval(x) / d;
  }

  /// "num / den" with parentheses around multi-term parts; the denominator
  /// is omitted when it is 1.
  std::string to_string() const {
    auto wrap = [](const Poly& p) {
      std::string s = p.to_string();
      bool single = s.find(" + ") == std::string::npos && s.find(" - ") == std::string::npos;
      return single ? s : "(" + s + ")";
    };
    if (den_ == Poly(1)) return num_.to_string();
    return wrap(num_) + " / " + wrap(den_);
  }

 private:
  // num and den already coprime; only fixes the sign/scale of den
  RatFunc(Poly num, Poly den, bool) : num_(std::move(num)), den_(std::move(den)) { make_monic(); }

  void normalize() {
    if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    make_monic();
  }

  void make_monic() {
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    Rat lc = den_.leading();
    if (lc != 1) {
      num_ = num_ * (1 / lc);
      den_ = den_ * (1 / lc);
    }
  }

  Poly num_;
  Poly den_;
};

/// f(g(t)).
inline RatFunc substitute(const RatFunc& f, const RatFunc& g) {
  auto horner = [&](const Poly& p) {
    RatFunc acc;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * g + RatFunc(*it);
    return acc;
  };
  return horner(f.num()) / horner(f.den());
}

inline std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

}  // namespace ellsurf
