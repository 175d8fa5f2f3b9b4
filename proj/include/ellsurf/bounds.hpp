#pragma once

// Explicit constants of the uniform bounds, evaluated exactly. Constants
// known only to exist are reported as symbols with their arguments.

#include <mpfr.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/errors.hpp"
#include "ellsurf/intsearch.hpp"
#include "ellsurf/rational.hpp"
#include "ellsurf/sunit.hpp"
#include "ellsurf/surface.hpp"

namespace ellsurf {

/// Digits kept in decimal output of transcendental quantities.
inline constexpr int kDecimalDigits = 60;

/// base^exponent, materialized only below a size cap.
struct BigPower {
  Integer base;
  Integer exponent;

  static constexpr unsigned long kMaxBits = 1UL << 20;

  double log2() const {
    if (base <= 1) return 0;
    return mpz_sizeinbase(base.get_mpz_t(), 2) * exponent.get_d();
  }
  bool materializable() const { return base <= 1 || (exponent.fits_ulong_p() && log2() <= double(kMaxBits)); }
  Integer value() const {
    if (!materializable()) throw Error(ErrorCode::DomainViolation, "power too large to expand");
    if (base <= 1) return base == 1 || exponent == 0 ? Integer(1) : Integer(0);
    return ipow(base, exponent.get_ui());
  }
  std::string symbolic() const { return "(" + base.get_str() + ")^(" + exponent.get_str() + ")"; }
};

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
  ~Mpfr() { mpfr_clear(x_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return x_; }

 private:
  mpfr_t x_;
};

inline std::string to_decimal(mpfr_ptr x, int digits = kDecimalDigits) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

/// log10 of base^exponent * factor + addend, for reporting huge values.
inline std::string log10_of_power(const BigPower& p) {
  Mpfr b(256), e(256);
  mpfr_set_z(b.get(), p.base.get_mpz_t(), MPFR_RNDN);
  mpfr_log10(b.get(), b.get(), MPFR_RNDN);
  mpfr_set_z(e.get(), p.exponent.get_mpz_t(), MPFR_RNDN);
  mpfr_mul(b.get(), b.get(), e.get(), MPFR_RNDN);
  return to_decimal(b.get(), 30);
}

inline Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DomainViolation, what);
}

}  // namespace detail

/// Compare a^b with c^d (both bases >= 1).
inline int compare(const BigPower& x, const BigPower& y) {
  if (x.materializable() && y.materializable()) return cmp(x.value(), y.value());
  detail::Mpfr lx(512), ly(512), t(512);
  auto log_of = [&](const BigPower& p, mpfr_ptr out) {
    mpfr_set_z(out, p.base.get_mpz_t(), MPFR_RNDN);
    mpfr_log(out, out, MPFR_RNDN);
    mpfr_set_z(t.get(), p.exponent.get_mpz_t(), MPFR_RNDN);
    mpfr_mul(out, out, t.get(), MPFR_RNDN);
  };
  log_of(x, lx.get());
  log_of(y, ly.get());
  return mpfr_cmp(lx.get(), ly.get());
}

// ---------------------------------------------------------------------------
// Calculators

/// N(d, g, t) = (d!)^(2g + t - 1)
inline Integer etale_cover_count(long d, long g, long t) {
  detail::require(d >= 1 && g >= 0 && t >= 0 && 2 * g + t - 1 >= 0, "need d >= 1 and 2g + t - 1 >= 0");
  return ipow(detail::factorial(d), static_cast<unsigned long>(2 * g + t - 1));
}

struct DivisionCoverBounds {
  BigPower degree_bound;  // (d^2)^((d!)^(2g+t-1))
  Integer genus_factor;   // g + t - 1
  /// degree_bound * (g + t - 1) + 1
  std::optional<Integer> genus_bound() const {
    if (!degree_bound.materializable()) return std::nullopt;
    return degree_bound.value() * genus_factor + 1;
  }
  std::string genus_symbolic() const {
    return degree_bound.symbolic() + "*(" + genus_factor.get_str() + ")+1";
  }
};

inline DivisionCoverBounds division_cover_bounds(long d, long g, long t) {
  Integer e = etale_cover_count(d, g, t);
  return {{Integer(d) * d, e}, Integer(g + t - 1)};
}

/// q = (d^2 + d + 2) / 2
inline long parshin_genus(long d) {
  detail::require(d >= 1, "need d >= 1");
  return (d * d + d + 2) / 2;
}

/// #S' <= s + t + #D_ram + #f(D_sing)
inline long parshin_type_bound(long s, long t, long d_ram, long d_sing_images) {
  detail::require(s >= 0 && t >= 0 && d_ram >= 0 && d_sing_images >= 0, "arguments must be >= 0");
  return s + t + d_ram + d_sing_images;
}

struct KaniBound {
  long q = 0;
  long m = 0;
  Integer integer_factor;      // 2^(6q^2-1) * m^(4q^2)
  std::string first_summand;   // integer_factor * zeta(2)/2
  std::string second_summand;  // (m/2)(log m + 1)
  std::string value;           // decimal, kDecimalDigits significant digits
  mpfr_prec_t precision_bits = 0;
};

namespace detail {

/// first = factor * zeta(2)/2, second = (m/2)(log m + 1)
inline void kani_summands(const Integer& factor, long m, mpfr_ptr first, mpfr_ptr second) {
  const mpfr_prec_t prec = mpfr_get_prec(first);
  Mpfr zeta(prec);
  mpfr_const_pi(zeta.get(), MPFR_RNDN);
  mpfr_sqr(zeta.get(), zeta.get(), MPFR_RNDN);
  mpfr_div_ui(zeta.get(), zeta.get(), 12, MPFR_RNDN);
  mpfr_set_z(first, factor.get_mpz_t(), MPFR_RNDN);
  mpfr_mul(first, first, zeta.get(), MPFR_RNDN);
  mpfr_set_si(second, m, MPFR_RNDN);
  mpfr_log(second, second, MPFR_RNDN);
  mpfr_add_ui(second, second, 1, MPFR_RNDN);
  mpfr_mul_si(second, second, m, MPFR_RNDN);
  mpfr_div_ui(second, second, 2, MPFR_RNDN);
}

}  // namespace detail

/// M(q, m) = 2^(6q^2-1) m^(4q^2-2) (zeta(2)/2) m^2 + (m/2)(log(m) + 1),
/// grouped left to right; natural log, zeta(2) = pi^2/6.
inline KaniBound kani_bound(long q, long m) {
  detail::require(q >= 2 && m >= 1, "need q >= 2 and m >= 1");
  KaniBound kb;
  kb.q = q;
  kb.m = m;
  const unsigned long q2 = static_cast<unsigned long>(q * q);
  kb.integer_factor = ipow(Integer(2), 6 * q2 - 1) * ipow(Integer(m), 4 * q2 - 2) * Integer(m) * m;
  kb.precision_bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(kb.integer_factor.get_mpz_t(), 2)) + 256;
  detail::Mpfr first(kb.precision_bits), second(kb.precision_bits);
  detail::kani_summands(kb.integer_factor, m, first.get(), second.get());
  kb.first_summand = detail::to_decimal(first.get());
  kb.second_summand = detail::to_decimal(second.get());
  mpfr_add(first.get(), first.get(), second.get(), MPFR_RNDN);
  kb.value = detail::to_decimal(first.get());
  return kb;
}

struct ParshinFiberBound {
  long d = 0;
  long q = 0;
  Integer coefficient;  // 4 d^2
  KaniBound kani;       // M(q, d + 1)
  std::string product;  // 4 d^2 M(q, d + 1), decimal
};

inline ParshinFiberBound parshin_fiber_bound(long d) {
  ParshinFiberBound pf;
  pf.d = d;
  pf.q = parshin_genus(d);
  pf.coefficient = Integer(4) * d * d;
  pf.kani = kani_bound(pf.q, d + 1);
  detail::Mpfr first(pf.kani.precision_bits + 8), second(pf.kani.precision_bits + 8);
  detail::kani_summands(pf.kani.integer_factor, d + 1, first.get(), second.get());
  mpfr_add(first.get(), first.get(), second.get(), MPFR_RNDN);
  mpfr_mul_z(first.get(), first.get(), pf.coefficient.get_mpz_t(), MPFR_RNDN);
  pf.product = detail::to_decimal(first.get());
  return pf;
}

struct GonalityCoverConstants {
  long gonality_bound = 0;  // 2g + 1
  long n_bound = 0;         // (2g + 1)(H.F)
  long q = 0;               // n d + 1
  Integer fiber_bound;      // 8 d^2 n^2
};

inline GonalityCoverConstants gonality_cover_constants(long g, long h_dot_f, long d) {
  detail::require(g >= 0 && h_dot_f >= 1 && d >= 1, "need g >= 0, H.F >= 1, d >= 1");
  GonalityCoverConstants c;
  c.gonality_bound = 2 * g + 1;
  c.n_bound = c.gonality_bound * h_dot_f;
  c.q = c.n_bound * d + 1;
  c.fiber_bound = Integer(8) * d * d * c.n_bound * c.n_bound;
  return c;
}

/// g = C(C + K)/2 + 1
inline long adjunction_genus(long self_intersection, long k_dot_c) {
  if ((self_intersection + k_dot_c) % 2 != 0)
    throw Error(ErrorCode::ParityViolation, "C^2 + K.C must be even");
  return (self_intersection + k_dot_c) / 2 + 1;
}

/// q = (d - 1)/2 for the double cover branched over an odd-degree divisor
inline long unit_cover_genus(long d) {
  if (d % 2 == 0) throw Error(ErrorCode::EvenDegree, "need odd d >= 3, got " + std::to_string(d));
  detail::require(d >= 3, "need odd d >= 3");
  return (d - 1) / 2;
}

/// 2 #E[d] = 2 d^2; the degenerate section case (d = 1, D a section) gives 4.
inline long divisor_automorphism_bound(long d, bool section_case = false) {
  detail::require(d >= 1, "need d >= 1");
  if (section_case) {
    detail::require(d == 1, "the section case needs d = 1");
    return 4;
  }
  return 2 * d * d;
}

// ---------------------------------------------------------------------------
// Reports

struct BoundReport {
  std::string formula_id;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string kind;  // integer | rational | decimal | tuple | symbolic
  std::string value;
  std::vector<std::pair<std::string, std::string>> parts;
  std::string anchor;  // the formula being evaluated
  std::vector<std::string> notes;
};

using BoundArgs = std::map<std::string, std::string>;

/// "d=2,g=0" -> {d: 2, g: 0}
inline BoundArgs parse_bound_args(const std::string& s) {
  BoundArgs out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? s.size() : comma + 1;
    auto strip = [](std::string x) {
      while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(x.begin());
      while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
      return x;
    };
    item = strip(item);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected key=value, got '" + item + "'");
    out[strip(item.substr(0, eq))] = strip(item.substr(eq + 1));
  }
  return out;
}

namespace detail {

inline long arg_long(const BoundArgs& a, const std::string& key, std::optional<long> fallback = std::nullopt) {
  auto it = a.find(key);
  if (it == a.end()) {
    if (fallback) return *fallback;
    throw Error(ErrorCode::ParseError, "missing argument " + key);
  }
  const std::string& s = it->second;
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw Error(ErrorCode::ParseError, "argument " + key + " is not an integer: " + s);
  return v;
}

inline Rat arg_rat(const BoundArgs& a, const std::string& key) {
  auto it = a.find(key);
  if (it == a.end()) throw Error(ErrorCode::ParseError, "missing argument " + key);
  Rat r;
  if (r.set_str(it->second, 10) != 0) throw Error(ErrorCode::ParseError, "argument " + key + " is not rational");
  r.canonicalize();
  return r;
}

inline std::vector<std::pair<std::string, std::string>> echo(const BoundArgs& a) { return {a.begin(), a.end()}; }

}  // namespace detail

/// Formula ids accepted by bound_report.
inline std::vector<std::string> bound_formula_ids() {
  return {"etale_cover_count", "division_cover_bounds", "parshin_genus", "parshin_type_bound",
          "kani_bound", "parshin_fiber_bound", "gonality_cover_constants", "adjunction_genus",
          "unit_cover_genus", "divisor_automorphism_bound", "hs_height_bound", "packing_count_bound",
          "evertse_bound", "mobius_orbit_bound", "rank_bounds", "tautological_rhs",
          "C", "M_caporaso", "A", "D", "U"};
}

inline BoundReport bound_report(const std::string& id, const BoundArgs& args) {
  using detail::arg_long;
  BoundReport r;
  r.formula_id = id;
  r.inputs = detail::echo(args);
  auto integer = [&](const Integer& v, std::string anchor) {
    r.kind = "integer";
    r.value = v.get_str();
    r.anchor = std::move(anchor);
  };

  if (id == "etale_cover_count") {
    integer(etale_cover_count(arg_long(args, "d"), arg_long(args, "g"), arg_long(args, "t")),
            "N(d,g,t) = (d!)^(2g+t-1)");
  } else if (id == "division_cover_bounds") {
    auto b = division_cover_bounds(arg_long(args, "d"), arg_long(args, "g"), arg_long(args, "t"));
    r.kind = "tuple";
    r.anchor = "deg h <= (d^2)^((d!)^(2g+t-1)); g' <= (d^2)^((d!)^(2g+t-1)) (g+t-1) + 1";
    if (b.degree_bound.materializable()) {
      r.parts = {{"degree_bound", b.degree_bound.value().get_str()}, {"genus_bound", b.genus_bound()->get_str()}};
      r.value = "(" + r.parts[0].second + ", " + r.parts[1].second + ")";
    } else {
      r.parts = {{"degree_bound", b.degree_bound.symbolic()},
                 {"genus_bound", b.genus_symbolic()},
                 {"log10_degree_bound", detail::log10_of_power(b.degree_bound)}};
      r.value = "(" + r.parts[0].second + ", " + r.parts[1].second + ")";
      r.notes.push_back("value too large to expand; exact base and exponent given");
    }
  } else if (id == "parshin_genus") {
    integer(parshin_genus(arg_long(args, "d")), "q = (d^2+d+2)/2");
  } else if (id == "parshin_type_bound") {
    integer(parshin_type_bound(arg_long(args, "s"), arg_long(args, "t"), arg_long(args, "d_ram", 0),
                               arg_long(args, "d_sing", 0)),
            "#S' <= s + t + #D_ram + #f(D_sing)");
  } else if (id == "kani_bound") {
    auto k = kani_bound(arg_long(args, "q"), arg_long(args, "m"));
    r.kind = "decimal";
    r.value = k.value;
    r.anchor = "M(q,m) = 2^(6q^2-1) m^(4q^2-2) (zeta(2)/2) m^2 + (m/2)(log(m)+1)";
    r.parts = {{"integer_factor", k.integer_factor.get_str()},
               {"integer_factor_symbolic", "2^" + std::to_string(6 * k.q * k.q - 1) + " * " + std::to_string(k.m) +
                                               "^" + std::to_string(4 * k.q * k.q)},
               {"first_summand", k.first_summand},
               {"second_summand", k.second_summand},
               {"precision_bits", std::to_string(k.precision_bits)},
               {"digits", std::to_string(kDecimalDigits)}};
    r.notes = {"grouped left to right: (2^(6q^2-1) * m^(4q^2-2) * zeta(2)/2 * m^2) + (m/2)*(log(m)+1)",
               "log is the natural logarithm; zeta(2) = pi^2/6"};
  } else if (id == "parshin_fiber_bound") {
    const long d = arg_long(args, "d");
    if (args.count("q") && arg_long(args, "q") != parshin_genus(d))
      throw Error(ErrorCode::DomainViolation, "q must equal (d^2+d+2)/2");
    auto p = parshin_fiber_bound(d);
    r.kind = "decimal";
    r.value = p.product;
    r.anchor = "4 d^2 M(q, d+1), q = (d^2+d+2)/2; total 4 d^2 M(q, d+1) C(q, g, #S')";
    r.parts = {{"q", std::to_string(p.q)},
               {"coefficient", p.coefficient.get_str()},
               {"kani", p.kani.value},
               {"kani_symbolic", "M(" + std::to_string(p.q) + "," + std::to_string(p.d + 1) + ")"},
               {"total", p.coefficient.get_str() + "*M(" + std::to_string(p.q) + "," + std::to_string(p.d + 1) +
                             ")*C(" + std::to_string(p.q) + ",g,#S')"}};
    r.notes = {"C(q,g,s) has no explicit formula and stays symbolic"};
  } else if (id == "gonality_cover_constants") {
    auto c = gonality_cover_constants(arg_long(args, "g"), arg_long(args, "H_dot_F"), arg_long(args, "d"));
    r.kind = "tuple";
    r.anchor = "gonality <= 2g+1; n <= (2g+1)(H.F); q = nd+1; at most 8 d^2 n^2 covers";
    r.parts = {{"gonality_bound", std::to_string(c.gonality_bound)},
               {"n_bound", std::to_string(c.n_bound)},
               {"q", std::to_string(c.q)},
               {"fiber_bound", c.fiber_bound.get_str()}};
    r.value = "(" + r.parts[0].second + ", " + r.parts[1].second + ", " + r.parts[2].second + ", " +
              r.parts[3].second + ")";
  } else if (id == "adjunction_genus") {
    integer(adjunction_genus(arg_long(args, "self_intersection"), arg_long(args, "K_dot_C")),
            "g = C(C+K)/2 + 1");
  } else if (id == "unit_cover_genus") {
    integer(unit_cover_genus(arg_long(args, "d")), "2q - 2 = 2(-2) + d + 1, q = (d-1)/2");
  } else if (id == "divisor_automorphism_bound") {
    integer(divisor_automorphism_bound(arg_long(args, "d"), arg_long(args, "section", 0) != 0),
            "2 #E[d] = 2 d^2; 4 in the section case d = 1");
  } else if (id == "hs_height_bound") {
    r.kind = "rational";
    r.value = to_string(hs_height_bound(arg_long(args, "chi"), arg_long(args, "g", 0), arg_long(args, "s")));
    r.anchor = "h(P) <= 25 chi + 6 g + 2 s";
  } else if (id == "packing_count_bound") {
    integer(packing_count_bound(detail::arg_rat(args, "alpha"), detail::arg_rat(args, "beta"),
                                    arg_long(args, "gamma"), arg_long(args, "s")),
            "#I_s <= (alpha s + beta)^gamma");
  } else if (id == "evertse_bound") {
    integer(evertse_bound(arg_long(args, "s")), "2 * 7^(2 #S)");
  } else if (id == "mobius_orbit_bound") {
    integer(mobius_orbit_bound(), "4! = 24");
  } else if (id == "rank_bounds") {
    auto rb = rank_bounds(arg_long(args, "chi"), arg_long(args, "g", 0), arg_long(args, "t"));
    r.kind = "tuple";
    r.anchor = "rank <= 12 chi + 4 g - 2; rank <= 2(2g - 2 + t)";
    r.parts = {{"picard_bound", std::to_string(rb.picard_bound)},
               {"shioda_tate_bound", std::to_string(rb.shioda_tate_bound)},
               {"combined", std::to_string(rb.combined)}};
    r.value = "(" + r.parts[0].second + ", " + r.parts[1].second + ", " + r.parts[2].second + ")";
  } else if (id == "tautological_rhs") {
    integer(tautological_rhs(arg_long(args, "genus_Y"), arg_long(args, "deg")), "2g(Y) - 2 + deg (f^*D)_red");
  } else if (id == "C" || id == "M_caporaso" || id == "A" || id == "D" || id == "U") {
    static const std::map<std::string, std::pair<std::string, std::vector<std::string>>> sym = {
        {"C", {"C", {"q", "g", "s"}}},
        {"M_caporaso", {"M", {"q", "g", "s"}}},
        {"A", {"A", {"g", "s"}}},
        {"D", {"D", {"q"}}},
        {"U", {"U", {"g", "s", "d", "d_sing", "d_ram"}}}};
    const auto& [name, keys] = sym.at(id);
    std::string v = name + "(";
    for (size_t i = 0; i < keys.size(); ++i) {
      if (i) v += ",";
      auto it = args.find(keys[i]);
      v += it == args.end() ? keys[i] : it->second;
    }
    r.kind = "symbolic";
    r.value = v + ")";
    r.anchor = name + "(" + [&] {
      std::string k;
      for (size_t i = 0; i < keys.size(); ++i) k += (i ? "," : "") + keys[i];
      return k;
    }() + ")";
    r.notes = {"exists but has no explicit formula; not evaluated"};
  } else {
    throw Error(ErrorCode::ParseError, "unknown formula id '" + id + "'");
  }
  return r;
}

}  // namespace ellsurf
