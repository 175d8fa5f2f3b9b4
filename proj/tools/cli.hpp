#pragma once

// Command-line front end. run() is separate from main() so the tests can
// drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ellsurf/bounds.hpp"
#include "ellsurf/height.hpp"
#include "ellsurf/intsearch.hpp"
#include "ellsurf/sunit.hpp"
#include "ellsurf/surface.hpp"

namespace ellsurf::cli {

using json = nlohmann::ordered_json;

enum Exit : int { Ok = 0, VerifyFailure = 1, InputError = 2, BoundViolated = 3 };

// ---------------------------------------------------------------------------
// JSON <-> library types

inline std::string str(const Rat& r) { return to_string(r); }

inline json place_list(const std::vector<Place>& places) {
  json out = json::array();
  for (const auto& v : places) out.push_back(v.to_string());
  return out;
}

inline json model_json(const WeierstrassModel& m) {
  return {{"a1", m.a1().to_string()}, {"a2", m.a2().to_string()}, {"a3", m.a3().to_string()},
          {"a4", m.a4().to_string()}, {"a6", m.a6().to_string()}};
}

inline json point_json(const MWPoint& p) {
  if (p.is_zero()) return "O";
  return json::array({p.x().to_string(), p.y().to_string()});
}

inline RatFunc ratfunc_from_json(const json& j, const std::string& what) {
  if (j.is_string()) return parse_ratfunc(j.get<std::string>());
  if (j.is_number_integer()) return RatFunc(Rat(j.get<long>()));
  throw Error(ErrorCode::ParseError, what + ": expected a string or integer");
}

/// {"a1": ..., "a6": ...} with missing coefficients 0; a corpus entry's
/// "curve" member is accepted too.
inline WeierstrassModel model_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "curve must be a JSON object");
  if (j.contains("curve")) return model_from_json(j.at("curve"));
  for (const auto& [k, v] : j.items())
    if (k != "a1" && k != "a2" && k != "a3" && k != "a4" && k != "a6" && k != "name")
      throw Error(ErrorCode::ParseError, "unknown curve key '" + k + "'");
  auto get = [&](const char* k) { return j.contains(k) ? ratfunc_from_json(j.at(k), k) : RatFunc(); };
  return {get("a1"), get("a2"), get("a3"), get("a4"), get("a6")};
}

inline MWPoint point_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "O") return MWPoint::zero();
  if (j.is_array() && j.size() == 2) return {ratfunc_from_json(j[0], "x"), ratfunc_from_json(j[1], "y")};
  throw Error(ErrorCode::ParseError, "point must be \"O\" or [\"x\", \"y\"], got " + j.dump());
}

/// A JSON array of points, or an object holding one under `key`.
inline std::vector<MWPoint> points_from_json(const json& j, const std::string& key) {
  if (j.is_object()) {
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, "no '" + key + "' member");
    return points_from_json(j.at(key), key);
  }
  if (!j.is_array()) throw Error(ErrorCode::ParseError, key + " must be a JSON array of points");
  std::vector<MWPoint> out;
  for (const auto& p : j) out.push_back(point_from_json(p));
  return out;
}

/// Inline JSON if it looks like JSON, otherwise a file name.
inline json load_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  const bool inline_json = first != std::string::npos && std::string("{[\"").find(arg[first]) != std::string::npos;
  try {
    if (inline_json) return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + arg + "'");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, (inline_json ? std::string("inline JSON") : arg) + ": " + e.what());
  }
}

inline HeightNorm parse_norm(const std::string& s) {
  if (s == "half" || s == "paper") return HeightNorm::Half;
  if (s == "shioda") return HeightNorm::Shioda;
  throw Error(ErrorCode::ParseError, "unknown height normalization '" + s + "'");
}

// ---------------------------------------------------------------------------
// Reports

inline json fibers_json(const EllipticSurface& surface) {
  json out = json::array();
  for (const auto& ld : surface.bad_fibers())
    out.push_back({{"place", ld.place.to_string()},
                   {"degree", ld.place.degree()},
                   {"kodaira", ld.kodaira.to_string()},
                   {"v_delta", ld.v_delta_min},
                   {"v_c4", ld.v_c4_min},
                   {"v_c6", ld.v_c6_min},
                   {"conductor_exponent", ld.conductor_exponent},
                   {"components", ld.component_count}});
  return out;
}

inline json analyze_json(const WeierstrassModel& model) {
  EllipticSurface surface(model);
  const bool iso = is_isotrivial(model);
  std::vector<Place> T;
  long t_weighted = 0;
  for (const auto& ld : surface.bad_fibers()) {
    T.push_back(ld.place);
    t_weighted += ld.place.degree();
  }
  json out = {{"model", model_json(model)},
              {"discriminant", model.discriminant().to_string()},
              {"j_invariant", model.j_invariant().to_string()},
              {"isotrivial", iso},
              {"minimal_discriminant_degree", surface.minimal_discriminant_degree()},
              {"chi", surface.chi()},
              {"euler", 12 * surface.chi()},
              {"fibers", fibers_json(surface)},
              {"T", place_list(T)},
              {"t_weighted", t_weighted}};
  if (iso) {
    out["rank_bounds"] = nullptr;
  } else {
    auto rb = rank_bounds(surface_invariants(surface));
    out["rank_bounds"] = {{"picard", rb.picard_bound}, {"shioda_tate", rb.shioda_tate_bound}, {"combined", rb.combined}};
  }
  return out;
}

inline json breakdown_json(const HeightBreakdown& hb, const Rat& factor) {
  json contact = json::object(), corr = json::object(), comps = json::object();
  for (const auto& [v, m] : hb.contact) contact[v.to_string()] = m;
  for (const auto& [v, c] : hb.local_corrections) corr[v.to_string()] = str(c);
  for (const auto& [v, id] : hb.components)
    comps[v.to_string()] = {{"component", id.to_string()}, {"index", id.index}, {"correction", str(id.correction)}};
  Rat h = hb.hhat * factor;
  h.canonicalize();
  return {{"hhat", str(h)},       {"chi", hb.chi},          {"intersection_PO", str(hb.intersection_PO)},
          {"contact", contact},   {"components", comps},   {"local_corrections", corr}};
}

inline json height_json(const WeierstrassModel& model, const MWPoint& p, HeightNorm norm) {
  EllipticSurface surface(model);
  HeightBreakdown hb = canonical_height(surface, p);
  json out = {{"point", point_json(p)}, {"norm", norm == HeightNorm::Shioda ? "shioda" : "half"}};
  out.update(breakdown_json(hb, norm_factor(norm)));
  return out;
}

struct IntegralResult {
  json report;
  bool violated = false;
};

inline IntegralResult integral_json(const WeierstrassModel& model, const std::vector<Place>& S,
                                    const std::vector<MWPoint>& basis, const std::vector<MWPoint>& torsion,
                                    const std::optional<std::vector<MWPoint>>& divisor,
                                    const std::optional<Rat>& bound_override, unsigned jobs) {
  EllipticSurface surface(model);
  IntegralityConfig config{{S.begin(), S.end()}, divisor ? DivisorSpec::point_union(*divisor) : DivisorSpec{}};
  SearchOptions opts;
  opts.bound_override = bound_override;
  opts.jobs = jobs;
  SearchReport rep = enumerate_integral(surface, config, basis, torsion, opts);

  const auto inv = surface_invariants(surface);
  const Rat hs = hs_height_bound(inv.chi, 0, rep.s_weighted);
  IntegralResult res;
  json found = json::array(), violations = json::array();
  for (const auto& f : rep.found) {
    found.push_back({{"point", point_json(f.point)},
                     {"coefficients", f.coefficients},
                     {"torsion", point_json(f.torsion)},
                     {"hhat", str(f.breakdown.hhat)},
                     {"intersection_PO", f.point.is_zero() ? json(nullptr) : json(str(f.breakdown.intersection_PO))},
                     {"meeting_places", place_list(f.meeting_places)}});
    if (f.breakdown.hhat > hs) violations.push_back(point_json(f.point));
  }

  json gram = json::array();
  std::optional<Rat> mu;
  if (!basis.empty()) {
    Gram g = gram_matrix(surface, basis);
    for (const auto& row : g) {
      json r = json::array();
      for (const auto& x : row) r.push_back(str(x));
      gram.push_back(r);
    }
    mu = lattice_minimum(g);
  }
  const auto rb = rank_bounds(inv);
  const auto pc = packing_constants(inv.chi, 0, static_cast<long>(rep.torsion.size()), rb.combined, mu);
  const Integer count_bound = packing_count_bound(pc.alpha, pc.beta, pc.gamma, rep.s_weighted);
  const long count = static_cast<long>(rep.found.size());
  // only meaningful when the search radius is the HS bound and mu is known
  const bool asserted = mu.has_value() && !bound_override && config.D.kind == DivisorSpec::Kind::ZeroSection;
  const bool count_ok = count_bound >= count;

  json divisor_j = {{"kind", divisor ? "point_union" : "zero_section"}};
  if (divisor) {
    json pts = json::array();
    for (const auto& p : config.D.points) pts.push_back(point_json(p));
    divisor_j["points"] = pts;
  }
  json basis_j = json::array(), torsion_j = json::array();
  for (const auto& p : rep.basis) basis_j.push_back(point_json(p));
  for (const auto& p : rep.torsion) torsion_j.push_back(point_json(p));

  res.report = {{"S", place_list(S)},
                {"s_weighted", rep.s_weighted},
                {"divisor", divisor_j},
                {"hs_height_bound", str(hs)},
                {"height_bound", str(rep.height_bound)},
                {"bound_override", bound_override.has_value()},
                {"basis", basis_j},
                {"torsion", torsion_j},
                {"gram", gram},
                {"exhaustive", rep.exhaustive},
                {"candidates", rep.candidates},
                {"count", count},
                {"found", found},
                {"max_found_height", rep.max_found_height ? json(str(*rep.max_found_height)) : json(nullptr)},
                {"hs_check", {{"holds", violations.empty()}, {"violations", violations}}},
                {"count_bound",
                 {{"alpha", str(pc.alpha)},
                  {"beta", str(pc.beta)},
                  {"gamma", pc.gamma},
                  {"lattice_min", mu ? json(str(*mu)) : json(nullptr)},
                  {"value", count_bound.get_str()},
                  {"holds", count_ok},
                  {"asserted", asserted}}}};
  res.violated = !violations.empty() || (asserted && !count_ok);
  return res;
}

inline IntegralResult sunit_json(const std::vector<Place>& places, unsigned jobs) {
  UnitEquationInstance inst(places);
  UnitSolveResult r = solve(inst, jobs);
  const Integer ev = evertse_bound(inst.s_weighted());
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back({{"x", s.x.to_string()}, {"y", s.y.to_string()}});
  const bool ok = ev >= r.ordered_count();
  IntegralResult res;
  res.report = {{"S", place_list(inst.S)},
                {"finite_degree_sum", inst.finite_degree_sum()},
                {"s_weighted", inst.s_weighted()},
                {"mason_stothers_bound", r.ms_bound},
                {"trivial_families", r.trivial_families},
                {"ordered_count", r.ordered_count()},
                {"unordered_count", r.unordered_count()},
                {"evertse_bound", ev.get_str()},
                {"within_bound", ok},
                {"solutions", sols}};
  res.violated = !ok;
  return res;
}

inline json bound_json(const BoundReport& r) {
  json inputs = json::object(), parts = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  for (const auto& [k, v] : r.parts) parts[k] = v;
  json out = {{"formula_id", r.formula_id}, {"inputs", inputs}, {"kind", r.kind}, {"value", r.value}};
  if (!r.parts.empty()) out["parts"] = parts;
  out["anchor"] = r.anchor;
  out["notes"] = r.notes;
  return out;
}

// ---------------------------------------------------------------------------
// Corpus

struct CheckRow {
  std::string entry;
  std::string check;
  std::string expected;
  std::string actual;
  std::string provenance;
  bool pass = false;
};

namespace detail {

inline std::string scalar(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline const json& expectation_value(const json& e) { return e.is_object() && e.contains("value") ? e.at("value") : e; }

inline std::string provenance(const json& e) {
  return e.is_object() && e.contains("provenance") ? e.at("provenance").get<std::string>() : "";
}

}  // namespace detail

/// Runs every expectation of one corpus entry; errors become failing rows.
inline std::vector<CheckRow> verify_entry(const std::string& fallback_name, const json& entry, unsigned jobs) {
  std::vector<CheckRow> rows;
  const std::string name = entry.value("name", fallback_name);
  auto add = [&](const std::string& check, const json& expectation, const std::string& actual) {
    const std::string want = detail::scalar(detail::expectation_value(expectation));
    rows.push_back({name, check, want, actual, detail::provenance(expectation), want == actual});
  };
  auto guarded = [&](const std::string& check, const json& expectation, auto&& compute) {
    try {
      add(check, expectation, compute());
    } catch (const std::exception& e) {
      rows.push_back({name, check, detail::scalar(detail::expectation_value(expectation)), std::string("error: ") + e.what(),
                      detail::provenance(expectation), false});
    }
  };

  std::optional<WeierstrassModel> model;
  try {
    model = model_from_json(entry.at("curve"));
  } catch (const std::exception& e) {
    rows.push_back({name, "curve", "parses", std::string("error: ") + e.what(), "", false});
    return rows;
  }
  const json expect = entry.value("expect", json::object());
  std::optional<json> analysis;
  auto analyzed = [&]() -> const json& {
    if (!analysis) analysis = analyze_json(*model);
    return *analysis;
  };

  for (const char* key : {"chi", "euler", "t_weighted", "isotrivial"})
    if (expect.contains(key)) guarded(key, expect.at(key), [&] { return detail::scalar(analyzed().at(key)); });
  // place spellings are normalized through the parser on both sides
  auto places_str = [](const std::vector<Place>& ps) {
    std::string o;
    for (const auto& v : ps) o += (o.empty() ? "" : ", ") + v.to_string();
    return o;
  };
  auto fibers_str = [](const std::map<Place, std::string>& m) {
    std::string o;
    for (const auto& [v, k] : m) o += (o.empty() ? "" : ", ") + v.to_string() + ": " + k;
    return o;
  };
  if (expect.contains("T")) {
    const json& e = expect.at("T");
    std::string want;
    try {
      std::vector<Place> ps;
      for (const auto& v : detail::expectation_value(e)) ps.push_back(parse_place(v.get<std::string>()));
      std::sort(ps.begin(), ps.end());
      want = places_str(ps);
    } catch (const std::exception& ex) {
      want = std::string("unparsable: ") + ex.what();
    }
    guarded("T", json{{"value", want}, {"provenance", detail::provenance(e)}}, [&] {
      std::vector<Place> ps;
      for (const auto& v : analyzed().at("T")) ps.push_back(parse_place(v.get<std::string>()));
      return places_str(ps);
    });
  }
  if (expect.contains("fibers")) {
    const json& e = expect.at("fibers");
    std::string want;
    try {
      std::map<Place, std::string> m;
      for (const auto& [k, v] : detail::expectation_value(e).items()) m[parse_place(k)] = v.get<std::string>();
      want = fibers_str(m);
    } catch (const std::exception& ex) {
      want = std::string("unparsable: ") + ex.what();
    }
    guarded("fibers", json{{"value", want}, {"provenance", detail::provenance(e)}}, [&] {
      std::map<Place, std::string> m;
      for (const auto& f : analyzed().at("fibers"))
        m[parse_place(f.at("place").get<std::string>())] = f.at("kodaira").get<std::string>();
      return fibers_str(m);
    });
  }
  if (expect.contains("rank_bound"))
    guarded("rank_bound", expect.at("rank_bound"),
            [&] { return detail::scalar(analyzed().at("rank_bounds").at("combined")); });
  for (const auto& h : expect.value("heights", json::array())) {
    const std::string label = "height " + h.at("point").dump();
    guarded(label, h, [&] {
      return height_json(*model, point_from_json(h.at("point")), HeightNorm::Half).at("hhat").get<std::string>();
    });
  }
  for (const auto& c : expect.value("integral_counts", json::array())) {
    const std::string s = c.at("S").get<std::string>();
    guarded("integral count S={" + s + "}", c, [&] {
      auto basis = entry.contains("basis") ? points_from_json(entry.at("basis"), "basis") : std::vector<MWPoint>{};
      auto torsion = entry.contains("torsion") ? points_from_json(entry.at("torsion"), "torsion") : std::vector<MWPoint>{};
      auto res = integral_json(*model, parse_place_list(s), basis, torsion, std::nullopt, std::nullopt, jobs);
      if (res.violated) return std::string("bound violated");
      return detail::scalar(res.report.at("count"));
    });
  }
  for (const auto& u : expect.value("sunit_counts", json::array())) {
    const std::string s = u.at("S").get<std::string>();
    guarded("sunit ordered count S={" + s + "}", u,
            [&] { return detail::scalar(sunit_json(parse_place_list(s), jobs).report.at("ordered_count")); });
  }
  return rows;
}

inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorCode::ParseError, "corpus directory '" + dir.string() + "' not found");
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string rows_table(const std::vector<CheckRow>& rows) {
  std::vector<std::string> head{"entry", "check", "expected", "actual", "provenance", "status"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) cells.push_back({r.entry, r.check, r.expected, r.actual, r.provenance, r.pass ? "pass" : "FAIL"});
  std::vector<size_t> w(head.size());
  for (size_t i = 0; i < head.size(); ++i) w[i] = head[i].size();
  for (const auto& c : cells)
    for (size_t i = 0; i < c.size(); ++i) w[i] = std::max(w[i], c[i].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& c) {
    for (size_t i = 0; i < c.size(); ++i) {
      os << c[i];
      if (i + 1 < c.size()) os << std::string(w[i] - c[i].size() + 2, ' ');
    }
    os << "\n";
  };
  line(head);
  for (const auto& c : cells) line(c);
  return os.str();
}

// ---------------------------------------------------------------------------
// Table renderings for the other commands

inline std::string analyze_table(const json& a) {
  std::ostringstream os;
  os << "chi " << a.at("chi") << ", euler " << a.at("euler") << ", isotrivial " << a.at("isotrivial")
     << ", t_weighted " << a.at("t_weighted") << "\n";
  os << std::left << std::setw(16) << "place" << std::setw(8) << "type" << std::setw(9) << "v_delta"
     << std::setw(11) << "conductor" << "components\n";
  for (const auto& f : a.at("fibers"))
    os << std::setw(16) << f.at("place").get<std::string>() << std::setw(8) << f.at("kodaira").get<std::string>()
       << std::setw(9) << f.at("v_delta").dump() << std::setw(11) << f.at("conductor_exponent").dump()
       << f.at("components").dump() << "\n";
  if (!a.at("rank_bounds").is_null()) os << "rank <= " << a.at("rank_bounds").at("combined") << "\n";
  return os.str();
}

inline std::string flat_table(const json& j) {
  std::ostringstream os;
  for (const auto& [k, v] : j.items()) os << k << "  " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptic surfaces over Q(t): fibers, heights, integral points, S-units, bounds", "ellsurf"};
  app.require_subcommand(1);
  std::string format = "json";
  unsigned jobs = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();

  std::string curve, point, s_places, basis_arg, torsion_arg, divisor_arg, places, args, norm = "half",
                                                                                    bound_override, formula,
                                                                                    corpus = "corpus";

  auto* analyze = app.add_subcommand("analyze", "Fibers, chi and rank bounds of a curve");
  analyze->add_option("curve_file", curve, "Curve JSON (file or inline)");
  analyze->add_option("--curve", curve, "Curve JSON (file or inline)");

  auto* height = app.add_subcommand("height", "Canonical height with its breakdown");
  height->add_option("--curve", curve, "Curve JSON")->required();
  height->add_option("--point", point, "Point as [\"x\",\"y\"] or \"O\"")->required();
  height->add_option("--height-norm", norm, "half (default, alias: paper) or shioda")
      ->check(CLI::IsMember({"half", "paper", "shioda"}));

  auto* integral = app.add_subcommand("integral", "Enumerate (S,D)-integral points under the height bound");
  integral->add_option("--curve", curve, "Curve JSON")->required();
  integral->add_option("--s", s_places, "Places of S, e.g. \"(t),(t-1),inf\"");
  integral->add_option("--basis", basis_arg, "Mordell-Weil basis (JSON array of points)");
  integral->add_option("--torsion", torsion_arg, "Torsion points (JSON array)");
  integral->add_option("--divisor", divisor_arg, "Divisor as a union of sections (JSON array); default (O)");
  integral->add_option("--bound-override", bound_override, "Search radius instead of 25 chi + 2 s");

  auto* sunit = app.add_subcommand("sunit", "Solve x + y = 1 in S-units");
  sunit->add_option("--places", places, "Places of S")->required();

  auto* bounds = app.add_subcommand("bounds", "Evaluate an explicit constant");
  bounds->add_option("formula_id", formula, "One of: " + [] {
    std::string s;
    for (const auto& id : bound_formula_ids()) s += (s.empty() ? "" : ", ") + id;
    return s;
  }())->required();
  bounds->add_option("--args", args, "k=v,...");

  auto* verify = app.add_subcommand("verify-corpus", "Check every corpus entry against its expectations");
  verify->add_option("corpus_dir", corpus, "Corpus directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : InputError;
  }

  const bool table = format == "table";
  auto emit = [&](const json& j, const std::string& tab) { out << (table ? tab : j.dump(2) + "\n"); };

  try {
    if (*analyze) {
      if (curve.empty()) throw Error(ErrorCode::ParseError, "analyze needs a curve");
      json a = analyze_json(model_from_json(load_json(curve)));
      emit(a, analyze_table(a));
      return Ok;
    }
    if (*height) {
      json h = height_json(model_from_json(load_json(curve)), point_from_json(load_json(point)), parse_norm(norm));
      emit(h, flat_table(h));
      return Ok;
    }
    if (*integral) {
      const auto model = model_from_json(load_json(curve));
      auto basis = basis_arg.empty() ? std::vector<MWPoint>{} : points_from_json(load_json(basis_arg), "basis");
      auto torsion =
          torsion_arg.empty() ? std::vector<MWPoint>{} : points_from_json(load_json(torsion_arg), "torsion");
      std::optional<std::vector<MWPoint>> divisor;
      if (!divisor_arg.empty()) divisor = points_from_json(load_json(divisor_arg), "divisor");
      std::optional<Rat> over;
      if (!bound_override.empty()) {
        Rat r;
        if (r.set_str(bound_override, 10) != 0) throw Error(ErrorCode::ParseError, "bad --bound-override");
        r.canonicalize();
        over = r;
      }
      auto res = integral_json(model, parse_place_list(s_places), basis, torsion, divisor, over, jobs);
      json summary = res.report;
      summary.erase("found");
      summary.erase("gram");
      std::string tab = flat_table(summary);
      for (const auto& f : res.report.at("found"))
        tab += "found  " + f.at("point").dump() + "  hhat " + f.at("hhat").get<std::string>() + "\n";
      emit(res.report, tab);
      if (res.violated) err << "bound violated\n";
      return res.violated ? BoundViolated : Ok;
    }
    if (*sunit) {
      auto res = sunit_json(parse_place_list(places), jobs);
      json summary = res.report;
      summary.erase("solutions");
      std::string tab = flat_table(summary);
      for (const auto& s : res.report.at("solutions"))
        tab += "x = " + s.at("x").get<std::string>() + ", y = " + s.at("y").get<std::string>() + "\n";
      emit(res.report, tab);
      if (res.violated) err << "bound violated\n";
      return res.violated ? BoundViolated : Ok;
    }
    if (*bounds) {
      json b = bound_json(bound_report(formula, parse_bound_args(args)));
      emit(b, flat_table(b));
      return Ok;
    }
    if (*verify) {
      const auto files = corpus_files(corpus);
      std::vector<CheckRow> rows;
      for (const auto& f : files) {
        try {
          auto entry = load_json(f.string());
          auto got = verify_entry(f.stem().string(), entry, jobs);
          rows.insert(rows.end(), got.begin(), got.end());
        } catch (const std::exception& e) {
          rows.push_back({f.stem().string(), "load", "parses", std::string("error: ") + e.what(), "", false});
        }
      }
      if (files.empty()) err << "warning: corpus '" << corpus << "' has no entries\n";
      const bool ok = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
      json j = json::array();
      for (const auto& r : rows)
        j.push_back({{"entry", r.entry},
                     {"check", r.check},
                     {"expected", r.expected},
                     {"actual", r.actual},
                     {"provenance", r.provenance},
                     {"pass", r.pass}});
      json report = {{"entries", files.size()}, {"checks", rows.size()}, {"pass", ok}, {"results", j}};
      emit(report, rows_table(rows) + (ok ? "all checks pass\n" : "FAILURES\n"));
      return ok ? Ok : VerifyFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  }
  return InputError;
}

}  // namespace ellsurf::cli
