#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "curves.hpp"
#include "error.hpp"
#include "field_spec.hpp"
#include "finite_field.hpp"
#include "geometry.hpp"
#include "harness.hpp"
#include "hilbert.hpp"
#include "rathmann.hpp"
#include "rational_field.hpp"
#include "upp.hpp"

namespace uplab::io {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::InvalidInput, std::string("missing key '") + key + "'");
  return j.at(key);
}

inline const json& array_member(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_array()) fail(ErrorCode::InvalidInput, std::string("'") + key + "' must be an array");
  return v;
}

template <class T>
T number(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(ErrorCode::InvalidInput, std::string(what) + " must be an integer");
  if constexpr (std::is_unsigned_v<T>) {
    if (j.is_number_unsigned()) return j.get<T>();
    if (j.get<long long>() < 0) fail(ErrorCode::InvalidInput, std::string(what) + " must be non-negative");
  }
  return j.get<T>();
}

}  // namespace detail

// ---- fields and elements -------------------------------------------------

inline json to_json(const FieldSpec& s) {
  if (!s.is_finite()) return json{{"type", "rational"}};
  return json{{"type", "finite"}, {"p", s.p}, {"m", s.m}, {"modulus", s.modulus}};
}

/// Without "modulus" the canonical one is used.
inline FieldSpec field_from_json(const json& j) {
  const json& type = detail::member(j, "type");
  if (type == "rational") return FieldSpec::rational();
  if (type != "finite") fail(ErrorCode::InvalidInput, "field type must be 'finite' or 'rational'");
  const auto p = detail::number<u64>(detail::member(j, "p"), "p");
  const auto m = detail::number<unsigned>(detail::member(j, "m"), "m");
  if (!j.contains("modulus")) return make_extension(p, m);
  std::vector<u64> mod;
  for (const auto& c : detail::array_member(j, "modulus")) mod.push_back(detail::number<u64>(c, "modulus coefficient"));
  return finite_spec(p, m, std::move(mod));
}

inline json element_to_json(const FiniteField& F, Fq a) { return F.coeffs(a); }

/// Coefficient array [a0, ..., a_{m-1}]; a bare integer is read mod p.
inline Fq element_from_json(const FiniteField& F, const json& j) {
  if (j.is_number_integer()) return F.from_int(j.get<long long>());
  if (!j.is_array()) fail(ErrorCode::InvalidInput, "finite field elements are coefficient arrays");
  std::vector<u64> c;
  for (const auto& v : j) c.push_back(detail::number<u64>(v, "element coefficient"));
  return F.from_coeffs(c);
}

inline json element_to_json(const RationalField&, const mpq_class& a) { return RationalField::format(a); }

inline mpq_class element_from_json(const RationalField&, const json& j) {
  if (j.is_number_integer()) return RationalField::parse(std::to_string(j.get<long long>()));
  if (!j.is_string()) fail(ErrorCode::InvalidInput, "rational elements are strings \"num/den\"");
  return RationalField::parse(j.get<std::string>());
}

inline FiniteField finite_field_from_json(const json& j) {
  const FieldSpec s = field_from_json(j);
  if (!s.is_finite()) fail(ErrorCode::RationalField, "this input needs a finite field");
  return FiniteField(s);
}

// ---- points --------------------------------------------------------------

using AnyPoints = std::variant<PointConfiguration<FiniteField>, PointConfiguration<RationalField>>;

template <class Field>
json to_json(const PointConfiguration<Field>& X) {
  json pts = json::array();
  for (const auto& p : X.points()) {
    json row = json::array();
    for (const auto& c : p) row.push_back(element_to_json(X.field(), c));
    pts.push_back(std::move(row));
  }
  return json{{"field", to_json(X.field().spec())}, {"points", std::move(pts)}};
}

namespace detail {

template <class Field>
PointConfiguration<Field> points_over(const Field& F, const json& j) {
  std::vector<std::vector<typename Field::Element>> pts;
  for (const auto& row : array_member(j, "points")) {
    if (!row.is_array()) fail(ErrorCode::InvalidInput, "each point is an array of 3 coordinates");
    std::vector<typename Field::Element> p;
    for (const auto& c : row) p.push_back(element_from_json(F, c));
    pts.push_back(std::move(p));
  }
  return PointConfiguration<Field>(F, std::move(pts), j.value("label", std::string{}));
}

}  // namespace detail

inline AnyPoints points_from_json(const json& j) {
  const FieldSpec s = field_from_json(detail::member(j, "field"));
  if (!s.is_finite()) return detail::points_over(RationalField{}, j);
  return detail::points_over(FiniteField(s), j);
}

inline PointConfiguration<FiniteField> finite_points_from_json(const json& j) {
  auto any = points_from_json(j);
  if (auto* X = std::get_if<PointConfiguration<FiniteField>>(&any)) return std::move(*X);
  fail(ErrorCode::RationalField, "this operation needs points over a finite field");
}

// ---- curves and planes ---------------------------------------------------

inline json to_json(const ParamCurve& c) {
  const FiniteField& F = c.field();
  json param = json::array();
  for (const auto& x : c.components()) {
    json coeffs = json::array();
    for (std::size_t i = 0; i <= static_cast<std::size_t>(std::max(x.degree(), 0)); ++i) coeffs.push_back(element_to_json(F, x[i]));
    param.push_back(std::move(coeffs));
  }
  json out{{"field", to_json(F.spec())}, {"param", std::move(param)}};
  if (!c.id().empty()) out["id"] = c.id();
  return out;
}

/// Either {"field", "param", "id"?} or {"rathmann": {"p", "f"}}.
inline ParamCurve curve_from_json(const json& j) {
  if (j.is_object() && j.contains("rathmann")) {
    const json& r = j.at("rathmann");
    return rathmann_curve(detail::number<u64>(detail::member(r, "p"), "p"), detail::number<unsigned>(detail::member(r, "f"), "f"));
  }
  const FiniteField F = finite_field_from_json(detail::member(j, "field"));
  const json& param = detail::array_member(j, "param");
  if (param.size() != 4) fail(ErrorCode::InvalidInput, "a space curve has 4 coordinate polynomials");
  std::array<UniPoly, 4> comps{UniPoly(F), UniPoly(F), UniPoly(F), UniPoly(F)};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!param[i].is_array()) fail(ErrorCode::InvalidInput, "coordinate polynomials are coefficient arrays");
    std::vector<Fq> c;
    for (const auto& v : param[i]) c.push_back(element_from_json(F, v));
    comps[i] = UniPoly(F, std::move(c));
  }
  return ParamCurve(std::move(comps), j.value("id", std::string{}));
}

inline json to_json(const Plane& h) {
  json duals = json::array();
  for (auto t : h.duals) duals.push_back(element_to_json(h.field, t));
  return json{{"field", to_json(h.field.spec())}, {"duals", std::move(duals)}};
}

inline Plane plane_from_json(const json& j) {
  const FiniteField F = finite_field_from_json(detail::member(j, "field"));
  const json& d = detail::array_member(j, "duals");
  if (d.size() != 4) fail(ErrorCode::InvalidInput, "a plane has 4 dual coordinates");
  std::array<Fq, 4> t{};
  for (std::size_t i = 0; i < 4; ++i) t[i] = element_from_json(F, d[i]);
  if (t == std::array<Fq, 4>{}) fail(ErrorCode::InvalidInput, "the zero vector is not a plane");
  return Plane::make(F, t);
}

// ---- forms ---------------------------------------------------------------

inline std::string exponent_key(const Exponent& e) {
  return std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]);
}

inline Exponent exponent_from_key(const std::string& key, unsigned degree) {
  Exponent e{};
  std::istringstream in(key);
  char c1 = 0, c2 = 0;
  if (!(in >> e[0] >> c1 >> e[1] >> c2 >> e[2]) || c1 != ',' || c2 != ',' || !in.eof()) {
    fail(ErrorCode::InvalidInput, "bad monomial key '" + key + "'");
  }
  if (e[0] + e[1] + e[2] != degree) fail(ErrorCode::InvalidInput, "monomial '" + key + "' has the wrong degree");
  return e;
}

inline json to_json(const TernaryForm& f) {
  json coeffs = json::object();
  for (const auto& [e, c] : f.terms()) coeffs[exponent_key(e)] = element_to_json(f.field(), c);
  return json{{"field", to_json(f.field().spec())}, {"degree", f.degree()}, {"coeffs", std::move(coeffs)}};
}

struct RationalForm {
  unsigned degree = 0;
  std::vector<mpq_class> coeffs;  // graded lex monomial order
};

using AnyForm = std::variant<TernaryForm, RationalForm>;

inline AnyForm form_from_json(const json& j) {
  const FieldSpec s = field_from_json(detail::member(j, "field"));
  const auto degree = detail::number<unsigned>(detail::member(j, "degree"), "degree");
  if (degree < 1) fail(ErrorCode::InvalidInput, "form degree must be positive");
  const json& coeffs = detail::member(j, "coeffs");
  if (!coeffs.is_object()) fail(ErrorCode::InvalidInput, "'coeffs' maps \"a,b,c\" keys to values");
  if (!s.is_finite()) {
    RationalForm r{degree, std::vector<mpq_class>(monomial_count(degree), 0)};
    for (const auto& [k, v] : coeffs.items()) r.coeffs[monomial_index(exponent_from_key(k, degree))] += element_from_json(RationalField{}, v);
    return r;
  }
  const FiniteField F(s);
  std::vector<std::pair<Exponent, Fq>> terms;
  for (const auto& [k, v] : coeffs.items()) terms.emplace_back(exponent_from_key(k, degree), element_from_json(F, v));
  return TernaryForm::from_terms(F, degree, terms);
}

// ---- reports -------------------------------------------------------------

inline json to_json(const HilbertProfile& p) {
  return json{{"H", p.values},   {"delta", p.deltas}, {"a1", p.a1},
              {"a2", p.a2},      {"t", p.t},          {"decreasing_type", is_decreasing_type(p)},
              {"warnings", p.warnings}};
}

inline json to_json(const UppReport& r) {
  json out{{"mode", r.mode == UppMode::exhaustive ? "exhaustive" : "sampled"}, {"verdict", verdict_name(r.verdict)}};
  if (r.witness) {
    const auto& w = *r.witness;
    out["witness"] = json{{"size", w.size},   {"degree", w.degree},       {"subset", w.subset},
                          {"value", w.value}, {"reference", w.reference}, {"reference_value", w.reference_value}};
  } else {
    out["witness"] = nullptr;
  }
  json stats = json::array();
  for (const auto& s : r.stats) stats.push_back(json{{"size", s.size}, {"examined", s.examined}, {"violated", s.violated}});
  out["stats"] = std::move(stats);
  return out;
}

inline json to_json(const LinearSystem& sys) {
  json basis = json::array();
  for (const auto& f : sys.basis) basis.push_back(to_json(f));
  return json{{"degree", sys.degree}, {"dimension", sys.basis.size()}, {"basis", std::move(basis)}};
}

inline json to_json(const IrreducibilityReport& r) {
  return json{{"verdict", irreducibility_name(r.verdict)},
              {"reason", r.reason},
              {"extensions_checked", r.extensions_checked},
              {"extensions_skipped", r.extensions_skipped},
              {"probabilistic", r.probabilistic}};
}

inline json to_json(const PlaneSection& s) {
  json pts = json::array();
  for (const auto& p : s.points) {
    json coords = json::array();
    for (auto c : p.coords) coords.push_back(element_to_json(s.field, c));
    pts.push_back(json{{"coords", std::move(coords)}, {"multiplicity", p.multiplicity}});
  }
  return json{{"field", to_json(s.field.spec())},
              {"plane", to_json(s.plane)},
              {"points", std::move(pts)},
              {"expected_total", s.expected_total},
              {"found_total", s.found_total},
              {"complete", s.complete},
              {"reduced", s.reduced},
              {"factor_degrees", s.factor_degrees}};
}

inline json to_json(const Prop2Verdict& v) {
  return json{{"d", v.d}, {"h", v.h}, {"case", case_name(v.verdict)}, {"requires_upp", v.requires_upp}};
}

inline json to_json(const MechanismCheck& m) {
  return json{{"s", m.s}, {"c_s", m.c_s}, {"gcd_degree", m.gcd_degree}, {"matches", m.matches}};
}

inline json to_json(const TrialRecord& t) {
  json mech = json::array();
  for (const auto& m : t.mechanism) mech.push_back(to_json(m));
  json out{{"index", t.index}, {"seed", t.seed}, {"accepted", t.accepted}, {"rejections", t.rejections}};
  out["plane"] = t.plane ? to_json(*t.plane) : json(nullptr);
  out["section_field"] = t.section_field;
  out["section_size"] = t.section_size;
  out["s"] = t.s;
  out["system_dim"] = t.system_dim;
  out["singleton"] = t.singleton;
  out["members"] = json{{"field", t.member_field},
                        {"tested", t.members_tested},
                        {"irreducible", t.irreducible},
                        {"reducible", t.reducible},
                        {"inconclusive", t.inconclusive}};
  if (t.census_members) {
    out["census"] = json{{"members", *t.census_members}, {"reducible", *t.census_reducible}};
  } else {
    out["census"] = nullptr;
  }
  out["upp_verdict"] = t.upp_verdict;
  out["delta"] = t.delta;
  out["a1"] = t.a1;
  out["a2"] = t.a2;
  out["t"] = t.t;
  out["decreasing_type"] = t.decreasing_type;
  out["shape_warnings"] = t.shape_warnings;
  out["mechanism"] = std::move(mech);
  out["pass"] = t.pass;
  out["failure"] = t.failure;
  return out;
}

inline json to_json(const ControlReport& c) {
  json checks = json::array();
  for (const auto& m : c.checks) checks.push_back(to_json(m));
  return json{{"label", c.label}, {"delta", c.delta}, {"checks", std::move(checks)}, {"pass", c.pass}};
}

inline json to_json(const TrialReport& r) {
  json trials = json::array();
  for (const auto& t : r.trials) trials.push_back(to_json(t));
  json tags = json::object();
  for (const auto& [k, v] : r.rejection_tags) tags[k] = v;
  json out{{"kind", r.kind},           {"curve_id", r.curve_id},   {"seed", r.seed},
           {"requested", r.requested}, {"completed", r.completed}, {"rejected", r.rejected},
           {"rejection_tags", tags},   {"threshold", r.threshold}, {"trials", std::move(trials)}};
  out["control"] = r.control ? to_json(*r.control) : json(nullptr);
  out["all_pass"] = r.all_pass;
  return out;
}

// ---- files ---------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace uplab::io
