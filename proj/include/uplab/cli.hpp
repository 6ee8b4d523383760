#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"

namespace uplab::cli {

using io::json;

/// Exit codes: 0 every assertion held, 1 a mathematical assertion failed,
/// 2 bad input or usage.
enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kUsage = 2 };

struct Result {
  json report;
  int code = kOk;
};

/// Parsed command line; unset optionals fall back to the documented defaults.
struct CliConfig {
  std::string subcommand;
  std::string out;  // empty: the caller's stream
  std::string points, form, curve, plane;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> degree;
  bool exhaustive = false;
  std::optional<std::size_t> samples;
  double budget = 1e6;
  unsigned max_conj = 0;  // 0: the form's degree
  unsigned max_ext = 1;
  u64 p = 0;
  unsigned f = 0;
  bool verify = false;
  unsigned point_ext = 3;
  std::size_t trials = 0;
  std::size_t members = 0;
  unsigned member_ext = 0;  // 0: subcommand default
  unsigned plane_ext = 1;
  std::string plane_mode = "uniform";
  std::optional<double> threshold;
  unsigned max_retries = 100;
  double upp_budget = 1e5;
  long long n = 0, g = 0;
};

namespace detail {

inline json error_json(std::string_view code, const std::string& detail) { return json{{"error", code}, {"detail", detail}}; }

inline std::uint64_t need_seed(const CliConfig& c) {
  if (!c.seed) fail(ErrorCode::Usage, c.subcommand + " needs --seed");
  return *c.seed;
}

inline HarnessOptions harness_options(const CliConfig& c, unsigned default_member_ext) {
  HarnessOptions o;
  o.max_ext = c.max_ext;
  o.plane_ext = c.plane_ext;
  o.plane_mode = c.plane_mode == "through_points" ? PlaneMode::through_points : PlaneMode::uniform;
  o.member_ext = c.member_ext ? c.member_ext : default_member_ext;
  o.threshold = c.threshold;
  o.max_retries = c.max_retries;
  o.upp_budget = c.upp_budget;
  return o;
}

template <class Field>
Result hilbert_for(const PointConfiguration<Field>& X) {
  return {io::to_json(profile(X)), kOk};
}

template <class Field>
Result upp_for(const PointConfiguration<Field>& X, const CliConfig& c) {
  UppOptions o;
  o.budget = c.budget;
  if (c.samples) {
    o.mode = UppMode::sampled;
    o.samples = *c.samples;
    o.seed = need_seed(c);
  } else {
    o.seed = c.seed.value_or(0);
  }
  const UppReport r = upp_check(X, o);
  json out = io::to_json(r);
  out["collinear_triples"] = collinear_triples(X).size();
  const bool reproduced = !r.witness || witness_reproduces(X, *r.witness);
  out["witness_reproduces"] = r.witness ? json(reproduced) : json(nullptr);
  return {std::move(out), reproduced ? kOk : kAssertionFailed};
}

inline Result run_hilbert(const CliConfig& c) {
  return std::visit([](const auto& X) { return hilbert_for(X); }, io::points_from_json(io::read_json_file(c.points)));
}

inline Result run_upp(const CliConfig& c) {
  return std::visit([&](const auto& X) { return upp_for(X, c); }, io::points_from_json(io::read_json_file(c.points)));
}

inline Result run_minsys(const CliConfig& c) {
  const auto X = io::finite_points_from_json(io::read_json_file(c.points));
  const unsigned s = minimal_degree(X);
  const auto sys = linear_system(X, c.degree.value_or(s));
  bool ok = true;
  for (const auto& f : sys.basis) ok = ok && vanishes_on(f, X);
  json out{{"minimal_degree", s}};
  const json body = io::to_json(sys);
  for (const auto& [k, v] : body.items()) out[k] = v;
  return {std::move(out), ok ? kOk : kAssertionFailed};
}

inline Result run_irreducible(const CliConfig& c) {
  const auto form = io::form_from_json(io::read_json_file(c.form));
  const std::uint64_t seed = c.seed.value_or(0);
  if (const auto* f = std::get_if<TernaryForm>(&form)) {
    return {io::to_json(is_absolutely_irreducible(*f, c.max_conj ? c.max_conj : f->degree(), seed)), kOk};
  }
  const auto& r = std::get<io::RationalForm>(form);
  return {io::to_json(is_absolutely_irreducible_rational(r.degree, r.coeffs, c.max_conj ? c.max_conj : r.degree, seed)), kOk};
}

inline Result run_gcd(const CliConfig& c) {
  if (!c.degree) fail(ErrorCode::Usage, "gcd needs --degree");
  const auto X = io::finite_points_from_json(io::read_json_file(c.points));
  const auto sys = linear_system(X, *c.degree);
  const auto g = gcd_of_system(sys);
  bool divides = true;
  for (const auto& f : sys.basis) divides = divides && divide_forms(f, g).has_value();
  return {json{{"degree", *c.degree}, {"dimension", sys.basis.size()}, {"gcd", io::to_json(g)}, {"gcd_degree", g.degree()}},
          divides ? kOk : kAssertionFailed};
}

inline Result run_section(const CliConfig& c) {
  const auto curve = io::curve_from_json(io::read_json_file(c.curve));
  const auto plane = io::plane_from_json(io::read_json_file(c.plane));
  const auto sec = plane_section(curve, plane, c.max_ext, c.seed.value_or(0));
  bool ok = true;
  for (const auto& p : sec.points) ok = ok && sec.plane.evaluate(p.coords) == 0;
  ok = ok && (!sec.complete || sec.found_total == sec.expected_total);
  return {io::to_json(sec), ok ? kOk : kAssertionFailed};
}

struct Assertion {
  std::string name;
  json expected;
  json observed;
};

inline Result run_rathmann(const CliConfig& c) {
  const std::uint64_t seed = need_seed(c);
  const auto sec = rathmann_section_direct(c.p, c.f, c.point_ext, seed);
  const u64 q = sec.q;
  const auto& X = sec.config;
  json out{{"p", c.p}, {"f", c.f}, {"q", q}, {"seed", seed}};
  out["plane"] = io::to_json(sec.plane);
  out["section_size"] = X.size();
  out["points"] = io::to_json(X);
  if (!c.verify) return {std::move(out), kOk};

  std::vector<Assertion> checks;
  const auto prof = profile(X);
  const auto triples = collinear_triples(X).size();
  const u64 lines = q * q + q;
  const u64 per_line = q < 3 ? 0 : q * (q - 1) * (q - 2) / 6;

  UppOptions uo;
  uo.seed = seed;
  uo.budget = c.upp_budget;
  if (std::ldexp(1.0, static_cast<int>(X.size())) - 1 > c.upp_budget) uo.sizes = {3};
  const auto upp = upp_check(X, uo);
  json upp_json = io::to_json(upp);
  upp_json["sizes"] = uo.sizes.empty() ? json("all") : json(uo.sizes);

  const unsigned s = minimal_degree(X);
  const auto sys = linear_system(X, s);
  std::vector<std::size_t> expected_delta;
  for (u64 i = 1; i <= q; ++i) expected_delta.push_back(i);
  for (u64 i = q - 1; i >= 1; --i) expected_delta.push_back(i);

  checks.push_back({"section_size", q * q, X.size()});
  checks.push_back({"collinear_triples", lines * per_line, triples});
  checks.push_back({"upp_verdict", q >= 3 ? "fails" : "holds", verdict_name(upp.verdict)});
  if (upp.witness) {
    const auto& w = upp.witness->subset;
    const bool collinear_witness = w.size() == 3 && collinear(X.field(), std::span(X[w[0]]), std::span(X[w[1]]), std::span(X[w[2]]));
    checks.push_back({"witness_is_collinear_triple", true, collinear_witness});
    checks.push_back({"witness_reproduces", true, witness_reproduces(X, *upp.witness)});
  }
  checks.push_back({"minimal_degree", q, s});
  checks.push_back({"system_dimension", 2, sys.basis.size()});
  checks.push_back({"delta", expected_delta, prof.deltas});
  checks.push_back({"decreasing_type", true, is_decreasing_type(prof)});

  out["collinear_triples"] = triples;
  out["upp"] = std::move(upp_json);
  out["profile"] = io::to_json(prof);
  out["system"] = io::to_json(sys);

  // Members are reported, not asserted: a pencil also contains the
  // q + 1 members that split into q parallel lines each.
  if (sys.basis.size() >= 2) {
    const FiniteField M = extension_of(X.field(), ::uplab::detail::member_degree(X.field(), c.member_ext ? c.member_ext : 1, s));
    Rng rng(mix_seed(seed, 1));
    std::size_t irr = 0, red = 0, inc = 0;
    for (std::size_t k = 0; k < c.members; ++k) {
      switch (is_absolutely_irreducible(random_member(sys, rng, M), s, seed).verdict) {
        case Irreducibility::irreducible: ++irr; break;
        case Irreducibility::reducible: ++red; break;
        case Irreducibility::inconclusive: ++inc; break;
      }
    }
    out["members"] = json{{"field", M.spec().describe()}, {"tested", c.members}, {"irreducible", irr},
                          {"reducible", red},             {"inconclusive", inc}};
    if (sys.basis.size() == 2) {
      const auto [m, r] = ::uplab::detail::pencil_census(sys, s, seed);
      out["census"] = json{{"field", X.field().spec().describe()}, {"members", m}, {"reducible", r}};
    }
  }

  json arr = json::array();
  bool ok = true;
  for (const auto& a : checks) {
    const bool pass = a.expected == a.observed;
    ok = ok && pass;
    arr.push_back(json{{"name", a.name}, {"expected", a.expected}, {"observed", a.observed}, {"pass", pass}});
  }
  out["assertions"] = std::move(arr);
  out["all_pass"] = ok;
  return {std::move(out), ok ? kOk : kAssertionFailed};
}

inline Result run_theorem3(const CliConfig& c) {
  const auto curve = io::curve_from_json(io::read_json_file(c.curve));
  const auto rep = verify_theorem3(curve, c.trials, c.members, need_seed(c), harness_options(c, 3));
  return {io::to_json(rep), rep.all_pass ? kOk : kAssertionFailed};
}

inline Result run_decreasing(const CliConfig& c) {
  const auto curve = io::curve_from_json(io::read_json_file(c.curve));
  const auto rep = verify_decreasing_type(curve, c.trials, need_seed(c), harness_options(c, 3));
  return {io::to_json(rep), rep.all_pass ? kOk : kAssertionFailed};
}

inline Result run_prop2(const CliConfig& c) { return {io::to_json(classify_prop2(c.n, c.g)), kOk}; }

inline Result dispatch(const CliConfig& c) {
  if (c.subcommand == "hilbert") return run_hilbert(c);
  if (c.subcommand == "upp") return run_upp(c);
  if (c.subcommand == "minsys") return run_minsys(c);
  if (c.subcommand == "irreducible") return run_irreducible(c);
  if (c.subcommand == "gcd") return run_gcd(c);
  if (c.subcommand == "section") return run_section(c);
  if (c.subcommand == "rathmann") return run_rathmann(c);
  if (c.subcommand == "verify-theorem3") return run_theorem3(c);
  if (c.subcommand == "verify-decreasing-type") return run_decreasing(c);
  if (c.subcommand == "prop2") return run_prop2(c);
  fail(ErrorCode::Usage, "unknown subcommand '" + c.subcommand + "'");
}

inline void emit(const json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) fail(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  f << text;
}

}  // namespace detail

/// Runs one invocation; args exclude the program name. The report (or an
/// error object) goes to `out` unless --out names a file.
inline int run(const std::vector<std::string>& args, std::ostream& out) {
  CliConfig c;
  CLI::App app{"Hilbert functions, uniform position and plane sections of space curves"};
  app.require_subcommand(1);
  app.add_option("--out", c.out, "write the JSON report to this file");

  auto seed_opt = [&](CLI::App* s, const char* help = "random seed") { s->add_option("--seed", c.seed, help); };
  auto harness_opts = [&](CLI::App* s) {
    s->add_option("--curve", c.curve, "curve JSON")->required();
    s->add_option("--trials", c.trials, "number of accepted plane sections to sample")->required();
    seed_opt(s);
    s->add_option("--max-ext", c.max_ext, "section roots are searched over extensions up to this degree");
    s->add_option("--plane-ext", c.plane_ext, "planes are sampled over this extension of the curve field");
    s->add_option("--plane-mode", c.plane_mode, "uniform or through_points")
        ->check(CLI::IsMember({"uniform", "through_points"}));
    s->add_option("--max-retries", c.max_retries, "plane samples per trial before giving up");
  };

  auto* hil = app.add_subcommand("hilbert", "Hilbert function profile of a point configuration");
  hil->add_option("--points", c.points, "points JSON")->required();

  auto* upp = app.add_subcommand("upp", "uniform position check");
  upp->add_option("--points", c.points, "points JSON")->required();
  auto* exh = upp->add_flag("--exhaustive", c.exhaustive, "every subset (default)");
  upp->add_option("--samples", c.samples, "random subsets per size")->excludes(exh);
  upp->add_option("--budget", c.budget, "largest number of subsets for exhaustive mode");
  seed_opt(upp);

  auto* ms = app.add_subcommand("minsys", "minimal degree and linear system of curves through the points");
  ms->add_option("--points", c.points, "points JSON")->required();
  ms->add_option("--degree", c.degree, "system degree (default: the minimal one)");

  auto* irr = app.add_subcommand("irreducible", "absolute irreducibility of a ternary form");
  irr->add_option("--form", c.form, "form JSON")->required();
  irr->add_option("--max-conj", c.max_conj, "largest conjugate splitting degree checked (default: the form degree)");
  seed_opt(irr, "factorization seed (the verdict does not depend on it)");

  auto* gc = app.add_subcommand("gcd", "common factor of the degree-s curves through the points");
  gc->add_option("--points", c.points, "points JSON")->required();
  gc->add_option("--degree", c.degree, "system degree")->required();

  auto* sec = app.add_subcommand("section", "plane section of a parametrized curve");
  sec->add_option("--curve", c.curve, "curve JSON")->required();
  sec->add_option("--plane", c.plane, "plane JSON")->required();
  sec->add_option("--max-ext", c.max_ext, "largest extension degree searched for points");
  seed_opt(sec, "root-finding seed (the section does not depend on it)");

  auto* rat = app.add_subcommand("rathmann", "plane section of (t : t^q : t^(q^2) : 1) through three curve points");
  rat->add_option("--p", c.p, "characteristic")->required();
  rat->add_option("--f", c.f, "q = p^f")->required();
  rat->add_flag("--verify", c.verify, "run and assert the full pipeline on the section");
  seed_opt(rat);
  rat->add_option("--point-ext", c.point_ext, "the three points are sampled over F_{q^k}");
  rat->add_option("--members", c.members, "random minimal curves tested with --verify")->default_val(50);
  rat->add_option("--member-ext", c.member_ext, "members are sampled over this extension of the point field");
  rat->add_option("--upp-budget", c.upp_budget, "all subset sizes when 2^n - 1 stays within this, else triples")
      ->default_val(1e4);

  auto* t3 = app.add_subcommand("verify-theorem3", "irreducibility of minimal curves through generic plane sections");
  harness_opts(t3);
  t3->add_option("--members", c.members, "random members tested per trial")->required();
  t3->add_option("--member-ext", c.member_ext, "members are sampled over this extension of the section field");
  t3->add_option("--threshold", c.threshold, "required irreducible fraction per trial");
  t3->add_option("--upp-budget", c.upp_budget, "exhaustive UPP within this many subsets, sampled above");

  auto* dt = app.add_subcommand("verify-decreasing-type", "decreasing type of generic plane sections");
  harness_opts(dt);

  auto* p2 = app.add_subcommand("prop2", "irreducibility classification for n points with minimal degree g");
  p2->add_option("--n", c.n, "number of points")->required();
  p2->add_option("--g", c.g, "minimal degree")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    detail::emit(detail::error_json("Usage", e.what()), {}, out);
    return kUsage;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  try {
    const Result r = detail::dispatch(c);
    detail::emit(r.report, c.out, out);
    return r.code;
  } catch (const Error& e) {
    detail::emit(detail::error_json(error_name(e.code()), e.detail()), {}, out);
    return kUsage;
  }
}

}  // namespace uplab::cli
