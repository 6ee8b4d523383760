#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "curves.hpp"
#include "geometry.hpp"
#include "hilbert.hpp"
#include "rathmann.hpp"
#include "rng.hpp"
#include "upp.hpp"

namespace uplab {

enum class PlaneMode {
  uniform,        // dual coordinates uniform over the plane field
  through_points  // plane through three uniform curve points
};

struct HarnessOptions {
  unsigned max_ext = 1;            // section roots searched up to this degree over the plane field
  unsigned plane_ext = 1;          // planes are sampled over F_{q^plane_ext}
  PlaneMode plane_mode = PlaneMode::uniform;
  unsigned member_ext = 3;         // members sampled over the section field extended by this degree
  std::optional<double> threshold; // default: 1.0 for Rathmann curves, 0.95 otherwise
  unsigned max_retries = 100;
  double upp_budget = 1e5;         // exhaustive UPP below this many subsets, sampled above
  std::size_t upp_samples = 50;
  u64 census_limit = 256;          // enumerate pencils over section fields up to this order
};

struct MechanismCheck {
  unsigned s = 0;
  std::size_t c_s = 0;
  unsigned gcd_degree = 0;
  bool matches = false;
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool accepted = false;
  std::vector<std::string> rejections;  // predicate tags fired while sampling planes
  std::optional<Plane> plane;  // as sampled, over the plane field
  std::string section_field;
  std::size_t section_size = 0;
  unsigned s = 0;
  std::size_t system_dim = 0;
  bool singleton = false;
  std::size_t members_tested = 0;
  std::size_t irreducible = 0;
  std::size_t reducible = 0;
  std::size_t inconclusive = 0;
  std::string member_field;
  // every rational member of a pencil over a small section field, when enumerated
  std::optional<std::size_t> census_members;
  std::optional<std::size_t> census_reducible;
  std::string upp_verdict;
  std::vector<std::size_t> delta;
  std::size_t a1 = 0, a2 = 0, t = 0;
  bool decreasing_type = false;
  std::size_t shape_warnings = 0;
  std::vector<MechanismCheck> mechanism;
  bool pass = false;
  std::string failure;
};

struct ControlReport {
  std::string label;
  std::vector<std::size_t> delta;
  std::vector<MechanismCheck> checks;
  bool pass = false;
};

struct TrialReport {
  std::string kind;  // "theorem3" or "decreasing_type"
  std::string curve_id;
  std::uint64_t seed = 0;
  std::size_t requested = 0;
  std::size_t completed = 0;
  std::size_t rejected = 0;
  std::map<std::string, std::size_t> rejection_tags;
  double threshold = 0;
  std::vector<TrialRecord> trials;
  std::optional<ControlReport> control;
  bool all_pass = false;
};

namespace detail {

/// UPLAB_THREADS caps the worker count; default is the hardware concurrency.
inline unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("UPLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

/// Runs body(i) for i in [0, n); results are written by index so the order
/// of completion does not matter.
template <class Body>
void parallel_for(std::size_t n, Body body) {
  const unsigned workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next++) < n;) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct SampledSection {
  Plane plane;
  PlaneSection section;
};

/// Plane sampling with the genericity predicates; rejections are logged in order.
inline std::optional<SampledSection> sample_section(const ParamCurve& curve, const HarnessOptions& opts, Rng& rng,
                                                    std::uint64_t seed, std::vector<std::string>& rejections) {
  const FiniteField K = extension_of(curve.field(), opts.plane_ext);
  const ParamCurve ck = curve.over(K);
  for (unsigned attempt = 0; attempt < opts.max_retries; ++attempt) {
    std::optional<Plane> h;
    if (opts.plane_mode == PlaneMode::through_points) {
      h = plane_through(K, ck.at(K.random(rng)), ck.at(K.random(rng)), ck.at(K.random(rng)));
      if (!h) {
        rejections.emplace_back("dependent_points");
        continue;
      }
    } else {
      std::array<Fq, 4> t{};
      for (auto& v : t) v = K.random(rng);
      if (t == std::array<Fq, 4>{}) {
        rejections.emplace_back("zero_vector");
        continue;
      }
      h = Plane::make(K, t);
    }
    if (std::any_of(h->duals.begin(), h->duals.end(), [](Fq v) { return v == 0; })) {
      rejections.emplace_back("coordinate_degenerate");
      continue;
    }
    std::optional<PlaneSection> sec;
    try {
      sec = plane_section(curve, *h, opts.max_ext, seed);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CurveInPlane) throw;
      rejections.emplace_back("curve_in_plane");
      continue;
    }
    if (!sec->complete) {
      rejections.emplace_back("incomplete_section");
      continue;
    }
    if (!sec->reduced) {
      rejections.emplace_back("non_reduced");
      continue;
    }
    return SampledSection{*h, std::move(*sec)};
  }
  return std::nullopt;
}

/// For each s in [a1, t] with c_{s-1} = c_s (c_i = delta H(X, i)), the gcd of
/// the degree-s system should have degree c_s.
inline std::vector<MechanismCheck> mechanism_checks(const PointConfiguration<FiniteField>& X, const HilbertProfile& prof) {
  std::vector<MechanismCheck> out;
  for (std::size_t s = std::max<std::size_t>(prof.a1, 1); s <= prof.t; ++s) {
    if (prof.delta(s - 1) != prof.delta(s)) continue;
    const auto sys = linear_system(X, static_cast<unsigned>(s));
    if (sys.basis.empty()) continue;
    const auto g = gcd_of_system(sys);
    out.push_back({static_cast<unsigned>(s), prof.delta(s), g.degree(), g.degree() == prof.delta(s)});
  }
  return out;
}

/// Absolutely reducible members among the |L| + 1 rational members of a pencil.
inline std::pair<std::size_t, std::size_t> pencil_census(const LinearSystem& sys, unsigned max_conj, std::uint64_t seed) {
  const FiniteField& L = sys.X.field();
  const auto& a = sys.basis[0].coeffs();
  const auto& b = sys.basis[1].coeffs();
  std::size_t members = 0, reducible = 0;
  auto test = [&](std::vector<Fq> c) {
    ++members;
    const TernaryForm f(L, sys.degree, std::move(c));
    if (is_absolutely_irreducible(f, max_conj, seed).verdict == Irreducibility::reducible) ++reducible;
  };
  test(b);
  for (Fq lambda = 0; lambda < L.order(); ++lambda) {
    std::vector<Fq> c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = L.add(a[k], L.mul(lambda, b[k]));
    test(std::move(c));
  }
  return {members, reducible};
}

inline bool is_rathmann(const ParamCurve& c) { return c.id().rfind("rathmann", 0) == 0; }

inline UppReport trial_upp(const PointConfiguration<FiniteField>& X, const HarnessOptions& opts, std::uint64_t seed) {
  UppOptions u;
  double total = 0;
  for (std::size_t n = 1; n <= X.size(); ++n) total += binomial(X.size(), n);
  u.seed = seed;
  if (total > opts.upp_budget) {
    u.mode = UppMode::sampled;
    u.samples = opts.upp_samples;
  }
  u.budget = opts.upp_budget;
  return upp_check(X, u);
}

/// Member field degree over the section field, lowered until the absolute
/// irreducibility extensions stay below 2^63.
inline unsigned member_degree(const FiniteField& L, unsigned wanted, unsigned s) {
  u64 rmax = 1;
  for (auto r : prime_divisors(std::max(s, 1u))) rmax = std::max(rmax, r);
  unsigned k = std::max(wanted, 1u);
  while (k > 1 && checked_pow(L.characteristic(), static_cast<unsigned>(L.degree() * k * rmax)) == 0) --k;
  return k;
}

}  // namespace detail

/// Samples generic plane sections, computes the minimal linear system, and
/// tests absolute irreducibility of its members.
inline TrialReport verify_theorem3(const ParamCurve& curve, std::size_t trials, std::size_t members, std::uint64_t seed,
                                   const HarnessOptions& opts = {}) {
  if (trials == 0 || members == 0) fail(ErrorCode::InvalidParameters, "trials and members must be positive");
  TrialReport rep;
  rep.kind = "theorem3";
  rep.curve_id = curve.id();
  rep.seed = seed;
  rep.requested = trials;
  rep.threshold = opts.threshold.value_or(detail::is_rathmann(curve) ? 1.0 : 0.95);
  rep.trials.resize(trials);

  detail::parallel_for(trials, [&](std::size_t i) {
    TrialRecord& tr = rep.trials[i];
    tr.index = i;
    tr.seed = mix_seed(seed, i);
    Rng rng(tr.seed);
    const auto sampled = detail::sample_section(curve, opts, rng, tr.seed, tr.rejections);
    if (!sampled) {
      tr.failure = "GenericityExhausted";
      return;
    }
    tr.accepted = true;
    const auto& sec = sampled->section;
    tr.plane = sampled->plane;
    tr.section_field = sec.field.spec().describe();
    std::vector<Coords> pts;
    for (const auto& p : sec.points) pts.push_back(p.coords);
    const auto X = coordinatize_on_plane(pts, sec.plane);
    tr.section_size = X.size();
    const auto prof = profile(X);
    tr.delta = prof.deltas;
    tr.a1 = prof.a1;
    tr.a2 = prof.a2;
    tr.t = prof.t;
    tr.decreasing_type = is_decreasing_type(prof);
    tr.shape_warnings = prof.warnings.size();
    tr.upp_verdict = verdict_name(detail::trial_upp(X, opts, tr.seed).verdict);
    tr.s = minimal_degree(X);
    const auto sys = linear_system(X, tr.s);
    tr.system_dim = sys.basis.size();
    tr.singleton = sys.basis.size() == 1;
    const unsigned max_conj = std::max(tr.s, 1u);
    auto tally = [&](const TernaryForm& f) {
      switch (is_absolutely_irreducible(f, max_conj, tr.seed).verdict) {
        case Irreducibility::irreducible: ++tr.irreducible; break;
        case Irreducibility::reducible: ++tr.reducible; break;
        case Irreducibility::inconclusive: ++tr.inconclusive; break;
      }
      ++tr.members_tested;
    };
    if (tr.singleton) {
      tr.member_field = sec.field.spec().describe();
      tally(sys.basis.front());
      tr.pass = tr.irreducible == 1;
      if (!tr.pass) tr.failure = "singleton minimal curve not absolutely irreducible";
      return;
    }
    if (sys.basis.size() == 2 && sec.field.order() <= opts.census_limit) {
      const auto [m, r] = detail::pencil_census(sys, max_conj, tr.seed);
      tr.census_members = m;
      tr.census_reducible = r;
    }
    const FiniteField M = extension_of(sec.field, detail::member_degree(sec.field, opts.member_ext, tr.s));
    tr.member_field = M.spec().describe();
    for (std::size_t k = 0; k < members; ++k) tally(random_member(sys, rng, M));
    const double frac = static_cast<double>(tr.irreducible) / static_cast<double>(tr.members_tested);
    tr.pass = frac >= rep.threshold;
    if (!tr.pass) tr.failure = "irreducible fraction below threshold";
  });

  rep.all_pass = true;
  for (const auto& tr : rep.trials) {
    for (const auto& tag : tr.rejections) ++rep.rejection_tags[tag];
    if (tr.accepted) {
      ++rep.completed;
      rep.all_pass = rep.all_pass && tr.pass;
    } else {
      ++rep.rejected;
    }
  }
  rep.all_pass = rep.all_pass && rep.completed > 0;
  return rep;
}

/// Five points on the line y = z and one point off it, over F_101.
inline PointConfiguration<FiniteField> collinear_control() {
  const FiniteField F = FiniteField::of(101);
  std::vector<Coords> pts;
  for (Fq a = 1; a <= 5; ++a) pts.push_back({a, 1, 1});
  pts.push_back({0, 1, 0});
  return PointConfiguration<FiniteField>(F, pts, "five_collinear_plus_one");
}

inline ControlReport run_control() {
  const auto X = collinear_control();
  const auto prof = profile(X);
  ControlReport c{X.label(), prof.deltas, detail::mechanism_checks(X, prof), false};
  c.pass = !c.checks.empty() &&
           std::all_of(c.checks.begin(), c.checks.end(), [](const MechanismCheck& m) { return m.matches; });
  return c;
}

/// Samples sections and checks the decreasing-type property of their
/// Hilbert functions, plus the common-factor control configuration.
inline TrialReport verify_decreasing_type(const ParamCurve& curve, std::size_t trials, std::uint64_t seed,
                                          const HarnessOptions& opts = {}) {
  if (trials == 0) fail(ErrorCode::InvalidParameters, "trials must be positive");
  TrialReport rep;
  rep.kind = "decreasing_type";
  rep.curve_id = curve.id();
  rep.seed = seed;
  rep.requested = trials;
  rep.trials.resize(trials);
  detail::parallel_for(trials, [&](std::size_t i) {
    TrialRecord& tr = rep.trials[i];
    tr.index = i;
    tr.seed = mix_seed(seed, i);
    Rng rng(tr.seed);
    const auto sampled = detail::sample_section(curve, opts, rng, tr.seed, tr.rejections);
    if (!sampled) {
      tr.failure = "GenericityExhausted";
      return;
    }
    tr.accepted = true;
    const auto& sec = sampled->section;
    tr.plane = sampled->plane;
    tr.section_field = sec.field.spec().describe();
    std::vector<Coords> pts;
    for (const auto& p : sec.points) pts.push_back(p.coords);
    const auto X = coordinatize_on_plane(pts, sec.plane);
    tr.section_size = X.size();
    const auto prof = profile(X);
    tr.delta = prof.deltas;
    tr.a1 = prof.a1;
    tr.a2 = prof.a2;
    tr.t = prof.t;
    tr.decreasing_type = is_decreasing_type(prof);
    tr.shape_warnings = prof.warnings.size();
    tr.s = minimal_degree(X);
    tr.mechanism = detail::mechanism_checks(X, prof);
    tr.pass = tr.decreasing_type;
    if (!tr.pass) tr.failure = "not of decreasing type";
  });
  rep.control = run_control();
  rep.all_pass = rep.control->pass;
  for (const auto& tr : rep.trials) {
    for (const auto& tag : tr.rejections) ++rep.rejection_tags[tag];
    if (tr.accepted) {
      ++rep.completed;
      rep.all_pass = rep.all_pass && tr.pass;
    } else {
      ++rep.rejected;
    }
  }
  rep.all_pass = rep.all_pass && rep.completed > 0;
  return rep;
}

}  // namespace uplab
