#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"
#include "hilbert.hpp"
#include "linalg.hpp"
#include "points.hpp"
#include "rng.hpp"

namespace uplab {

enum class UppMode { exhaustive, sampled };
enum class UppVerdict { holds, fails, holds_on_sample };

inline const char* verdict_name(UppVerdict v) {
  switch (v) {
    case UppVerdict::holds: return "holds";
    case UppVerdict::fails: return "fails";
    case UppVerdict::holds_on_sample: return "holds_on_sample";
  }
  return "?";
}

/// Two subsets of equal size whose Hilbert functions differ at `degree`.
/// Indices refer to the input point order.
struct UppWitness {
  std::size_t size = 0;
  std::size_t degree = 0;
  std::vector<std::size_t> subset;     // violates min{H(X,i), n}
  std::size_t value = 0;
  std::vector<std::size_t> reference;  // attains min{H(X,i), n}
  std::size_t reference_value = 0;
};

struct UppSizeStats {
  std::size_t size = 0;
  std::size_t examined = 0;
  bool violated = false;
};

struct UppReport {
  UppMode mode = UppMode::exhaustive;
  UppVerdict verdict = UppVerdict::holds;
  std::optional<UppWitness> witness;
  std::vector<UppSizeStats> stats;
};

struct UppOptions {
  UppMode mode = UppMode::exhaustive;
  std::size_t samples = 100;     // per size, sampled mode
  std::uint64_t seed = 0;
  double budget = 1e6;           // total subsets, exhaustive mode
  std::vector<std::size_t> sizes;  // empty: every size 1..deg X
};

/// Hilbert values of subsets computed from row selections of the full
/// evaluation matrices, which are built once per degree.
template <class Field>
class SubsetHilbert {
 public:
  explicit SubsetHilbert(const PointConfiguration<Field>& X) : X_(X) {}

  std::size_t value(std::span<const std::size_t> subset, unsigned degree) {
    while (matrices_.size() <= degree) matrices_.push_back(evaluation_matrix(X_, static_cast<unsigned>(matrices_.size())));
    if (subset.empty()) return 0;
    return rank(matrices_[degree].select_rows(subset));
  }

  const PointConfiguration<Field>& points() const { return X_; }

 private:
  const PointConfiguration<Field>& X_;
  std::vector<ExactMatrix<Field>> matrices_;
};

namespace detail {

/// First degree where H(Z, .) differs from the truncation prediction.
template <class Field>
std::optional<std::pair<std::size_t, std::size_t>> truncation_mismatch(SubsetHilbert<Field>& sh, const HilbertProfile& prof,
                                                                       std::span<const std::size_t> subset) {
  const std::size_t n = subset.size();
  for (unsigned i = 0;; ++i) {
    const std::size_t v = sh.value(subset, i);
    if (v != truncation_predict(prof, n, i)) return std::pair{static_cast<std::size_t>(i), v};
    if (v == n) return std::nullopt;
  }
}

/// An n-subset attaining min{H(X,i), n}: independent rows first, then padding.
template <class Field>
std::vector<std::size_t> reference_subset(SubsetHilbert<Field>& sh, std::size_t n, unsigned degree, std::size_t target) {
  std::vector<std::size_t> chosen, rest;
  std::size_t current = 0;
  for (std::size_t i = 0; i < sh.points().size(); ++i) {
    if (current < target) {
      chosen.push_back(i);
      const std::size_t v = sh.value(chosen, degree);
      if (v > current) {
        current = v;
        continue;
      }
      chosen.pop_back();
    }
    rest.push_back(i);
  }
  for (std::size_t i = 0; chosen.size() < n; ++i) chosen.push_back(rest[i]);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace detail

/// Checks uniform position by comparing each examined subset's Hilbert
/// function with min{H(X,i), n}. Stops at the first violation of each size.
template <class Field>
UppReport upp_check(const PointConfiguration<Field>& X, const UppOptions& opts = {}) {
  if (X.empty()) fail(ErrorCode::EmptyConfiguration, "UPP needs at least one point");
  const std::size_t N = X.size();
  std::vector<std::size_t> sizes = opts.sizes;
  if (sizes.empty()) {
    sizes.resize(N);
    std::iota(sizes.begin(), sizes.end(), std::size_t{1});
  }
  for (auto n : sizes) {
    if (n < 1 || n > N) fail(ErrorCode::InvalidInput, "subset size out of range");
  }
  if (opts.mode == UppMode::exhaustive) {
    double total = 0;
    for (auto n : sizes) total += detail::binomial(N, n);
    if (total > opts.budget) {
      fail(ErrorCode::BudgetExceeded, "exhaustive UPP needs " + std::to_string(static_cast<long long>(total)) + " subsets");
    }
  }

  const HilbertProfile prof = profile(X);
  SubsetHilbert<Field> sh(X);
  UppReport report;
  report.mode = opts.mode;

  auto record = [&](const std::vector<std::size_t>& subset, std::size_t degree, std::size_t value) {
    if (report.witness && report.witness->size <= subset.size()) return;
    UppWitness w;
    w.size = subset.size();
    w.degree = degree;
    w.subset = subset;
    w.value = value;
    const std::size_t target = truncation_predict(prof, subset.size(), degree);
    w.reference = detail::reference_subset(sh, subset.size(), static_cast<unsigned>(degree), target);
    w.reference_value = sh.value(w.reference, static_cast<unsigned>(degree));
    report.witness = std::move(w);
  };

  for (auto n : sizes) {
    UppSizeStats st{n, 0, false};
    if (opts.mode == UppMode::exhaustive) {
      std::vector<std::size_t> c(n);
      std::iota(c.begin(), c.end(), std::size_t{0});
      do {
        ++st.examined;
        if (auto bad = detail::truncation_mismatch(sh, prof, c)) {
          st.violated = true;
          record(c, bad->first, bad->second);
          break;
        }
      } while (detail::next_combination(c, N));
    } else {
      Rng rng(mix_seed(opts.seed, n));
      std::vector<std::size_t> perm(N);
      for (std::size_t s = 0; s < opts.samples; ++s) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = 0; i < n; ++i) std::swap(perm[i], perm[i + rng.below(N - i)]);
        std::vector<std::size_t> c(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n));
        std::sort(c.begin(), c.end());
        ++st.examined;
        if (auto bad = detail::truncation_mismatch(sh, prof, c)) {
          st.violated = true;
          record(c, bad->first, bad->second);
          break;
        }
      }
    }
    report.stats.push_back(st);
  }
  if (report.witness) {
    report.verdict = UppVerdict::fails;
  } else {
    report.verdict = opts.mode == UppMode::exhaustive ? UppVerdict::holds : UppVerdict::holds_on_sample;
  }
  return report;
}

/// Recomputes both witness subsets from scratch; true iff they still differ.
template <class Field>
bool witness_reproduces(const PointConfiguration<Field>& X, const UppWitness& w) {
  if (w.subset.size() != w.size || w.reference.size() != w.size) return false;
  const auto a = hilbert_value(X.subset(w.subset), static_cast<unsigned>(w.degree));
  const auto b = hilbert_value(X.subset(w.reference), static_cast<unsigned>(w.degree));
  return a == w.value && b == w.reference_value && a != b;
}

/// Index triples (i < j < k) of collinear points, lexicographic.
template <class Field>
std::vector<std::array<std::size_t, 3>> collinear_triples(const PointConfiguration<Field>& X) {
  std::vector<std::array<std::size_t, 3>> out;
  const auto& F = X.field();
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j)
      for (std::size_t k = j + 1; k < X.size(); ++k)
        if (collinear(F, std::span(X[i]), std::span(X[j]), std::span(X[k]))) out.push_back({i, j, k});
  return out;
}

struct Prop1Report {
  unsigned degree = 0;
  std::size_t subset_size = 0;
  std::size_t h1_subset = 0;
  std::size_t h0_subset = 0;
  std::size_t h0_full = 0;
  bool triggered = false;  // h^1(I_{X'}(l)) != 0
  bool holds = true;       // when triggered: every degree-l curve through X' contains X
  bool upp_assumed = false;
};

/// Checks that a subset with h^1(I_{X'}(l)) != 0 has the same degree-l
/// curves as X, by comparing canonical kernel bases.
template <class Field>
Prop1Report prop1_containment_check(const PointConfiguration<Field>& X, const PointConfiguration<Field>& sub, unsigned l,
                                    bool upp_assumed) {
  for (const auto& p : sub.points()) {
    if (std::find(X.points().begin(), X.points().end(), p) == X.points().end()) {
      fail(ErrorCode::NotASubset, "subset point is not in the configuration");
    }
  }
  Prop1Report r;
  r.degree = l;
  r.subset_size = sub.size();
  r.upp_assumed = upp_assumed;
  const auto ks = kernel_basis(evaluation_matrix(sub, l));
  const auto kx = kernel_basis(evaluation_matrix(X, l));
  r.h0_subset = ks.size();
  r.h0_full = kx.size();
  r.h1_subset = sub.size() - (forms_dimension(l) - ks.size());
  r.triggered = r.h1_subset != 0;
  r.holds = !r.triggered || ks == kx;
  return r;
}

}  // namespace uplab
