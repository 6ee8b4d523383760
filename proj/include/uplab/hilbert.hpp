#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "monomials.hpp"
#include "points.hpp"

namespace uplab {

/// H(X, i): number of independent conditions X imposes on degree-i forms.
template <class Field>
std::size_t hilbert_value(const PointConfiguration<Field>& X, unsigned degree) {
  if (X.empty()) return 0;
  return rank(evaluation_matrix(X, degree));
}

/// h^0(I_X(i)) = C(i+2,2) - H(X,i).
template <class Field>
std::size_t h0_ideal(const PointConfiguration<Field>& X, unsigned degree) {
  return forms_dimension(degree) - hilbert_value(X, degree);
}

/// h^1(I_X(i)) = deg X - H(X,i).
template <class Field>
std::size_t h1_ideal(const PointConfiguration<Field>& X, unsigned degree) {
  return X.size() - hilbert_value(X, degree);
}

/// Hilbert function up to stabilization with first differences and the
/// landmarks a1 <= a2 of the h-vector shape; t is the last degree with a
/// positive difference.
struct HilbertProfile {
  std::vector<std::size_t> values;  // H(X, 0..D), values[D] = deg X
  std::vector<std::size_t> deltas;  // deltas[i] = H(X,i) - H(X,i-1)
  std::size_t a1 = 0;
  std::size_t a2 = 0;
  std::size_t t = 0;
  std::vector<std::string> warnings;  // shape violations, if any

  std::size_t degree() const { return values.empty() ? 0 : values.back(); }

  /// H(X, i) for any i >= 0 (constant past stabilization).
  std::size_t value(std::size_t i) const { return i < values.size() ? values[i] : degree(); }

  /// Delta H(X, i), zero past t.
  std::size_t delta(std::size_t i) const { return i < deltas.size() ? deltas[i] : 0; }
};

/// Fills the landmarks and shape warnings from `values`.
inline HilbertProfile profile_from_values(std::vector<std::size_t> values) {
  HilbertProfile prof;
  prof.values = std::move(values);
  for (std::size_t i = 0; i < prof.values.size(); ++i) {
    prof.deltas.push_back(prof.values[i] - (i == 0 ? 0 : prof.values[i - 1]));
  }
  prof.t = prof.deltas.empty() ? 0 : prof.deltas.size() - 1;
  std::size_t i = 0;
  while (prof.delta(i) == i + 1) ++i;
  prof.a1 = i;
  // When the differences never drop below a1 before t, a2 lands on t + 1.
  i = prof.a1;
  while (prof.delta(i) >= prof.a1 && i <= prof.t) ++i;
  prof.a2 = i;

  for (std::size_t k = prof.a1; k < prof.a2; ++k) {
    if (prof.delta(k) != prof.a1) {
      prof.warnings.push_back("ShapeViolation: delta(" + std::to_string(k) + ") != a1 on [a1, a2-1]");
    }
  }
  for (std::size_t k = prof.a2; k < prof.t; ++k) {
    if (prof.delta(k + 1) > prof.delta(k)) {
      prof.warnings.push_back("ShapeViolation: delta increases at " + std::to_string(k + 1));
    }
  }
  return prof;
}

/// Values until H reaches deg X; a set of n points has H(X, n-1) = n, so the
/// loop ends by degree n-1.
template <class Field>
HilbertProfile profile(const PointConfiguration<Field>& X) {
  if (X.empty()) fail(ErrorCode::EmptyConfiguration, "profile needs at least one point");
  std::vector<std::size_t> values;
  for (unsigned i = 0;; ++i) {
    values.push_back(hilbert_value(X, i));
    if (values.back() == X.size()) break;
  }
  return profile_from_values(std::move(values));
}

/// min{H(X,i), n}: the Hilbert value every n-subset has when X is in uniform position.
inline std::size_t truncation_predict(const HilbertProfile& prof, std::size_t n, std::size_t degree) {
  if (n > prof.degree()) fail(ErrorCode::InvalidInput, "subset size exceeds deg X");
  return std::min(prof.value(degree), n);
}

/// Strictly decreasing differences from a2 through t.
inline bool is_decreasing_type(const HilbertProfile& prof) {
  for (std::size_t i = prof.a2; i < prof.t; ++i) {
    if (prof.delta(i) <= prof.delta(i + 1)) return false;
  }
  return true;
}

enum class Prop2Case { AllIrreducible, GenericIrreducible, NotApplicable };

inline const char* case_name(Prop2Case c) {
  switch (c) {
    case Prop2Case::AllIrreducible: return "AllIrreducible";
    case Prop2Case::GenericIrreducible: return "GenericIrreducible";
    case Prop2Case::NotApplicable: return "NotApplicable";
  }
  return "?";
}

struct Prop2Verdict {
  long long n = 0;
  long long d = 0;
  long long h = 0;
  long long g = 0;
  Prop2Case verdict = Prop2Case::NotApplicable;
  bool requires_upp = true;  // the verdict is conditional on uniform position
};

/// Unique (d, h) with n = C(d+2,2) + h and 0 <= h <= d+1.
inline std::pair<long long, long long> prop2_decompose(long long n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "n must be positive");
  long long d = 0;
  while (static_cast<long long>(forms_dimension(d + 1)) <= n) ++d;
  return {d, n - static_cast<long long>(forms_dimension(d))};
}

/// Irreducibility verdict for minimal curves through n points in uniform
/// position whose minimal degree is g.
inline Prop2Verdict classify_prop2(long long n, long long g) {
  if (g < 1) fail(ErrorCode::InvalidInput, "g must be positive");
  const auto [d, h] = prop2_decompose(n);
  if (g > d + 1) {
    fail(ErrorCode::InconsistentInput, "g = " + std::to_string(g) + " exceeds d + 1 = " + std::to_string(d + 1) +
                                           "; every set of " + std::to_string(n) + " points lies on a curve of degree d + 1");
  }
  Prop2Verdict v{n, d, h, g, Prop2Case::NotApplicable, true};
  if (g <= d || h >= 2) {
    v.verdict = Prop2Case::AllIrreducible;
  } else {
    v.verdict = Prop2Case::GenericIrreducible;
  }
  return v;
}

}  // namespace uplab
