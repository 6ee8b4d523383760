#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bipoly.hpp"
#include "embedding.hpp"
#include "error.hpp"
#include "hilbert.hpp"
#include "linalg.hpp"
#include "monomials.hpp"
#include "points.hpp"
#include "rng.hpp"

namespace uplab {

/// Homogeneous polynomial of degree s in x, y, z; coefficients indexed by
/// monomials(s). Nonzero forms are scaled so the first nonzero coefficient is 1.
class TernaryForm {
 public:
  using Element = FiniteField::Element;

  TernaryForm(FiniteField field, unsigned degree, std::vector<Element> coeffs)
      : field_(std::move(field)), degree_(degree), c_(std::move(coeffs)) {
    if (c_.size() != monomial_count(degree_)) fail(ErrorCode::InvalidInput, "coefficient count does not match the degree");
    normalize();
  }

  static TernaryForm zero(const FiniteField& F, unsigned degree) {
    return TernaryForm(F, degree, std::vector<Element>(monomial_count(degree), 0));
  }

  static TernaryForm from_terms(const FiniteField& F, unsigned degree, const std::vector<std::pair<Exponent, Element>>& terms) {
    std::vector<Element> c(monomial_count(degree), 0);
    for (const auto& [e, v] : terms) {
      if (e[0] + e[1] + e[2] != degree) fail(ErrorCode::InvalidInput, "monomial degree differs from the form degree");
      auto& slot = c[monomial_index(e)];
      slot = F.add(slot, v);
    }
    return TernaryForm(F, degree, std::move(c));
  }

  const FiniteField& field() const { return field_; }
  unsigned degree() const { return degree_; }
  const std::vector<Element>& coeffs() const { return c_; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](Element v) { return v == 0; });
  }
  Element coeff(const Exponent& e) const { return c_[monomial_index(e)]; }

  std::vector<std::pair<Exponent, Element>> terms() const {
    std::vector<std::pair<Exponent, Element>> out;
    const auto mons = monomials(degree_);
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) out.push_back({mons[k], c_[k]});
    return out;
  }

  Element evaluate(std::span<const Element> pt) const {
    const auto mons = monomials(degree_);
    Element acc = 0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] != 0) acc = field_.add(acc, field_.mul(c_[k], evaluate_monomial(field_, pt, mons[k])));
    }
    return acc;
  }

  TernaryForm over(const FiniteField& target) const {
    if (field_ == target) return *this;
    const auto& emb = Embedding::between(field_, target);
    std::vector<Element> c;
    for (auto v : c_) c.push_back(emb.apply(v));
    return TernaryForm(target, degree_, std::move(c));
  }

  /// Least exponent of variable v over the nonzero terms.
  unsigned valuation(std::size_t v) const {
    unsigned best = degree_;
    for (const auto& [e, c] : terms()) best = std::min(best, e[v]);
    return best;
  }

  friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
    return a.field_ == b.field_ && a.degree_ == b.degree_ && a.c_ == b.c_;
  }

 private:
  void normalize() {
    for (auto v : c_) {
      if (v == 0) continue;
      if (v != 1) {
        const Element inv = field_.inv(v);
        for (auto& w : c_) w = field_.mul(w, inv);
      }
      return;
    }
  }

  FiniteField field_;
  unsigned degree_;
  std::vector<Element> c_;
};

inline std::string to_string(const TernaryForm& f) {
  std::string out;
  const char* names[3] = {"x", "y", "z"};
  for (const auto& [e, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string mon;
    for (std::size_t v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (!mon.empty()) mon += "*";
      mon += names[v];
      if (e[v] > 1) mon += "^" + std::to_string(e[v]);
    }
    if (mon.empty()) out += std::to_string(c);
    else out += (c == 1 ? "" : std::to_string(c) + "*") + mon;
  }
  return out.empty() ? "0" : out;
}

inline TernaryForm multiply(const TernaryForm& a, const TernaryForm& b) {
  const FiniteField& F = a.field();
  std::vector<std::pair<Exponent, FiniteField::Element>> terms;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) terms.push_back({{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, F.mul(ca, cb)});
  return TernaryForm::from_terms(F, a.degree() + b.degree(), terms);
}

/// Exact quotient a / b (up to the canonical scalar) by long division in lex
/// order x > y > z, or nullopt when b does not divide a.
inline std::optional<TernaryForm> divide_forms(const TernaryForm& a, const TernaryForm& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero form");
  if (b.degree() > a.degree()) return a.is_zero() ? std::optional(TernaryForm::zero(a.field(), 0)) : std::nullopt;
  const FiniteField& F = a.field();
  std::map<Exponent, FiniteField::Element, std::greater<>> rem;
  for (const auto& [e, c] : a.terms()) rem[e] = c;
  const auto bt = b.terms();
  const auto lead_b = *std::max_element(bt.begin(), bt.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
  std::vector<std::pair<Exponent, FiniteField::Element>> quotient;
  while (!rem.empty()) {
    const auto [e, c] = *rem.begin();
    Exponent qe{};
    for (std::size_t v = 0; v < 3; ++v) {
      if (e[v] < lead_b.first[v]) return std::nullopt;
      qe[v] = e[v] - lead_b.first[v];
    }
    const auto qc = F.div(c, lead_b.second);
    quotient.push_back({qe, qc});
    for (const auto& [eb, cb] : bt) {
      const Exponent m{qe[0] + eb[0], qe[1] + eb[1], qe[2] + eb[2]};
      auto& slot = rem[m];
      slot = F.sub(slot, F.mul(qc, cb));
      if (slot == 0) rem.erase(m);
    }
  }
  return TernaryForm::from_terms(F, a.degree() - b.degree(), quotient);
}

/// f with variable v set to 1, as a BiPoly in the remaining two variables
/// (in the order x, y, z with v removed).
inline BiPoly dehomogenize(const TernaryForm& f, std::size_t v) {
  const FiniteField& F = f.field();
  const std::size_t u = v == 0 ? 1 : 0, w = v == 2 ? 1 : 2;
  std::vector<std::vector<FiniteField::Element>> grid(f.degree() + 1, std::vector<FiniteField::Element>(f.degree() + 1, 0));
  for (const auto& [e, c] : f.terms()) grid[e[w]][e[u]] = c;
  std::vector<UniPoly> ys;
  for (auto& row : grid) ys.emplace_back(F, std::move(row));
  return BiPoly(F, std::move(ys));
}

/// Inverse of dehomogenize at the given degree.
inline TernaryForm homogenize(const BiPoly& f, unsigned degree, std::size_t v) {
  if (f.total_degree() > static_cast<int>(degree)) fail(ErrorCode::InvalidInput, "degree below the polynomial's total degree");
  const std::size_t u = v == 0 ? 1 : 0, w = v == 2 ? 1 : 2;
  std::vector<std::pair<Exponent, FiniteField::Element>> terms;
  for (std::size_t j = 0; j < f.coeffs().size(); ++j) {
    const auto& c = f.coeffs()[j].coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Exponent e{};
      e[u] = static_cast<unsigned>(i);
      e[w] = static_cast<unsigned>(j);
      e[v] = degree - static_cast<unsigned>(i + j);
      terms.push_back({e, c[i]});
    }
  }
  return TernaryForm::from_terms(f.field(), degree, terms);
}

/// z^k * f.
inline TernaryForm times_z_power(const TernaryForm& f, unsigned k) {
  std::vector<std::pair<Exponent, FiniteField::Element>> terms;
  for (auto [e, c] : f.terms()) {
    e[2] += k;
    terms.push_back({e, c});
  }
  return TernaryForm::from_terms(f.field(), f.degree() + k, terms);
}

/// Greatest common divisor of two forms, canonically scaled; the z-power is
/// split off and the rest is handled in the affine chart z = 1.
inline TernaryForm form_gcd(const TernaryForm& a, const TernaryForm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const unsigned va = a.valuation(2), vb = b.valuation(2);
  const BiPoly g = gcd(dehomogenize(a, 2), dehomogenize(b, 2));
  return times_z_power(homogenize(g, static_cast<unsigned>(g.total_degree()), 2), std::min(va, vb));
}

// ---------------------------------------------------------------------------
// Linear systems

struct LinearSystem {
  PointConfiguration<FiniteField> X;
  unsigned degree = 0;
  std::vector<TernaryForm> basis;  // canonical kernel basis of the degree-s evaluation map
};

/// Least s with a nonzero degree-s form vanishing on X.
inline unsigned minimal_degree(const PointConfiguration<FiniteField>& X) {
  if (X.empty()) fail(ErrorCode::EmptyConfiguration, "minimal degree needs at least one point");
  unsigned s = 0;
  while (h0_ideal(X, s) == 0) ++s;
  return s;
}

inline LinearSystem linear_system(const PointConfiguration<FiniteField>& X, unsigned s) {
  LinearSystem sys{X, s, {}};
  for (auto& v : kernel_basis(evaluation_matrix(X, s))) sys.basis.emplace_back(X.field(), s, std::move(v));
  return sys;
}

inline bool vanishes_on(const TernaryForm& f, const PointConfiguration<FiniteField>& X) {
  const auto& emb = Embedding::between(X.field(), f.field());
  for (const auto& p : X.points()) {
    std::vector<FiniteField::Element> q;
    for (auto c : p) q.push_back(emb.apply(c));
    if (f.evaluate(q) != 0) return false;
  }
  return true;
}

/// Uniform random combination of the basis over `target` (the system's
/// field when omitted), resampled while zero.
inline TernaryForm random_member(const LinearSystem& sys, Rng& rng, std::optional<FiniteField> target = std::nullopt) {
  if (sys.basis.empty()) fail(ErrorCode::EmptySystem, "linear system has no members");
  const FiniteField L = target.value_or(sys.X.field());
  std::vector<TernaryForm> basis;
  for (const auto& b : sys.basis) basis.push_back(b.over(L));
  while (true) {
    std::vector<FiniteField::Element> acc(monomial_count(sys.degree), 0);
    for (const auto& b : basis) {
      const auto lambda = L.random(rng);
      if (lambda == 0) continue;
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = L.add(acc[k], L.mul(lambda, b.coeffs()[k]));
    }
    TernaryForm f(L, sys.degree, std::move(acc));
    if (!f.is_zero()) return f;
  }
}

/// Common factor of all basis forms (degree 0 when there is none).
inline TernaryForm gcd_of_system(const LinearSystem& sys) {
  if (sys.basis.empty()) fail(ErrorCode::EmptySystem, "linear system has no members");
  TernaryForm g = sys.basis.front();
  for (std::size_t k = 1; k < sys.basis.size() && g.degree() > 0; ++k) g = form_gcd(g, sys.basis[k]);
  return g;
}

// ---------------------------------------------------------------------------
// Absolute irreducibility

enum class Irreducibility { irreducible, reducible, inconclusive };

inline const char* irreducibility_name(Irreducibility v) {
  switch (v) {
    case Irreducibility::irreducible: return "true";
    case Irreducibility::reducible: return "false";
    case Irreducibility::inconclusive: return "inconclusive";
  }
  return "?";
}

struct IrreducibilityReport {
  Irreducibility verdict = Irreducibility::inconclusive;
  std::string reason;
  std::vector<unsigned> extensions_checked;  // r with the form tested over F_{q^r}
  std::vector<unsigned> extensions_skipped;  // prime r dividing deg F above max_conj
  bool probabilistic = false;                // rational input reduced mod a prime
};

/// Irreducibility over the algebraic closure. The absolute factors of a form
/// irreducible over F_q are conjugate, r of them with r | deg F, so testing
/// over F_{q^r} for each prime r | deg F decides the question.
inline IrreducibilityReport is_absolutely_irreducible(const TernaryForm& f, unsigned max_conj, std::uint64_t seed = 0) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "the zero form has no irreducibility");
  if (f.degree() == 0) fail(ErrorCode::InvalidInput, "constant forms are units");
  IrreducibilityReport r;
  if (f.degree() == 1) {
    r.verdict = Irreducibility::irreducible;
    r.reason = "linear form";
    return r;
  }
  const char* names[3] = {"x", "y", "z"};
  for (std::size_t v = 0; v < 3; ++v) {
    if (f.valuation(v) > 0) {
      r.verdict = Irreducibility::reducible;
      r.reason = std::string(names[v]) + " divides the form";
      return r;
    }
  }
  const BiPoly affine = dehomogenize(f, 2);
  auto split = [&](const BiPoly& g) {
    const auto fac = factor_bivariate(g, {seed});
    return fac.factors.size() > 1 || fac.factors.front().multiplicity > 1;
  };
  r.extensions_checked.push_back(1);
  if (split(affine)) {
    r.verdict = Irreducibility::reducible;
    r.reason = "reducible over " + f.field().spec().describe();
    return r;
  }
  for (auto prime : prime_divisors(f.degree())) {
    if (prime > max_conj) {
      r.extensions_skipped.push_back(static_cast<unsigned>(prime));
      continue;
    }
    const FiniteField L = extension_of(f.field(), static_cast<unsigned>(prime));
    r.extensions_checked.push_back(static_cast<unsigned>(prime));
    if (split(affine.map_coeffs(Embedding::between(f.field(), L)))) {
      r.verdict = Irreducibility::reducible;
      r.reason = "reducible over " + L.spec().describe();
      return r;
    }
  }
  if (!r.extensions_skipped.empty()) {
    r.verdict = Irreducibility::inconclusive;
    r.reason = "conjugate splitting above max_conj not excluded";
  } else {
    r.verdict = Irreducibility::irreducible;
    r.reason = "irreducible over every required extension";
  }
  return r;
}

inline constexpr u64 kRationalReductionPrime = 1000003;

/// Rational form tested through its reduction mod a large prime: a verdict
/// of irreducible is reliable, reducible may be an artifact of the prime.
inline IrreducibilityReport is_absolutely_irreducible_rational(unsigned degree, const std::vector<mpq_class>& coeffs,
                                                               unsigned max_conj, std::uint64_t seed = 0) {
  if (coeffs.size() != monomial_count(degree)) fail(ErrorCode::InvalidInput, "coefficient count does not match the degree");
  mpz_class den = 1, num = 0;
  for (const auto& c : coeffs) den = lcm(den, mpz_class(c.get_den()));
  std::vector<mpz_class> ints;
  for (const auto& c : coeffs) {
    ints.push_back(mpz_class(c * den));
    num = gcd(num, ints.back());
  }
  if (num == 0) fail(ErrorCode::ZeroPolynomial, "the zero form has no irreducibility");
  const FiniteField Fp = FiniteField::of(kRationalReductionPrime);
  std::vector<FiniteField::Element> red;
  for (auto& v : ints) {
    mpz_class m = (v / num) % static_cast<unsigned long>(kRationalReductionPrime);
    if (m < 0) m += static_cast<unsigned long>(kRationalReductionPrime);
    red.push_back(m.get_ui());
  }
  TernaryForm reduced(Fp, degree, std::move(red));
  auto r = is_absolutely_irreducible(reduced, max_conj, seed);
  r.probabilistic = true;
  r.reason += " (reduction mod " + std::to_string(kRationalReductionPrime) + ")";
  return r;
}

}  // namespace uplab
