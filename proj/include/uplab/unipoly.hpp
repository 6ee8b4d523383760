#pragma once

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "finite_field.hpp"
#include "rng.hpp"

namespace uplab {

/// Dense univariate polynomial over a finite field, lowest degree first.
/// The coefficient vector never carries trailing zeros.
class UniPoly {
 public:
  using Element = FiniteField::Element;

  explicit UniPoly(FiniteField field) : field_(std::move(field)) {}
  UniPoly(FiniteField field, std::vector<Element> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const FiniteField& f, Element c) { return UniPoly(f, {c}); }
  static UniPoly x(const FiniteField& f) { return UniPoly(f, {0, 1}); }
  static UniPoly monomial(const FiniteField& f, Element c, std::size_t deg) {
    std::vector<Element> v(deg + 1, 0);
    v[deg] = c;
    return UniPoly(f, std::move(v));
  }

  const FiniteField& field() const { return field_; }
  const std::vector<Element>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Element lead() const { return c_.empty() ? 0 : c_.back(); }
  Element operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  void set(std::size_t i, Element v) {
    if (i >= c_.size()) c_.resize(i + 1, 0);
    c_[i] = v;
    trim();
  }

  Element evaluate(Element t) const {
    Element acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, t), c_[i]);
    return acc;
  }

  UniPoly scaled(Element s) const {
    if (s == 0) return UniPoly(field_);
    std::vector<Element> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_.mul(c_[i], s);
    return UniPoly(field_, std::move(v));
  }

  UniPoly monic() const { return is_zero() ? *this : scaled(field_.inv(lead())); }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly(field_);
    std::vector<Element> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = field_.mul(field_.from_int(static_cast<long long>(i % field_.characteristic())), c_[i]);
    return UniPoly(field_, std::move(v));
  }

  /// Coefficients mod x^n.
  UniPoly truncated(std::size_t n) const {
    if (c_.size() <= n) return *this;
    return UniPoly(field_, std::vector<Element>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  UniPoly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<Element> v(k, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return UniPoly(field_, std::move(v));
  }

  /// f(x + a) via Horner over polynomials.
  UniPoly translate(Element a) const {
    UniPoly acc(field_);
    const UniPoly lin(field_, {a, 1});
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + constant(field_, c_[i]);
    return acc;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    const FiniteField& f = a.field_;
    std::vector<Element> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(a[i], b[i]);
    return UniPoly(f, std::move(v));
  }

  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    const FiniteField& f = a.field_;
    std::vector<Element> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(a[i], b[i]);
    return UniPoly(f, std::move(v));
  }

  UniPoly operator-() const { return UniPoly(field_) - *this; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    const FiniteField& f = a.field_;
    if (a.is_zero() || b.is_zero()) return UniPoly(f);
    std::vector<Element> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = f.add(v[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return UniPoly(f, std::move(v));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_ && a.field_ == b.field_; }

  /// Canonical order: degree first, then coefficients from low degree up.
  friend bool canonical_less(const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.c_ < b.c_;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  FiniteField field_;
  std::vector<Element> c_;
};

/// Quotient and remainder; throws on a zero divisor.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  const FiniteField& f = a.field();
  if (a.degree() < b.degree()) return {UniPoly(f), a};
  std::vector<UniPoly::Element> r = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<UniPoly::Element> q(r.size() - db, 0);
  const auto inv_lc = f.inv(b.lead());
  for (std::size_t k = r.size(); k-- > db;) {
    const auto coef = f.mul(r[k], inv_lc);
    if (coef == 0) continue;
    q[k - db] = coef;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = f.sub(r[k - db + i], f.mul(coef, b.coeffs()[i]));
  }
  return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
}

inline UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
inline UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

/// Monic gcd (zero if both inputs are zero).
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<UniPoly, UniPoly, UniPoly> ext_gcd(const UniPoly& a, const UniPoly& b) {
  const FiniteField& f = a.field();
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(f, 1), s1(f);
  UniPoly t0(f), t1 = UniPoly::constant(f, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const auto inv = f.inv(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

inline UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) { return (a * b) % m; }

inline UniPoly powmod(UniPoly base, u64 e, const UniPoly& m) {
  UniPoly result = UniPoly::constant(base.field(), 1) % m;
  base = base % m;
  while (e) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

struct UniFactor {
  UniPoly poly;
  unsigned multiplicity;
};

struct UniFactorization {
  UniPoly::Element unit;
  std::vector<UniFactor> factors;
};

namespace detail {

inline void sort_factors(std::vector<UniFactor>& fs) {
  std::sort(fs.begin(), fs.end(), [](const UniFactor& a, const UniFactor& b) {
    if (a.poly == b.poly) return a.multiplicity < b.multiplicity;
    return canonical_less(a.poly, b.poly);
  });
}

/// f monic with f' possibly zero; returns squarefree parts with multiplicity.
inline std::vector<UniFactor> squarefree_monic(const UniPoly& f) {
  const FiniteField& F = f.field();
  std::vector<UniFactor> out;
  if (f.degree() <= 0) return out;
  UniPoly g = gcd(f, f.derivative());
  UniPoly w = f / g;
  unsigned i = 1;
  while (w.degree() > 0) {
    UniPoly y = gcd(w, g);
    UniPoly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i});
    ++i;
    w = y;
    g = g / y;
  }
  if (g.degree() > 0) {
    // Remaining part is a polynomial in x^p.
    const u64 p = F.characteristic();
    std::vector<UniPoly::Element> root;
    for (std::size_t k = 0; k < g.coeffs().size(); k += p) root.push_back(F.pth_root(g.coeffs()[k]));
    for (auto& [poly, mult] : squarefree_monic(UniPoly(F, std::move(root)).monic())) {
      out.push_back({poly, mult * static_cast<unsigned>(p)});
    }
  }
  return out;
}

/// Pairs (product of all irreducible factors of degree d, d) for squarefree monic f.
inline std::vector<std::pair<UniPoly, unsigned>> distinct_degree(UniPoly f) {
  const FiniteField& F = f.field();
  const u64 q = F.order();
  std::vector<std::pair<UniPoly, unsigned>> out;
  const UniPoly x = UniPoly::x(F);
  UniPoly h = x % f;
  for (unsigned d = 1; f.degree() >= 2 * static_cast<int>(d); ++d) {
    h = powmod(h, q, f);
    UniPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), static_cast<unsigned>(f.degree()));
  return out;
}

/// Map whose kernel/image splits a product of degree-d irreducibles:
/// a^((q^d-1)/2) - 1 for odd p, the absolute trace for p = 2.
inline UniPoly splitting_map(const UniPoly& a, unsigned d, const UniPoly& g) {
  const FiniteField& F = a.field();
  const u64 q = F.order();
  if (F.characteristic() == 2) {
    const unsigned k = F.degree() * d;
    UniPoly term = a % g;
    UniPoly acc = term;
    for (unsigned i = 1; i < k; ++i) {
      term = mulmod(term, term, g);
      acc = acc + term;
    }
    return acc;
  }
  // (q^d - 1)/2 = (q - 1)/2 * (1 + q + ... + q^(d-1))
  UniPoly term = a % g;
  UniPoly norm = term;
  for (unsigned i = 1; i < d; ++i) {
    term = powmod(term, q, g);
    norm = mulmod(norm, term, g);
  }
  return powmod(norm, (q - 1) / 2, g) - UniPoly::constant(F, 1);
}

inline void equal_degree(const UniPoly& g, unsigned d, Rng& rng, std::vector<UniPoly>& out) {
  if (g.degree() == static_cast<int>(d)) {
    out.push_back(g.monic());
    return;
  }
  const FiniteField& F = g.field();
  while (true) {
    std::vector<UniPoly::Element> a(static_cast<std::size_t>(g.degree()));
    for (auto& c : a) c = F.random(rng);
    UniPoly probe(F, std::move(a));
    if (probe.degree() < 1) continue;
    UniPoly h = gcd(g, splitting_map(probe, d, g));
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Full factorization over the coefficient field: unit times monic
/// irreducible factors with multiplicity, sorted canonically.
inline UniFactorization factor_univariate(const UniPoly& f, std::uint64_t seed = 0) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  UniFactorization result{f.lead(), {}};
  Rng rng(seed);
  for (const auto& [part, mult] : detail::squarefree_monic(f.monic())) {
    for (const auto& [block, d] : detail::distinct_degree(part)) {
      std::vector<UniPoly> pieces;
      detail::equal_degree(block, d, rng, pieces);
      for (auto& piece : pieces) result.factors.push_back({std::move(piece), mult});
    }
  }
  detail::sort_factors(result.factors);
  return result;
}

/// True iff f is irreducible over its coefficient field (Ben-Or).
inline bool is_irreducible(const UniPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const FiniteField& F = f.field();
  const UniPoly x = UniPoly::x(F);
  UniPoly h = x % f;
  for (int i = 1; i <= f.degree() / 2; ++i) {
    h = powmod(h, F.order(), f);
    if (gcd(f, h - x).degree() > 0) return false;
  }
  return true;
}

/// Roots of f inside its own coefficient field, ascending, without multiplicity.
inline std::vector<UniPoly::Element> roots_in_field(const UniPoly& f, std::uint64_t seed = 0) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "the zero polynomial has every element as a root");
  const FiniteField& F = f.field();
  std::vector<UniPoly::Element> roots;
  if (f.degree() < 1) return roots;
  const UniPoly x = UniPoly::x(F);
  const UniPoly m = f.monic();
  UniPoly g = gcd(m, powmod(x, F.order(), m) - x);
  if (g.degree() < 1) return roots;
  Rng rng(seed);
  std::vector<UniPoly> lin;
  detail::equal_degree(g, 1, rng, lin);
  for (const auto& l : lin) roots.push_back(F.neg(l[0]));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace uplab
