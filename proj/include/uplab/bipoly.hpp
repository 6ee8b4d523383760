#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "embedding.hpp"
#include "error.hpp"
#include "finite_field.hpp"
#include "unipoly.hpp"

namespace uplab {

/// Polynomial in F[x][y]: coefficient k is a UniPoly in x multiplying y^k.
class BiPoly {
 public:
  using Element = FiniteField::Element;

  explicit BiPoly(FiniteField field) : field_(std::move(field)) {}
  BiPoly(FiniteField field, std::vector<UniPoly> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  /// Univariate in x, viewed as degree 0 in y.
  static BiPoly from_x(const UniPoly& f) { return BiPoly(f.field(), {f}); }

  /// Univariate in y with constant coefficients.
  static BiPoly from_y(const UniPoly& f) {
    std::vector<UniPoly> v;
    for (auto c : f.coeffs()) v.push_back(UniPoly::constant(f.field(), c));
    return BiPoly(f.field(), std::move(v));
  }

  static BiPoly constant(const FiniteField& F, Element c) { return BiPoly(F, {UniPoly::constant(F, c)}); }

  const FiniteField& field() const { return field_; }
  const std::vector<UniPoly>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int deg_y() const { return static_cast<int>(c_.size()) - 1; }
  int deg_x() const {
    int d = -1;
    for (const auto& c : c_) d = std::max(d, c.degree());
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (!c_[k].is_zero()) d = std::max(d, c_[k].degree() + static_cast<int>(k));
    return d;
  }

  const UniPoly& lc_y() const { return c_.back(); }
  UniPoly coeff_y(std::size_t k) const { return k < c_.size() ? c_[k] : UniPoly(field_); }

  Element coeff(std::size_t i, std::size_t j) const { return j < c_.size() ? c_[j][i] : 0; }

  /// Leading coefficient for the order "y first, then x".
  Element lead() const { return c_.empty() ? 0 : c_.back().lead(); }

  BiPoly scaled(Element s) const {
    std::vector<UniPoly> v;
    for (const auto& c : c_) v.push_back(c.scaled(s));
    return BiPoly(field_, std::move(v));
  }

  BiPoly normalized() const { return is_zero() ? *this : scaled(field_.inv(lead())); }

  BiPoly times_x(const UniPoly& u) const {
    std::vector<UniPoly> v;
    for (const auto& c : c_) v.push_back(c * u);
    return BiPoly(field_, std::move(v));
  }

  /// Coefficients truncated mod x^n.
  BiPoly truncated(std::size_t n) const {
    std::vector<UniPoly> v;
    for (const auto& c : c_) v.push_back(c.truncated(n));
    return BiPoly(field_, std::move(v));
  }

  /// Coefficient of x^i as a polynomial in y.
  UniPoly x_slice(std::size_t i) const {
    std::vector<Element> v(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k][i];
    return UniPoly(field_, std::move(v));
  }

  UniPoly at_x(Element x0) const {
    std::vector<Element> v(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k].evaluate(x0);
    return UniPoly(field_, std::move(v));
  }

  Element evaluate(Element x0, Element y0) const { return at_x(x0).evaluate(y0); }

  /// f(x + a, y).
  BiPoly translate_x(Element a) const {
    std::vector<UniPoly> v;
    for (const auto& c : c_) v.push_back(c.translate(a));
    return BiPoly(field_, std::move(v));
  }

  /// f(x + c y, y).
  BiPoly sheared(Element c) const {
    const BiPoly lin(field_, {UniPoly::x(field_), UniPoly::constant(field_, c)});
    BiPoly out(field_);
    for (std::size_t j = 0; j < c_.size(); ++j) {
      BiPoly pw = BiPoly::constant(field_, 1);
      std::vector<UniPoly> yj(j + 1, UniPoly(field_));
      yj[j] = UniPoly::constant(field_, 1);
      const BiPoly ypow(field_, std::move(yj));
      for (std::size_t i = 0; i < c_[j].coeffs().size(); ++i) {
        if (c_[j][i] != 0) out = out + (pw * ypow).scaled(c_[j][i]);
        pw = pw * lin;
      }
    }
    return out;
  }

  BiPoly swapped() const {
    const int dx = deg_x();
    std::vector<UniPoly> v;
    for (int i = 0; i <= dx; ++i) v.push_back(x_slice(static_cast<std::size_t>(i)));
    return BiPoly(field_, std::move(v));
  }

  BiPoly derivative_y() const {
    std::vector<UniPoly> v;
    for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k].scaled(field_.from_int(static_cast<long long>(k % field_.characteristic()))));
    return BiPoly(field_, std::move(v));
  }

  BiPoly derivative_x() const {
    std::vector<UniPoly> v;
    for (const auto& c : c_) v.push_back(c.derivative());
    return BiPoly(field_, std::move(v));
  }

  BiPoly map_coeffs(const Embedding& emb) const {
    std::vector<UniPoly> v;
    for (const auto& c : c_) v.push_back(emb.apply(c));
    return BiPoly(emb.target(), std::move(v));
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    std::vector<UniPoly> v;
    for (std::size_t k = 0; k < std::max(a.c_.size(), b.c_.size()); ++k) v.push_back(a.coeff_y(k) + b.coeff_y(k));
    return BiPoly(a.field_, std::move(v));
  }

  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    std::vector<UniPoly> v;
    for (std::size_t k = 0; k < std::max(a.c_.size(), b.c_.size()); ++k) v.push_back(a.coeff_y(k) - b.coeff_y(k));
    return BiPoly(a.field_, std::move(v));
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return BiPoly(a.field_);
    std::vector<UniPoly> v(a.c_.size() + b.c_.size() - 1, UniPoly(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    return BiPoly(a.field_, std::move(v));
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }

  /// Canonical order: deg_y, then deg_x, then coefficients.
  friend bool canonical_less(const BiPoly& a, const BiPoly& b) {
    if (a.deg_y() != b.deg_y()) return a.deg_y() < b.deg_y();
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    for (std::size_t k = a.c_.size(); k-- > 0;) {
      if (!(a.c_[k] == b.c_[k])) {
        if (a.c_[k].degree() != b.c_[k].degree()) return a.c_[k].degree() < b.c_[k].degree();
        return a.c_[k].coeffs() < b.c_[k].coeffs();
      }
    }
    return false;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  FiniteField field_;
  std::vector<UniPoly> c_;
};

/// Human-readable form with field elements printed as their integer codes.
inline std::string to_string(const BiPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t j = f.coeffs().size(); j-- > 0;) {
    const auto& c = f.coeffs()[j].coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += " + ";
      std::string mon;
      if (i > 0) mon += i == 1 ? "x" : "x^" + std::to_string(i);
      if (j > 0) mon += (mon.empty() ? "" : "*") + (j == 1 ? std::string("y") : "y^" + std::to_string(j));
      if (mon.empty()) out += std::to_string(c[i]);
      else out += (c[i] == 1 ? "" : std::to_string(c[i]) + "*") + mon;
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const BiPoly& f) { return os << to_string(f); }

/// Monic gcd of the y-coefficients (zero for the zero polynomial).
inline UniPoly content_y(const BiPoly& f) {
  UniPoly g(f.field());
  for (const auto& c : f.coeffs()) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

inline BiPoly primitive_part_y(const BiPoly& f) {
  if (f.is_zero()) return f;
  const UniPoly c = content_y(f);
  std::vector<UniPoly> v;
  for (const auto& k : f.coeffs()) v.push_back(k / c);
  return BiPoly(f.field(), std::move(v));
}

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  const FiniteField& F = a.field();
  if (a.is_zero()) return BiPoly(F);
  if (a.deg_y() < b.deg_y()) return std::nullopt;
  std::vector<UniPoly> q(static_cast<std::size_t>(a.deg_y() - b.deg_y() + 1), UniPoly(F));
  BiPoly r = a;
  while (!r.is_zero() && r.deg_y() >= b.deg_y()) {
    auto [qc, rem] = divmod(r.lc_y(), b.lc_y());
    if (!rem.is_zero()) return std::nullopt;
    const auto shift = static_cast<std::size_t>(r.deg_y() - b.deg_y());
    q[shift] = qc;
    std::vector<UniPoly> term(shift + 1, UniPoly(F));
    term[shift] = qc;
    r = r - BiPoly(F, std::move(term)) * b;
  }
  if (!r.is_zero()) return std::nullopt;
  return BiPoly(F, std::move(q));
}

/// lc(b)^(deg a - deg b + 1) * a mod b, in y.
inline BiPoly pseudo_remainder(BiPoly a, const BiPoly& b) {
  const FiniteField& F = a.field();
  const UniPoly& lb = b.lc_y();
  while (!a.is_zero() && a.deg_y() >= b.deg_y()) {
    const auto shift = static_cast<std::size_t>(a.deg_y() - b.deg_y());
    std::vector<UniPoly> term(shift + 1, UniPoly(F));
    term[shift] = a.lc_y();
    a = a.times_x(lb) - BiPoly(F, std::move(term)) * b;
  }
  return a;
}

/// Greatest common divisor via primitive pseudo-remainder sequences in y,
/// with the x-content handled by univariate gcds. Normalized to lead 1.
inline BiPoly gcd(const BiPoly& a, const BiPoly& b) {
  const FiniteField& F = a.field();
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  const UniPoly c = gcd(content_y(a), content_y(b));
  BiPoly u = primitive_part_y(a), v = primitive_part_y(b);
  if (u.deg_y() < v.deg_y()) std::swap(u, v);
  while (!v.is_zero() && v.deg_y() > 0) {
    BiPoly r = pseudo_remainder(u, v);
    u = std::move(v);
    v = r.is_zero() ? r : primitive_part_y(r);
  }
  // v == 0: u is the primitive gcd; deg_y v == 0: primitive parts are coprime.
  BiPoly g = v.is_zero() ? u : BiPoly::constant(F, 1);
  return g.times_x(c).normalized();
}

/// (p-th root) for a polynomial whose exponents are all divisible by p.
inline BiPoly pth_root(const BiPoly& f) {
  const FiniteField& F = f.field();
  const u64 p = F.characteristic();
  std::vector<UniPoly> v;
  for (std::size_t k = 0; k < f.coeffs().size(); k += p) {
    std::vector<FiniteField::Element> cx;
    const auto& c = f.coeffs()[k].coeffs();
    for (std::size_t i = 0; i < c.size(); i += p) cx.push_back(F.pth_root(c[i]));
    v.emplace_back(F, std::move(cx));
  }
  return BiPoly(F, std::move(v));
}

struct BiFactor {
  BiPoly poly;
  unsigned multiplicity;
};

struct BiFactorization {
  FiniteField::Element unit = 1;
  std::vector<BiFactor> factors;  // normalized (lead 1), canonical order
};

struct BiFactorOptions {
  std::uint64_t seed = 0;
  bool allow_extension = true;  // factor over F_{q^k} and descend when F has no good substitution
  std::size_t max_candidates = 256;
};

namespace detail {

inline bool squarefree_univariate(const UniPoly& h) {
  const UniPoly d = h.derivative();
  if (d.is_zero()) return h.degree() <= 0;
  return gcd(h, d).degree() == 0;
}

/// Linear Hensel lifting of monic coprime factors of target(0, y) to
/// target = prod G_i mod x^precision; target is monic in y as a series.
inline std::vector<BiPoly> hensel_lift(const BiPoly& target, const std::vector<UniPoly>& base, std::size_t precision) {
  const FiniteField& F = target.field();
  const std::size_t r = base.size();
  std::vector<UniPoly> s(r, UniPoly(F));
  for (std::size_t i = 0; i < r; ++i) {
    UniPoly others = UniPoly::constant(F, 1);
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others = others * base[j];
    auto [g, a, b] = ext_gcd(others, base[i]);
    s[i] = a % base[i];
  }
  std::vector<BiPoly> lifted;
  for (const auto& g : base) lifted.push_back(BiPoly::from_y(g));
  for (std::size_t k = 1; k < precision; ++k) {
    BiPoly prod = BiPoly::constant(F, 1);
    for (const auto& G : lifted) prod = (prod * G).truncated(k + 1);
    const UniPoly e = (target - prod).x_slice(k);
    if (e.is_zero()) continue;
    for (std::size_t i = 0; i < r; ++i) {
      const UniPoly delta = (e * s[i]) % base[i];
      if (delta.is_zero()) continue;
      // add x^k * delta(y)
      std::vector<UniPoly> add;
      for (auto c : delta.coeffs()) add.push_back(UniPoly::monomial(F, c, k));
      lifted[i] = lifted[i] + BiPoly(F, std::move(add));
    }
  }
  return lifted;
}

/// Inverse of u mod x^n (u(0) != 0), by Newton iteration.
inline UniPoly series_inverse(const UniPoly& u, std::size_t n) {
  const FiniteField& F = u.field();
  UniPoly inv = UniPoly::constant(F, F.inv(u[0]));
  std::size_t prec = 1;
  while (prec < n) {
    prec *= 2;
    const UniPoly two = UniPoly::constant(F, F.from_int(2));
    inv = (inv * (two - (u * inv).truncated(prec))).truncated(prec);
  }
  return inv.truncated(n);
}

/// Substitution value making f(x0, y) squarefree of full y-degree, if any
/// among the first `limit` field elements.
inline std::optional<FiniteField::Element> good_substitution(const BiPoly& f, std::size_t limit) {
  const FiniteField& F = f.field();
  const u64 count = std::min<u64>(F.order(), limit);
  for (u64 x0 = 0; x0 < count; ++x0) {
    if (f.lc_y().evaluate(x0) == 0) continue;
    if (squarefree_univariate(f.at_x(x0))) return x0;
  }
  return std::nullopt;
}

/// Zassenhaus-style recombination: true factors are the primitive parts of
/// lc * prod(subset) mod x^precision that divide exactly.
inline std::vector<BiPoly> recombine(BiPoly cur, std::vector<BiPoly> lifted, std::size_t precision) {
  std::vector<BiPoly> found;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool progressed = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    do {
      BiPoly cand = BiPoly::from_x(cur.lc_y());
      for (auto i : idx) cand = (cand * lifted[i]).truncated(precision);
      cand = primitive_part_y(cand);
      if (cand.deg_y() < 1) continue;
      if (auto q = divide_exact(cur, cand)) {
        found.push_back(cand);
        cur = *q;
        for (std::size_t i = s; i-- > 0;) lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[i]));
        progressed = true;
        break;
      }
    } while (detail::next_combination(idx, lifted.size()));
    if (!progressed) ++s;
  }
  found.push_back(cur);
  return found;
}

}  // namespace detail

BiFactorization factor_bivariate(const BiPoly& f, const BiFactorOptions& opts = {});

namespace detail {

/// Irreducible factors of a squarefree, y-primitive f with deg_y >= 1;
/// nullopt when no substitution value exists in f's field.
inline std::optional<std::vector<BiPoly>> factor_squarefree_here(const BiPoly& f, const BiFactorOptions& opts) {
  if (f.deg_y() == 1) return std::vector<BiPoly>{f.normalized()};
  const std::size_t bound = 2 * static_cast<std::size_t>(f.deg_y()) * static_cast<std::size_t>(std::max(f.deg_x(), 0)) + 1;
  const auto x0 = good_substitution(f, std::max(opts.max_candidates, bound + 1));
  if (!x0) return std::nullopt;
  const FiniteField& F = f.field();
  const BiPoly shifted = f.translate_x(*x0);
  const auto fac0 = factor_univariate(shifted.at_x(0), opts.seed);
  if (fac0.factors.size() == 1) return std::vector<BiPoly>{f.normalized()};
  std::vector<UniPoly> base;
  for (const auto& uf : fac0.factors) base.push_back(uf.poly);
  const std::size_t precision =
      static_cast<std::size_t>(shifted.deg_x()) + static_cast<std::size_t>(shifted.lc_y().degree()) + 1;
  const BiPoly monic_target = shifted.times_x(series_inverse(shifted.lc_y(), precision)).truncated(precision);
  auto lifted = hensel_lift(monic_target, base, precision);
  std::vector<BiPoly> out;
  for (const auto& g : recombine(shifted, std::move(lifted), precision)) out.push_back(g.translate_x(F.neg(*x0)).normalized());
  return out;
}

/// Tries the y-orientation, then x, then shears x -> x + c y.
inline std::optional<std::vector<BiPoly>> factor_squarefree_oriented(const BiPoly& f, const BiFactorOptions& opts) {
  if (auto here = factor_squarefree_here(f, opts)) return here;
  const FiniteField& F = f.field();
  {
    const BiPoly g = f.swapped();
    const UniPoly c = content_y(g);
    const BiPoly pp = primitive_part_y(g);
    std::optional<std::vector<BiPoly>> inner;
    if (pp.deg_y() < 1) {
      inner.emplace();
    } else {
      inner = factor_squarefree_here(pp, opts);
    }
    if (inner) {
      std::vector<BiPoly> out;
      if (c.degree() > 0) {
        for (const auto& uf : factor_univariate(c, opts.seed).factors) out.push_back(BiPoly::from_y(uf.poly));
      }
      for (const auto& h : *inner) out.push_back(h.swapped().normalized());
      return out;
    }
  }
  const u64 shears = std::min<u64>(F.order(), opts.max_candidates);
  for (u64 c = 1; c < shears; ++c) {
    const BiPoly g = f.sheared(c);
    const BiPoly pp = primitive_part_y(g);
    if (pp.deg_y() < 1) continue;
    if (auto sheared = factor_squarefree_here(pp, opts)) {
      std::vector<BiPoly> out;
      const UniPoly cont = content_y(g);
      if (cont.degree() > 0) {
        for (const auto& uf : factor_univariate(cont, opts.seed).factors) sheared->push_back(BiPoly::from_x(uf.poly));
      }
      for (const auto& h : *sheared) out.push_back(h.sheared(F.neg(c)).normalized());
      return out;
    }
  }
  return std::nullopt;
}

/// Factors over F_{q^k} grouped into Frobenius orbits; each orbit product is
/// defined over F_q.
inline std::vector<BiPoly> factor_squarefree_by_descent(const BiPoly& f, const BiFactorOptions& opts) {
  const FiniteField& F = f.field();
  const std::size_t bound = 2 * static_cast<std::size_t>(f.deg_y()) * static_cast<std::size_t>(std::max(f.deg_x(), 0)) + 2;
  unsigned k = 2;
  while (checked_pow(F.order(), k) != 0 && checked_pow(F.order(), k) <= bound) ++k;
  if (checked_pow(F.order(), k) == 0) fail(ErrorCode::SubstitutionExhausted, "no extension small enough for descent");
  const FiniteField L = extension_of(F, k);
  const auto& emb = Embedding::between(F, L);
  auto over_l = factor_squarefree_oriented(f.map_coeffs(emb), opts);
  if (!over_l) fail(ErrorCode::SubstitutionExhausted, "no substitution value in " + L.spec().describe());
  auto frob = [&](const BiPoly& g) {
    std::vector<UniPoly> v;
    for (const auto& c : g.coeffs()) {
      std::vector<FiniteField::Element> cx;
      for (auto e : c.coeffs()) cx.push_back(L.frobenius(e, F.degree()));
      v.emplace_back(L, std::move(cx));
    }
    return BiPoly(L, std::move(v));
  };
  std::vector<bool> used(over_l->size(), false);
  std::vector<BiPoly> out;
  for (std::size_t i = 0; i < over_l->size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    BiPoly prod = (*over_l)[i];
    BiPoly conj = frob((*over_l)[i]);
    while (!(conj == (*over_l)[i])) {
      for (std::size_t j = 0; j < over_l->size(); ++j) {
        if (!used[j] && (*over_l)[j] == conj) {
          used[j] = true;
          prod = prod * conj;
          break;
        }
      }
      conj = frob(conj);
    }
    std::vector<UniPoly> back;
    for (const auto& c : prod.coeffs()) {
      std::vector<FiniteField::Element> cx;
      for (auto e : c.coeffs()) {
        auto pre = emb.preimage(e);
        if (!pre) fail(ErrorCode::InvalidInput, "orbit product not defined over the base field");
        cx.push_back(*pre);
      }
      back.emplace_back(F, std::move(cx));
    }
    out.push_back(BiPoly(F, std::move(back)).normalized());
  }
  return out;
}

inline std::vector<BiPoly> factor_squarefree(const BiPoly& f, const BiFactorOptions& opts) {
  if (auto here = factor_squarefree_oriented(f, opts)) return *here;
  if (!opts.allow_extension) {
    fail(ErrorCode::SubstitutionExhausted, "no substitution value in " + f.field().spec().describe() + "; extend the field");
  }
  return factor_squarefree_by_descent(f, opts);
}

inline void add_factor(std::vector<BiFactor>& out, const BiPoly& g, unsigned mult) {
  for (auto& e : out) {
    if (e.poly == g) {
      e.multiplicity += mult;
      return;
    }
  }
  out.push_back({g, mult});
}

/// Factors of a y-primitive f with deg_y >= 1 (any multiplicities).
inline void factor_primitive(const BiPoly& f, const BiFactorOptions& opts, unsigned scale, std::vector<BiFactor>& out) {
  if (f.deg_y() < 1) return;
  const BiPoly g = gcd(gcd(f, f.derivative_x()), f.derivative_y());
  const BiPoly radical_part = *divide_exact(f, g);  // product of factors with multiplicity prime to p
  BiPoly rest = f;
  if (radical_part.deg_y() >= 1 || radical_part.deg_x() >= 1) {
    for (const auto& u : factor_squarefree(primitive_part_y(radical_part), opts)) {
      unsigned e = 0;
      while (auto q = divide_exact(rest, u)) {
        rest = *q;
        ++e;
      }
      add_factor(out, u, e * scale);
    }
  }
  if (rest.deg_y() >= 1 || rest.deg_x() >= 1) {
    const auto p = static_cast<unsigned>(f.field().characteristic());
    factor_primitive(primitive_part_y(pth_root(rest)), opts, scale * p, out);
  }
}

}  // namespace detail

/// Factorization over the coefficient field into normalized irreducible
/// factors with multiplicity; unit * prod factor^mult == f.
inline BiFactorization factor_bivariate(const BiPoly& f, const BiFactorOptions& opts) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  BiFactorization result;
  result.unit = f.lead();
  std::vector<BiFactor> factors;
  const UniPoly cont = content_y(f);
  if (cont.degree() > 0) {
    for (const auto& [u, mult] : factor_univariate(cont, opts.seed).factors) detail::add_factor(factors, BiPoly::from_x(u), mult);
  }
  detail::factor_primitive(primitive_part_y(f), opts, 1, factors);
  std::sort(factors.begin(), factors.end(), [](const BiFactor& a, const BiFactor& b) {
    if (a.poly == b.poly) return a.multiplicity < b.multiplicity;
    return canonical_less(a.poly, b.poly);
  });
  result.factors = std::move(factors);
  return result;
}

}  // namespace uplab
