#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "finite_field.hpp"
#include "prime.hpp"
#include "unipoly.hpp"

namespace uplab {

/// Field inclusion F_{p^a} -> F_{p^ab}. The generator t of the source maps to
/// the numerically smallest root of the source modulus in the target, so the
/// map is reproducible across runs.
class Embedding {
 public:
  using Element = FiniteField::Element;

  static const Embedding& between(const FiniteField& src, const FiniteField& dst) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<u64>, std::vector<u64>>, std::unique_ptr<Embedding>> cache;
    auto key = std::pair{spec_key(src.spec()), spec_key(dst.spec())};
    {
      std::lock_guard lock(mu);
      if (auto it = cache.find(key); it != cache.end()) return *it->second;
    }
    auto built = std::unique_ptr<Embedding>(new Embedding(src, dst));
    std::lock_guard lock(mu);
    auto [it, inserted] = cache.emplace(std::move(key), std::move(built));
    return *it->second;
  }

  const FiniteField& source() const { return src_; }
  const FiniteField& target() const { return dst_; }

  Element apply(Element a) const {
    if (src_.is_prime_field()) return a;
    const auto c = src_.coeffs(a);
    Element acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) acc = dst_.add(acc, dst_.mul(c[i], basis_[i]));
    }
    return acc;
  }

  UniPoly apply(const UniPoly& f) const {
    std::vector<Element> v(f.coeffs().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = apply(f.coeffs()[i]);
    return UniPoly(dst_, std::move(v));
  }

  /// Preimage of b if b lies in the image of the source field.
  std::optional<Element> preimage(Element b) const {
    const u64 p = src_.characteristic();
    const unsigned ms = src_.degree();
    const unsigned mt = dst_.degree();
    // Columns: coordinates of basis_[j] over F_p, then b. Solve by elimination mod p.
    std::vector<std::vector<u64>> rows(mt, std::vector<u64>(ms + 1, 0));
    for (unsigned j = 0; j < ms; ++j) {
      const auto c = dst_.coeffs(basis_[j]);
      for (unsigned i = 0; i < mt; ++i) rows[i][j] = c[i];
    }
    const auto cb = dst_.coeffs(b);
    for (unsigned i = 0; i < mt; ++i) rows[i][ms] = cb[i];
    unsigned r = 0;
    std::vector<unsigned> pivots;
    for (unsigned col = 0; col < ms && r < mt; ++col) {
      unsigned piv = r;
      while (piv < mt && rows[piv][col] == 0) ++piv;
      if (piv == mt) continue;
      std::swap(rows[piv], rows[r]);
      const u64 inv = powmod(rows[r][col], p - 2, p);
      for (auto& v : rows[r]) v = mulmod(v, inv, p);
      for (unsigned i = 0; i < mt; ++i) {
        if (i == r || rows[i][col] == 0) continue;
        const u64 factor = rows[i][col];
        for (unsigned k = 0; k <= ms; ++k) rows[i][k] = (rows[i][k] + p - mulmod(factor, rows[r][k], p)) % p;
      }
      pivots.push_back(col);
      ++r;
    }
    for (unsigned i = r; i < mt; ++i) {
      if (rows[i][ms] != 0) return std::nullopt;
    }
    std::vector<u64> coeffs(ms, 0);
    for (unsigned i = 0; i < r; ++i) coeffs[pivots[i]] = rows[i][ms];
    return src_.from_coeffs(coeffs);
  }

 private:
  Embedding(const FiniteField& src, const FiniteField& dst) : src_(src), dst_(dst) {
    if (src.characteristic() != dst.characteristic() || dst.degree() % src.degree() != 0) {
      fail(ErrorCode::NoEmbedding, src.spec().describe() + " does not embed in " + dst.spec().describe());
    }
    const unsigned ms = src.degree();
    Element gen = 0;
    if (src == dst) {
      gen = ms == 1 ? 0 : src.characteristic();  // encoding of t
    } else if (ms > 1) {
      std::vector<Element> mod(src.spec().modulus.begin(), src.spec().modulus.end());
      const auto roots = roots_in_field(UniPoly(dst, std::move(mod)));
      if (roots.empty()) fail(ErrorCode::NoEmbedding, "modulus has no root in target");
      gen = roots.front();
    }
    basis_.resize(ms);
    Element power = 1;
    for (unsigned i = 0; i < ms; ++i) {
      basis_[i] = power;
      power = dst.mul(power, gen);
    }
  }

  static std::vector<u64> spec_key(const FieldSpec& s) {
    std::vector<u64> k{s.p, s.m};
    k.insert(k.end(), s.modulus.begin(), s.modulus.end());
    return k;
  }

  FiniteField src_;
  FiniteField dst_;
  std::vector<Element> basis_;  // images of 1, t, ..., t^(m-1)
};

inline FieldElement embed(const FieldElement& x, const FiniteField& target) {
  return FieldElement(target, Embedding::between(x.field(), target).apply(x.value()));
}

inline FieldElement embed(const FieldElement& x, const FieldSpec& target) { return embed(x, FiniteField(target)); }

inline UniPoly embed(const UniPoly& f, const FiniteField& target) {
  if (f.field() == target) return f;
  return Embedding::between(f.field(), target).apply(f);
}

/// F_{p^(m*k)} for a base field F_{p^m}.
inline FiniteField extension_of(const FiniteField& base, unsigned k) {
  if (k == 1) return base;
  return FiniteField(make_extension(base.characteristic(), base.degree() * k));
}

struct Root {
  FieldElement value;
  unsigned multiplicity;
  unsigned ext_degree;  // degree over the polynomial's field of the smallest field holding the root
};

/// All roots of f in F_{q^d}, d <= max_ext. Each root is reported in the
/// smallest such field; ordering is (ext_degree, value).
inline std::vector<Root> roots_in_extension(const UniPoly& f, unsigned max_ext, std::uint64_t seed = 0) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "the zero polynomial has no finite root set");
  std::vector<Root> out;
  const auto fac = factor_univariate(f, seed);
  for (const auto& [g, mult] : fac.factors) {
    const auto d = static_cast<unsigned>(g.degree());
    if (d > max_ext) continue;
    const FiniteField ext = extension_of(f.field(), d);
    for (auto r : roots_in_field(embed(g, ext), seed)) out.push_back({FieldElement(ext, r), mult, d});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.ext_degree != b.ext_degree) return a.ext_degree < b.ext_degree;
    return a.value.value() < b.value.value();
  });
  return out;
}

}  // namespace uplab
