#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "field_spec.hpp"
#include "prime.hpp"
#include "rng.hpp"

namespace uplab {

/// Arithmetic context for F_{p^m}. Elements are plain integers encoding the
/// coefficient vector in base p (value = sum c_i p^i), so zero is 0, one is 1,
/// and 0..q-1 enumerates the field. Contexts are cheap to copy and shared
/// between equal specs.
class FiniteField {
 public:
  using Element = u64;

  /// Fields up to this size get log / Zech tables.
  static constexpr u64 kTableLimit = u64{1} << 20;

  explicit FiniteField(const FieldSpec& spec) : impl_(lookup(spec)) {}

  static FiniteField of(u64 p, unsigned m = 1) { return FiniteField(make_extension(p, m)); }

  const FieldSpec& spec() const { return impl_->spec; }
  u64 characteristic() const { return impl_->p; }
  unsigned degree() const { return impl_->m; }
  u64 order() const { return impl_->q; }
  bool is_prime_field() const { return impl_->m == 1; }

  bool operator==(const FiniteField& o) const { return impl_ == o.impl_ || impl_->spec == o.impl_->spec; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(Element a) const { return a == 0; }

  Element from_int(long long v) const {
    const auto p = static_cast<long long>(impl_->p);
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<Element>(r);
  }

  Element from_coeffs(std::span<const u64> c) const {
    if (c.size() > impl_->m) fail(ErrorCode::InvalidInput, "too many coefficients for " + spec().describe());
    Element v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= impl_->p) fail(ErrorCode::InvalidInput, "coefficient out of range for " + spec().describe());
      v = v * impl_->p + c[i];
    }
    return v;
  }

  std::vector<u64> coeffs(Element a) const {
    std::vector<u64> c(impl_->m, 0);
    for (unsigned i = 0; i < impl_->m; ++i) {
      c[i] = a % impl_->p;
      a /= impl_->p;
    }
    return c;
  }

  Element add(Element a, Element b) const {
    const Impl& f = *impl_;
    switch (f.mode) {
      case Mode::prime: {
        const u64 s = a + b;
        return s >= f.p ? s - f.p : s;
      }
      case Mode::table:
        if (f.p == 2) return a ^ b;
        if (a == 0) return b;
        if (b == 0) return a;
        {
          const u64 la = f.log[a];
          const u64 lb = f.log[b];
          const u64 k = lb >= la ? lb - la : lb + (f.q - 1) - la;
          const std::uint32_t z = f.zech[k];
          if (z == kNoZech) return 0;
          return f.exp[la + z];
        }
      case Mode::poly:
        return f.poly_add(a, b);
    }
    return 0;
  }

  Element neg(Element a) const {
    const Impl& f = *impl_;
    if (a == 0 || f.p == 2) return a;
    switch (f.mode) {
      case Mode::prime: return f.p - a;
      case Mode::table: return f.exp[f.log[a] + (f.q - 1) / 2];
      case Mode::poly: return f.poly_neg(a);
    }
    return 0;
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    const Impl& f = *impl_;
    if (a == 0 || b == 0) return 0;
    switch (f.mode) {
      case Mode::prime: return mulmod(a, b, f.p);
      case Mode::table: return f.exp[f.log[a] + f.log[b]];
      case Mode::poly: return f.poly_mul(a, b);
    }
    return 0;
  }

  Element pow(Element a, u64 e) const {
    const Impl& f = *impl_;
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (f.mode == Mode::table) {
      const u64 order = f.q - 1;
      const u64 r = mulmod(f.log[a], e % order, order);
      return f.exp[r];
    }
    if (f.mode == Mode::prime) return powmod(a, e, f.p);
    Element result = 1;
    while (e) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

  Element inv(Element a) const {
    if (a == 0) fail(ErrorCode::InvalidInput, "division by zero in " + spec().describe());
    const Impl& f = *impl_;
    if (f.mode == Mode::table) return f.exp[(f.q - 1) - f.log[a]];
    return pow(a, f.q - 2);
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// x -> x^(p^e).
  Element frobenius(Element a, u64 e) const {
    e %= impl_->m;
    if (e == 0) return a;
    return pow(a, checked_pow(impl_->p, e));
  }

  /// Inverse of x -> x^p.
  Element pth_root(Element a) const { return frobenius(a, impl_->m - 1); }

  Element random(Rng& rng) const { return rng.below(impl_->q); }

  Element random_nonzero(Rng& rng) const { return 1 + rng.below(impl_->q - 1); }

 private:
  enum class Mode { prime, table, poly };
  static constexpr std::uint32_t kNoZech = 0xffffffffU;

  struct Impl {
    FieldSpec spec;
    u64 p = 0;
    unsigned m = 0;
    u64 q = 0;
    Mode mode = Mode::prime;
    u64 modulus_bits = 0;  // p == 2: modulus as a bit mask
    std::vector<std::uint32_t> exp;  // length 2(q-1)
    std::vector<std::uint32_t> log;
    std::vector<std::uint32_t> zech;  // zech[k] = log(1 + g^k)

    using Digits = std::array<u64, 64>;

    void decode(u64 a, Digits& d) const {
      for (unsigned i = 0; i < m; ++i) {
        d[i] = a % p;
        a /= p;
      }
    }

    u64 encode(const Digits& d) const {
      u64 v = 0;
      for (unsigned i = m; i-- > 0;) v = v * p + d[i];
      return v;
    }

    u64 poly_add(u64 a, u64 b) const {
      if (p == 2) return a ^ b;
      Digits da, db;
      decode(a, da);
      decode(b, db);
      for (unsigned i = 0; i < m; ++i) {
        const u64 s = da[i] + db[i];
        da[i] = s >= p ? s - p : s;
      }
      return encode(da);
    }

    u64 poly_neg(u64 a) const {
      Digits d;
      decode(a, d);
      for (unsigned i = 0; i < m; ++i) d[i] = d[i] ? p - d[i] : 0;
      return encode(d);
    }

    u64 poly_mul(u64 a, u64 b) const {
      if (p == 2) {
        u128 prod = 0;
        for (unsigned i = 0; i < m; ++i) {
          if ((b >> i) & 1) prod ^= static_cast<u128>(a) << i;
        }
        for (int i = 2 * static_cast<int>(m) - 2; i >= static_cast<int>(m); --i) {
          if ((prod >> i) & 1) prod ^= static_cast<u128>(modulus_bits) << (i - m);
        }
        return static_cast<u64>(prod);
      }
      Digits da, db;
      decode(a, da);
      decode(b, db);
      std::array<u64, 128> prod{};
      for (unsigned i = 0; i < m; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < m; ++j) {
          prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p)) % p;
        }
      }
      for (int i = 2 * static_cast<int>(m) - 2; i >= static_cast<int>(m); --i) {
        const u64 c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        // t^m = -(c0 + ... + c_{m-1} t^{m-1})
        for (unsigned k = 0; k < m; ++k) {
          const u64 t = mulmod(c, spec.modulus[k], p);
          const std::size_t idx = i - m + k;
          prod[idx] = (prod[idx] + p - t) % p;
        }
      }
      Digits out;
      for (unsigned i = 0; i < m; ++i) out[i] = prod[i];
      return encode(out);
    }

    u64 poly_pow(u64 a, u64 e) const {
      u64 r = 1;
      while (e) {
        if (e & 1) r = poly_mul(r, a);
        a = poly_mul(a, a);
        e >>= 1;
      }
      return r;
    }

    void build_tables() {
      const u64 order = q - 1;
      const auto divisors = prime_divisors(order);
      u64 g = 2;
      for (;; ++g) {
        bool primitive = true;
        for (u64 r : divisors) {
          if (poly_pow(g, order / r) == 1) {
            primitive = false;
            break;
          }
        }
        if (primitive) break;
      }
      exp.assign(2 * order, 0);
      log.assign(q, 0);
      u64 x = 1;
      for (u64 i = 0; i < order; ++i) {
        exp[i] = static_cast<std::uint32_t>(x);
        exp[i + order] = static_cast<std::uint32_t>(x);
        log[x] = static_cast<std::uint32_t>(i);
        x = poly_mul(x, g);
      }
      zech.assign(order, kNoZech);
      for (u64 k = 0; k < order; ++k) {
        const u64 s = poly_add(1, exp[k]);
        if (s != 0) zech[k] = log[s];
      }
    }
  };

  static std::shared_ptr<const Impl> lookup(const FieldSpec& spec) {
    if (!spec.is_finite()) fail(ErrorCode::RationalField, "finite field required");
    static std::mutex mu;
    static std::map<std::vector<u64>, std::shared_ptr<const Impl>> cache;
    std::vector<u64> key{spec.p, spec.m};
    key.insert(key.end(), spec.modulus.begin(), spec.modulus.end());
    {
      std::lock_guard lock(mu);
      if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto impl = std::make_shared<Impl>();
    impl->spec = spec;
    impl->p = spec.p;
    impl->m = spec.m;
    impl->q = checked_pow(spec.p, spec.m);
    if (impl->q == 0) fail(ErrorCode::FieldTooLarge, "p^m must stay below 2^63");
    if (spec.p == 2) {
      for (unsigned i = 0; i <= spec.m; ++i) impl->modulus_bits |= spec.modulus[i] << i;
    }
    if (spec.m == 1) {
      impl->mode = Mode::prime;
    } else if (impl->q <= kTableLimit) {
      impl->mode = Mode::table;
      impl->build_tables();
    } else {
      impl->mode = Mode::poly;
    }
    std::lock_guard lock(mu);
    auto [it, inserted] = cache.emplace(std::move(key), std::move(impl));
    return it->second;
  }

  std::shared_ptr<const Impl> impl_;
};

/// An element bound to its field; arithmetic between different fields throws.
class FieldElement {
 public:
  FieldElement(FiniteField field, FiniteField::Element value) : field_(std::move(field)), value_(value) {}

  const FiniteField& field() const { return field_; }
  FiniteField::Element value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return {a.field_, a.field_.add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return {a.field_, a.field_.sub(a.value_, b.value_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return {a.field_, a.field_.mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return {a.field_, a.field_.div(a.value_, b.value_)};
  }
  FieldElement operator-() const { return {field_, field_.neg(value_)}; }
  FieldElement inverse() const { return {field_, field_.inv(value_)}; }
  FieldElement pow(u64 e) const { return {field_, field_.pow(value_, e)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_ && a.field_ == b.field_;
  }

 private:
  void check(const FieldElement& o) const {
    if (!(field_ == o.field_)) {
      fail(ErrorCode::FieldMismatch, field_.spec().describe() + " vs " + o.field_.spec().describe());
    }
  }

  FiniteField field_;
  FiniteField::Element value_;
};

/// x^(p^e) for a bound element.
inline FieldElement frobenius(const FieldElement& x, u64 e) {
  return FieldElement(x.field(), x.field().frobenius(x.value(), e));
}

}  // namespace uplab
