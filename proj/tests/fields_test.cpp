#include <gtest/gtest.h>

#include <set>

#include "uplab/embedding.hpp"
#include "uplab/finite_field.hpp"
#include "uplab/unipoly.hpp"

using namespace uplab;

namespace {

// Exhaustive oracle: a monic f of degree d is irreducible iff no monic
// polynomial of degree 1..d/2 divides it.
bool irreducible_by_trial_division(const UniPoly& f) {
  const FiniteField& F = f.field();
  const int d = f.degree();
  if (d < 1) return false;
  for (int e = 1; e <= d / 2; ++e) {
    const u64 count = checked_pow(F.order(), static_cast<u64>(e));
    for (u64 idx = 0; idx < count; ++idx) {
      std::vector<u64> c(static_cast<std::size_t>(e) + 1, 0);
      u64 rest = idx;
      for (int i = 0; i < e; ++i) {
        c[static_cast<std::size_t>(i)] = rest % F.order();
        rest /= F.order();
      }
      c[static_cast<std::size_t>(e)] = 1;
      if ((f % UniPoly(F, c)).is_zero()) return false;
    }
  }
  return true;
}

UniPoly random_poly(const FiniteField& F, int degree, Rng& rng) {
  std::vector<u64> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = F.random(rng);
  c.back() = F.random_nonzero(rng);
  return UniPoly(F, c);
}

int mobius(int n) {
  int result = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

TEST(MakeExtension, PrimeFieldModulusIsT) {
  const FieldSpec s = make_extension(2, 1);
  EXPECT_EQ(s.modulus, (std::vector<u64>{0, 1}));
}

TEST(MakeExtension, OnlyIrreducibleQuadraticOverF2) {
  // Exhaustive check of the 4 monic quadratics over F_2.
  std::vector<std::vector<u64>> irreducible;
  for (u64 c0 = 0; c0 < 2; ++c0)
    for (u64 c1 = 0; c1 < 2; ++c1) {
      bool has_root = false;
      for (u64 t = 0; t < 2; ++t) has_root |= ((c0 + c1 * t + t * t) % 2) == 0;
      if (!has_root) irreducible.push_back({c0, c1, 1});
    }
  ASSERT_EQ(irreducible.size(), 1u);
  EXPECT_EQ(make_extension(2, 2).modulus, irreducible.front());
}

TEST(MakeExtension, QuadraticOverF5HasNoRoot) {
  const auto mod = make_extension(5, 2).modulus;
  ASSERT_EQ(mod.size(), 3u);
  EXPECT_EQ(mod[2], 1u);
  for (u64 t = 0; t < 5; ++t) EXPECT_NE((mod[0] + mod[1] * t + t * t) % 5, 0u);
}

TEST(MakeExtension, IsLexSmallest) {
  // Every lex-smaller monic cubic over F_3 is reducible.
  const auto mod = make_extension(3, 3).modulus;
  const FiniteField F3 = FiniteField::of(3);
  for (u64 c0 = 0; c0 < 3; ++c0)
    for (u64 c1 = 0; c1 < 3; ++c1)
      for (u64 c2 = 0; c2 < 3; ++c2) {
        const std::vector<u64> cand{c0, c1, c2, 1};
        if (cand == mod) return;
        EXPECT_FALSE(irreducible_by_trial_division(UniPoly(F3, cand)));
      }
  FAIL() << "canonical modulus not found in enumeration";
}

TEST(MakeExtension, Errors) {
  try {
    make_extension(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CompositeCharacteristic);
  }
  try {
    make_extension(5, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeZero);
  }
  EXPECT_THROW(finite_spec(2, 2, {1, 0, 1}), Error);  // t^2+1 = (t+1)^2
}

TEST(FieldAxioms, RandomTriples) {
  const std::vector<FieldSpec> specs{make_extension(2, 1),  make_extension(7, 1),  make_extension(2, 2),
                                     make_extension(5, 2),  make_extension(2, 12), make_extension(3, 5),
                                     make_extension(101, 3), make_extension(2, 30), make_extension(101, 5),
                                     make_extension(1000003, 1)};
  Rng rng(42);
  for (const auto& spec : specs) {
    const FiniteField F(spec);
    for (int i = 0; i < 1000; ++i) {
      const auto a = F.random(rng), b = F.random(rng), c = F.random(rng);
      ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c))) << spec.describe();
      ASSERT_EQ(F.add(F.add(a, b), c), F.add(a, F.add(b, c))) << spec.describe();
      ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c))) << spec.describe();
      ASSERT_EQ(F.add(a, F.neg(a)), 0u);
      ASSERT_EQ(F.sub(F.add(a, b), b), a);
      if (a != 0) {
        ASSERT_EQ(F.mul(a, F.inv(a)), 1u) << spec.describe();
      }
    }
  }
}

TEST(FieldAxioms, TableAndPolyModesAgree) {
  // F_{2^12} uses tables; recompute products by schoolbook over F_2 bits.
  const FiniteField F = FiniteField::of(2, 12);
  const auto mod = F.spec().modulus;
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const u64 a = F.random(rng), b = F.random(rng);
    unsigned __int128 prod = 0;
    for (int k = 0; k < 12; ++k)
      if ((b >> k) & 1) prod ^= static_cast<unsigned __int128>(a) << k;
    for (int k = 22; k >= 12; --k) {
      if ((prod >> k) & 1) {
        for (int j = 0; j <= 12; ++j)
          if (mod[static_cast<std::size_t>(j)]) prod ^= static_cast<unsigned __int128>(1) << (k - 12 + j);
      }
    }
    ASSERT_EQ(F.mul(a, b), static_cast<u64>(prod));
  }
}

TEST(Frobenius, PrimeFieldFixed) {
  const FiniteField F = FiniteField::of(2);
  for (u64 x = 0; x < 2; ++x) EXPECT_EQ(F.frobenius(x, 1), x);
}

TEST(Frobenius, F16HasFourFixedPointsOfFourthPower) {
  const FiniteField F = FiniteField::of(2, 4);
  int fixed = 0;
  for (u64 x = 0; x < 16; ++x) fixed += F.frobenius(x, 2) == x;
  EXPECT_EQ(fixed, 4);
}

TEST(Frobenius, FullPowerIsIdentityAndHomomorphism) {
  for (const auto& F : {FiniteField::of(3, 4), FiniteField::of(2, 6), FiniteField::of(101, 5)}) {
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
      const auto x = F.random(rng), y = F.random(rng);
      ASSERT_EQ(F.frobenius(x, F.degree()), x);
      ASSERT_EQ(F.frobenius(F.add(x, y), 1), F.add(F.frobenius(x, 1), F.frobenius(y, 1)));
      ASSERT_EQ(F.frobenius(F.mul(x, y), 1), F.mul(F.frobenius(x, 1), F.frobenius(y, 1)));
      ASSERT_EQ(F.pth_root(F.frobenius(x, 1)), x);
    }
  }
  const FieldElement a(FiniteField::of(2), 1);
  EXPECT_THROW(FieldElement(FiniteField::of(3), 1) + a, Error);
}

TEST(Embed, ConstantsAreCoefficientwise) {
  const FieldElement three(FiniteField::of(5), 3);
  const FieldElement image = embed(three, FiniteField::of(5, 2));
  EXPECT_EQ(image.value(), 3u);
}

TEST(Embed, GeneratorSatisfiesSourceModulus) {
  const FiniteField F4 = FiniteField::of(2, 2), F16 = FiniteField::of(2, 4);
  const FieldElement g(F4, 2);  // encoding of t
  const FieldElement img = embed(g, F16);
  const auto& mod = F4.spec().modulus;
  u64 acc = 0;
  for (std::size_t i = mod.size(); i-- > 0;) acc = F16.add(F16.mul(acc, img.value()), mod[i]);
  EXPECT_EQ(acc, 0u);
  EXPECT_EQ(frobenius(img, 2), img);
}

TEST(Embed, IsRingHomomorphismWithPreimage) {
  const FiniteField src = FiniteField::of(3, 2), dst = FiniteField::of(3, 6);
  const auto& emb = Embedding::between(src, dst);
  for (u64 a = 0; a < 9; ++a)
    for (u64 b = 0; b < 9; ++b) {
      ASSERT_EQ(emb.apply(src.add(a, b)), dst.add(emb.apply(a), emb.apply(b)));
      ASSERT_EQ(emb.apply(src.mul(a, b)), dst.mul(emb.apply(a), emb.apply(b)));
    }
  for (u64 a = 0; a < 9; ++a) EXPECT_EQ(emb.preimage(emb.apply(a)), a);
  int outside = 0;
  for (u64 b = 0; b < dst.order(); ++b) outside += !emb.preimage(b).has_value();
  EXPECT_EQ(outside, 729 - 9);
  EXPECT_THROW(Embedding::between(FiniteField::of(2, 2), FiniteField::of(2, 3)), Error);
  EXPECT_THROW(Embedding::between(FiniteField::of(2, 2), FiniteField::of(3, 2)), Error);
}

TEST(FactorUnivariate, TqMinusTOverF4SplitsIntoAllLinears) {
  const FiniteField F = FiniteField::of(2, 2);
  const UniPoly f = UniPoly::monomial(F, 1, 4) - UniPoly::x(F);
  const auto fac = factor_univariate(f, 1);
  ASSERT_EQ(fac.factors.size(), 4u);
  std::set<u64> roots;
  for (const auto& [g, mult] : fac.factors) {
    EXPECT_EQ(g.degree(), 1);
    EXPECT_EQ(mult, 1u);
    roots.insert(F.neg(g[0]));
  }
  EXPECT_EQ(roots, (std::set<u64>{0, 1, 2, 3}));
}

TEST(FactorUnivariate, FrobeniusSquare) {
  const FiniteField F = FiniteField::of(2);
  const auto fac = factor_univariate(UniPoly(F, {1, 0, 1}));
  ASSERT_EQ(fac.factors.size(), 1u);
  EXPECT_EQ(fac.factors[0].poly, UniPoly(F, {1, 1}));
  EXPECT_EQ(fac.factors[0].multiplicity, 2u);
}

TEST(FactorUnivariate, PthPowerInputs) {
  // (t^3 + 2t + 1)^3 * (t+1)^4 over F_3 exercises the f' = 0 branch.
  const FiniteField F = FiniteField::of(3);
  const UniPoly a(F, {1, 2, 0, 1}), b(F, {1, 1});
  const UniPoly f = a * a * a * b * b * b * b;
  const auto fac = factor_univariate(f);
  ASSERT_EQ(fac.factors.size(), 2u);
  EXPECT_EQ(fac.factors[0].poly, b);
  EXPECT_EQ(fac.factors[0].multiplicity, 4u);
  EXPECT_EQ(fac.factors[1].multiplicity, 3u);
  EXPECT_THROW(factor_univariate(UniPoly(F)), Error);
}

TEST(FactorUnivariate, RandomDegreeEightMultipliesBack) {
  const FiniteField F = FiniteField::of(3);
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const UniPoly f = random_poly(F, 8, rng);
    const auto fac = factor_univariate(f, static_cast<u64>(trial));
    UniPoly prod = UniPoly::constant(F, fac.unit);
    for (const auto& [g, mult] : fac.factors) {
      EXPECT_TRUE(irreducible_by_trial_division(g));
      EXPECT_EQ(g.lead(), 1u);
      for (unsigned i = 0; i < mult; ++i) prod = prod * g;
    }
    ASSERT_EQ(prod, f);
    for (std::size_t i = 1; i < fac.factors.size(); ++i) EXPECT_FALSE(fac.factors[i].poly == fac.factors[i - 1].poly);
  }
}

TEST(FactorUnivariate, RoundTripOnProductsOfIrreducibles) {
  for (const auto& F : {FiniteField::of(2, 3), FiniteField::of(5), FiniteField::of(101, 2), FiniteField::of(2, 30)}) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<UniFactor> expected;
      UniPoly prod = UniPoly::constant(F, 1);
      const int nfac = 1 + static_cast<int>(rng.below(4));
      for (int k = 0; k < nfac; ++k) {
        UniPoly g(F);
        do {
          g = random_poly(F, 1 + static_cast<int>(rng.below(4)), rng).monic();
        } while (!is_irreducible(g));
        const auto mult = static_cast<unsigned>(1 + rng.below(3));
        bool merged = false;
        for (auto& e : expected)
          if (e.poly == g) {
            e.multiplicity += mult;
            merged = true;
          }
        if (!merged) expected.push_back({g, mult});
        for (unsigned i = 0; i < mult; ++i) prod = prod * g;
      }
      detail::sort_factors(expected);
      const auto fac = factor_univariate(prod, 11);
      ASSERT_EQ(fac.factors.size(), expected.size()) << F.spec().describe();
      for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(fac.factors[i].poly, expected[i].poly);
        EXPECT_EQ(fac.factors[i].multiplicity, expected[i].multiplicity);
      }
    }
  }
}

TEST(FactorUnivariate, DeterministicGivenSeed) {
  const FiniteField F = FiniteField::of(7, 2);
  Rng rng(1);
  const UniPoly f = random_poly(F, 12, rng);
  const auto a = factor_univariate(f, 5), b = factor_univariate(f, 5), c = factor_univariate(f, 6);
  ASSERT_EQ(a.factors.size(), b.factors.size());
  ASSERT_EQ(a.factors.size(), c.factors.size());
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    EXPECT_EQ(a.factors[i].poly, b.factors[i].poly);
    EXPECT_EQ(a.factors[i].poly, c.factors[i].poly);
  }
}

TEST(Irreducibles, NecklaceCountMatchesExhaustiveFiltering) {
  for (const auto& F : {FiniteField::of(2), FiniteField::of(3), FiniteField::of(2, 2)}) {
    const u64 q = F.order();
    for (int d = 1; d <= 4; ++d) {
      long long necklace = 0;
      for (int e = 1; e <= d; ++e)
        if (d % e == 0) necklace += mobius(e) * static_cast<long long>(checked_pow(q, static_cast<u64>(d / e)));
      necklace /= d;
      long long exhaustive = 0, ben_or = 0;
      const u64 count = checked_pow(q, static_cast<u64>(d));
      for (u64 idx = 0; idx < count; ++idx) {
        std::vector<u64> c(static_cast<std::size_t>(d) + 1, 0);
        u64 rest = idx;
        for (int i = 0; i < d; ++i) {
          c[static_cast<std::size_t>(i)] = rest % q;
          rest /= q;
        }
        c.back() = 1;
        const UniPoly f(F, c);
        exhaustive += irreducible_by_trial_division(f);
        ben_or += is_irreducible(f);
      }
      EXPECT_EQ(exhaustive, necklace) << F.spec().describe() << " d=" << d;
      EXPECT_EQ(ben_or, necklace) << F.spec().describe() << " d=" << d;
    }
  }
}

TEST(RootsInExtension, SplitQuadratic) {
  const FiniteField F = FiniteField::of(5);
  const auto roots = roots_in_extension(UniPoly(F, {4, 0, 1}), 1);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0].value.value(), 1u);
  EXPECT_EQ(roots[1].value.value(), 4u);
  EXPECT_EQ(roots[0].ext_degree, 1u);
}

TEST(RootsInExtension, IrreducibleQuadraticNeedsDegreeTwo) {
  const FiniteField F = FiniteField::of(5);
  const UniPoly f(F, make_extension(5, 2).modulus);
  EXPECT_TRUE(roots_in_extension(f, 1).empty());
  const auto roots = roots_in_extension(f, 2);
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& r : roots) {
    EXPECT_EQ(r.ext_degree, 2u);
    EXPECT_EQ(r.value.field().order(), 25u);
    EXPECT_EQ(embed(f, r.value.field()).evaluate(r.value.value()), 0u);
  }
}

TEST(RootsInExtension, AllOfF16FromF4) {
  const FiniteField F4 = FiniteField::of(2, 2), F16 = FiniteField::of(2, 4);
  const UniPoly f = UniPoly::monomial(F4, 1, 16) - UniPoly::x(F4);
  const auto roots = roots_in_extension(f, 2);
  unsigned total = 0;
  std::set<u64> images;
  for (const auto& r : roots) {
    total += r.multiplicity;
    images.insert(embed(r.value, F16).value());
  }
  EXPECT_EQ(total, 16u);
  EXPECT_EQ(images.size(), 16u);
  // Exhaustive evaluation oracle over F_16.
  const UniPoly f16 = embed(f, F16);
  int vanishing = 0;
  for (u64 t = 0; t < 16; ++t) vanishing += f16.evaluate(t) == 0;
  EXPECT_EQ(vanishing, 16);
}

TEST(RootsInExtension, MultiplicityBound) {
  const FiniteField F = FiniteField::of(3);
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const UniPoly f = random_poly(F, 7, rng);
    unsigned total = 0, total_all = 0;
    for (const auto& r : roots_in_extension(f, 2)) total += r.multiplicity;
    for (const auto& r : roots_in_extension(f, 7)) total_all += r.multiplicity;
    EXPECT_LE(total, 7u);
    EXPECT_EQ(total_all, 7u);
  }
}
