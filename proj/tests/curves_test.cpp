#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uplab/curves.hpp"
#include "uplab/rathmann.hpp"
#include "uplab/upp.hpp"

using namespace uplab;

namespace {

using Config = PointConfiguration<FiniteField>;

TernaryForm form(const FiniteField& F, unsigned d, std::initializer_list<std::pair<Exponent, long long>> terms) {
  std::vector<std::pair<Exponent, Fq>> t;
  for (const auto& [e, c] : terms) t.push_back({e, F.from_int(c)});
  return TernaryForm::from_terms(F, d, t);
}

// Every form of the given degree with first nonzero coefficient 1.
std::vector<TernaryForm> all_forms(const FiniteField& F, unsigned d) {
  std::vector<TernaryForm> out;
  std::vector<Fq> c(monomial_count(d), 0);
  while (true) {
    std::size_t j = 0;
    while (j < c.size() && c[j] == F.order() - 1) c[j++] = 0;
    if (j == c.size()) break;
    ++c[j];
    const auto first = std::find_if(c.begin(), c.end(), [](Fq v) { return v != 0; });
    if (*first == 1) out.emplace_back(F, d, c);
  }
  return out;
}

}  // namespace

TEST(TernaryForm, NormalizationDivisionAndCharts) {
  const FiniteField F = FiniteField::of(7);
  const auto a = form(F, 1, {{{1, 0, 0}, 3}, {{0, 1, 0}, 1}});
  EXPECT_EQ(a.coeff({1, 0, 0}), 1u);
  const auto b = form(F, 2, {{{0, 2, 0}, 1}, {{1, 0, 1}, 2}, {{0, 0, 2}, 5}});
  const auto ab = multiply(a, b);
  EXPECT_EQ(*divide_forms(ab, a), b);
  EXPECT_EQ(*divide_forms(ab, b), a);
  EXPECT_FALSE(divide_forms(b, a));
  for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(homogenize(dehomogenize(b, v), 2, v), b);
  const Coords p{1, 1, 1};
  const Fq scale = F.div(ab.evaluate(p), F.mul(a.evaluate(p), b.evaluate(p)));
  const Coords r{5, 1, 6};
  EXPECT_EQ(ab.evaluate(r), F.mul(scale, F.mul(a.evaluate(r), b.evaluate(r))));
}

TEST(FormGcd, CommonFactors) {
  const FiniteField F = FiniteField::of(11);
  const auto x = form(F, 1, {{{1, 0, 0}, 1}});
  const auto l1 = form(F, 1, {{{0, 1, 0}, 1}, {{0, 0, 1}, 2}});
  const auto l2 = form(F, 1, {{{1, 0, 0}, 1}, {{0, 1, 0}, 3}, {{0, 0, 1}, 1}});
  EXPECT_EQ(form_gcd(multiply(x, l1), multiply(x, l2)), x);
  const auto z = form(F, 1, {{{0, 0, 1}, 1}});
  EXPECT_EQ(form_gcd(multiply(z, multiply(z, l1)), multiply(z, l2)), z);
  EXPECT_EQ(form_gcd(l1, l2).degree(), 0u);
}

TEST(MinimalDegree, Examples) {
  const FiniteField F = FiniteField::of(101);
  EXPECT_EQ(minimal_degree(Config(F, {{1, 2, 3}})), 1u);
  EXPECT_EQ(minimal_degree(Config(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 2u);
  EXPECT_EQ(minimal_degree(rathmann_section_direct(2, 1, 3, 0).config), 2u);
  EXPECT_EQ(minimal_degree(rathmann_section_direct(3, 1, 3, 0).config), 3u);
  EXPECT_EQ(minimal_degree(rathmann_section_direct(2, 2, 3, 0).config), 4u);
  EXPECT_THROW(minimal_degree(Config(F, {})), Error);
}

TEST(LinearSystem, Examples) {
  const FiniteField F = FiniteField::of(101);
  const Config two(F, {{1, 0, 0}, {0, 1, 0}});
  const auto line = linear_system(two, 1);
  ASSERT_EQ(line.basis.size(), 1u);
  EXPECT_EQ(line.basis[0], form(F, 1, {{{0, 0, 1}, 1}}));

  const auto X = rathmann_section_direct(2, 2, 3, 0).config;
  const auto pencil = linear_system(X, 4);
  EXPECT_EQ(pencil.basis.size(), 2u);
  for (const auto& f : pencil.basis) EXPECT_TRUE(vanishes_on(f, X));
  EXPECT_TRUE(linear_system(X, 3).basis.empty());
}

TEST(RandomMember, Examples) {
  const FiniteField F = FiniteField::of(101);
  const Config two(F, {{1, 0, 0}, {0, 1, 0}});
  Rng rng(1);
  const auto sys = linear_system(two, 1);
  EXPECT_EQ(random_member(sys, rng), sys.basis[0]);
  EXPECT_THROW(random_member(linear_system(two, 0), rng), Error);

  const auto X = rathmann_section_direct(2, 1, 2, 3).config;
  const auto pencil = linear_system(X, 2);
  ASSERT_EQ(pencil.basis.size(), 2u);
  const FiniteField F16 = FiniteField::of(2, 4);
  for (int k = 0; k < 100; ++k) {
    const auto m = random_member(pencil, rng, F16);
    EXPECT_EQ(m.field(), F16);
    EXPECT_TRUE(vanishes_on(m, X));
  }
  Rng r1(5), r2(5);
  EXPECT_EQ(random_member(pencil, r1, F16), random_member(pencil, r2, F16));
}

TEST(GcdOfSystem, Examples) {
  const FiniteField F = FiniteField::of(101);
  const Config three(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(gcd_of_system(linear_system(three, 2)).degree(), 0u);

  std::vector<Coords> pts;
  for (Fq a = 0; a < 5; ++a) pts.push_back({a, 1, 1});  // on y = z
  pts.push_back({0, 1, 0});
  const auto sys = linear_system(Config(F, pts), 2);
  const auto g = gcd_of_system(sys);
  EXPECT_EQ(g, form(F, 1, {{{0, 1, 0}, 1}, {{0, 0, 1}, -1}}));
  for (const auto& b : sys.basis) EXPECT_TRUE(divide_forms(b, g));
  EXPECT_THROW(gcd_of_system(linear_system(three, 1)), Error);
}

TEST(GcdOfSystem, DividesEveryBasisForm) {
  const FiniteField F = FiniteField::of(13);
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Coords> pts;
    // a few points on a random line plus a few free ones
    const Coords u{F.random(rng), F.random(rng), 1}, v{1, F.random(rng), F.random(rng)};
    for (Fq s = 0; s < 3 + rng.below(4); ++s) pts.push_back(normalize_point(F, Coords{F.add(u[0], F.mul(s, v[0])), F.add(u[1], F.mul(s, v[1])), F.add(u[2], F.mul(s, v[2]))}));
    for (int k = 0; k < 2; ++k) pts.push_back(normalize_point(F, Coords{F.random(rng), F.random(rng), 1}));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const Config X(F, pts);
    const auto sys = linear_system(X, minimal_degree(X) + static_cast<unsigned>(rng.below(2)));
    const auto g = gcd_of_system(sys);
    for (const auto& b : sys.basis) EXPECT_TRUE(divide_forms(b, g));
  }
}

TEST(AbsoluteIrreducibility, Examples) {
  const FiniteField F3 = FiniteField::of(3);
  EXPECT_EQ(is_absolutely_irreducible(form(F3, 2, {{{1, 1, 0}, 1}}), 3).verdict, Irreducibility::reducible);
  const auto sum_sq = form(F3, 2, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}});
  const auto r = is_absolutely_irreducible(sum_sq, 3);
  EXPECT_EQ(r.verdict, Irreducibility::reducible);
  EXPECT_EQ(factor_bivariate(dehomogenize(sum_sq, 2)).factors.size(), 1u);
  const FiniteField F5 = FiniteField::of(5);
  EXPECT_EQ(is_absolutely_irreducible(form(F5, 2, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, -1}}), 3).verdict,
            Irreducibility::irreducible);
  EXPECT_EQ(is_absolutely_irreducible(form(F5, 1, {{{1, 0, 0}, 1}}), 1).verdict, Irreducibility::irreducible);
  EXPECT_THROW(is_absolutely_irreducible(TernaryForm::zero(F5, 2), 3), Error);
}

TEST(AbsoluteIrreducibility, InconclusiveWhenExtensionSkipped) {
  const FiniteField F = FiniteField::of(5);
  const auto cubic = form(F, 3, {{{0, 2, 1}, 1}, {{3, 0, 0}, -1}, {{1, 0, 2}, -1}, {{0, 0, 3}, -1}});
  const auto r = is_absolutely_irreducible(cubic, 2);
  EXPECT_EQ(r.verdict, Irreducibility::inconclusive);
  EXPECT_EQ(r.extensions_skipped, std::vector<unsigned>{3});
  EXPECT_EQ(is_absolutely_irreducible(cubic, 3).verdict, Irreducibility::irreducible);
}

TEST(AbsoluteIrreducibility, SweepAgainstLineOracle) {
  for (u64 q : {2, 3}) {
    const FiniteField F = FiniteField::of(q);
    for (unsigned d : {2u, 3u}) {
      std::size_t reducible = 0;
      for (const auto& f : all_forms(F, d)) {
        const bool oracle_red = oracle::absolutely_reducible_by_lines(f);
        const auto v = is_absolutely_irreducible(f, 3).verdict;
        ASSERT_EQ(v == Irreducibility::reducible, oracle_red) << to_string(f) << " over F_" << q;
        reducible += oracle_red;
      }
      EXPECT_GT(reducible, 0u);
    }
  }
}

TEST(AbsoluteIrreducibility, RationalReduction) {
  std::vector<mpq_class> c(monomial_count(2), 0);
  c[monomial_index({2, 0, 0})] = mpq_class(1, 2);
  c[monomial_index({0, 2, 0})] = 1;
  c[monomial_index({0, 0, 2})] = -3;
  const auto r = is_absolutely_irreducible_rational(2, c, 3);
  EXPECT_TRUE(r.probabilistic);
  EXPECT_EQ(r.verdict, Irreducibility::irreducible);
  c.assign(c.size(), 0);
  c[monomial_index({1, 1, 0})] = 7;
  EXPECT_EQ(is_absolutely_irreducible_rational(2, c, 3).verdict, Irreducibility::reducible);
}

TEST(ClassifierCrossCheck, UppConfigurationsHaveIrreducibleMinimalCurves) {
  const FiniteField F = FiniteField::of(101);
  Rng rng(2024);
  int accepted = 0, attempts = 0;
  while (accepted < 50 && attempts < 500) {
    ++attempts;
    // points on the image of (s^2 : s : 1) or (s^3 : s^2 : 1)... under a random coordinate change
    const bool conic = rng.below(2) == 0;
    const std::size_t n = conic ? 6 + rng.below(5) : 10 + rng.below(2);
    ExactMatrix<FiniteField> g(F, 3, 3);
    do {
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) g(r, c) = F.random(rng);
    } while (rank(g) < 3);
    std::vector<Coords> pts;
    while (pts.size() < n) {
      const Fq s = F.random_nonzero(rng);
      const Coords base = conic ? Coords{F.mul(s, s), s, 1} : Coords{F.mul(s, s), F.mul(s, F.mul(s, s)), 1};
      const Coords p = normalize_point(F, g.multiply(base));
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    const Config X(F, pts);
    if (upp_check(X).verdict != UppVerdict::holds) continue;
    const unsigned s = minimal_degree(X);
    const auto verdict = classify_prop2(static_cast<long long>(n), s);
    if (verdict.verdict != Prop2Case::AllIrreducible || verdict.g > verdict.d) continue;
    ++accepted;
    const auto sys = linear_system(X, s);
    for (const auto& b : sys.basis) EXPECT_EQ(is_absolutely_irreducible(b, 3).verdict, Irreducibility::irreducible);
    for (int k = 0; k < 20; ++k) EXPECT_EQ(is_absolutely_irreducible(random_member(sys, rng), 3).verdict, Irreducibility::irreducible);
  }
  EXPECT_EQ(accepted, 50);
}
