#include <gtest/gtest.h>

#include <set>

#include "uplab/geometry.hpp"
#include "uplab/rathmann.hpp"
#include "uplab/upp.hpp"

using namespace uplab;

namespace {

ParamCurve twisted_cubic(const FiniteField& F) {
  return ParamCurve({UniPoly::constant(F, 1), UniPoly::x(F), UniPoly::monomial(F, 1, 2), UniPoly::monomial(F, 1, 3)}, "twisted_cubic");
}

}  // namespace

TEST(SectionPolynomial, Examples) {
  const FiniteField F = FiniteField::of(101);
  const auto f = section_polynomial(twisted_cubic(F), Plane::make(F, {0, 0, 0, 1}));
  EXPECT_EQ(f, UniPoly::monomial(F, 1, 3));

  const ParamCurve c = rathmann_curve(2, 1);
  const auto& comps = c.components();
  EXPECT_EQ(comps[0], UniPoly::x(c.field()));
  EXPECT_EQ(comps[1], UniPoly::monomial(c.field(), 1, 2));
  EXPECT_EQ(comps[2], UniPoly::monomial(c.field(), 1, 4));
  const FiniteField L = FiniteField::of(2, 4);
  Rng rng(5);
  std::array<Fq, 4> t{};
  for (auto& v : t) v = L.random_nonzero(rng);
  const Plane h = Plane::make(L, t);
  const auto g = section_polynomial(c, h);
  EXPECT_EQ(g.degree(), 4);
  EXPECT_EQ(g[0], h.duals[3]);
  EXPECT_EQ(g[1], h.duals[0]);
  EXPECT_EQ(g[2], h.duals[1]);
  EXPECT_EQ(g[4], h.duals[2]);
}

TEST(SectionPolynomial, VanishesAtSampledParameters) {
  const FiniteField F = FiniteField::of(101);
  const ParamCurve c = twisted_cubic(F);
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<Fq, 3> ts{F.random(rng), F.random(rng), F.random(rng)};
    const auto h = plane_through(F, c.at(ts[0]), c.at(ts[1]), c.at(ts[2]));
    if (!h) continue;
    const auto f = section_polynomial(c, *h);
    for (auto t : ts) EXPECT_EQ(f.evaluate(t), 0u);
  }
}

TEST(SectionPolynomial, CurveInPlane) {
  const FiniteField F = FiniteField::of(5);
  const ParamCurve line({UniPoly::x(F), UniPoly::constant(F, 1), UniPoly(F), UniPoly(F)});
  try {
    section_polynomial(line, Plane::make(F, {0, 0, 1, 0}));
    FAIL() << "expected CurveInPlane";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CurveInPlane);
  }
}

TEST(ParamCurve, RemovesCommonFactorAndRejectsConstants) {
  const FiniteField F = FiniteField::of(7);
  const UniPoly t = UniPoly::x(F);
  const ParamCurve c({t, t * t, t * t * t, t * t * t * t});
  EXPECT_EQ(c.degree(), 3);
  EXPECT_THROW(ParamCurve({UniPoly(F), UniPoly(F), UniPoly(F), UniPoly(F)}), Error);
  EXPECT_THROW(ParamCurve({t, t, t, t}), Error);
}

TEST(PlaneSection, TwistedCubicRandomPlanes) {
  const FiniteField F = FiniteField::of(101);
  const ParamCurve c = twisted_cubic(F);
  Rng rng(3);
  std::size_t distinct3 = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Plane h = random_plane(F, rng).plane;
    const auto s = plane_section(c, h, 3);
    EXPECT_EQ(s.found_total, 3u);
    EXPECT_TRUE(s.complete);
    for (const auto& p : s.points) EXPECT_EQ(s.plane.evaluate(p.coords), 0u);
    distinct3 += s.points.size() == 3;
  }
  EXPECT_GE(distinct3, 25u);
}

TEST(PlaneSection, RathmannThroughThreePointsHasSixteen) {
  const ParamCurve c = rathmann_curve(2, 2);
  const FiniteField L = extension_of(c.field(), 3);
  const ParamCurve cl = c.over(L);
  Rng rng(8);
  std::optional<Plane> h;
  while (!h) h = plane_through(L, cl.at(L.random(rng)), cl.at(L.random(rng)), cl.at(L.random(rng)));
  const auto s = plane_section(c, *h, 1);
  EXPECT_EQ(s.points.size(), 16u);
  EXPECT_TRUE(s.reduced);
}

TEST(PlaneSection, RathmannDegenerateFlag) {
  const ParamCurve c = rathmann_curve(2, 1);
  const auto s = plane_section(c, Plane::make(c.field(), {0, 0, 0, 1}), 4);
  EXPECT_FALSE(s.reduced);
  EXPECT_EQ(s.found_total, 4u);
  ASSERT_EQ(s.points.size(), 1u);
  EXPECT_EQ(s.points[0].multiplicity, 4u);
}

TEST(PlaneSection, IncompleteWhenFactorsExceedBound) {
  const FiniteField F = FiniteField::of(101);
  const ParamCurve c = twisted_cubic(F);
  Rng rng(21);
  bool saw_incomplete = false;
  for (int trial = 0; trial < 40 && !saw_incomplete; ++trial) {
    const auto s = plane_section(c, random_plane(F, rng).plane, 1);
    if (!s.complete) {
      saw_incomplete = true;
      EXPECT_LT(s.found_total, 3u);
    }
  }
  EXPECT_TRUE(saw_incomplete);
}

TEST(Coordinatize, DropsSolvedCoordinateAndRoundTrips) {
  const FiniteField F = FiniteField::of(13);
  const Plane h = Plane::make(F, {0, 0, 0, 1});
  const auto X = coordinatize_on_plane({{2, 3, 4, 0}}, h);
  EXPECT_EQ(X[0], (Coords{1, F.div(3, 2), F.div(4, 2)}));

  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Plane g = random_plane(F, rng).plane;
    Coords q{F.random(rng), F.random(rng), 1};
    const Coords p = lift_from_plane(q, g);
    EXPECT_EQ(g.evaluate(p), 0u);
    const auto back = coordinatize_on_plane({p}, g);
    EXPECT_EQ(back[0], normalize_point(F, q));
  }
  EXPECT_THROW(coordinatize_on_plane({{1, 0, 0, 1}}, h), Error);
}

TEST(Coordinatize, PreservesCollinearity) {
  const FiniteField F = FiniteField::of(31);
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Plane h = random_plane(F, rng).plane;
    Coords a{F.random(rng), F.random(rng), F.random_nonzero(rng)};
    Coords b{F.random(rng), F.random_nonzero(rng), F.random(rng)};
    const Fq s = F.random(rng);
    Coords c{F.add(a[0], F.mul(s, b[0])), F.add(a[1], F.mul(s, b[1])), F.add(a[2], F.mul(s, b[2]))};
    std::vector<Coords> pts{lift_from_plane(a, h), lift_from_plane(b, h), lift_from_plane(c, h)};
    std::set<Coords> uniq(pts.begin(), pts.end());
    if (uniq.size() < 3) continue;
    const auto X = coordinatize_on_plane(pts, h);
    EXPECT_TRUE(collinear(F, std::span(X[0]), std::span(X[1]), std::span(X[2])));
  }
}

TEST(Collinear, Examples) {
  const FiniteField F = FiniteField::of(7);
  const Coords a{1, 0, 0}, b{0, 1, 0}, c{1, 1, 0}, d{0, 0, 1};
  EXPECT_TRUE(collinear(F, std::span(a), std::span(b), std::span(c)));
  EXPECT_FALSE(collinear(F, std::span(a), std::span(b), std::span(d)));
}

TEST(RandomPlane, DeterministicAndRejects) {
  const FiniteField F = FiniteField::of(2, 6);
  Rng r1(99), r2(99);
  EXPECT_EQ(random_plane(F, r1).plane, random_plane(F, r2).plane);

  const ParamCurve c = rathmann_curve(2, 1);
  const FiniteField L = FiniteField::of(2, 4);
  Rng rng(1);
  PlanePredicate non_reduced = [&](const Plane& h) -> std::optional<std::string> {
    if (!plane_section(c, h, 1).reduced) return "non_reduced";
    return std::nullopt;
  };
  const auto rp = random_plane(L, rng, {non_reduced});
  EXPECT_EQ(plane_section(c, rp.plane, 1).points.size(), 4u);

  const FiniteField F2 = FiniteField::of(2);
  Rng r3(0);
  PlanePredicate never = [](const Plane&) -> std::optional<std::string> { return "always"; };
  EXPECT_THROW(random_plane(F2, r3, {never}), Error);
}

TEST(Rathmann, SectionEqualsAffineSpan) {
  for (auto [p, f] : {std::pair<u64, unsigned>{2, 1}, {3, 1}, {2, 2}}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto s = rathmann_section_direct(p, f, 3, seed);
      EXPECT_EQ(s.config.size(), s.q * s.q);
    }
  }
  EXPECT_EQ(rathmann_section_direct(2, 1, 2, 7).config.size(), 4u);
}

TEST(Rathmann, LineThroughTwoPointsMeetsSectionInQPoints) {
  const auto s = rathmann_section_direct(2, 2, 3, 1);
  const auto& X = s.config;
  const FiniteField& F = X.field();
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (std::size_t j = i + 1; j < X.size(); ++j) {
      std::size_t on_line = 0;
      for (std::size_t k = 0; k < X.size(); ++k) on_line += collinear(F, std::span(X[i]), std::span(X[j]), std::span(X[k]));
      EXPECT_EQ(on_line, 4u);
    }
  }
  EXPECT_EQ(collinear_triples(X).size(), 80u);
  EXPECT_TRUE(collinear_triples(rathmann_section_direct(2, 1, 3, 0).config).empty());
}

TEST(Rathmann, Parameters) {
  EXPECT_THROW(rathmann_curve(4, 1), Error);
  EXPECT_THROW(rathmann_curve(2, 0), Error);
  const ParamCurve c = rathmann_curve(2, 2);
  EXPECT_EQ(c.components()[2].degree(), 16);
  EXPECT_NE(c.at(2), c.at(3));
}
