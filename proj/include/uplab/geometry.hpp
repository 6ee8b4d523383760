#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "error.hpp"
#include "finite_field.hpp"
#include "points.hpp"
#include "rng.hpp"
#include "unipoly.hpp"

namespace uplab {

using Fq = FiniteField::Element;
using Coords = std::vector<Fq>;

/// Plane sum t_i x_i = 0 in P^3, stored by its normalized dual coordinates.
struct Plane {
  FiniteField field;
  std::array<Fq, 4> duals;

  static Plane make(const FiniteField& F, std::array<Fq, 4> t) {
    const auto n = normalize_point(F, Coords(t.begin(), t.end()));
    return Plane{F, {n[0], n[1], n[2], n[3]}};
  }

  Plane over(const FiniteField& target) const {
    const auto& emb = Embedding::between(field, target);
    return Plane{target, {emb.apply(duals[0]), emb.apply(duals[1]), emb.apply(duals[2]), emb.apply(duals[3])}};
  }

  Fq evaluate(const Coords& x) const {
    Fq acc = 0;
    for (std::size_t i = 0; i < 4; ++i) acc = field.add(acc, field.mul(duals[i], x[i]));
    return acc;
  }

  /// Index of the first nonzero dual coordinate; its variable is solved for on the plane.
  std::size_t chart() const {
    std::size_t j = 0;
    while (duals[j] == 0) ++j;
    return j;
  }

  bool operator==(const Plane& o) const { return field == o.field && duals == o.duals; }
};

/// Rational space curve t -> (x0(t) : x1(t) : x2(t) : x3(t)), homogenized in
/// (t : u) at the common degree, with the common factor of the components removed.
class ParamCurve {
 public:
  ParamCurve(std::array<UniPoly, 4> param, std::string id = {}) : param_(std::move(param)), id_(std::move(id)) {
    const FiniteField F = param_[0].field();
    UniPoly g(F);
    for (const auto& x : param_) {
      if (!(x.field() == F)) fail(ErrorCode::FieldMismatch, "curve components over different fields");
      g = gcd(g, x);
    }
    if (g.is_zero()) fail(ErrorCode::InvalidInput, "all curve components are zero");
    int deg = 0;
    for (auto& x : param_) {
      x = x / g;
      deg = std::max(deg, x.degree());
    }
    if (deg < 1) fail(ErrorCode::InvalidInput, "parametrization is constant");
    degree_ = deg;
  }

  const FiniteField& field() const { return param_[0].field(); }
  const std::array<UniPoly, 4>& components() const { return param_; }
  int degree() const { return degree_; }
  const std::string& id() const { return id_; }

  ParamCurve over(const FiniteField& target) const {
    if (field() == target) return *this;
    return ParamCurve({embed(param_[0], target), embed(param_[1], target), embed(param_[2], target), embed(param_[3], target)}, id_);
  }

  /// Point at parameter t over the curve's field (possibly the zero vector
  /// never occurs since the components are coprime).
  Coords at(Fq t) const {
    Coords c(4);
    for (std::size_t i = 0; i < 4; ++i) c[i] = param_[i].evaluate(t);
    return normalize_point(field(), c);
  }

  /// Image of the parameter at infinity: leading coefficients at the common degree.
  Coords at_infinity() const {
    Coords c(4);
    for (std::size_t i = 0; i < 4; ++i) c[i] = param_[i][static_cast<std::size_t>(degree_)];
    return normalize_point(field(), c);
  }

 private:
  std::array<UniPoly, 4> param_;
  std::string id_;
  int degree_ = 0;
};

namespace detail {

/// Field holding both inputs: the larger one when one embeds in the other.
inline FiniteField common_field(const FiniteField& a, const FiniteField& b) {
  if (a == b) return a;
  if (a.characteristic() == b.characteristic()) {
    if (b.degree() % a.degree() == 0) return b;
    if (a.degree() % b.degree() == 0) return a;
  }
  fail(ErrorCode::NoEmbedding, a.spec().describe() + " and " + b.spec().describe() + " have no common field here");
}

}  // namespace detail

/// sum t_i x_i(t): its roots are the parameters of the points of C on H.
inline UniPoly section_polynomial(const ParamCurve& curve, const Plane& plane) {
  const FiniteField F = detail::common_field(curve.field(), plane.field);
  const ParamCurve c = curve.over(F);
  const Plane h = plane.field == F ? plane : plane.over(F);
  UniPoly sum(F);
  for (std::size_t i = 0; i < 4; ++i) sum = sum + c.components()[i].scaled(h.duals[i]);
  if (sum.is_zero()) fail(ErrorCode::CurveInPlane, "the curve lies in the plane");
  return sum;
}

struct SectionPoint {
  Coords coords;  // P^3, normalized
  unsigned multiplicity;
};

struct PlaneSection {
  FiniteField field;                // smallest common extension holding every found point
  Plane plane;                      // over `field`
  std::vector<SectionPoint> points; // distinct, sorted by coordinates
  unsigned expected_total = 0;      // deg C
  unsigned found_total = 0;         // sum of multiplicities found within max_ext
  bool complete = false;
  bool reduced = false;
  std::vector<unsigned> factor_degrees;  // degrees of the section polynomial's irreducible factors
};

/// Points of C on H over extensions of degree <= max_ext, with multiplicities.
inline PlaneSection plane_section(const ParamCurve& curve, const Plane& plane, unsigned max_ext, std::uint64_t seed = 0) {
  const UniPoly f = section_polynomial(curve, plane);
  const FiniteField K = f.field();
  const auto fac = factor_univariate(f, seed);
  unsigned ext = 1;
  bool complete = true;
  std::vector<unsigned> degrees;
  for (const auto& [g, mult] : fac.factors) {
    const auto d = static_cast<unsigned>(g.degree());
    degrees.push_back(d);
    if (d > max_ext) {
      complete = false;
      continue;
    }
    ext = static_cast<unsigned>(lcm_u64(ext, d));
  }
  const FiniteField L = extension_of(K, ext);
  const ParamCurve c = curve.over(L);
  std::map<Coords, unsigned> found;
  unsigned total = 0;
  for (const auto& [g, mult] : fac.factors) {
    if (static_cast<unsigned>(g.degree()) > max_ext) continue;
    for (auto r : roots_in_field(embed(g, L), seed)) {
      found[c.at(r)] += mult;
      total += mult;
    }
  }
  const auto deg_c = static_cast<unsigned>(curve.degree());
  if (static_cast<unsigned>(f.degree()) < deg_c) {
    const unsigned mult = deg_c - static_cast<unsigned>(f.degree());
    found[c.at_infinity()] += mult;
    total += mult;
  }
  PlaneSection out{L, plane.field == L ? plane : plane.over(L), {}, deg_c, total, complete, false, degrees};
  bool all_simple = true;
  for (const auto& [pt, mult] : found) {
    out.points.push_back({pt, mult});
    all_simple = all_simple && mult == 1;
  }
  out.reduced = complete && all_simple;
  return out;
}

/// Identifies H with P^2 by dropping the coordinate solved for on H.
inline PointConfiguration<FiniteField> coordinatize_on_plane(const std::vector<Coords>& pts, const Plane& plane,
                                                             std::string label = {}) {
  const FiniteField& F = plane.field;
  const std::size_t j = plane.chart();
  std::vector<Coords> out;
  for (const auto& p : pts) {
    if (p.size() != 4) fail(ErrorCode::InvalidInput, "P^3 points need 4 coordinates");
    if (plane.evaluate(p) != 0) fail(ErrorCode::PointOffPlane, "point does not satisfy the plane equation");
    Coords q;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != j) q.push_back(p[i]);
    out.push_back(normalize_point(F, q));
  }
  return PointConfiguration<FiniteField>(F, std::move(out), std::move(label));
}

/// Inverse of coordinatize_on_plane for one point.
inline Coords lift_from_plane(const Coords& q, const Plane& plane) {
  const FiniteField& F = plane.field;
  const std::size_t j = plane.chart();
  Coords p(4, 0);
  Fq acc = 0;
  for (std::size_t i = 0, k = 0; i < 4; ++i) {
    if (i == j) continue;
    p[i] = q[k++];
    acc = F.add(acc, F.mul(plane.duals[i], p[i]));
  }
  p[j] = F.neg(F.div(acc, plane.duals[j]));
  return normalize_point(F, p);
}

/// Returns a tag when a candidate plane should be rejected.
using PlanePredicate = std::function<std::optional<std::string>(const Plane&)>;

struct RandomPlane {
  Plane plane;
  std::vector<std::string> rejections;  // tags of fired predicates, in sampling order
};

/// Uniform plane over F, resampled while any predicate fires.
inline RandomPlane random_plane(const FiniteField& F, Rng& rng, const std::vector<PlanePredicate>& avoid = {},
                                unsigned max_retries = 100) {
  std::vector<std::string> rejections;
  for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
    std::array<Fq, 4> t{};
    for (auto& v : t) v = F.random(rng);
    if (t == std::array<Fq, 4>{}) {
      rejections.emplace_back("zero_vector");
      continue;
    }
    const Plane h = Plane::make(F, t);
    std::optional<std::string> tag;
    for (const auto& pred : avoid) {
      if ((tag = pred(h))) break;
    }
    if (tag) {
      rejections.push_back(*tag);
      continue;
    }
    return {h, std::move(rejections)};
  }
  fail(ErrorCode::GenericityExhausted, "no acceptable plane after " + std::to_string(max_retries) + " samples");
}

/// Plane through three points of P^3 (kernel of the 3x4 coordinate matrix);
/// nullopt when the points are dependent.
inline std::optional<Plane> plane_through(const FiniteField& F, const Coords& a, const Coords& b, const Coords& c) {
  ExactMatrix<FiniteField> m(F, 3, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    m(0, i) = a[i];
    m(1, i) = b[i];
    m(2, i) = c[i];
  }
  const auto k = kernel_basis(m);
  if (k.size() != 1) return std::nullopt;
  return Plane::make(F, {k[0][0], k[0][1], k[0][2], k[0][3]});
}

}  // namespace uplab
