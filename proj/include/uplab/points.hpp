#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "monomials.hpp"

namespace uplab {

/// Scales a homogeneous coordinate vector so its first nonzero entry is 1.
template <class Field>
std::vector<typename Field::Element> normalize_point(const Field& F, std::vector<typename Field::Element> c) {
  auto it = std::find_if(c.begin(), c.end(), [&](const auto& v) { return !F.is_zero(v); });
  if (it == c.end()) fail(ErrorCode::InvalidInput, "the zero vector is not a projective point");
  const auto inv = F.inv(*it);
  for (auto& v : c) v = F.mul(v, inv);
  return c;
}

/// Finite set of distinct points of P^2 over one field.
template <class Field>
class PointConfiguration {
 public:
  using Element = typename Field::Element;
  using Point = std::vector<Element>;

  PointConfiguration(Field field, std::vector<Point> points, std::string label = {})
      : field_(std::move(field)), label_(std::move(label)) {
    for (auto& p : points) {
      if (p.size() != 3) fail(ErrorCode::InvalidInput, "P^2 points need 3 coordinates");
      Point n = normalize_point(field_, std::move(p));
      if (std::find(points_.begin(), points_.end(), n) != points_.end()) {
        fail(ErrorCode::InvalidInput, "duplicate point in configuration");
      }
      points_.push_back(std::move(n));
    }
  }

  const Field& field() const { return field_; }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::string& label() const { return label_; }

  PointConfiguration subset(std::span<const std::size_t> idx) const {
    std::vector<Point> pts;
    for (auto i : idx) pts.push_back(points_.at(i));
    return PointConfiguration(field_, std::move(pts), label_);
  }

  PointConfiguration with_point(Point p) const {
    auto pts = points_;
    pts.push_back(std::move(p));
    return PointConfiguration(field_, std::move(pts), label_);
  }

 private:
  Field field_;
  std::vector<Point> points_;
  std::string label_;
};

template <class Field>
typename Field::Element evaluate_monomial(const Field& F, std::span<const typename Field::Element> pt, const Exponent& e) {
  auto acc = F.one();
  for (std::size_t v = 0; v < 3; ++v) {
    for (unsigned k = 0; k < e[v]; ++k) acc = F.mul(acc, pt[v]);
  }
  return acc;
}

/// Rows: points; columns: degree-s monomials in graded lex order.
template <class Field>
ExactMatrix<Field> evaluation_matrix(const PointConfiguration<Field>& X, unsigned degree) {
  const auto mons = monomials(degree);
  ExactMatrix<Field> m(X.field(), X.size(), mons.size());
  for (std::size_t r = 0; r < X.size(); ++r) {
    for (std::size_t c = 0; c < mons.size(); ++c) m(r, c) = evaluate_monomial(X.field(), std::span(X[r]), mons[c]);
  }
  return m;
}

template <class Field>
typename Field::Element det3(const Field& F, std::span<const typename Field::Element> p, std::span<const typename Field::Element> q,
                             std::span<const typename Field::Element> r) {
  auto term = [&](std::size_t i, std::size_t j, std::size_t k) { return F.mul(p[i], F.sub(F.mul(q[j], r[k]), F.mul(q[k], r[j]))); };
  return F.add(F.sub(term(0, 1, 2), term(1, 0, 2)), term(2, 0, 1));
}

/// True iff the three points lie on a common line.
template <class Field>
bool collinear(const Field& F, std::span<const typename Field::Element> p, std::span<const typename Field::Element> q,
               std::span<const typename Field::Element> r) {
  return F.is_zero(det3(F, p, q, r));
}

}  // namespace uplab
