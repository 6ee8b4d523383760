#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "prime.hpp"
#include "rng.hpp"

namespace uplab {

/// The curve (t : t^q : t^(q^2) : 1) over F_q, q = p^f.
inline ParamCurve rathmann_curve(u64 p, unsigned f) {
  if (!is_prime(p)) fail(ErrorCode::InvalidParameters, "p must be prime");
  if (f < 1) fail(ErrorCode::InvalidParameters, "f must be at least 1");
  const u64 q = checked_pow(p, f);
  if (q == 0 || checked_pow(q, 2) == 0 || q * q > (u64{1} << 20)) {
    fail(ErrorCode::InvalidParameters, "q^2 too large for an explicit parametrization");
  }
  const FiniteField F = FiniteField(make_extension(p, f));
  const auto one = F.one();
  return ParamCurve({UniPoly::monomial(F, one, 1), UniPoly::monomial(F, one, q), UniPoly::monomial(F, one, q * q),
                     UniPoly::constant(F, one)},
                    "rathmann_p" + std::to_string(p) + "_f" + std::to_string(f));
}

struct RathmannSection {
  u64 q = 0;
  ParamCurve curve;
  Plane plane;                       // over the point field
  std::vector<Coords> points_p3;     // q^2 points, sorted
  PointConfiguration<FiniteField> config;
};

/// The affine span {P0 + l1 (P1 - P0) + l2 (P2 - P0) : l_i in F_q} of three
/// random curve points over F_{q^ext_m}, cross-checked against the plane
/// section through them.
inline RathmannSection rathmann_section_direct(u64 p, unsigned f, unsigned ext_m, std::uint64_t seed,
                                               unsigned max_retries = 100) {
  if (ext_m < 1) fail(ErrorCode::InvalidParameters, "ext_m must be at least 1");
  const ParamCurve curve = rathmann_curve(p, f);
  const FiniteField& F = curve.field();
  const u64 q = F.order();
  const FiniteField L = extension_of(F, ext_m);
  const ParamCurve cl = curve.over(L);
  const auto& emb = Embedding::between(F, L);
  std::vector<Fq> scalars;
  for (u64 a = 0; a < q; ++a) scalars.push_back(emb.apply(a));

  Rng rng(seed);
  for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
    std::array<Coords, 3> P;
    for (auto& pt : P) {
      const Fq t = L.random(rng);
      pt = {t, L.frobenius(t, F.degree()), L.frobenius(t, 2 * F.degree()), L.one()};  // affine chart x3 = 1
    }
    const auto plane = plane_through(L, P[0], P[1], P[2]);
    if (!plane) continue;
    std::vector<Coords> pts;
    for (auto l1 : scalars) {
      for (auto l2 : scalars) {
        Coords c(4);
        for (std::size_t i = 0; i < 4; ++i) {
          c[i] = L.add(P[0][i], L.add(L.mul(l1, L.sub(P[1][i], P[0][i])), L.mul(l2, L.sub(P[2][i], P[0][i]))));
        }
        const Fq param = c[0];
        c = normalize_point(L, std::move(c));
        if (!(cl.at(param) == c)) fail(ErrorCode::InvalidInput, "affine span point is not on the curve");
        pts.push_back(std::move(c));
      }
    }
    std::sort(pts.begin(), pts.end());
    const PlaneSection sec = plane_section(curve, *plane, 1, seed);
    std::vector<Coords> direct;
    for (const auto& sp : sec.points) direct.push_back(sp.coords);
    if (!(sec.field == L) || direct != pts) fail(ErrorCode::InvalidInput, "affine span differs from the plane section");
    auto config = coordinatize_on_plane(pts, *plane, curve.id() + "_section_seed" + std::to_string(seed));
    return RathmannSection{q, curve, *plane, std::move(pts), std::move(config)};
  }
  fail(ErrorCode::DependentSample, "no three independent curve points after " + std::to_string(max_retries) + " samples");
}

}  // namespace uplab
