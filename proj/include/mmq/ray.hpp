#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "mmq/polytope.hpp"

namespace mmq {

struct RayExit {
  double lambda = 0;
  Vector point;
  /// Indices of the faces binding at the exit, ascending.
  std::vector<std::size_t> active_faces;
};

/// Where the ray origin + lambda*direction leaves the polytope.
inline RayExit ray_exit(const Polytope& poly, const Vector& origin, const Direction& direction) {
  const Vector& d = direction.vec();
  if (origin.size() != poly.dim() || d.size() != poly.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "ray and polytope dimensions differ");
  }
  if (!contains(poly, origin, false)) throw Error(ErrorKind::OriginOutside, "ray origin outside");

  const auto& hs = poly.halfspaces();
  std::vector<double> hits(hs.size(), std::numeric_limits<double>::infinity());
  double lambda = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double rate = hs[i].normal.dot(d);
    if (rate <= kDirectionTol) continue;
    hits[i] = std::max(0.0, hs[i].slack(origin) / rate);
    lambda = std::min(lambda, hits[i]);
  }
  if (!std::isfinite(lambda)) throw Error(ErrorKind::NoExit, "ray never leaves the polytope");

  RayExit out;
  out.lambda = lambda;
  out.point = origin + lambda * d;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hits[i] - lambda <= kMembershipTol) out.active_faces.push_back(i);
  }
  return out;
}

/// Largest lambda with lambda*d - x in Y.
inline double lambda_star(const Vector& x, const Direction& d, const Polytope& y) {
  return ray_exit(y, -x, d).lambda;
}

/// The farthest point y of Y with x + y on the ray R+ d.
inline Vector y_star(const Vector& x, const Direction& d, const Polytope& y) {
  return lambda_star(x, d, y) * d.vec() - x;
}

/// Reach of Y from the origin along d; absent when the origin is not in Y.
inline std::optional<double> big_d(const Direction& d, const Polytope& y) {
  const Vector zero = Vector::Zero(y.dim());
  if (!contains(y, zero, false)) return std::nullopt;
  return ray_exit(y, zero, d).lambda;
}

}  // namespace mmq
