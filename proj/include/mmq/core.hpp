#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "mmq/error.hpp"

namespace mmq {

using Vector = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;

// Absolute tolerances; all constraints are stored with unit normals, so these
// are distances.
inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kStrictMargin = 1e-9;
inline constexpr double kDirectionTol = 1e-12;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline Vector make_vector(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v(i++) = c;
  return v;
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

/// Unit-norm direction. Construction normalizes and rejects the zero vector.
class Direction {
 public:
  explicit Direction(const Vector& v) : v_(v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n < kDirectionTol) {
      throw Error(ErrorKind::ZeroDirection, "zero direction");
    }
    v_ /= n;
  }

  const Vector& vec() const noexcept { return v_; }
  Eigen::Index dim() const noexcept { return v_.size(); }
  Direction operator-() const { return Direction(-v_); }

 private:
  Vector v_;
};

/// Angle in [0, 2π).
inline double wrap_two_pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Counterclockwise quarter turn.
inline Vec2 rot90(const Vec2& v) { return {-v.y(), v.x()}; }

/// Clockwise angle from `from` to `to`, in [0, 2π).
inline double clockwise_angle(const Vec2& from, const Vec2& to) {
  return wrap_two_pi(std::atan2(-cross2(from, to), from.dot(to)));
}

}  // namespace mmq
