#pragma once

// Small dense linear programs in two variables:
//
//   maximize  c_u * u + c_v * v   subject to   p_i * u + q_i * v <= r_i.
//
// The solver walks every constraint line, clips it against all the others and
// keeps the endpoints of the surviving interval as candidate vertices. That is
// O(m^2) and fully deterministic, which matters more here than asymptotics:
// callers solve thousands of LPs with a few dozen rows each and golden tests
// compare results bit for bit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "mmq/core.hpp"

namespace mmq {

/// Row p*u + q*v <= r with (p, q) of unit length.
struct LpConstraint {
  double p = 0;
  double q = 0;
  double r = 0;
};

class LinearProgram2 {
 public:
  static constexpr std::size_t kMaxConstraints = 10000;

  LinearProgram2(double c_u, double c_v) : c_u_(c_u), c_v_(c_v) {}

  /// Adds p*u + q*v <= r. A zero row is either vacuous (r >= -tol) and
  /// dropped, or a contradiction that makes the program infeasible.
  void add(double p, double q, double r) {
    const double n = std::hypot(p, q);
    if (n < kDirectionTol) {
      if (r < -kMembershipTol) contradiction_ = true;
      return;
    }
    rows_.push_back({p / n, q / n, r / n});
  }

  double c_u() const noexcept { return c_u_; }
  double c_v() const noexcept { return c_v_; }
  const std::vector<LpConstraint>& constraints() const noexcept { return rows_; }
  bool has_contradiction() const noexcept { return contradiction_; }

 private:
  double c_u_;
  double c_v_;
  std::vector<LpConstraint> rows_;
  bool contradiction_ = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::optional<Vec2> point;
  std::optional<double> value;
};

namespace lp_detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
  Vec2 z;
  double value;
};

// Lexicographic (value desc, u asc, v asc) with a relative tie band on value.
inline bool better(const Candidate& a, const Candidate& b) {
  const double band = 1e-12 * std::max({1.0, std::abs(a.value), std::abs(b.value)});
  if (a.value > b.value + band) return true;
  if (a.value < b.value - band) return false;
  if (a.z.x() < b.z.x() - kDirectionTol) return true;
  if (a.z.x() > b.z.x() + kDirectionTol) return false;
  return a.z.y() < b.z.y() - kDirectionTol;
}

inline LpResult optimal(const Vec2& z, double value) {
  return {LpStatus::Optimal, z, value};
}

// All normals parallel to one axis n: the feasible set is a slab or half-plane.
inline LpResult solve_rank_one(const LinearProgram2& lp, const Vec2& n) {
  double upper = kInf;
  double lower = -kInf;
  for (const auto& row : lp.constraints()) {
    const double s = row.p * n.x() + row.q * n.y();  // +1 or -1
    if (s > 0) {
      upper = std::min(upper, row.r);
    } else {
      lower = std::max(lower, -row.r);
    }
  }
  if (lower > upper + kMembershipTol) return {};

  const Vec2 c(lp.c_u(), lp.c_v());
  const double along = c.dot(n);
  if ((c - along * n).norm() > kDirectionTol) return {LpStatus::Unbounded, {}, {}};
  double w = 0.0;
  if (along > kDirectionTol) {
    if (!std::isfinite(upper)) return {LpStatus::Unbounded, {}, {}};
    w = upper;
  } else if (along < -kDirectionTol) {
    if (!std::isfinite(lower)) return {LpStatus::Unbounded, {}, {}};
    w = lower;
  } else {
    w = std::clamp(0.0, std::isfinite(lower) ? lower : -kInf, std::isfinite(upper) ? upper : kInf);
  }
  const Vec2 z = w * n;
  return optimal(z, c.dot(z));
}

}  // namespace lp_detail

/// Solves the program exactly up to floating point. Optimal points are
/// vertices of the feasible region (or, for a degenerate slab, the point of
/// the optimal line nearest the origin direction).
inline LpResult solve_lp2d(const LinearProgram2& lp) {
  using lp_detail::Candidate;
  using lp_detail::kInf;

  const auto& rows = lp.constraints();
  if (rows.size() > LinearProgram2::kMaxConstraints) {
    throw Error(ErrorKind::TooManyConstraints, std::to_string(rows.size()) + " constraints");
  }
  if (lp.has_contradiction()) return {};

  const Vec2 c(lp.c_u(), lp.c_v());
  if (rows.empty()) {
    if (c.norm() <= kDirectionTol) return lp_detail::optimal(Vec2::Zero(), 0.0);
    return {LpStatus::Unbounded, {}, {}};
  }

  const Vec2 n0(rows[0].p, rows[0].q);
  const bool rank_two = std::any_of(rows.begin(), rows.end(), [&](const LpConstraint& row) {
    return std::abs(cross2(n0, Vec2(row.p, row.q))) >= kDirectionTol;
  });
  if (!rank_two) return lp_detail::solve_rank_one(lp, n0);

  std::optional<Candidate> best;
  bool feasible = false;
  bool unbounded = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Vec2 ni(rows[i].p, rows[i].q);
    const Vec2 base = rows[i].r * ni;
    const Vec2 t = rot90(ni);
    double lo = -kInf;
    double hi = kInf;
    bool empty = false;
    for (std::size_t j = 0; j < rows.size() && !empty; ++j) {
      if (j == i) continue;
      const Vec2 nj(rows[j].p, rows[j].q);
      const double rate = nj.dot(t);
      const double slack = rows[j].r - nj.dot(base);
      if (std::abs(rate) < kDirectionTol) {
        if (slack < -kMembershipTol) empty = true;
      } else if (rate > 0) {
        hi = std::min(hi, slack / rate);
      } else {
        lo = std::max(lo, slack / rate);
      }
    }
    if (empty || lo > hi + kMembershipTol) continue;
    feasible = true;
    const double slope = c.dot(t);
    if ((slope > kDirectionTol && !std::isfinite(hi)) ||
        (slope < -kDirectionTol && !std::isfinite(lo))) {
      unbounded = true;
      continue;
    }
    for (double s : {lo, hi}) {
      if (!std::isfinite(s)) continue;
      const Vec2 z = base + s * t;
      const Candidate cand{z, c.dot(z)};
      if (!best || lp_detail::better(cand, *best)) best = cand;
    }
  }
  if (!feasible) return {};
  if (unbounded || !best) return {LpStatus::Unbounded, {}, {}};
  return lp_detail::optimal(best->z, best->value);
}

}  // namespace mmq
