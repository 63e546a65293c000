#pragma once

// The maximax minimax quotient of a segment X and a polytope Y along d:
//
//   r(d) = max { |x + y| : x in X, y in Y, x + y in R+ d }
//        / min_{x in X} max { |x + y| : y in Y, x + y in R+ d }.
//
// The numerator is a joint maximization over (lambda, t) with
// x(t) = x1 + t (x2 - x1) and lambda d - x(t) in Y; every face of Y is a
// linear constraint in (lambda, t), so it is a two-variable LP in any
// dimension. The inner maximum of the denominator is a ray exit, and its
// minimum over X sits at an endpoint, so the denominator costs two exits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "mmq/lp2d.hpp"
#include "mmq/polytope.hpp"
#include "mmq/ray.hpp"

namespace mmq {

struct NumeratorValue {
  double value = 0;
  double t = 0;
  Vector x;
  Vector y;
  std::vector<std::size_t> faces;
};

struct DenominatorValue {
  double value = 0;
  bool at_x1 = true;
  /// lambda*(x1, d) and lambda*(x2, d) agree; x1 was chosen.
  bool tie = false;
  double lambda_x1 = 0;
  double lambda_x2 = 0;
  Vector x;
  Vector y;
  std::vector<std::size_t> faces;
};

struct QuotientValue {
  Vector d;
  double numerator = 0;
  double denominator = 0;
  double r = 0;
  double t_N = 0;
  Vector x_N;
  Vector y_N;
  Vector x_M;
  Vector y_M;
  bool x_M_is_x1 = true;
  bool denominator_tie = false;
  double lambda_x1 = 0;
  double lambda_x2 = 0;
  std::optional<double> D;
  std::optional<double> delta_N;
  std::optional<double> delta_M;
  std::vector<std::size_t> faces_N;
  std::vector<std::size_t> faces_M;
  std::vector<std::size_t> faces_D;
};

namespace quotient_detail {

template <class F>
auto as_invalid(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OriginOutside || e.kind() == ErrorKind::NoExit) {
      throw Error(ErrorKind::InvalidInstance, e.what());
    }
    throw;
  }
}

inline bool near_tie(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace quotient_detail

inline NumeratorValue numerator(const Direction& d, const Segment& x, const Polytope& y) {
  const Vector span = x.x2 - x.x1;
  LinearProgram2 lp(1.0, 0.0);  // variables (lambda, t), maximize lambda
  for (const auto& h : y.halfspaces()) {
    lp.add(h.normal.dot(d.vec()), -h.normal.dot(span), h.offset + h.normal.dot(x.x1));
  }
  lp.add(0, 1, 1);
  lp.add(0, -1, 0);
  lp.add(-1, 0, 0);
  const auto res = solve_lp2d(lp);
  if (res.status != LpStatus::Optimal || *res.value <= 0) {
    throw Error(ErrorKind::InvalidInstance, "numerator program has no positive optimum");
  }
  NumeratorValue out;
  out.value = *res.value;
  out.t = std::clamp(res.point->y(), 0.0, 1.0);
  if (out.t < 1e-12) out.t = 0;
  if (out.t > 1 - 1e-12) out.t = 1;
  out.x = x.at(out.t);
  out.y = out.value * d.vec() - out.x;
  out.faces = quotient_detail::as_invalid([&] { return ray_exit(y, -out.x, d).active_faces; });
  return out;
}

inline DenominatorValue denominator(const Direction& d, const Segment& x, const Polytope& y) {
  return quotient_detail::as_invalid([&] {
    const auto e1 = ray_exit(y, -x.x1, d);
    const auto e2 = ray_exit(y, -x.x2, d);
    DenominatorValue out;
    out.lambda_x1 = e1.lambda;
    out.lambda_x2 = e2.lambda;
    out.tie = quotient_detail::near_tie(e1.lambda, e2.lambda);
    out.at_x1 = out.tie || e1.lambda < e2.lambda;
    const auto& pick = out.at_x1 ? e1 : e2;
    out.value = pick.lambda;
    out.x = out.at_x1 ? x.x1 : x.x2;
    out.y = pick.lambda * d.vec() - out.x;
    out.faces = pick.active_faces;
    if (!(out.value > 0)) throw Error(ErrorKind::InvalidInstance, "denominator is not positive");
    return out;
  });
}

inline QuotientValue quotient(const Direction& d, const Segment& x, const Polytope& y) {
  const auto num = numerator(d, x, y);
  const auto den = denominator(d, x, y);
  QuotientValue q;
  q.d = d.vec();
  q.numerator = num.value;
  q.denominator = den.value;
  q.r = num.value / den.value;
  q.t_N = num.t;
  q.x_N = num.x;
  q.y_N = num.y;
  q.faces_N = num.faces;
  q.x_M = den.x;
  q.y_M = den.y;
  q.x_M_is_x1 = den.at_x1;
  q.denominator_tie = den.tie;
  q.lambda_x1 = den.lambda_x1;
  q.lambda_x2 = den.lambda_x2;
  q.faces_M = den.faces;
  const Vector zero = Vector::Zero(y.dim());
  if (contains(y, zero, false)) {
    const auto exit = ray_exit(y, zero, d);
    q.D = exit.lambda;
    q.delta_N = q.numerator - exit.lambda;
    q.delta_M = exit.lambda - q.denominator;
    q.faces_D = exit.active_faces;
  }
  return q;
}

struct ArgmaxResult {
  Vector d_star;
  double r_star = 0;
  double r_plus = 0;
  double r_minus = 0;
  bool tie = false;
  QuotientValue plus;
  QuotientValue minus;
};

/// The direction maximizing r over the unit sphere: one of +-x2/|x2|.
inline ArgmaxResult argmax_direction(const Segment& x, const Polytope& y) {
  if (x.x2.norm() < kDirectionTol) throw Error(ErrorKind::InvalidInstance, "x2 is zero");
  const Direction u(x.x2);
  ArgmaxResult out;
  out.plus = quotient(u, x, y);
  out.minus = quotient(-u, x, y);
  out.r_plus = out.plus.r;
  out.r_minus = out.minus.r;
  out.tie = std::abs(out.r_plus - out.r_minus) <= 1e-9 * std::max(1.0, out.r_plus);
  const bool plus_wins = out.tie || out.r_plus > out.r_minus;
  out.d_star = (plus_wins ? u.vec() : Vector(-u.vec())).array() + 0.0;
  out.r_star = plus_wins ? out.r_plus : out.r_minus;
  return out;
}

/// Brute-force evaluation used to check the analytic path. Uses membership
/// tests only: for each t on a uniform grid the largest feasible lambda is
/// found on a uniform lambda grid over [0, lambda_box].
struct OracleValue {
  double numerator = 0;
  double denominator = 0;
  double r = 0;
  double t_N = 0;
  double t_M = 0;
  double lambda_step = 0;
  /// First-order bound on |r - r_exact| from the two grid spacings.
  double error_bound = 0;
};

inline OracleValue quotient_oracle(const Direction& d, const Segment& x, const Polytope& y,
                                   int grid) {
  if (grid < 1) throw Error(ErrorKind::Malformed, "oracle grid must be positive");
  const Vector& dv = d.vec();
  double reach = -std::numeric_limits<double>::infinity();
  for (const auto& v : y.vertices()) reach = std::max(reach, v.dot(dv));
  const double lambda_box = std::max(0.0, reach + std::max(x.x1.dot(dv), x.x2.dot(dv)));
  const double h = lambda_box / grid;

  // Feasibility along a ray from an interior point is an interval [0, lambda*],
  // so the largest feasible grid index can be found by bisection; the answer is
  // the same as a full scan.
  auto scan = [&](const Vector& xp) {
    if (!contains(y, -xp, false)) throw Error(ErrorKind::InvalidInstance, "-x outside Y");
    int lo = 0;
    int hi = grid;
    if (contains(y, hi * h * dv - xp, false)) return hi * h;
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      (contains(y, mid * h * dv - xp, false) ? lo : hi) = mid;
    }
    return lo * h;
  };

  OracleValue out;
  out.lambda_step = h;
  out.numerator = -1;
  out.denominator = std::numeric_limits<double>::infinity();
  double prev = 0;
  double max_slope = 0;
  for (int k = 0; k <= grid; ++k) {
    const double t = static_cast<double>(k) / grid;
    const double lam = scan(x.at(t));
    if (lam > out.numerator) {
      out.numerator = lam;
      out.t_N = t;
    }
    if (lam < out.denominator) {
      out.denominator = lam;
      out.t_M = t;
    }
    if (k > 0) max_slope = std::max(max_slope, std::abs(lam - prev) * grid);
    prev = lam;
  }
  if (!(out.denominator > 0)) throw Error(ErrorKind::InvalidInstance, "oracle denominator is zero");
  out.r = out.numerator / out.denominator;
  const double e = h + max_slope / grid;
  out.error_bound = out.denominator > e ? e * (1 + out.r) / (out.denominator - e)
                                        : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace mmq
