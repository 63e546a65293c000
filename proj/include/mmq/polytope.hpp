#pragma once

// Convex polytopes carried in both half-space and vertex form.
//
// Two-dimensional polytopes are fully canonical: vertices counterclockwise,
// and half-space i is the supporting line of the edge vertices[i] ->
// vertices[i+1]. Higher-dimensional polytopes are accepted only with both
// representations supplied (see from_both); their consistency is sampled.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmq/core.hpp"
#include "mmq/lp2d.hpp"

namespace mmq {

/// <normal, p> <= offset with a unit normal.
struct HalfSpace {
  Vector normal;
  double offset = 0;

  static HalfSpace make(const Vector& a, double b) {
    const double n = a.norm();
    if (!std::isfinite(n) || n < kDirectionTol) {
      throw Error(ErrorKind::Degenerate, "half-space with zero normal");
    }
    return {a / n, b / n};
  }

  double slack(const Vector& p) const { return offset - normal.dot(p); }
};

/// Segment X with endpoints x1, x2. Hypotheses (distinct endpoints, x2 != 0,
/// collinearity with the origin) are checked by validate_instance, not here,
/// so that invalid instances can still be reported on.
struct Segment {
  Vector x1;
  Vector x2;

  Eigen::Index dim() const { return x1.size(); }
  Vector at(double t) const { return x1 + t * (x2 - x1); }
};

class Polytope {
 public:
  int dim() const noexcept { return dim_; }
  const std::vector<HalfSpace>& halfspaces() const noexcept { return halfspaces_; }
  const std::vector<Vector>& vertices() const noexcept { return vertices_; }

  /// Vertex centroid; strictly interior for a full-dimensional polytope.
  Vector centroid() const {
    Vector c = Vector::Zero(dim_);
    for (const auto& v : vertices_) c += v;
    if (!vertices_.empty()) c /= static_cast<double>(vertices_.size());
    return c;
  }

  /// Smallest slack over all faces.
  double min_slack(const Vector& p) const {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& h : halfspaces_) s = std::min(s, h.slack(p));
    return s;
  }

  static Polytope from_halfspaces(const std::vector<HalfSpace>& halfspaces, int dim);
  static Polytope from_vertices_2d(const std::vector<Vector>& points);
  static Polytope from_both(const std::vector<HalfSpace>& halfspaces,
                            const std::vector<Vector>& vertices, int dim);

 private:
  int dim_ = 0;
  std::vector<HalfSpace> halfspaces_;
  std::vector<Vector> vertices_;
};

/// Membership: <a_i, p> <= b_i - tol (strict) or <= b_i + tol (non-strict).
inline bool contains(const Polytope& poly, const Vector& p, bool strict,
                     double tol = kMembershipTol) {
  if (p.size() != poly.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "point dimension differs from polytope");
  }
  const double bound = strict ? tol : -tol;
  return std::all_of(poly.halfspaces().begin(), poly.halfspaces().end(),
                     [&](const HalfSpace& h) { return h.normal.dot(p) <= h.offset - bound; });
}

namespace polytope_detail {

inline Vec2 as2(const Vector& v) { return {v(0), v(1)}; }
inline Vector from2(const Vec2& v) { return make_vector({v.x(), v.y()}); }

inline bool lex_less(const Vec2& a, const Vec2& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

inline double signed_area(const std::vector<Vec2>& ring) {
  double a = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    a += cross2(ring[i], ring[(i + 1) % ring.size()]);
  }
  return 0.5 * a;
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped,
/// starting from the lexicographically smallest point.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return (a - b).norm() <= kMembershipTol; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Vec2& o, const Vec2& a, const Vec2& b) { return cross2(a - o, b - o); };
  // Relative threshold so nearly collinear triples are dropped consistently.
  auto keeps = [&](const Vec2& o, const Vec2& a, const Vec2& b) {
    return turn(o, a, b) > 1e-12 * std::max(1.0, (a - o).norm() * (b - o).norm());
  };
  for (const auto& p : pts) {
    while (k >= 2 && !keeps(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !keeps(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline void require_bounded_nonempty_2d(const std::vector<HalfSpace>& hs) {
  const Vec2 probes[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const auto& c : probes) {
    LinearProgram2 lp(c.x(), c.y());
    for (const auto& h : hs) lp.add(h.normal(0), h.normal(1), h.offset);
    const auto res = solve_lp2d(lp);
    if (res.status == LpStatus::Infeasible) throw Error(ErrorKind::Empty, "no feasible point");
    if (res.status == LpStatus::Unbounded) {
      throw Error(ErrorKind::Unbounded, "some direction has no exit");
    }
  }
}

/// Pairwise line intersections that satisfy every constraint, deduplicated.
inline std::vector<Vec2> enumerate_vertices_2d(const std::vector<HalfSpace>& hs) {
  std::vector<Vec2> found;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const Vec2 a = as2(hs[i].normal);
      const Vec2 b = as2(hs[j].normal);
      const double det = cross2(a, b);
      if (std::abs(det) < kDirectionTol) continue;
      const Vec2 z((hs[i].offset * b.y() - hs[j].offset * a.y()) / det,
                   (a.x() * hs[j].offset - b.x() * hs[i].offset) / det);
      const bool feasible = std::all_of(hs.begin(), hs.end(), [&](const HalfSpace& h) {
        return as2(h.normal).dot(z) <= h.offset + kMembershipTol;
      });
      if (feasible) found.push_back(z);
    }
  }
  std::sort(found.begin(), found.end(), lex_less);
  std::vector<Vec2> unique;
  for (const auto& z : found) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const Vec2& u) {
      return (u - z).norm() <= kMembershipTol;
    });
    if (!dup) unique.push_back(z);
  }
  return unique;
}

}  // namespace polytope_detail

inline Polytope Polytope::from_halfspaces(const std::vector<HalfSpace>& halfspaces, int dim) {
  using namespace polytope_detail;
  if (halfspaces.empty()) throw Error(ErrorKind::Unbounded, "no half-spaces");
  if (dim != 2) {
    throw Error(ErrorKind::DimensionUnsupported,
                "vertex recovery needs dim 2; supply both representations for dim " +
                    std::to_string(dim));
  }
  std::vector<HalfSpace> hs;
  hs.reserve(halfspaces.size());
  for (const auto& h : halfspaces) {
    if (h.normal.size() != 2) throw Error(ErrorKind::DimensionMismatch, "half-space dimension");
    hs.push_back(HalfSpace::make(h.normal, h.offset));
  }
  require_bounded_nonempty_2d(hs);

  const auto pts = enumerate_vertices_2d(hs);
  const auto ring = convex_hull(pts);

  Polytope out;
  out.dim_ = 2;
  if (ring.size() < 3) {
    // Lower-dimensional set: keep what we have; validation reports it.
    for (const auto& z : pts) out.vertices_.push_back(from2(z));
    out.halfspaces_ = std::move(hs);
    return out;
  }
  for (const auto& z : ring) out.vertices_.push_back(from2(z));
  // Edge i gets the first input half-space tight on both of its endpoints.
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[(i + 1) % ring.size()];
    const Vec2 outward = -rot90((b - a).normalized());
    const HalfSpace* pick = nullptr;
    for (const auto& h : hs) {
      const Vec2 n = as2(h.normal);
      if (n.dot(outward) > 0 && std::abs(h.offset - n.dot(a)) <= kMembershipTol &&
          std::abs(h.offset - n.dot(b)) <= kMembershipTol) {
        pick = &h;
        break;
      }
    }
    out.halfspaces_.push_back(pick ? *pick : HalfSpace::make(from2(outward), outward.dot(a)));
  }
  return out;
}

inline Polytope Polytope::from_vertices_2d(const std::vector<Vector>& points) {
  using namespace polytope_detail;
  std::vector<Vec2> pts;
  for (const auto& p : points) {
    if (p.size() != 2) throw Error(ErrorKind::DimensionMismatch, "from_vertices_2d needs 2D points");
    if (!p.allFinite()) throw Error(ErrorKind::Malformed, "non-finite coordinate");
    pts.push_back(as2(p));
  }
  const auto ring = convex_hull(std::move(pts));
  if (ring.size() < 3 || signed_area(ring) <= kMembershipTol) {
    throw Error(ErrorKind::Degenerate, "hull has empty interior");
  }
  Polytope out;
  out.dim_ = 2;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[(i + 1) % ring.size()];
    const Vec2 outward = -rot90((b - a).normalized());
    out.vertices_.push_back(from2(a));
    out.halfspaces_.push_back(HalfSpace::make(from2(outward), outward.dot(a)));
  }
  return out;
}

inline Polytope Polytope::from_both(const std::vector<HalfSpace>& halfspaces,
                                    const std::vector<Vector>& vertices, int dim) {
  if (dim < 2) throw Error(ErrorKind::DimensionUnsupported, "dimension must be at least 2");
  if (halfspaces.empty() || vertices.empty()) {
    throw Error(ErrorKind::Inconsistent, "both representations must be non-empty");
  }
  Polytope out;
  out.dim_ = dim;
  for (const auto& h : halfspaces) {
    if (h.normal.size() != dim) throw Error(ErrorKind::DimensionMismatch, "half-space dimension");
    out.halfspaces_.push_back(HalfSpace::make(h.normal, h.offset));
  }
  for (const auto& v : vertices) {
    if (v.size() != dim) throw Error(ErrorKind::DimensionMismatch, "vertex dimension");
    if (!v.allFinite()) throw Error(ErrorKind::Malformed, "non-finite coordinate");
    std::size_t tight = 0;
    for (const auto& h : out.halfspaces_) {
      const double s = h.slack(v);
      if (s < -kMembershipTol) {
        throw Error(ErrorKind::Inconsistent, "vertex violates a half-space");
      }
      if (s <= kMembershipTol) ++tight;
    }
    if (tight < static_cast<std::size_t>(dim)) {
      throw Error(ErrorKind::Inconsistent, "vertex is tight on fewer than dim half-spaces");
    }
    out.vertices_.push_back(v);
  }
  // Sampled boundedness: rays from the centroid along every signed axis and
  // along the vertex directions must leave through some face.
  const Vector c = out.centroid();
  std::vector<Vector> probes;
  for (int k = 0; k < dim; ++k) {
    Vector e = Vector::Zero(dim);
    e(k) = 1;
    probes.push_back(e);
    probes.push_back(-e);
  }
  for (const auto& v : out.vertices_) {
    if ((v - c).norm() > kDirectionTol) probes.push_back(c - v);
  }
  for (const auto& d : probes) {
    const bool exits = std::any_of(out.halfspaces_.begin(), out.halfspaces_.end(),
                                   [&](const HalfSpace& h) { return h.normal.dot(d) > kDirectionTol; });
    if (!exits) throw Error(ErrorKind::Unbounded, "some direction has no exit");
  }
  if (dim == 2) {
    // Cross-check in the plane: the vertex set must be the H-polygon's.
    const auto rebuilt = from_halfspaces(out.halfspaces_, 2);
    if (rebuilt.vertices().size() != out.vertices_.size()) {
      throw Error(ErrorKind::Inconsistent, "vertex list differs from half-space polygon");
    }
    return rebuilt;
  }
  return out;
}

/// Orthonormal pair spanning a plane through the origin. Plane coordinates
/// (c1, c2) denote the point c1*e1 + c2*e2.
struct PlaneEmbedding {
  Vector e1;
  Vector e2;
  bool clockwise = true;

  Vec2 to_plane(const Vector& p) const { return {e1.dot(p), e2.dot(p)}; }
  Vector to_world(const Vec2& c) const { return c.x() * e1 + c.y() * e2; }

  /// Standard embedding for an instance: e1 along x2, e2 a counterclockwise
  /// quarter turn in 2D, otherwise Gram-Schmidt of `seed` (or the first
  /// usable standard basis vector) against e1.
  static PlaneEmbedding for_segment(const Segment& x, const std::optional<Vector>& seed = {}) {
    const double n = x.x2.norm();
    if (n < kDirectionTol) throw Error(ErrorKind::InvalidInstance, "x2 is zero");
    PlaneEmbedding p;
    p.e1 = x.x2 / n;
    const auto dim = p.e1.size();
    if (dim == 2 && !seed) {
      p.e2 = make_vector({-p.e1(1), p.e1(0)});
      return p;
    }
    auto orthogonalize = [&](const Vector& s) -> std::optional<Vector> {
      Vector r = s - s.dot(p.e1) * p.e1;
      const double rn = r.norm();
      if (rn < 1e-6) return std::nullopt;
      return r / rn;
    };
    if (seed) {
      if (seed->size() != dim) throw Error(ErrorKind::DimensionMismatch, "plane seed dimension");
      auto e2 = orthogonalize(*seed);
      if (!e2) throw Error(ErrorKind::Degenerate, "plane seed is parallel to x2");
      p.e2 = *e2;
      return p;
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
      Vector e = Vector::Zero(dim);
      e(k) = 1;
      if (auto e2 = orthogonalize(e)) {
        p.e2 = *e2;
        return p;
      }
    }
    throw Error(ErrorKind::Degenerate, "no plane seed available");
  }
};

/// Y ∩ P expressed as a 2D polytope in plane coordinates.
inline Polytope section_2d(const Polytope& y, const PlaneEmbedding& plane) {
  if (plane.e1.size() != y.dim() || plane.e2.size() != y.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "plane dimension differs from polytope");
  }
  std::vector<HalfSpace> hs;
  for (const auto& h : y.halfspaces()) {
    const Vec2 a(h.normal.dot(plane.e1), h.normal.dot(plane.e2));
    if (a.norm() < kDirectionTol) {
      if (h.offset < -kMembershipTol) throw Error(ErrorKind::EmptySection, "plane misses polytope");
      continue;
    }
    hs.push_back(HalfSpace::make(polytope_detail::from2(a), h.offset));
  }
  try {
    return Polytope::from_halfspaces(hs, 2);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Empty) throw Error(ErrorKind::EmptySection, "plane misses polytope");
    throw;
  }
}

/// X + Y for a segment X in the plane: hull of the two translates of Y.
inline Polytope minkowski_segment_2d(const Polytope& y, const Segment& x) {
  if (y.dim() != 2 || x.dim() != 2) {
    throw Error(ErrorKind::DimensionUnsupported, "minkowski_segment_2d needs dim 2");
  }
  std::vector<Vector> pts;
  for (const auto& v : y.vertices()) {
    pts.push_back(v + x.x1);
    pts.push_back(v + x.x2);
  }
  return Polytope::from_vertices_2d(pts);
}

struct Violation {
  std::string check;
  double margin = 0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  /// Checks that were waived (for example collinearity in exploration mode);
  /// a report with entries here is inconclusive even when ok.
  std::vector<Violation> waived;

  bool inconclusive() const { return !waived.empty(); }
};

struct ValidationOptions {
  bool allow_noncollinear = false;
};

/// Checks the hypotheses under which the quotient is defined and the
/// direction theorem applies. Each check records a margin; positive is good.
inline ValidationReport validate_instance(const Segment& x, const Polytope& y,
                                          ValidationOptions opts = {}) {
  if (x.x1.size() != y.dim() || x.x2.size() != y.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "segment and polytope dimensions differ");
  }
  ValidationReport rep;
  auto record = [&](const char* name, double margin, bool waivable = false) {
    if (margin > 0) return;
    if (waivable && opts.allow_noncollinear) {
      rep.waived.push_back({name, margin});
    } else {
      rep.violations.push_back({name, margin});
    }
  };
  record("neg_x1_in_interior", y.min_slack(-x.x1) - kStrictMargin);
  record("neg_x2_in_interior", y.min_slack(-x.x2) - kStrictMargin);
  const double interior =
      y.vertices().size() > static_cast<std::size_t>(y.dim()) ? y.min_slack(y.centroid()) : 0.0;
  record("full_dimensional", interior - kStrictMargin);
  record("distinct_endpoints", (x.x1 - x.x2).norm() - kDirectionTol);
  const double n2 = x.x2.norm();
  record("x2_nonzero", n2 - kDirectionTol);
  if (n2 >= kDirectionTol) {
    const Vector u = x.x2 / n2;
    const double off_line = (x.x1 - x.x1.dot(u) * u).norm();
    record("collinear_with_origin", kMembershipTol - off_line, true);
  }
  rep.ok = rep.violations.empty();
  return rep;
}

inline void require_valid(const Segment& x, const Polytope& y, ValidationOptions opts = {}) {
  const auto rep = validate_instance(x, y, opts);
  if (!rep.ok) {
    throw Error(ErrorKind::InvalidInstance, "failed check " + rep.violations.front().check);
  }
}

}  // namespace mmq
