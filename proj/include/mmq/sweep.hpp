#pragma once

// Direction sweep in a plane containing X.
//
// Directions are d(beta) = cos(beta) e1 - sin(beta) e2 with e1 = x2/|x2|, so
// beta grows clockwise from x2. Everything here works in plane coordinates:
// X maps onto the first axis and Y onto its planar section.
//
// Any of the three witness rays (from the origin, from -x1, from -x2) changes
// face only when it passes a vertex v, i.e. at the direction of v + x. Those
// event angles cut the circle into arcs; the quotient is sampled on every arc
// and the arc sequence is checked against the structure the direction theorem
// predicts: constant on shared-face arcs, non-increasing up to the crossing of
// v_pi, non-decreasing up to pi, and the mirror image on the second half.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmq/polytope.hpp"
#include "mmq/quotient.hpp"
#include "mmq/ray.hpp"

namespace mmq {

enum class RayKind { DExit, YN, YM };

inline std::string_view to_string(RayKind k) {
  switch (k) {
    case RayKind::DExit: return "d-exit";
    case RayKind::YN: return "yN-ray";
    case RayKind::YM: return "yM-ray";
  }
  return "?";
}

/// Which point the event ray starts from: the origin, -x1 or -x2.
enum class RayOrigin { Origin, X1, X2 };

struct SweepEvent {
  double beta = 0;
  std::size_t vertex_id = 0;
  RayKind ray_kind = RayKind::DExit;
  RayOrigin origin = RayOrigin::Origin;
};

/// Angle of direction w in the sweep parametrization (plane coordinates).
inline double sweep_angle(const Vec2& w) { return clockwise_angle(Vec2(1, 0), w); }

inline Vec2 sweep_direction(double beta) { return {std::cos(beta), -std::sin(beta)}; }

namespace sweep_detail {

inline Vec2 v2(const Vector& v) { return {v(0), v(1)}; }

inline Segment to_plane(const Segment& x, const PlaneEmbedding& plane) {
  const Vec2 a = plane.to_plane(x.x1);
  const Vec2 b = plane.to_plane(x.x2);
  return {make_vector({a.x(), a.y()}), make_vector({b.x(), b.y()})};
}

// CW traversal direction of face i (edge v_i -> v_{i+1} of the CCW ring).
inline Vec2 face_direction(const Polytope& yp, std::size_t i) {
  const auto& vs = yp.vertices();
  const Vec2 a = v2(vs[i]);
  const Vec2 b = v2(vs[(i + 1) % vs.size()]);
  return (a - b).normalized();
}

}  // namespace sweep_detail

/// Vertex-crossing candidates for the three rays, sorted by beta. Ray kinds
/// are provisional (DExit for the origin, YN otherwise); sweep_profile labels
/// endpoint rays by the witness role they play at the event.
inline std::vector<SweepEvent> event_angles(const Segment& xp, const Polytope& yp) {
  if (yp.dim() != 2 || xp.dim() != 2) {
    throw Error(ErrorKind::DimensionUnsupported, "event_angles works in plane coordinates");
  }
  std::vector<SweepEvent> events;
  const std::pair<RayOrigin, Vec2> shifts[] = {{RayOrigin::Origin, Vec2::Zero()},
                                               {RayOrigin::X1, sweep_detail::v2(xp.x1)},
                                               {RayOrigin::X2, sweep_detail::v2(xp.x2)}};
  for (std::size_t i = 0; i < yp.vertices().size(); ++i) {
    const Vec2 v = sweep_detail::v2(yp.vertices()[i]);
    for (const auto& [origin, shift] : shifts) {
      const Vec2 w = v + shift;
      if (w.norm() < kDirectionTol) continue;
      events.push_back({sweep_angle(w), i,
                        origin == RayOrigin::Origin ? RayKind::DExit : RayKind::YN, origin});
    }
  }
  std::sort(events.begin(), events.end(), [](const SweepEvent& a, const SweepEvent& b) {
    if (a.beta != b.beta) return a.beta < b.beta;
    if (a.vertex_id != b.vertex_id) return a.vertex_id < b.vertex_id;
    return a.origin < b.origin;
  });
  std::vector<SweepEvent> unique;
  for (const auto& e : events) {
    const bool dup = !unique.empty() && std::abs(unique.back().beta - e.beta) <= kDirectionTol &&
                     unique.back().vertex_id == e.vertex_id && unique.back().origin == e.origin;
    if (!dup) unique.push_back(e);
  }
  return unique;
}

struct StaircaseStep {
  std::size_t vertex_id = 0;
  /// alpha + beta on the face entered after crossing the vertex.
  double level = 0;
};

struct VertexPiResult {
  std::size_t v_pi = 0;
  std::size_t v_2pi = 0;
  /// alpha at beta = 0: clockwise angle from x2 to the face hit first.
  double alpha0 = 0;
  std::size_t start_face = 0;
  /// External angle at each vertex, indexed like the vertices.
  std::vector<double> external_angles;
  std::vector<StaircaseStep> staircase;
};

/// Walks the faces of the section clockwise from the one hit at beta = 0,
/// accumulating external angles onto alpha0. v_pi (v_2pi) is the first vertex
/// whose crossing lifts alpha + beta strictly above pi (2 pi); a face sitting
/// exactly on the level is passed over, so the vertex ending it is reported.
inline VertexPiResult find_v_pi_v_2pi(const Polytope& yp, const Segment& xp) {
  using sweep_detail::face_direction;
  const std::size_t q = yp.vertices().size();
  if (yp.dim() != 2 || q < 3) throw Error(ErrorKind::Degenerate, "section is not a polygon");
  if (yp.halfspaces().size() != q) throw Error(ErrorKind::Inconsistent, "section is not canonical");
  (void)xp;  // the plane already aligns x2 with the first axis

  VertexPiResult out;
  out.external_angles.resize(q);
  for (std::size_t i = 0; i < q; ++i) {
    // Vertex i ends face i (clockwise) and starts face i - 1.
    out.external_angles[i] = clockwise_angle(face_direction(yp, i), face_direction(yp, (i + q - 1) % q));
  }

  const Vector zero = Vector::Zero(2);
  const Vector ref = contains(yp, zero, true) ? zero : yp.centroid();
  const auto exit = ray_exit(yp, ref, Direction(make_vector({1.0, 0.0})));
  std::size_t start = exit.active_faces.front();
  for (std::size_t f : exit.active_faces) {
    // At a vertex hit, beta = 0+ is already on the clockwise-later face.
    const bool has_next = std::find(exit.active_faces.begin(), exit.active_faces.end(),
                                    (f + 1) % q) != exit.active_faces.end();
    if (has_next) start = f;
  }
  out.start_face = start;
  out.alpha0 = sweep_angle(face_direction(yp, start));

  double level = out.alpha0;
  bool found_pi = false;
  bool found_2pi = false;
  std::size_t face = start;
  for (std::size_t step = 0; step < q; ++step) {
    const std::size_t vertex = face;
    level += out.external_angles[vertex];
    out.staircase.push_back({vertex, level});
    if (!found_pi && level > std::numbers::pi + kMembershipTol) {
      out.v_pi = vertex;
      found_pi = true;
    }
    if (!found_2pi && level > kTwoPi + kMembershipTol) {
      out.v_2pi = vertex;
      found_2pi = true;
    }
    face = (face + q - 1) % q;
  }
  if (!found_pi || !found_2pi) throw Error(ErrorKind::Degenerate, "staircase never crossed pi");
  return out;
}

/// Angular range, clockwise from `start`, swept by the three rays of one
/// vertex; `end` may exceed 2 pi.
struct CrossingSpan {
  std::size_t vertex_id = 0;
  double start = 0;
  double end = 0;
};

inline CrossingSpan crossing_span(const Polytope& yp, const Segment& xp, std::size_t vertex) {
  const Vec2 v = sweep_detail::v2(yp.vertices().at(vertex));
  const double angles[] = {sweep_angle(v), sweep_angle(v + sweep_detail::v2(xp.x1)),
                           sweep_angle(v + sweep_detail::v2(xp.x2))};
  CrossingSpan best{vertex, 0, std::numeric_limits<double>::infinity()};
  for (double s : angles) {
    double width = 0;
    for (double a : angles) width = std::max(width, wrap_two_pi(a - s));
    if (width < best.end - best.start) best = {vertex, s, s + width};
  }
  return best;
}

struct SweepSample {
  double beta = 0;
  Vec2 d_plane;
  Vector d_world;
  QuotientValue q;
  /// Clockwise angle from d to the face the origin ray exits through.
  std::optional<double> alpha;
  std::size_t arc_id = 0;
  bool event_adjacent = false;
};

struct Arc {
  std::size_t id = 0;
  /// Unwrapped bounds; the first arc contains beta = 0 and may start below 0.
  double start = 0;
  double end = 0;
  std::vector<std::size_t> sample_ids;
  double r_min = 0;
  double r_max = 0;
  double mid_beta = 0;
  QuotientValue mid;
  /// All three rays on one common face throughout the arc.
  bool same_face = false;

  bool contains_angle(double beta) const {
    for (double b : {beta, beta - kTwoPi, beta + kTwoPi}) {
      if (b >= start - kDirectionTol && b <= end + kDirectionTol) return true;
    }
    return false;
  }
};

struct SweepProfile {
  PlaneEmbedding plane;
  Polytope section;
  Segment x_plane;
  /// Endpoint with the larger coordinate along x2 is x2 (always when 0 is in X).
  bool far_is_x2 = true;
  std::vector<SweepSample> samples;
  std::vector<SweepEvent> events;
  std::vector<Arc> arcs;
  std::size_t v_pi = 0;
  std::size_t v_2pi = 0;
  CrossingSpan span_pi;
  CrossingSpan span_2pi;
  double alpha0 = 0;
  std::vector<double> external_angles;
  std::vector<StaircaseStep> staircase;

  Vector vertex_world(std::size_t id) const { return plane.to_world(sweep_detail::v2(section.vertices().at(id))); }
};

namespace sweep_detail {

inline bool singleton_match(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return a.size() == 1 && b.size() == 1 && a[0] == b[0];
}

// One face carries all three rays. With no origin ray (0 outside Y) the two
// witness rays decide.
inline bool shares_face(const QuotientValue& q) {
  if (!singleton_match(q.faces_N, q.faces_M)) return false;
  return q.faces_D.empty() || singleton_match(q.faces_N, q.faces_D);
}

}  // namespace sweep_detail

/// Samples r over a full revolution in the plane. Every arc between distinct
/// event angles gets `samples_per_arc` interior points plus both ends offset
/// by 1e-7, and one extra midpoint evaluation kept on the arc itself.
inline SweepProfile sweep_profile(const Segment& x, const Polytope& y, const PlaneEmbedding& plane,
                                  int samples_per_arc, ValidationOptions opts = {}) {
  using namespace sweep_detail;
  if (samples_per_arc < 3) throw Error(ErrorKind::Malformed, "samples_per_arc must be >= 3");
  require_valid(x, y, opts);
  for (const Vector* p : {&x.x1, &x.x2}) {
    if ((*p - plane.to_world(plane.to_plane(*p))).norm() > kMembershipTol) {
      throw Error(ErrorKind::InvalidInstance, "plane does not contain X");
    }
  }

  SweepProfile prof;
  prof.plane = plane;
  prof.section = section_2d(y, plane);
  prof.x_plane = to_plane(x, plane);
  prof.far_is_x2 = prof.x_plane.x2(0) >= prof.x_plane.x1(0);
  const Polytope& yp = prof.section;
  const Segment& xp = prof.x_plane;

  auto evaluate = [&](double beta) {
    const Vec2 dp = sweep_direction(beta);
    return quotient(Direction(make_vector({dp.x(), dp.y()})), xp, yp);
  };

  prof.events = event_angles(xp, yp);
  for (auto& e : prof.events) {
    if (e.origin == RayOrigin::Origin) continue;
    const auto q = evaluate(e.beta);
    const bool is_x1 = e.origin == RayOrigin::X1;
    e.ray_kind = q.x_M_is_x1 == is_x1 ? RayKind::YM : RayKind::YN;
  }

  const auto vp = find_v_pi_v_2pi(yp, xp);
  prof.v_pi = vp.v_pi;
  prof.v_2pi = vp.v_2pi;
  prof.alpha0 = vp.alpha0;
  prof.external_angles = vp.external_angles;
  prof.staircase = vp.staircase;
  prof.span_pi = crossing_span(yp, xp, vp.v_pi);
  prof.span_2pi = crossing_span(yp, xp, vp.v_2pi);

  std::vector<double> cuts;
  for (const auto& e : prof.events) {
    if (cuts.empty() || e.beta - cuts.back() > kDirectionTol) cuts.push_back(e.beta);
  }
  std::vector<std::pair<double, double>> bounds;
  if (cuts.empty()) {
    bounds.emplace_back(0.0, kTwoPi);
  } else {
    bounds.emplace_back(cuts.back() - kTwoPi, cuts.front());
    for (std::size_t k = 1; k < cuts.size(); ++k) bounds.emplace_back(cuts[k - 1], cuts[k]);
  }

  constexpr double kEndOffset = 1e-7;
  std::vector<SweepSample> samples;
  for (std::size_t id = 0; id < bounds.size(); ++id) {
    const auto [s, e] = bounds[id];
    Arc arc;
    arc.id = id;
    arc.start = s;
    arc.end = e;
    const double len = e - s;
    std::vector<std::pair<double, bool>> betas;
    if (len > 4 * kEndOffset) betas.emplace_back(s + kEndOffset, true);
    for (int j = 1; j <= samples_per_arc; ++j) {
      betas.emplace_back(s + len * j / (samples_per_arc + 1), false);
    }
    if (len > 4 * kEndOffset) betas.emplace_back(e - kEndOffset, true);

    arc.mid_beta = wrap_two_pi(0.5 * (s + e));
    arc.mid = evaluate(arc.mid_beta);
    arc.r_min = arc.r_max = arc.mid.r;
    arc.same_face = shares_face(arc.mid);
    for (const auto& [b, adjacent] : betas) {
      SweepSample smp;
      smp.beta = wrap_two_pi(b);
      smp.d_plane = sweep_direction(smp.beta);
      smp.d_world = y.dim() == 2 ? plane.to_world(smp.d_plane) : make_vector({smp.d_plane.x(), smp.d_plane.y()});
      smp.q = evaluate(smp.beta);
      if (smp.q.faces_D.size() == 1) {
        smp.alpha = clockwise_angle(smp.d_plane, face_direction(yp, smp.q.faces_D[0]));
      }
      smp.arc_id = id;
      smp.event_adjacent = adjacent;
      arc.r_min = std::min(arc.r_min, smp.q.r);
      arc.r_max = std::max(arc.r_max, smp.q.r);
      arc.same_face = arc.same_face && shares_face(smp.q) &&
                      smp.q.faces_N == arc.mid.faces_N;
      samples.push_back(std::move(smp));
    }
    prof.arcs.push_back(std::move(arc));
  }

  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a].beta < samples[b].beta; });
  prof.samples.reserve(samples.size());
  for (std::size_t i : order) {
    prof.arcs[samples[i].arc_id].sample_ids.push_back(prof.samples.size());
    prof.samples.push_back(std::move(samples[i]));
  }
  return prof;
}

/// Sweep in the standard plane of X; a non-collinear X (waived validation)
/// uses the plane spanned by x2 and x1.
inline SweepProfile sweep_profile(const Segment& x, const Polytope& y, int samples_per_arc,
                                  ValidationOptions opts = {}) {
  std::optional<Vector> seed;
  if (opts.allow_noncollinear && y.dim() > 2) {
    const Vector u = x.x2.normalized();
    if ((x.x1 - x.x1.dot(u) * u).norm() > 1e-6) seed = x.x1;
  }
  return sweep_profile(x, y, PlaneEmbedding::for_segment(x, seed), samples_per_arc, opts);
}

struct LemmaCheck {
  std::string name;
  bool pass = true;
  /// Distance to failing; negative when the check fails.
  double worst_margin = 0;
  double location_beta = 0;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.pass; });
  }
  const LemmaCheck* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace sweep_detail {

inline double rel_tol(double r) { return 1e-9 * std::max(1.0, std::abs(r)); }

// Tracks the smallest margin seen and where it occurred.
struct Worst {
  double margin = std::numeric_limits<double>::infinity();
  double beta = 0;
  void see(double m, double b) {
    if (m < margin) {
      margin = m;
      beta = b;
    }
  }
  LemmaCheck finish(std::string name, double empty_margin) const {
    const double m = std::isfinite(margin) ? margin : empty_margin;
    return {std::move(name), m >= 0, m, beta};
  }
};

struct Region {
  double lo;
  double hi;
  int trend;  // -1 non-increasing, +1 non-decreasing
  bool far_is_numerator;
};

inline std::vector<Region> regions(const SweepProfile& p) {
  const double pi = std::numbers::pi;
  return {{0.0, p.span_pi.start, -1, true},
          {p.span_pi.end, pi, +1, false},
          {pi, p.span_2pi.start, -1, false},
          {p.span_2pi.end, kTwoPi, +1, true}};
}

// Arcs overlapping [lo, hi] with positive length, in sweep order; the arc
// through beta = 0 may appear at either end of the circle.
inline std::vector<std::pair<std::size_t, double>> arcs_in(const SweepProfile& p, double lo, double hi) {
  std::vector<std::pair<std::size_t, double>> out;  // (arc id, shift)
  for (double shift : {0.0, kTwoPi}) {
    for (const auto& a : p.arcs) {
      const double s = a.start + shift;
      const double e = a.end + shift;
      if (std::min(e, hi) - std::max(s, lo) > kDirectionTol) out.emplace_back(a.id, shift);
    }
  }
  return out;
}

inline bool in_region(double beta, const Region& r) { return beta > r.lo && beta < r.hi; }

// Cyclic gap between two angular intervals (0 when they overlap).
inline double interval_gap(double s1, double e1, double s2, double e2) {
  double best = std::numeric_limits<double>::infinity();
  for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
    const double a = s2 + shift;
    const double b = e2 + shift;
    best = std::min(best, std::max({0.0, a - e1, s1 - b}));
  }
  return best;
}

}  // namespace sweep_detail

/// Checks the profile against the structure predicted by the direction
/// theorem. Failures are recorded, never thrown.
inline LemmaReport analyze_profile(const SweepProfile& p) {
  using namespace sweep_detail;
  LemmaReport rep;
  const auto regs = regions(p);

  {  // (1) constant on arcs where one face carries all three rays
    Worst w;
    for (const auto& a : p.arcs) {
      if (!a.same_face) continue;
      double lo = a.mid.r;
      double hi = a.mid.r;
      for (auto i : a.sample_ids) {
        lo = std::min(lo, p.samples[i].q.r);
        hi = std::max(hi, p.samples[i].q.r);
      }
      w.see(rel_tol(hi) - (hi - lo), a.mid_beta);
    }
    rep.checks.push_back(w.finish("face_constancy", 1e-9));
  }

  {  // (2) monotone arc sequence between 0, the v_pi crossing, pi, the v_2pi crossing, 2 pi
    Worst w;
    for (const auto& reg : regs) {
      const auto seq = arcs_in(p, reg.lo, reg.hi);
      for (std::size_t k = 1; k < seq.size(); ++k) {
        const double prev = p.arcs[seq[k - 1].first].mid.r;
        const auto& cur = p.arcs[seq[k].first];
        const double rise = (cur.mid.r - prev) * reg.trend;
        w.see(rel_tol(cur.mid.r) + rise, cur.mid_beta);
      }
    }
    rep.checks.push_back(w.finish("monotonicity", 1e-9));
  }

  {  // (3) local minima of r sit on the two crossing clusters. Samples, not arc
     // midpoints: inside a crossing r varies and its dip can hide between them.
    struct Run {
      double start, end, value;
    };
    std::vector<Run> runs;
    for (const auto& s : p.samples) {
      if (!runs.empty() && std::abs(s.q.r - runs.back().value) <= rel_tol(s.q.r)) {
        runs.back().end = s.beta;
      } else {
        runs.push_back({s.beta, s.beta, s.q.r});
      }
    }
    if (runs.size() > 1 && std::abs(runs.front().value - runs.back().value) <= rel_tol(runs.front().value)) {
      runs.front().start = runs.back().start - kTwoPi;
      runs.front().value = std::min(runs.front().value, runs.back().value);
      runs.pop_back();
    }
    Worst w;
    if (runs.size() > 1) {
      std::vector<Run> minima;
      const std::size_t n = runs.size();
      for (std::size_t i = 0; i < n; ++i) {
        const double prev = runs[(i + n - 1) % n].value;
        const double next = runs[(i + 1) % n].value;
        if (runs[i].value < prev && runs[i].value < next) minima.push_back(runs[i]);
      }
      constexpr double kReach = 1e-6;
      const CrossingSpan* spans[] = {&p.span_pi, &p.span_2pi};
      for (const auto& m : minima) {
        double gap = std::numeric_limits<double>::infinity();
        for (const auto* s : spans) gap = std::min(gap, interval_gap(m.start, m.end, s->start, s->end));
        w.see(kReach - gap, wrap_two_pi(0.5 * (m.start + m.end)));
      }
      for (const auto* s : spans) {
        double gap = std::numeric_limits<double>::infinity();
        for (const auto& m : minima) gap = std::min(gap, interval_gap(m.start, m.end, s->start, s->end));
        if (minima.empty()) gap = 1.0;
        w.see(kReach - gap, wrap_two_pi(s->start));
      }
    }
    rep.checks.push_back(w.finish("local_minima_at_clusters", 1e-6));
  }

  {  // (4) the global maximum is reached on the arc through 0 or the arc through pi
    double at_axis = -std::numeric_limits<double>::infinity();
    for (const auto& a : p.arcs) {
      if (a.contains_angle(0.0) || a.contains_angle(std::numbers::pi)) at_axis = std::max(at_axis, a.r_max);
    }
    double top = -std::numeric_limits<double>::infinity();
    double where = 0;
    for (const auto& s : p.samples) {
      if (s.q.r > top) {
        top = s.q.r;
        where = s.beta;
      }
    }
    Worst w;
    w.see(rel_tol(top) - (top - at_axis), where);
    rep.checks.push_back(w.finish("global_max_at_0_or_pi", 1e-9));
  }

  {  // (5) witnesses: far endpoint maximizes, near endpoint minimizes before v_pi, swapped after
    Worst w;
    for (const auto& reg : regs) {
      for (const auto& a : p.arcs) {
        double mid = a.mid_beta;
        if (!in_region(mid, reg) && !in_region(mid + kTwoPi, reg)) continue;
        const auto& q = a.mid;
        const bool num_far = reg.far_is_numerator;
        const double lam_far = p.far_is_x2 ? q.lambda_x2 : q.lambda_x1;
        const double lam_near = p.far_is_x2 ? q.lambda_x1 : q.lambda_x2;
        const double lam_num = num_far ? lam_far : lam_near;
        const double lam_den = num_far ? lam_near : lam_far;
        const double miss = std::max(q.numerator - lam_num, lam_den - q.denominator);
        w.see(rel_tol(q.numerator) - miss, mid);
      }
    }
    rep.checks.push_back(w.finish("witness_identities", 1e-9));
  }
  return rep;
}

}  // namespace mmq
