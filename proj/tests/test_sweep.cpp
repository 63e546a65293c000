#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "mmq/io.hpp"

using namespace mmq;

namespace {

constexpr double kPi = std::numbers::pi;

Vector world(const SweepProfile& p, std::size_t id) { return p.vertex_world(id); }

Polytope rotated(const Polytope& y, double angle) {
  std::vector<Vector> vs;
  for (const auto& v : y.vertices()) {
    vs.push_back(make_vector({std::cos(angle) * v(0) - std::sin(angle) * v(1),
                              std::sin(angle) * v(0) + std::cos(angle) * v(1)}));
  }
  return Polytope::from_vertices_2d(vs);
}

}  // namespace

TEST(Sweep, HexagonHasEighteenDistinctEvents) {
  const auto inst = hexagon_instance();
  const auto plane = PlaneEmbedding::for_segment(inst.x);
  const auto ev = event_angles(sweep_detail::to_plane(inst.x, plane), section_2d(inst.y, plane));
  ASSERT_EQ(ev.size(), 18u);
  for (std::size_t i = 1; i < ev.size(); ++i) EXPECT_GT(ev[i].beta - ev[i - 1].beta, 1e-6);
  for (const auto& e : ev) {
    EXPECT_GE(e.beta, 0);
    EXPECT_LT(e.beta, kTwoPi);
  }
}

TEST(Sweep, EventAnglesOfVertexThreeZero) {
  const auto inst = hexagon_instance();
  const auto prof = sweep_profile(inst.x, inst.y, 3);
  bool origin_seen = false;
  bool x2_seen = false;
  for (const auto& e : prof.events) {
    if ((world(prof, e.vertex_id) - make_vector({3, 0})).norm() > 1e-12) continue;
    if (e.origin == RayOrigin::Origin) {
      EXPECT_NEAR(e.beta, kPi / 2, 1e-12);
      EXPECT_EQ(e.ray_kind, RayKind::DExit);
      origin_seen = true;
    }
    if (e.origin == RayOrigin::X2) {
      EXPECT_NEAR(e.beta, kPi / 2 - std::atan(1.0 / 3), 1e-12);
      x2_seen = true;
    }
  }
  EXPECT_TRUE(origin_seen && x2_seen);
}

TEST(Sweep, HexagonVPiAndV2Pi) {
  const auto inst = hexagon_instance();
  const auto prof = sweep_profile(inst.x, inst.y, 3);
  EXPECT_NEAR((world(prof, prof.v_pi) - make_vector({3, 0})).norm(), 0, 1e-12);
  EXPECT_NEAR((world(prof, prof.v_2pi) - make_vector({-3, 0})).norm(), 0, 1e-12);
}

TEST(Sweep, SquareVPiTieRule) {
  // Faces of the square sit exactly at pi; the vertex ending that face is v_pi.
  const auto y = Polytope::from_vertices_2d(
      {make_vector({2, 2}), make_vector({-2, 2}), make_vector({-2, -2}), make_vector({2, -2})});
  const Segment x{make_vector({0, -0.5}), make_vector({0, 1})};
  const auto prof = sweep_profile(x, y, 3);
  EXPECT_NEAR((world(prof, prof.v_pi) - make_vector({2, -2})).norm(), 0, 1e-12);
  EXPECT_NEAR((world(prof, prof.v_2pi) - make_vector({-2, 2})).norm(), 0, 1e-12);
}

TEST(Sweep, VPiRotatesWithInstance) {
  const auto inst = hexagon_instance();
  const double a = 10 * kPi / 180;
  const auto y = rotated(inst.y, a);
  const Segment x{make_vector({0.5 * std::sin(a), -0.5 * std::cos(a)}), make_vector({-std::sin(a), std::cos(a)})};
  const auto prof = sweep_profile(x, y, 3);
  const Vector expect = make_vector({3 * std::cos(a), 3 * std::sin(a)});
  EXPECT_NEAR((world(prof, prof.v_pi) - expect).norm(), 0, 1e-9);
}

TEST(Sweep, ExternalAnglesAndStaircase) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto inst = random_instance(campaign_params(seed));
    const auto prof = sweep_profile(inst.x, inst.y, 3);
    double sum = 0;
    for (double e : prof.external_angles) {
      EXPECT_GT(e, 0);
      EXPECT_LT(e, kPi);
      sum += e;
    }
    EXPECT_NEAR(sum, kTwoPi, 1e-9);
    double prev = prof.alpha0;
    for (const auto& s : prof.staircase) {
      EXPECT_GE(s.level, prev);
      prev = s.level;
    }
    EXPECT_NEAR(prof.staircase.back().level - prof.alpha0, kTwoPi, 1e-9);
  }
}

TEST(Sweep, HexagonProfileMaximum) {
  const auto inst = hexagon_instance();
  const auto prof = sweep_profile(inst.x, inst.y, 5);
  double top = 0;
  for (const auto& s : prof.samples) top = std::max(top, s.q.r);
  EXPECT_NEAR(top, 2.5, 1e-9);
  bool pi_arc_has_max = false;
  for (const auto& a : prof.arcs) {
    if (a.contains_angle(kPi)) pi_arc_has_max = std::abs(a.r_max - 2.5) < 1e-9;
  }
  EXPECT_TRUE(pi_arc_has_max);
}

TEST(Sweep, ProfileShape) {
  const auto inst = hexagon_instance();
  const auto prof = sweep_profile(inst.x, inst.y, 4);
  for (std::size_t i = 1; i < prof.samples.size(); ++i) EXPECT_LE(prof.samples[i - 1].beta, prof.samples[i].beta);
  for (const auto& a : prof.arcs) EXPECT_GE(a.sample_ids.size(), 3u);
  for (const auto& s : prof.samples) {
    EXPECT_FALSE(s.q.faces_N.empty());
    EXPECT_FALSE(s.q.faces_M.empty());
    EXPECT_FALSE(s.q.faces_D.empty());
  }
}

TEST(Sweep, HexagonLemmasPass) {
  const auto inst = hexagon_instance();
  const auto rep = analyze_profile(sweep_profile(inst.x, inst.y, 20));
  ASSERT_EQ(rep.checks.size(), 5u);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.worst_margin;
}

TEST(Sweep, CorruptedSampleBreaksOnlyConstancy) {
  const auto inst = hexagon_instance();
  auto prof = sweep_profile(inst.x, inst.y, 20);
  // A sample in the middle of a same-face arc away from 0, pi and the clusters.
  const Arc* target = nullptr;
  for (const auto& a : prof.arcs) {
    if (a.same_face && !a.contains_angle(0) && !a.contains_angle(kPi)) target = &a;
  }
  ASSERT_NE(target, nullptr);
  prof.samples[target->sample_ids[target->sample_ids.size() / 2]].q.r += 1e-4;
  const auto rep = analyze_profile(prof);
  EXPECT_FALSE(rep.find("face_constancy")->pass);
  for (const char* other : {"monotonicity", "global_max_at_0_or_pi", "witness_identities"}) {
    EXPECT_TRUE(rep.find(other)->pass) << other;
  }
}

TEST(Sweep, SymmetricInstanceMirrors) {
  const auto y = hexagon_instance().y;
  const Segment x{make_vector({0, -0.5}), make_vector({0, 0.5})};
  const auto plane = PlaneEmbedding::for_segment(x);
  for (double b = 0.05; b < kPi; b += 0.1) {
    const auto a = quotient(Direction(plane.to_world(sweep_direction(b))), x, y);
    const auto m = quotient(Direction(plane.to_world(sweep_direction(kTwoPi - b))), x, y);
    EXPECT_NEAR(a.r, m.r, 1e-9) << b;
  }
}

TEST(Sweep, WitnessStructure) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = random_instance(campaign_params(seed));
    const auto prof = sweep_profile(inst.x, inst.y, 5);
    for (const auto& s : prof.samples) {
      const Vector xm = s.q.x_M_is_x1 ? prof.x_plane.x1 : prof.x_plane.x2;
      EXPECT_NEAR((s.q.x_M - xm).norm(), 0, 1e-15);
    }
    for (const auto& a : prof.arcs) {
      const bool in_cluster = [&] {
        for (const auto* sp : {&prof.span_pi, &prof.span_2pi}) {
          for (double b : {a.mid_beta, a.mid_beta + kTwoPi}) {
            if (b > sp->start && b < sp->end) return true;
          }
        }
        return false;
      }();
      if (!in_cluster) EXPECT_TRUE(a.mid.t_N == 0 || a.mid.t_N == 1) << seed << " arc " << a.id;
    }
  }
}

TEST(Sweep, DenseSamplingNeverExceedsAxisValues) {
  const auto inst = random_instance(campaign_params(11));
  const auto prof = sweep_profile(inst.x, inst.y, 10000 / 15 + 1);
  const auto best = argmax_direction(inst.x, inst.y);
  for (const auto& s : prof.samples) EXPECT_LE(s.q.r, std::max(best.r_plus, best.r_minus) + 1e-6);
}

TEST(Sweep, RandomInstancesPassAllLemmas) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = random_instance(campaign_params(seed));
    const auto rep = analyze_profile(sweep_profile(inst.x, inst.y, 10));
    for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << "seed " << seed << " " << c.name;
  }
}

TEST(Sweep, OriginOutsideSegmentRegime) {
  const auto y = hexagon_instance().y;
  const Segment x{make_vector({0, 0.3}), make_vector({0, 1})};
  const auto rep = analyze_profile(sweep_profile(x, y, 10));
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name;
}

TEST(Sweep, ThreeDimensionalPlane) {
  std::vector<HalfSpace> hs;
  std::vector<Vector> vs;
  for (int k = 0; k < 3; ++k) {
    for (int s : {-1, 1}) {
      Vector n = Vector::Zero(3);
      n(k) = s;
      hs.push_back(HalfSpace::make(n, 2));
    }
  }
  for (int i = 0; i < 8; ++i) vs.push_back(make_vector({i & 1 ? 2.0 : -2.0, i & 2 ? 2.0 : -2.0, i & 4 ? 2.0 : -2.0}));
  const auto y = Polytope::from_both(hs, vs, 3);
  const Segment x{make_vector({0, 0, -0.5}), make_vector({0, 0, 1})};
  const auto prof = sweep_profile(x, y, PlaneEmbedding::for_segment(x, make_vector({1, 1, 0})), 10);
  double top = 0;
  for (const auto& s : prof.samples) top = std::max(top, s.q.r);
  EXPECT_NEAR(top, 2.5, 1e-9);
  for (const auto& c : analyze_profile(prof).checks) EXPECT_TRUE(c.pass) << c.name;
}

TEST(Sweep, PlaneMustContainX) {
  const auto y = hexagon_instance().y;
  const Segment x{make_vector({0.2, -0.5}), make_vector({0, 1})};
  EXPECT_THROW(sweep_profile(x, y, 5), Error);
}

TEST(Sweep, TooFewSamplesRejected) {
  const auto inst = hexagon_instance();
  EXPECT_THROW(sweep_profile(inst.x, inst.y, 2), Error);
}
