#include <gtest/gtest.h>

#include "mmq/io.hpp"
#include "oracles.hpp"

using namespace mmq;

namespace {

Polytope cube(double a) {
  std::vector<HalfSpace> hs;
  std::vector<Vector> vs;
  for (int k = 0; k < 3; ++k) {
    for (int s : {-1, 1}) {
      Vector n = Vector::Zero(3);
      n(k) = s;
      hs.push_back(HalfSpace::make(n, a));
    }
  }
  for (int i = 0; i < 8; ++i) vs.push_back(make_vector({i & 1 ? a : -a, i & 2 ? a : -a, i & 4 ? a : -a}));
  return Polytope::from_both(hs, vs, 3);
}

// Frozen from the membership scan (t step 1/1000, lambda bisection) and the
// closed forms lambda* = 2 + s, 2 - s, 3 - |s| along (0, s).
struct Golden {
  Vector d;
  double n, m, r, t_n;
  bool at_x1;
};

}  // namespace

TEST(Quotient, HexagonGoldenValues) {
  const auto inst = hexagon_instance();
  const Golden cases[] = {{make_vector({0, 1}), 3, 1.5, 2, 1, true},
                          {make_vector({0, -1}), 2.5, 1, 2.5, 0, false},
                          {make_vector({1, 0}), 3, 2, 1.5, 1.0 / 3, false}};
  for (const auto& g : cases) {
    const auto q = quotient(Direction(g.d), inst.x, inst.y);
    EXPECT_NEAR(q.numerator, g.n, 1e-12);
    EXPECT_NEAR(q.denominator, g.m, 1e-12);
    EXPECT_NEAR(q.r, g.r, 1e-9);
    EXPECT_NEAR(q.t_N, g.t_n, 1e-12);
    EXPECT_EQ(q.x_M_is_x1, g.at_x1);
    const auto scan = oracle::quotient_scan(inst.x, inst.y, g.d, 1500, 1e-2);
    EXPECT_NEAR(q.numerator, scan.numerator, 1e-9);
    EXPECT_NEAR(q.denominator, scan.denominator, 1e-9);
  }
}

TEST(Quotient, HorizontalDirectionGaps) {
  const auto inst = hexagon_instance();
  const auto q = quotient(Direction(make_vector({1, 0})), inst.x, inst.y);
  ASSERT_TRUE(q.D.has_value());
  EXPECT_NEAR(*q.D, 3, 1e-12);
  EXPECT_NEAR(*q.delta_N, 0, 1e-12);
  EXPECT_NEAR(*q.delta_M, 1, 1e-12);
  EXPECT_NEAR(q.x_N.norm(), 0, 1e-12);
}

TEST(Quotient, WitnessesLieOnTheRay) {
  const auto inst = hexagon_instance();
  const Direction d(make_vector({0.4, -0.9}));
  const auto q = quotient(d, inst.x, inst.y);
  for (const auto& [x, y] : {std::pair{q.x_N, q.y_N}, std::pair{q.x_M, q.y_M}}) {
    const Vector s = x + y;
    EXPECT_NEAR(cross2(Vec2(s(0), s(1)), Vec2(d.vec()(0), d.vec()(1))), 0, 1e-12);
    EXPECT_NEAR(inst.y.min_slack(y), 0, 1e-12);
  }
  EXPECT_NEAR((q.x_N + q.y_N).norm(), q.numerator, 1e-12);
  EXPECT_NEAR((q.x_M + q.y_M).norm(), q.denominator, 1e-12);
}

TEST(Quotient, ArgmaxOnHexagon) {
  const auto inst = hexagon_instance();
  const auto a = argmax_direction(inst.x, inst.y);
  EXPECT_NEAR((a.d_star - make_vector({0, -1})).norm(), 0, 1e-15);
  EXPECT_NEAR(a.r_star, 2.5, 1e-9);
  EXPECT_NEAR(a.r_plus, 2, 1e-9);
  EXPECT_NEAR(a.r_minus, 2.5, 1e-9);
  EXPECT_FALSE(a.tie);
}

TEST(Quotient, SymmetricInstanceTies) {
  const auto y = hexagon_instance().y;
  const Segment x{make_vector({0, -0.5}), make_vector({0, 0.5})};
  const auto a = argmax_direction(x, y);
  EXPECT_TRUE(a.tie);
  EXPECT_NEAR(a.r_plus, a.r_minus, 1e-12);
}

TEST(Quotient, RatioAtLeastOne) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = random_instance(campaign_params(seed));
    for (int k = 0; k < 36; ++k) {
      const double a = kTwoPi * k / 36;
      const auto q = quotient(Direction(make_vector({std::cos(a), std::sin(a)})), inst.x, inst.y);
      EXPECT_GE(q.r, 1 - 1e-9);
      EXPECT_TRUE(q.t_N >= 0 && q.t_N <= 1);
    }
  }
}

TEST(Quotient, CubeInThreeDimensions) {
  const auto y = cube(2);
  const Segment x{make_vector({0, 0, -0.5}), make_vector({0, 0, 1})};
  const auto up = quotient(Direction(make_vector({0, 0, 1})), x, y);
  EXPECT_NEAR(up.r, 2, 1e-9);
  const auto a = argmax_direction(x, y);
  EXPECT_NEAR((a.d_star - make_vector({0, 0, -1})).norm(), 0, 1e-15);
  EXPECT_NEAR(a.r_star, 2.5, 1e-9);

  const Vector d = make_vector({0.3, -0.2, 0.5}).normalized();
  const auto q = quotient(Direction(d), x, y);
  const auto scan = oracle::quotient_scan(x, y, d, 1000, 1e-2);
  EXPECT_NEAR(q.numerator, scan.numerator, 1e-9);
  EXPECT_NEAR(q.denominator, scan.denominator, 1e-9);
}

TEST(Quotient, InvalidInstanceRejected) {
  const auto y = hexagon_instance().y;
  const Segment x{make_vector({0, -0.5}), make_vector({0, 2.5})};
  try {
    quotient(Direction(make_vector({0, 1})), x, y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInstance);
  }
}

TEST(Quotient, OracleOnHexagon) {
  const auto inst = hexagon_instance();
  for (const auto& d : {make_vector({0, 1}), make_vector({0, -1})}) {
    const auto exact = quotient(Direction(d), inst.x, inst.y);
    const auto o = quotient_oracle(Direction(d), inst.x, inst.y, 1000);
    EXPECT_NEAR(o.r, exact.r, 1e-2);
    EXPECT_LE(std::abs(o.r - exact.r), o.error_bound);
  }
}

TEST(Quotient, OracleConvergesFirstOrder) {
  const auto inst = random_instance(campaign_params(3));
  const Direction d(make_vector({0.6, -0.8}));
  const double exact = quotient(d, inst.x, inst.y).r;
  double prev = std::numeric_limits<double>::infinity();
  for (int grid : {100, 1000, 10000}) {
    const auto o = quotient_oracle(d, inst.x, inst.y, grid);
    const double err = std::abs(o.r - exact);
    EXPECT_LE(err, o.error_bound);
    EXPECT_LT(err, prev);
    prev = err;
  }
}
