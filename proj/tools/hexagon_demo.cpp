// Library walk-through on the hexagon instance: a few quotients, the
// maximizing direction, and a short sweep with its lemma checks.

#include <cstdio>

#include "mmq/io.hpp"

int main() {
  using namespace mmq;
  const auto inst = hexagon_instance();

  for (const auto& d : {make_vector({0, 1}), make_vector({0, -1}), make_vector({1, 0})}) {
    const auto q = quotient(Direction(d), inst.x, inst.y);
    std::printf("d = (%g, %g): N = %.9g  M = %.9g  r = %.9g\n", d(0), d(1), q.numerator, q.denominator, q.r);
  }

  const auto best = argmax_direction(inst.x, inst.y);
  std::printf("argmax: d* = (%g, %g), r* = %.9g (other candidate %.9g)\n", best.d_star(0), best.d_star(1),
              best.r_star, best.r_star == best.r_plus ? best.r_minus : best.r_plus);

  const auto prof = sweep_profile(inst.x, inst.y, 20);
  const auto vpi = prof.vertex_world(prof.v_pi);
  const auto v2pi = prof.vertex_world(prof.v_2pi);
  std::printf("sweep: %zu samples on %zu arcs, v_pi = (%g, %g), v_2pi = (%g, %g)\n", prof.samples.size(),
              prof.arcs.size(), vpi(0), vpi(1), v2pi(0), v2pi(1));
  for (const auto& c : analyze_profile(prof).checks) {
    std::printf("  %-26s %s\n", c.name.c_str(), c.pass ? "pass" : "FAIL");
  }
}
