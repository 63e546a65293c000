#pragma once

// Seeded campaigns tying each theorem to an independent numerical check, the
// random instance generator they run on, and the naive nested search used by
// the benchmark.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mmq/quotient.hpp"
#include "mmq/sweep.hpp"

namespace mmq {

/// SplitMix64 (Steele, Lea, Flood 2014). Constants are the published ones, so
/// a seed replays identically in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

struct InstanceParams {
  std::uint64_t seed = 1;
  int n_vertices_Y = 6;
  std::pair<double, double> radius_range{1.0, 3.0};
  double segment_scale = 0.5;
  /// 0 gives a centrally symmetric instance (X and Y); larger values skew
  /// |x1| against |x2| and let the generator place 0 outside X.
  double asymmetry = 0.5;
};

struct Instance {
  Segment x;
  Polytope y;
  bool origin_in_x = true;
};

/// Y is the hull of points at sorted random angles (no gap reaching 0.9 pi)
/// and random radii; X lies on a random line through the origin and is
/// shrunk by 0.9 until -X sits inside Y with margin 0.05 * min radius.
inline Instance random_instance(const InstanceParams& params) {
  const auto [r_lo, r_hi] = params.radius_range;
  if (params.n_vertices_Y < 3 || params.n_vertices_Y > 24 || !(r_lo > 0) || !(r_hi >= r_lo) ||
      !(params.segment_scale > 0 && params.segment_scale < 1) ||
      !(params.asymmetry >= 0 && params.asymmetry <= 1)) {
    throw Error(ErrorKind::Malformed, "instance parameters out of range");
  }
  SplitMix64 rng(params.seed);
  const double pi = std::numbers::pi;
  const bool symmetric = params.asymmetry == 0;
  const double margin = 0.05 * r_lo;

  int attempts = 0;
  while (attempts < 1000) {
    ++attempts;
    std::vector<double> angles;
    std::vector<double> radii;
    const int base = symmetric ? (params.n_vertices_Y + 1) / 2 : params.n_vertices_Y;
    for (int i = 0; i < base; ++i) {
      angles.push_back(rng.uniform(0, symmetric ? pi : kTwoPi));
      radii.push_back(rng.uniform(r_lo, r_hi));
    }
    if (symmetric) {
      for (int i = 0; i < base; ++i) {
        angles.push_back(angles[i] + pi);
        radii.push_back(radii[i]);
      }
    }
    std::vector<std::size_t> order(angles.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return angles[a] < angles[b]; });
    double gap = angles[order.front()] + kTwoPi - angles[order.back()];
    for (std::size_t i = 1; i < order.size(); ++i) gap = std::max(gap, angles[order[i]] - angles[order[i - 1]]);
    if (gap >= 0.9 * pi) continue;

    std::vector<Vector> pts;
    for (auto i : order) pts.push_back(make_vector({radii[i] * std::cos(angles[i]), radii[i] * std::sin(angles[i])}));
    Polytope y;
    try {
      y = Polytope::from_vertices_2d(pts);
    } catch (const Error&) {
      continue;
    }

    const double phi = rng.uniform(0, kTwoPi);
    const Vector u = make_vector({std::cos(phi), std::sin(phi)});
    const double len = params.segment_scale * r_lo;
    bool origin_in_x = true;
    Segment x;
    if (symmetric) {
      x = {-len * u, len * u};
    } else if (rng.uniform() < 0.5) {
      const double a = len * (1 + params.asymmetry * rng.uniform());
      const double b = len * (1 - 0.9 * params.asymmetry * rng.uniform());
      x = {-b * u, a * u};
    } else {
      origin_in_x = false;
      double c = rng.uniform(0.1, 0.9);
      if (rng.uniform() < 0.5) c = 1 / c;
      const double a = len * (1 + params.asymmetry * rng.uniform());
      x = {c * a * u, a * u};
    }
    while (attempts < 1000 && (y.min_slack(-x.x1) < margin || y.min_slack(-x.x2) < margin)) {
      ++attempts;
      x = {0.9 * x.x1, 0.9 * x.x2};
    }
    if (validate_instance(x, y).ok && y.min_slack(-x.x1) >= margin && y.min_slack(-x.x2) >= margin) {
      return {x, y, origin_in_x};
    }
  }
  throw Error(ErrorKind::GenerationFailed, "no valid instance within 1000 attempts");
}

struct CampaignFailure {
  std::uint64_t seed = 0;
  std::string check;
  double margin = 0;
  /// Direction angle (or sweep beta) where the check failed.
  double where = 0;
};

struct CheckSummary {
  std::string name;
  std::size_t evaluations = 0;
  std::size_t failures = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
};

struct CampaignReport {
  std::string name;
  std::size_t trials = 0;
  std::vector<CampaignFailure> failures;
  std::vector<CheckSummary> checks;

  bool ok() const { return failures.empty(); }

  CheckSummary& check(const std::string& check_name) {
    for (auto& c : checks) {
      if (c.name == check_name) return c;
    }
    checks.push_back({check_name});
    return checks.back();
  }

  /// Records one evaluation; margin < 0 is a failure.
  void record(const std::string& check_name, double margin, double where, std::uint64_t seed = 0) {
    auto& c = check(check_name);
    ++c.evaluations;
    c.worst_margin = std::min(c.worst_margin, margin);
    if (margin < 0) {
      ++c.failures;
      failures.push_back({seed, check_name, margin, where});
    }
  }

  void merge(const CampaignReport& other) {
    trials += other.trials;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    for (const auto& c : other.checks) {
      auto& mine = check(c.name);
      mine.evaluations += c.evaluations;
      mine.failures += c.failures;
      mine.worst_margin = std::min(mine.worst_margin, c.worst_margin);
    }
  }
};

using DenominatorFn = std::function<double(const Direction&, const Segment&, const Polytope&)>;

inline double vertex_denominator(const Direction& d, const Segment& x, const Polytope& y) {
  return denominator(d, x, y).value;
}

namespace verify_detail {

// Unit direction at angle k * 2 pi / n, in the plane of X when n > 2.
inline Direction campaign_direction(const PlaneEmbedding& plane, int dim, int k, int n) {
  const double a = kTwoPi * k / n;
  if (dim == 2) return Direction(make_vector({std::cos(a), std::sin(a)}));
  return Direction(plane.to_world(Vec2(std::cos(a), std::sin(a))));
}

}  // namespace verify_detail

/// Compares the two-endpoint denominator with the minimum of lambda* over a
/// uniform grid of X, for `directions` equally spaced directions.
inline CampaignReport verify_vertex_minimum(const Segment& x, const Polytope& y, int directions, int grid,
                                            const DenominatorFn& denom = vertex_denominator,
                                            std::uint64_t seed = 0) {
  CampaignReport rep;
  rep.name = "vertex_minimum";
  rep.trials = 1;
  const auto plane = PlaneEmbedding::for_segment(x);
  for (int k = 0; k < directions; ++k) {
    const auto d = verify_detail::campaign_direction(plane, y.dim(), k, directions);
    double grid_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid; ++j) {
      const double t = grid > 1 ? static_cast<double>(j) / (grid - 1) : 0.0;
      grid_min = std::min(grid_min, lambda_star(x.at(t), d, y));
    }
    const double gap = std::abs(grid_min - denom(d, x, y));
    rep.record("vertex_minimum", 1e-9 * std::max(1.0, grid_min) - gap, kTwoPi * k / directions, seed);
  }
  return rep;
}

/// Sweeps r over a full revolution of the plane containing X and checks it
/// against argmax_direction: nothing exceeds r_star, and the sweep maximum is
/// attained on the arcs through beta = 0 or pi.
inline CampaignReport verify_theorem_max(const Segment& x, const Polytope& y, int sweep_samples,
                                         std::uint64_t seed = 0) {
  CampaignReport rep;
  rep.name = "theorem_max";
  rep.trials = 1;
  const auto best = argmax_direction(x, y);
  const auto plane = PlaneEmbedding::for_segment(x);
  const auto yp = section_2d(y, plane);
  const auto xp = sweep_detail::to_plane(x, plane);
  const std::size_t arcs = std::max<std::size_t>(1, event_angles(xp, yp).size());
  const int per_arc = std::max<int>(3, static_cast<int>((sweep_samples + arcs - 1) / arcs));
  const auto prof = sweep_profile(x, y, plane, per_arc);

  double top = -std::numeric_limits<double>::infinity();
  double where = 0;
  for (const auto& s : prof.samples) {
    if (s.q.r > top) {
      top = s.q.r;
      where = s.beta;
    }
  }
  double at_axis = -std::numeric_limits<double>::infinity();
  for (const auto& a : prof.arcs) {
    if (a.contains_angle(0.0) || a.contains_angle(std::numbers::pi)) at_axis = std::max(at_axis, a.r_max);
  }
  rep.record("sweep_below_r_star", best.r_star + 1e-6 - top, where, seed);
  rep.record("max_on_axis_arcs", at_axis - (top - 1e-6), where, seed);
  return rep;
}

/// Margin of the worst consecutive jump below 50 times the median jump (floor
/// 1e-9), and the index of that jump; negative flags a suspected discontinuity.
inline std::pair<double, std::size_t> jump_margin(const std::vector<double>& series) {
  if (series.size() < 2) return {std::numeric_limits<double>::infinity(), 0};
  std::vector<double> jumps;
  for (std::size_t k = 1; k < series.size(); ++k) jumps.push_back(std::abs(series[k] - series[k - 1]));
  auto sorted = jumps;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double limit = std::max(50 * sorted[sorted.size() / 2], 1e-9);
  double worst = std::numeric_limits<double>::infinity();
  std::size_t at = 0;
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    if (limit - jumps[k] < worst) {
      worst = limit - jumps[k];
      at = k;
    }
  }
  return {worst, at};
}

/// Scans lambda*(x1), lambda*(x2), N and M over a beta grid and flags any
/// consecutive jump larger than 50 times the median jump of that series.
inline CampaignReport verify_continuity(const Segment& x, const Polytope& y, double grid_step,
                                        std::uint64_t seed = 0) {
  if (!(grid_step > 0) || grid_step > 1) throw Error(ErrorKind::Malformed, "grid_step must be in (0, 1]");
  CampaignReport rep;
  rep.name = "continuity";
  rep.trials = 1;
  const auto plane = PlaneEmbedding::for_segment(x);
  const auto n = static_cast<int>(std::ceil(kTwoPi / grid_step));
  const char* names[] = {"lambda_x1", "lambda_x2", "N", "M"};
  std::vector<std::vector<double>> series(4);
  for (int k = 0; k <= n; ++k) {
    const double beta = std::min(k * grid_step, kTwoPi);
    const Direction d(plane.to_world(sweep_direction(beta)));
    const auto q = quotient(d, x, y);
    const double vals[] = {q.lambda_x1, q.lambda_x2, q.numerator, q.denominator};
    for (int s = 0; s < 4; ++s) series[s].push_back(vals[s]);
  }
  for (int s = 0; s < 4; ++s) {
    const auto [worst, k] = jump_margin(series[s]);
    const double at = (k + 1) * grid_step;
    rep.record(std::string("jump_") + names[s], worst, at, seed);
  }
  return rep;
}

/// Runs the lemma analyzer on a sweep and folds its checks into a report.
inline CampaignReport verify_lemmas(const Segment& x, const Polytope& y, int samples_per_arc,
                                    std::uint64_t seed = 0) {
  CampaignReport rep;
  rep.name = "lemmas";
  rep.trials = 1;
  const auto lemmas = analyze_profile(sweep_profile(x, y, samples_per_arc));
  for (const auto& c : lemmas.checks) rep.record(c.name, c.pass ? std::max(0.0, c.worst_margin) : std::min(-1e-300, c.worst_margin), c.location_beta, seed);
  return rep;
}

struct CampaignOptions {
  int directions = 360;
  int grid = 1001;
  int sweep_samples = 3600;
  int samples_per_arc = 50;
  double continuity_step = 1e-3;
  bool continuity = true;
};

/// Every campaign on one instance.
inline CampaignReport verify_instance(const Segment& x, const Polytope& y, const CampaignOptions& opts,
                                      std::uint64_t seed = 0) {
  CampaignReport rep;
  rep.name = "instance";
  rep.merge(verify_vertex_minimum(x, y, opts.directions, opts.grid, vertex_denominator, seed));
  rep.merge(verify_theorem_max(x, y, opts.sweep_samples, seed));
  rep.merge(verify_lemmas(x, y, opts.samples_per_arc, seed));
  if (opts.continuity) rep.merge(verify_continuity(x, y, opts.continuity_step, seed));
  rep.trials = 1;
  return rep;
}

/// Seeds seed, seed + 1, ...; asymmetry cycles so both regimes of 0 in X and
/// 0 outside X appear.
inline InstanceParams campaign_params(std::uint64_t seed) {
  InstanceParams p;
  p.seed = seed;
  SplitMix64 rng(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
  p.n_vertices_Y = 3 + static_cast<int>(rng.next() % 10);
  p.radius_range = {1.0, rng.uniform(1.5, 4.0)};
  p.segment_scale = rng.uniform(0.2, 0.9);
  p.asymmetry = rng.uniform(0.1, 1.0);
  return p;
}

/// Result of the naive nested search: directions x t-grid x lambda-scan.
struct NaiveResult {
  double r_star = 0;
  Vector d_star;
  /// Bound on |naive r_star - exact r_star| from the lambda and t spacing.
  double error_bound = 0;
};

inline NaiveResult naive_search(const Segment& x, const Polytope& y, int grid) {
  if (y.dim() != 2) throw Error(ErrorKind::DimensionUnsupported, "naive search is planar");
  if (grid < 2) throw Error(ErrorKind::Malformed, "grid must be at least 2");
  double reach = 0;
  for (const auto& v : y.vertices()) reach = std::max(reach, v.norm());
  const double lambda_box = reach + std::max(x.x1.norm(), x.x2.norm());
  const double h = lambda_box / grid;

  NaiveResult out;
  out.r_star = -1;
  double m_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    const double a = kTwoPi * k / grid;
    const Vector d = make_vector({std::cos(a), std::sin(a)});
    double num = 0;
    double den = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= grid; ++j) {
      const Vector xt = x.at(static_cast<double>(j) / grid);
      double best = 0;
      for (int i = 1; i <= grid; ++i) {
        if (!contains(y, i * h * d - xt, false)) break;
        best = i * h;
      }
      num = std::max(num, best);
      den = std::min(den, best);
    }
    m_min = std::min(m_min, den);
    if (den > 0 && num / den > out.r_star) {
      out.r_star = num / den;
      out.d_star = d;
    }
  }
  out.error_bound = m_min > h ? h * (1 + out.r_star) / (m_min - h) : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace mmq
