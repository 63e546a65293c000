#pragma once

// Instance files, profile CSV and JSON reports.
//
// Instance JSON:
//   {"dimension": n,
//    "X": {"x1": [...], "x2": [...]},
//    "Y": {"vertices": [[...], ...], "halfspaces": [{"a": [...], "b": b}, ...]}}
// A planar Y may give either list; for n > 2 both are required. Reports round
// every float to 12 significant digits; instance files keep full precision so
// a written instance reads back bit for bit.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmq/quotient.hpp"
#include "mmq/sweep.hpp"
#include "mmq/verify.hpp"

namespace mmq {

using json = nlohmann::json;

inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v) + 0.0;
}

inline json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

inline json faces_json(const std::vector<std::size_t>& f) { return f; }

namespace io_detail {

inline Vector read_vector(const json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw Error(ErrorKind::Malformed, std::string(what) + " must be an array of " + std::to_string(dim) + " numbers");
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[i].is_number()) throw Error(ErrorKind::Malformed, std::string(what) + " holds a non-number");
    v(i) = j[i].get<double>();
  }
  if (!all_finite(v)) throw Error(ErrorKind::Malformed, std::string(what) + " is not finite");
  return v;
}

inline json raw_vec(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace io_detail

struct InstanceFile {
  Segment x;
  Polytope y;
};

inline InstanceFile parse_instance(const json& j) {
  using io_detail::read_vector;
  try {
    if (!j.is_object() || !j.contains("dimension") || !j.contains("X") || !j.contains("Y")) {
      throw Error(ErrorKind::Malformed, "instance needs dimension, X and Y");
    }
    const int dim = j.at("dimension").get<int>();
    if (dim < 2) throw Error(ErrorKind::Malformed, "dimension must be at least 2");
    const auto& jx = j.at("X");
    InstanceFile out;
    out.x = {read_vector(jx.at("x1"), dim, "x1"), read_vector(jx.at("x2"), dim, "x2")};

    const auto& jy = j.at("Y");
    std::vector<Vector> verts;
    std::vector<HalfSpace> hs;
    if (jy.contains("vertices")) {
      for (const auto& v : jy.at("vertices")) verts.push_back(read_vector(v, dim, "vertex"));
    }
    if (jy.contains("halfspaces")) {
      for (const auto& h : jy.at("halfspaces")) {
        if (!h.at("b").is_number()) throw Error(ErrorKind::Malformed, "half-space offset is not a number");
        hs.push_back(HalfSpace::make(read_vector(h.at("a"), dim, "normal"), h.at("b").get<double>()));
      }
    }
    if (!verts.empty() && !hs.empty()) {
      out.y = Polytope::from_both(hs, verts, dim);
    } else if (dim == 2 && !verts.empty()) {
      out.y = Polytope::from_vertices_2d(verts);
    } else if (dim == 2 && !hs.empty()) {
      out.y = Polytope::from_halfspaces(hs, 2);
    } else {
      throw Error(ErrorKind::Malformed, dim == 2 ? "Y needs vertices or halfspaces"
                                                 : "Y needs both vertices and halfspaces above 2D");
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Malformed, e.what());
  }
}

inline InstanceFile read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Malformed, "cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Malformed, e.what());
  }
  return parse_instance(j);
}

inline json instance_json(const Segment& x, const Polytope& y) {
  using io_detail::raw_vec;
  json j;
  j["dimension"] = y.dim();
  j["X"] = {{"x1", raw_vec(x.x1)}, {"x2", raw_vec(x.x2)}};
  json verts = json::array();
  for (const auto& v : y.vertices()) verts.push_back(raw_vec(v));
  json hs = json::array();
  for (const auto& h : y.halfspaces()) hs.push_back({{"a", raw_vec(h.normal)}, {"b", h.offset}});
  j["Y"] = {{"vertices", verts}, {"halfspaces", hs}};
  return j;
}

/// The worked hexagon: Y with vertices (+-1, +-2), (+-3, 0), X from (0, -0.5) to (0, 1).
inline json hexagon_instance_json() {
  return json::parse(R"({
  "dimension": 2,
  "X": {"x1": [0, -0.5], "x2": [0, 1]},
  "Y": {"vertices": [[1, 2], [3, 0], [1, -2], [-1, -2], [-3, 0], [-1, 2]]}
})");
}

inline InstanceFile hexagon_instance() { return parse_instance(hexagon_instance_json()); }

inline json quotient_json(const QuotientValue& q) {
  json j;
  j["d"] = vec_json(q.d);
  j["r"] = num(q.r);
  j["N"] = num(q.numerator);
  j["M"] = num(q.denominator);
  j["t_N"] = num(q.t_N);
  j["x_N"] = vec_json(q.x_N);
  j["y_N"] = vec_json(q.y_N);
  j["x_M"] = vec_json(q.x_M);
  j["y_M"] = vec_json(q.y_M);
  j["x_M_is_x1"] = q.x_M_is_x1;
  j["denominator_tie"] = q.denominator_tie;
  j["lambda_x1"] = num(q.lambda_x1);
  j["lambda_x2"] = num(q.lambda_x2);
  j["D"] = q.D ? num(*q.D) : json(nullptr);
  j["delta_N"] = q.delta_N ? num(*q.delta_N) : json(nullptr);
  j["delta_M"] = q.delta_M ? num(*q.delta_M) : json(nullptr);
  j["faces_N"] = q.faces_N;
  j["faces_M"] = q.faces_M;
  j["faces_D"] = q.faces_D;
  return j;
}

inline json argmax_json(const ArgmaxResult& a) {
  return {{"d_star", vec_json(a.d_star)},
          {"r_star", num(a.r_star)},
          {"r_plus", num(a.r_plus)},
          {"r_minus", num(a.r_minus)},
          {"tie", a.tie}};
}

inline json validation_json(const ValidationReport& v) {
  json viol = json::array();
  for (const auto& x : v.violations) viol.push_back({{"check", x.check}, {"margin", num(x.margin)}});
  json waived = json::array();
  for (const auto& x : v.waived) waived.push_back({{"check", x.check}, {"margin", num(x.margin)}});
  return {{"ok", v.ok}, {"inconclusive", v.inconclusive()}, {"violations", viol}, {"waived", waived}};
}

inline const char* origin_name(RayOrigin o) {
  switch (o) {
    case RayOrigin::Origin: return "origin";
    case RayOrigin::X1: return "x1";
    case RayOrigin::X2: return "x2";
  }
  return "?";
}

inline json events_json(const SweepProfile& p) {
  json a = json::array();
  for (const auto& e : p.events) {
    a.push_back({{"beta", num(e.beta)},
                 {"vertex_id", e.vertex_id},
                 {"vertex", vec_json(p.vertex_world(e.vertex_id))},
                 {"endpoint", origin_name(e.origin)},
                 {"ray_kind", std::string(to_string(e.ray_kind))}});
  }
  return a;
}

inline json lemma_json(const LemmaReport& r) {
  json j = json::object();
  for (const auto& c : r.checks) {
    j[c.name] = {{"pass", c.pass}, {"worst_margin", num(c.worst_margin)}, {"location_beta", num(c.location_beta)}};
  }
  return j;
}

inline json profile_summary_json(const SweepProfile& p) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& s : p.samples) top = std::max(top, s.q.r);
  json ext = json::array();
  for (double e : p.external_angles) ext.push_back(num(e));
  return {{"samples", p.samples.size()},
          {"arcs", p.arcs.size()},
          {"events", p.events.size()},
          {"max_r", num(top)},
          {"alpha0", num(p.alpha0)},
          {"v_pi", {{"vertex_id", p.v_pi}, {"vertex", vec_json(p.vertex_world(p.v_pi))}}},
          {"v_2pi", {{"vertex_id", p.v_2pi}, {"vertex", vec_json(p.vertex_world(p.v_2pi))}}},
          {"external_angles", ext}};
}

inline const char* kProfileHeader =
    "beta,dx,dy,r,N,M,tN,xM_is_x1,faceN,faceM,faceD,arc_id,is_event_adjacent";

inline std::string join_faces(const std::vector<std::size_t>& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(f[i]);
  }
  return s;
}

/// dx, dy are world coordinates for planar instances and plane coordinates otherwise.
inline void write_profile_csv(std::ostream& os, const SweepProfile& p) {
  os << kProfileHeader << '\n';
  for (const auto& s : p.samples) {
    const double dx = s.d_world.size() == 2 ? s.d_world(0) : s.d_plane.x();
    const double dy = s.d_world.size() == 2 ? s.d_world(1) : s.d_plane.y();
    os << fmt12(s.beta) << ',' << fmt12(dx) << ',' << fmt12(dy) << ',' << fmt12(s.q.r) << ','
       << fmt12(s.q.numerator) << ',' << fmt12(s.q.denominator) << ',' << fmt12(s.q.t_N) << ','
       << (s.q.x_M_is_x1 ? 1 : 0) << ',' << join_faces(s.q.faces_N) << ',' << join_faces(s.q.faces_M) << ','
       << join_faces(s.q.faces_D) << ',' << s.arc_id << ',' << (s.event_adjacent ? 1 : 0) << '\n';
  }
}

inline json campaign_json(const CampaignReport& r) {
  json checks = json::object();
  for (const auto& c : r.checks) {
    checks[c.name] = {{"evaluations", c.evaluations},
                      {"failures", c.failures},
                      {"worst_margin", num(c.worst_margin)}};
  }
  json fails = json::array();
  for (const auto& f : r.failures) {
    fails.push_back({{"seed", f.seed}, {"check", f.check}, {"margin", num(f.margin)}, {"where", num(f.where)}});
  }
  return {{"campaign", r.name}, {"trials", r.trials}, {"ok", r.ok()}, {"checks", checks}, {"failures", fails}};
}

}  // namespace mmq
