// Command-line front end: eval, sweep, argmax, verify, bench, example.
//
// Exit codes: 0 ok, 2 malformed input or flags, 3 invalid instance,
// 4 lemma check failure, 5 campaign failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmq/io.hpp"

namespace {

using namespace mmq;

enum Exit { kOk = 0, kMalformed = 2, kInvalid = 3, kLemma = 4, kCampaign = 5 };

struct Invalid {
  ValidationReport report;
};

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

Vector parse_list(const std::string& text, const char* what) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Malformed, std::string(what) + " is not a comma-separated list of numbers");
    }
  }
  Vector v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  if (v.size() == 0 || !all_finite(v)) throw Error(ErrorKind::Malformed, std::string(what) + " is empty or not finite");
  return v;
}

InstanceFile load_valid(const std::string& path, ValidationOptions opts) {
  auto inst = read_instance(path);
  auto rep = validate_instance(inst.x, inst.y, opts);
  if (!rep.ok) throw Invalid{rep};
  return inst;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Malformed, "cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string sibling(const std::string& csv, const std::string& suffix) {
  std::filesystem::path p(csv);
  p.replace_extension();
  return p.string() + suffix;
}

int run_eval(const std::string& path, const std::string& dir_text, ValidationOptions opts) {
  const auto inst = load_valid(path, opts);
  const Vector raw = parse_list(dir_text, "direction");
  if (raw.size() != inst.y.dim()) throw Error(ErrorKind::DimensionMismatch, "direction dimension differs from instance");
  if (raw.norm() < kDirectionTol) throw Error(ErrorKind::ZeroDirection, "zero direction");
  const auto q = quotient(Direction(raw), inst.x, inst.y);
  json j = quotient_json(q);
  if (opts.allow_noncollinear) j["validation"] = validation_json(validate_instance(inst.x, inst.y, opts));
  print(j);
  return kOk;
}

struct SweepArgs {
  std::string instance;
  std::string out;
  std::string events;
  std::string report;
  std::string plane_seed;
  int samples_per_arc = 200;
};

int run_sweep(const SweepArgs& a, ValidationOptions opts) {
  const auto inst = load_valid(a.instance, opts);
  std::optional<SweepProfile> prof;
  if (!a.plane_seed.empty()) {
    const Vector seed = parse_list(a.plane_seed, "plane seed");
    prof = sweep_profile(inst.x, inst.y, PlaneEmbedding::for_segment(inst.x, seed), a.samples_per_arc, opts);
  } else {
    prof = sweep_profile(inst.x, inst.y, a.samples_per_arc, opts);
  }
  const auto lemmas = analyze_profile(*prof);
  {
    std::ofstream csv(a.out);
    if (!csv) throw Error(ErrorKind::Malformed, "cannot write " + a.out);
    write_profile_csv(csv, *prof);
  }
  const std::string events = a.events.empty() ? sibling(a.out, ".events.json") : a.events;
  const std::string report = a.report.empty() ? sibling(a.out, ".lemmas.json") : a.report;
  write_json_file(events, events_json(*prof));
  write_json_file(report, lemma_json(lemmas));
  json summary = profile_summary_json(*prof);
  summary["lemmas"] = lemma_json(lemmas);
  summary["profile"] = a.out;
  summary["events_file"] = events;
  summary["report_file"] = report;
  if (opts.allow_noncollinear) summary["validation"] = validation_json(validate_instance(inst.x, inst.y, opts));
  print(summary);
  return lemmas.all_pass() ? kOk : kLemma;
}

int run_argmax(const std::string& path, ValidationOptions opts) {
  const auto inst = load_valid(path, opts);
  print(argmax_json(argmax_direction(inst.x, inst.y)));
  return kOk;
}

struct VerifyArgs {
  std::string instance;
  int random = 0;
  std::uint64_t seed = 42;
  std::string report;
  int directions = 360;
  int grid = 1001;
  int sweep_samples = 3600;
  bool fault = false;
};

int run_verify(const VerifyArgs& a) {
  CampaignOptions opts;
  opts.directions = a.directions;
  opts.grid = a.grid;
  opts.sweep_samples = a.sweep_samples;
  const DenominatorFn denom = a.fault ? DenominatorFn([](const Direction& d, const Segment& x, const Polytope& y) {
    const auto v = denominator(d, x, y);
    return std::max(v.lambda_x1, v.lambda_x2);
  })
                                      : DenominatorFn(vertex_denominator);

  auto one = [&](const Segment& x, const Polytope& y, std::uint64_t seed, bool continuity) {
    CampaignReport rep;
    rep.name = "instance";
    rep.merge(verify_vertex_minimum(x, y, opts.directions, opts.grid, denom, seed));
    rep.merge(verify_theorem_max(x, y, opts.sweep_samples, seed));
    rep.merge(verify_lemmas(x, y, opts.samples_per_arc, seed));
    if (continuity) rep.merge(verify_continuity(x, y, opts.continuity_step, seed));
    rep.trials = 1;
    return rep;
  };

  CampaignReport total;
  if (!a.instance.empty()) {
    const auto inst = load_valid(a.instance, {});
    total = one(inst.x, inst.y, 0, true);
    total.name = "instance";
  } else {
    total.name = "random";
    for (int i = 0; i < a.random; ++i) {
      const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(i);
      const auto inst = random_instance(campaign_params(seed));
      total.merge(one(inst.x, inst.y, seed, false));
    }
  }
  const json j = campaign_json(total);
  if (!a.report.empty()) write_json_file(a.report, j);
  print(j);
  return total.ok() ? kOk : kCampaign;
}

template <class F>
double median_ms(int repeats, F&& f) {
  std::vector<double> ms;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(ms.begin(), ms.end());
  return ms[ms.size() / 2];
}

int run_bench(const std::string& path, int naive_grid, int repeats) {
  const auto inst = load_valid(path, {});
  if (inst.y.dim() != 2) throw Error(ErrorKind::DimensionUnsupported, "bench needs a planar instance");
  NaiveResult naive;
  ArgmaxResult exact;
  const double naive_ms = median_ms(repeats, [&] { naive = naive_search(inst.x, inst.y, naive_grid); });
  // The analytic path is too fast to time once; time a batch and divide.
  constexpr int kBatch = 1000;
  const double exact_ms = median_ms(repeats, [&] {
                            for (int i = 0; i < kBatch; ++i) exact = argmax_direction(inst.x, inst.y);
                          }) /
                          kBatch;
  const double diff = std::abs(naive.r_star - exact.r_star);
  print({{"naive_grid", naive_grid},
         {"repeats", repeats},
         {"naive_ms", num(naive_ms)},
         {"analytic_ms", num(exact_ms)},
         {"speedup", num(naive_ms / exact_ms)},
         {"naive_r_star", num(naive.r_star)},
         {"naive_d_star", vec_json(naive.d_star)},
         {"analytic_r_star", num(exact.r_star)},
         {"analytic_d_star", vec_json(exact.d_star)},
         {"difference", num(diff)},
         {"error_bound", num(naive.error_bound)},
         {"within_bound", diff <= naive.error_bound}});
  return kOk;
}

int run_example(const std::string& name, const std::string& out) {
  if (name != "hexagon") throw Error(ErrorKind::Malformed, "unknown example " + name);
  const auto j = hexagon_instance_json();
  if (out.empty()) {
    print(j);
  } else {
    write_json_file(out, j);
  }
  return kOk;
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Malformed:
    case ErrorKind::ZeroDirection:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::TooManyConstraints:
      return kMalformed;
    default:
      return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximax minimax quotient of a segment and a polytope"};
  app.require_subcommand(1);

  ValidationOptions vopts;
  std::string instance;

  std::string direction;
  auto* eval = app.add_subcommand("eval", "evaluate r, N and M along one direction");
  eval->add_option("--instance", instance, "instance JSON")->required();
  eval->add_option("--direction", direction, "comma-separated direction")->required();
  eval->add_flag("--allow-noncollinear", vopts.allow_noncollinear, "waive the collinearity check");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "sweep r over the plane containing X");
  sweep->add_option("--instance", sa.instance, "instance JSON")->required();
  sweep->add_option("--out", sa.out, "profile CSV")->required();
  sweep->add_option("--events", sa.events, "events JSON (default: <out>.events.json)");
  sweep->add_option("--report", sa.report, "lemma report JSON (default: <out>.lemmas.json)");
  sweep->add_option("--samples-per-arc", sa.samples_per_arc, "samples per arc")->check(CLI::Range(3, 1000000));
  sweep->add_option("--plane-seed", sa.plane_seed, "second plane axis seed for n > 2");
  sweep->add_flag("--allow-noncollinear", vopts.allow_noncollinear, "waive the collinearity check");

  auto* argmax = app.add_subcommand("argmax", "maximizing direction");
  argmax->add_option("--instance", instance, "instance JSON")->required();
  argmax->add_flag("--allow-noncollinear", vopts.allow_noncollinear, "waive the collinearity check");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "verification campaigns");
  auto* vi = verify->add_option("--instance", va.instance, "instance JSON");
  auto* vr = verify->add_option("--random", va.random, "number of random instances")->check(CLI::Range(1, 100000));
  vi->excludes(vr);
  verify->add_option("--seed", va.seed, "first seed for --random");
  verify->add_option("--report", va.report, "campaign report JSON");
  verify->add_option("--directions", va.directions, "directions per instance")->check(CLI::Range(1, 100000));
  verify->add_option("--grid", va.grid, "grid points along X")->check(CLI::Range(2, 1000000));
  verify->add_option("--sweep-samples", va.sweep_samples, "samples per sweep")->check(CLI::Range(3, 10000000));
  verify->add_flag("--inject-fault", va.fault, "use the larger endpoint value as denominator");

  int naive_grid = 200;
  int repeats = 5;
  auto* bench = app.add_subcommand("bench", "naive nested search against the analytic answer");
  bench->add_option("--instance", instance, "instance JSON")->required();
  bench->add_option("--naive-grid", naive_grid, "grid size of the naive search")->check(CLI::Range(2, 100000));
  bench->add_option("--repeats", repeats, "timing repeats (median reported)")->check(CLI::Range(1, 1000));

  std::string example_name;
  std::string example_out;
  auto* example = app.add_subcommand("example", "write a built-in instance");
  example->add_option("name", example_name, "example name (hexagon)")->required();
  example->add_option("--out", example_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (*eval) return run_eval(instance, direction, vopts);
    if (*sweep) return run_sweep(sa, vopts);
    if (*argmax) return run_argmax(instance, vopts);
    if (*verify) {
      if (va.instance.empty() && va.random == 0) throw Error(ErrorKind::Malformed, "verify needs --instance or --random");
      return run_verify(va);
    }
    if (*bench) return run_bench(instance, naive_grid, repeats);
    if (*example) return run_example(example_name, example_out);
  } catch (const Invalid& inv) {
    print(validation_json(inv.report));
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  }
  return kMalformed;
}
