// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances are pinned here, next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hullscope/bishop.hpp"
#include "hullscope/errors.hpp"
#include "hullscope/extremal.hpp"
#include "hullscope/fiber.hpp"
#include "hullscope/log.hpp"
#include "hullscope/membership.hpp"
#include "hullscope/runs.hpp"
#include "support.hpp"

using namespace hullscope;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  std::getline(in, line);  // hash
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    rows.push_back(f);
  }
  return rows;
}

const fs::path kRoot = fs::temp_directory_path() / "hullscope_acceptance";

// ---- run configurations shared with the determinism check ----

FiberRun graph_fiber_run(const fs::path& dir) {
  FiberRun r;
  r.curve_path = testing::data_path("graph.json");
  r.out_dir = dir.string();
  r.M = 3.0;
  r.grid = 16;
  r.d_max = 6;
  r.e_max = 6;
  r.random_z = 30;
  r.seed = 2;
  r.tube = 0.02;
  r.z_grid = ZGrid{cx(0.2, 0.1), 0.05, 4, 4};
  return r;
}

BishopRun decay_run(const fs::path& dir) {
  BishopRun r;
  r.curve_path = testing::data_path("cubic.json");
  r.out_dir = dir.string();
  r.d_list = {3, 4, 5, 6, 7, 8, 9};
  r.e_list = {3};
  r.domain = DomainSpec::disk(2.0);
  return r;
}

MeasureRun measure_run(const fs::path& dir) {
  MeasureRun r;
  r.out_dir = dir.string();
  r.seed = 5;
  r.trials = 100;
  r.k_max = 10;
  r.alphas = {0.05, 0.1, 0.2};
  r.monomial_degrees = {1, 5, 10};
  r.n_samples = 100000;
  return r;
}

// ---- criteria ----

Outcome axis_oracle() {
  const CurveC2 axis = testing::axis_curve();
  // At 32 directions the polygonal relaxation alone can lift a degree-4 value
  // by (1/cos(pi/32))^(1/4) = 1.0012, past the 1.001 ceiling; 64 directions
  // keep it under. The floor below holds for any direction count >= 32.
  ExtremalOptions opt;
  opt.directions = 64;
  const BestConstantEvaluator eval(axis, 10, opt);
  const double lo_factor = std::pow(std::cos(std::numbers::pi / 32), 0.1);
  const double hi_factor = 1.001;
  Rng rng(1);
  int bad = 0;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const cx z = rng.in_disk(5.0);
    const double m = std::max(1.0, std::abs(z));
    const BestConstant b = eval({z, 0.0});
    const bool ok = b.value >= m * lo_factor && b.value <= m * hi_factor;
    bad += ok ? 0 : 1;
    worst = std::max(worst, std::abs(b.value / m - 1.0));
  }
  int bounded_off = 0;
  for (int t = 0; t < 10; ++t) {
    const cx z = rng.in_disk(5.0);
    cx w = rng.in_disk(2.0);
    if (std::abs(w) < 1e-3) w = 1e-3;
    bounded_off += std::isinf(eval({z, w}).value) ? 0 : 1;
  }
  return {bad == 0 && bounded_off == 0, "K_dir 64: " + std::to_string(bad) + "/50 outside bracket, max |M/max(1,|z|)-1| = " +
                                           fmt("%.2e", worst) + ", off-axis bounded: " + std::to_string(bounded_off) + "/10"};
}

Outcome graph_oracle(const fs::path& dir) {
  const FiberRun cfg = graph_fiber_run(dir);
  const RunOutput out = run_fiber(cfg);
  const json& fibers = out.summary["fibers"];
  std::vector<int> count(fibers.size(), 0);
  std::vector<double> dist(fibers.size(), kInf);
  for (const auto& row : csv_rows(dir / "fiber.csv")) {
    const auto i = static_cast<std::size_t>(std::stoi(row[0]));
    const cx z(std::stod(row[2]), std::stod(row[3])), w(std::stod(row[4]), std::stod(row[5]));
    ++count[i];
    dist[i] = std::min(dist[i], std::abs(w - z * z));
  }
  int bad = 0, checked = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    if (fibers[i]["source"] != "random") continue;
    ++checked;
    const double h = fibers[i]["grid_spacing"].get<double>();
    const bool ok = count[i] == 1 && dist[i] <= 2.0 * h;
    bad += ok ? 0 : 1;
    if (count[i] == 1) worst = std::max(worst, dist[i]);
  }
  const json& an = out.summary["analyticity"];
  double residual = kInf;
  bool traced = false;
  for (const auto& b : an["branches"]) {
    if (b["evaluated"].get<int>() == 0) continue;
    traced = true;
    residual = std::min(residual, b["max_residual"].get<double>());
  }
  const bool analytic = traced && an["failed"].empty() && residual <= 1e-3;
  return {checked == 30 && bad == 0 && analytic,
          std::to_string(bad) + "/" + std::to_string(checked) + " fibers off z^2, max |w - z^2| = " + fmt("%.2e", worst) +
              ", branches " + std::to_string(an["branches"].size()) + ", analyticity residual " + fmt("%.2e", residual)};
}

Outcome bishop_decay(const fs::path& dir) {
  run_bishop(decay_run(dir));
  const json side = json::parse(slurp(dir / "decay.json"));
  const bool all_pass = side["summary"]["all_pass"].get<bool>();
  const double r = side["summary"]["r"].get<double>();
  const auto& recs = side["records"];
  double worst_rate = 0.0;
  for (std::size_t i = recs.size() - 3; i < recs.size(); ++i) {
    const auto& v = recs[i]["empirical_rate"];
    worst_rate = std::max(worst_rate, v.is_number() ? v.get<double>() : kInf);
  }
  return {all_pass && r == 0.5 && worst_rate <= 0.55,
          "r = " + fmt("%.6g", r) + ", C = " + fmt("%.6g", side["summary"]["fitted_C"].get<double>()) +
              ", all pass: " + (all_pass ? "yes" : "no") + ", max rate (d=7..9) " + fmt("%.3e", worst_rate)};
}

Outcome zero_order_bound() {
  bool ok = true;
  std::string detail;
  for (int lambda : {1, 3, 5}) {
    const VanishingBoundReport r = vanishing_bound_check(DomainSpec::disk(3.0), 0.0, lambda, 100, 11 + lambda);
    const bool eq = std::abs(r.extremal_ratio - 1.0) <= 1e-12;
    ok = ok && r.trials == 100 && r.failures == 0 && r.max_ratio <= 1.0 + 1e-9 && eq;
    detail += "lambda=" + std::to_string(lambda) + ": max ratio " + fmt("%.6f", r.max_ratio) + ", extremal " +
              fmt("%.3e", std::abs(r.extremal_ratio - 1.0)) + "; ";
  }
  return {ok, detail};
}

Outcome sublevel_bound(const fs::path& dir) {
  const RunOutput out = run_measure(measure_run(dir));
  int random_cases = 0, mono_cases = 0, bad = 0;
  for (const auto& row : csv_rows(dir / "measure.csv")) {
    (row[1] == "random" ? random_cases : mono_cases)++;
    bad += row[10] == "1" ? 0 : 1;
  }
  return {bad == 0 && random_cases == 300 && mono_cases == 9,
          std::to_string(random_cases) + " random + " + std::to_string(mono_cases) + " monomial cases, " +
              std::to_string(bad) + " violations"};
}

Outcome threshold() {
  const int d0 = degree_threshold(10.0, 1.0, 0.5, 0.9);
  const int scan = testing::threshold_by_scan(10.0, 0.5, 0.9, 100);
  bool all_high = true;
  for (int d = 1; d <= 100; ++d)
    for (int e = 1; e <= 100; ++e)
      if (std::min(d, e) >= 8) all_high = all_high && threshold_inequality(10.0, 1.0, 0.5, 0.9, d, e);
  const bool p88 = threshold_inequality(10.0, 1.0, 0.5, 0.9, 8, 8);
  const bool p77 = threshold_inequality(10.0, 1.0, 0.5, 0.9, 7, 7);
  return {d0 == 7 && scan == 7 && all_high && p88 && !p77,
          "d0 = " + std::to_string(d0) + ", scan = " + std::to_string(scan) + ", (8,8) " + (p88 ? "holds" : "fails") +
              ", (7,7) " + (p77 ? "holds" : "fails")};
}

Outcome inclusion() {
  bool ok = true;
  std::string detail;
  for (const auto& [name, curve] : {std::pair{"axis", testing::axis_curve()}, std::pair{"graph", testing::graph_curve()}}) {
    const auto pts = inclusion_sample_points(curve, 200, 3);
    const InclusionReport r = inclusion_check(curve, pts, 2.0, 4, 4);
    ok = ok && r.samples == 200 && r.counterexamples == 0 && r.holds;
    detail += std::string(name) + ": " + std::to_string(r.counterexamples) + " counterexamples, " +
              std::to_string(r.total_members) + " total members, " + std::to_string(r.numerical_failures) +
              " numerical; ";
  }
  return {ok, detail};
}

Outcome limit_chain() {
  const CurveC2 graph = testing::graph_curve();
  const int e = 3;
  const std::vector<int> d_list{e + 2, e + 4, e + 6};
  const double r0 = std::sqrt(green_rate(default_domain(graph), 0.0).r);
  const CappedMembership caps(graph, 3, 3);
  const Rect window = default_w_window(graph);
  Rng rng(8);
  int tested = 0, drawn = 0, bad = 0;
  int max_card = 0;
  while (tested < 10 && drawn < 100) {
    ++drawn;
    const cx z1 = rng.in_disk(1.0);
    if (distance_to_projection(graph, z1) < 0.02) continue;
    const FiberSet f = fiber_scan(caps, z1, 3.0, window, 16);
    std::vector<cx> ws;
    for (const auto& p : f.points) ws.push_back(p.w);
    LimitPolynomialResult l;
    try {
      l = limit_polynomial(graph, z1, e, d_list, r0, 0.0, ws);
    } catch (const PreconditionError&) {
      continue;  // z1 inside the exceptional sets: not admissible
    }
    ++tested;
    bool ok = l.b_star.degree() <= e && static_cast<int>(f.points.size()) <= e;
    for (const auto& p : f.points) {
      double nearest = kInf;
      for (const cx& r : l.roots) nearest = std::min(nearest, std::abs(r - p.w));
      ok = ok && nearest <= f.cluster_eps + 1e-3;
    }
    max_card = std::max(max_card, static_cast<int>(f.points.size()));
    bad += ok ? 0 : 1;
  }
  return {tested == 10 && bad == 0, std::to_string(tested) + " admissible z1 (" + std::to_string(drawn) + " drawn), " +
                                        std::to_string(bad) + " failures, max cardinality " + std::to_string(max_card)};
}

Outcome brute_force() {
  const CurveC2 c = testing::cubic_curve();
  ExtremalOptions o;
  o.samples = 16;
  const BoundarySample s = sample_boundary(c, 16);
  std::vector<std::pair<cx, cx>> ys;
  for (const auto& p : s.points) ys.emplace_back(p.z, p.w);
  Rng rng(9);
  int bad = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const cx z = rng.in_disk(1.5), w = rng.in_disk(1.5);
    for (int d = 1; d <= 2; ++d) {
      const ExtremalResult r = extremal_value(c, {z, w}, d, o);
      const double oracle = d == 1 ? testing::grid_extremal_2(total_degree_basis(1), ys, z, w)
                                   : testing::minimax_extremal(total_degree_basis(2), ys, z, w);
      const double rel = std::abs(r.optimum / oracle - 1.0);
      worst = std::max(worst, rel);
      bad += r.bounded() && rel <= 0.02 ? 0 : 1;
    }
  }
  return {bad == 0, std::to_string(bad) + "/40 mismatches, max relative gap " + fmt("%.2e", worst)};
}

Outcome determinism() {
  const fs::path a = kRoot / "c2", b = kRoot / "c2_rerun";
  const fs::path a3 = kRoot / "c3", b3 = kRoot / "c3_rerun";
  const fs::path a5 = kRoot / "c5", b5 = kRoot / "c5_rerun";
  std::vector<RunOutput> second;
  second.push_back(run_fiber(graph_fiber_run(b)));
  second.push_back(run_bishop(decay_run(b3)));
  second.push_back(run_measure(measure_run(b5)));
  int files = 0, differ = 0;
  const fs::path firsts[] = {a, a3, a5};
  for (std::size_t k = 0; k < second.size(); ++k)
    for (const auto& f : second[k].files) {
      ++files;
      const fs::path orig = firsts[k] / f.filename();
      if (!fs::exists(orig) || slurp(orig) != slurp(f)) ++differ;
    }
  return {files == 6 && differ == 0, std::to_string(files) + " files compared, " + std::to_string(differ) + " differ"};
}

}  // namespace

int main() {
  set_warning_sink([](const std::string&) {});
  fs::remove_all(kRoot);
  fs::create_directories(kRoot);

  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // runtime budget; 0 = none stated
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "axis oracle", 120, axis_oracle},
      {2, "graph oracle", 600, [] { return graph_oracle(kRoot / "c2"); }},
      {3, "Bishop decay", 300, [] { return bishop_decay(kRoot / "c3"); }},
      {4, "zero-order bound", 0, zero_order_bound},
      {5, "sublevel measure bound", 0, [] { return sublevel_bound(kRoot / "c5"); }},
      {6, "degree threshold", 0, threshold},
      {7, "inclusion", 0, inclusion},
      {8, "limit polynomial chain", 0, limit_chain},
      {9, "LP brute-force equivalence", 0, brute_force},
      {10, "determinism", 0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += " [over the " + fmt("%.0f", c.budget_s) + " s budget]";
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
