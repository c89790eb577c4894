#include "hullscope/runs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hullscope/errors.hpp"
#include "hullscope/measure.hpp"
#include "hullscope/random.hpp"

namespace hullscope {
namespace {

namespace fs = std::filesystem;

std::string fmt(double x) { return format_double(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string fmt(long long x) { return std::to_string(x); }
std::string fmt(bool x) { return x ? "1" : "0"; }

json extremal_config(const ExtremalOptions& o) {
  return {{"samples", o.samples},
          {"directions", o.directions},
          {"cap", json_number(o.cap)},
          {"unbounded_threshold", json_number(o.unbounded_threshold)}};
}

json rect_json(const Rect& r) {
  return json::array({json_number(r.re_min), json_number(r.re_max), json_number(r.im_min), json_number(r.im_max)});
}

json int_list(const std::vector<int>& v) { return json(v); }

struct LoadedCurve {
  CurveC2 curve;
  json data;
};

LoadedCurve load(const std::string& path) {
  CurveC2 curve = load_curve(path);
  json data = json::parse(curve_to_json(curve));
  return {std::move(curve), std::move(data)};
}

/// Writes `stem`.csv (when non-empty) and the `stem`.json sidecar.
class Emitter {
 public:
  Emitter(const std::string& out_dir, json config) : dir_(out_dir), config_(std::move(config)) {
    out_.config_hash = config_hash(config_);
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw PreconditionError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  const std::string& hash() const { return out_.config_hash; }

  void csv(const std::string& name, const CsvWriter& w) { file(name, w.str()); }

  void file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    write_atomic(p, text);
    out_.files.push_back(p);
  }

  RunOutput finish(const std::string& sidecar, json summary, json extra = nullptr) {
    json doc;
    doc["config_hash"] = out_.config_hash;
    doc["config"] = config_;
    doc["summary"] = summary;
    if (!extra.is_null())
      for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
    file(sidecar, doc.dump(2) + "\n");
    out_.summary = std::move(summary);
    return std::move(out_);
  }

  RunOutput& output() { return out_; }

 private:
  fs::path dir_;
  json config_;
  RunOutput out_;
};

const char* plane_name(SliceSpec::Plane p) { return p == SliceSpec::Plane::z ? "z" : "w"; }

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw PreconditionError("bad integer list '" + text + "'");
    return v;
  };
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw PreconditionError("empty range '" + text + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw PreconditionError("empty integer list");
  return out;
}

UnivariatePoly random_unit_polynomial(Rng& rng, int max_degree) {
  if (max_degree < 1) throw PreconditionError("random_unit_polynomial: max_degree must be >= 1");
  const int degree = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_degree));
  std::vector<cx> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = rng.complex_normal();
  while (c.back() == cx(0.0)) c.back() = rng.complex_normal();
  return make_unit(UnivariatePoly(std::move(c)));
}

RunOutput run_slice(const SliceRun& cfg) {
  const LoadedCurve lc = load(cfg.curve_path);
  json config = {{"command", "slice"},
                 {"curve_path", cfg.curve_path},
                 {"curve", lc.data},
                 {"M", json_number(cfg.M)},
                 {"grid", cfg.grid},
                 {"d_max", cfg.d_max},
                 {"plane", plane_name(cfg.spec.plane)},
                 {"fixed", json_complex(cfg.spec.fixed)},
                 {"region", rect_json(cfg.spec.region)},
                 {"extremal", extremal_config(cfg.extremal)}};
  Emitter em(cfg.out_dir, config);

  SliceOptions opts;
  opts.extremal = cfg.extremal;
  const HullSlice slice = hull_slice(lc.curve, cfg.M, cfg.spec, cfg.grid, cfg.d_max, opts);

  CsvWriter csv(em.hash(), {"x_re", "x_im", "value", "member"});
  for (const auto& c : slice.cells) csv.row({fmt(c.coordinate.real()), fmt(c.coordinate.imag()), fmt(c.value), fmt(c.member)});
  em.csv("slice.csv", csv);

  em.output().numerical_failure = slice.numerical_failures > 0;
  return em.finish("slice.json", {{"cells", slice.cells.size()},
                                  {"members", slice.members},
                                  {"member_area", json_number(slice.member_area())},
                                  {"envelope_violations", slice.envelope_violations},
                                  {"numerical_failures", slice.numerical_failures}});
}

RunOutput run_extremal(const ExtremalRun& cfg) {
  if (cfg.points.empty()) throw PreconditionError("extremal: no evaluation points");
  if (cfg.d_max < 1) throw PreconditionError("extremal: d_max must be >= 1");
  const LoadedCurve lc = load(cfg.curve_path);
  json pts = json::array();
  for (const auto& p : cfg.points) pts.push_back({json_complex(p.z), json_complex(p.w)});
  json config = {{"command", "extremal"},  {"curve_path", cfg.curve_path}, {"curve", lc.data},
                 {"points", pts},          {"d_max", cfg.d_max},           {"extremal", extremal_config(cfg.extremal)}};
  Emitter em(cfg.out_dir, config);

  const std::size_t n = cfg.points.size();
  const auto dm = static_cast<std::size_t>(cfg.d_max);
  std::vector<ExtremalResult> results(n * dm);
  for (int d = 1; d <= cfg.d_max; ++d) {
    const ExtremalProblem problem(lc.curve, Grading::total, d, d, cfg.extremal);
    for_each_index(Exec::parallel, n, [&](std::size_t i) {
      results[i * dm + static_cast<std::size_t>(d - 1)] = problem.solve(cfg.points[i]);
    });
  }

  CsvWriter csv(em.hash(), {"point", "z_re", "z_im", "w_re", "w_im", "d", "value", "lower", "optimum", "cap_share",
                            "status"});
  json best = json::array();
  int failures = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double value = 0.0, lower = 0.0;
    bool unbounded = false;
    for (std::size_t k = 0; k < dm; ++k) {
      const ExtremalResult& r = results[i * dm + k];
      const C2Point& x = cfg.points[i];
      csv.row({fmt(static_cast<int>(i)), fmt(x.z.real()), fmt(x.z.imag()), fmt(x.w.real()), fmt(x.w.imag()),
               fmt(static_cast<int>(k + 1)), fmt(r.value), fmt(r.lower), fmt(r.optimum), fmt(r.cap_share),
               to_string(r.status)});
      if (r.status == LpStatus::infeasible_numerics) ++failures;
      if (r.status == LpStatus::unbounded) unbounded = true;
      value = std::max(value, r.value);
      lower = std::max(lower, r.lower);
    }
    if (unbounded) value = lower = kInf;
    best.push_back({{"point", i}, {"best_constant", json_number(value)}, {"lower", json_number(lower)}});
  }
  em.csv("extremal.csv", csv);
  em.output().numerical_failure = failures > 0;
  return em.finish("extremal.json", {{"numerical_failures", failures}, {"best_constants", best}});
}

RunOutput run_fiber(const FiberRun& cfg) {
  const LoadedCurve lc = load(cfg.curve_path);
  const Rect window = cfg.window ? *cfg.window : default_w_window(lc.curve);
  json z_list = json::array();
  for (const cx& z : cfg.z_values) z_list.push_back(json_complex(z));
  json config = {{"command", "fiber"},
                 {"curve_path", cfg.curve_path},
                 {"curve", lc.data},
                 {"M", json_number(cfg.M)},
                 {"grid", cfg.grid},
                 {"d_max", cfg.d_max},
                 {"e_max", cfg.e_max},
                 {"window", rect_json(window)},
                 {"z", z_list},
                 {"random_z", cfg.random_z},
                 {"seed", cfg.seed},
                 {"tube", json_number(cfg.tube)},
                 {"extremal", extremal_config(cfg.extremal)}};
  if (cfg.z_grid) {
    const ZGrid& g = *cfg.z_grid;
    config["z_grid"] = {{"origin", json_complex(g.origin)}, {"h", json_number(g.h)}, {"nx", g.nx}, {"ny", g.ny}};
    config["position_eps"] = json_number(cfg.position_eps);
  }
  if (cfg.z_values.empty() && cfg.random_z <= 0 && !cfg.z_grid)
    throw PreconditionError("fiber: give --z, --random-z or --z-grid");
  if (cfg.random_z < 0) throw PreconditionError("fiber: random_z must be >= 0");
  Emitter em(cfg.out_dir, config);

  FiberScanOptions scan;
  scan.extremal = cfg.extremal;
  const CappedMembership caps(lc.curve, cfg.d_max, cfg.e_max, {scan.tol, scan.extremal});

  struct Job {
    const char* source;
    cx z;
  };
  std::vector<Job> jobs;
  for (const cx& z : cfg.z_values) jobs.push_back({"explicit", z});
  Rng rng(cfg.seed);
  for (int k = 0; k < cfg.random_z;) {
    const cx z = rng.in_disk(1.0);
    if (distance_to_projection(lc.curve, z) < cfg.tube) continue;
    jobs.push_back({"random", z});
    ++k;
  }
  const std::size_t grid_start = jobs.size();
  if (cfg.z_grid)
    for (int iy = 0; iy < cfg.z_grid->ny; ++iy)
      for (int ix = 0; ix < cfg.z_grid->nx; ++ix) jobs.push_back({"grid", cfg.z_grid->point(ix, iy)});

  std::vector<FiberSet> sets;
  sets.reserve(jobs.size());
  for (const Job& j : jobs) sets.push_back(fiber_scan(caps, j.z, cfg.M, window, cfg.grid, scan));

  CsvWriter csv(em.hash(), {"index", "source", "z_re", "z_im", "w_re", "w_im", "residual"});
  json per_z = json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    for (const auto& p : sets[i].points)
      csv.row({fmt(static_cast<int>(i)), jobs[i].source, fmt(jobs[i].z.real()), fmt(jobs[i].z.imag()),
               fmt(p.w.real()), fmt(p.w.imag()), fmt(p.residual)});
    per_z.push_back({{"index", i},
                     {"source", jobs[i].source},
                     {"z", json_complex(jobs[i].z)},
                     {"cardinality", sets[i].points.size()},
                     {"candidates", sets[i].candidates},
                     {"grid_spacing", json_number(sets[i].grid_spacing)},
                     {"cluster_eps", json_number(sets[i].cluster_eps)}});
  }
  em.csv("fiber.csv", csv);

  json summary = {{"fibers", per_z}};
  if (cfg.z_grid) {
    const std::vector<FiberSet> grid_sets(sets.begin() + static_cast<long>(grid_start), sets.end());
    const AnalyticityReport rep = analyticity_probe(*cfg.z_grid, grid_sets, cfg.position_eps);
    json branches = json::array();
    for (const auto& b : rep.branches)
      branches.push_back({{"max_residual", json_number(b.max_residual)},
                          {"evaluated", b.evaluated},
                          {"flagged", b.flagged}});
    summary["analyticity"] = {{"noise_floor", json_number(rep.noise_floor)},
                              {"branches", branches},
                              {"failed", rep.failed},
                              {"any_flagged", rep.any_flagged}};
  }
  return em.finish("fiber.json", summary);
}

RunOutput run_bishop(const BishopRun& cfg) {
  const LoadedCurve lc = load(cfg.curve_path);
  const cx zeta0 = cfg.zeta0 ? *cfg.zeta0 : default_base_point(lc.curve);
  const DomainSpec domain = cfg.domain ? *cfg.domain : default_domain(lc.curve);
  json config = {{"command", "bishop"},        {"curve_path", cfg.curve_path}, {"curve", lc.data},
                 {"d", int_list(cfg.d_list)},  {"e", int_list(cfg.e_list)},    {"zeta0", json_complex(zeta0)},
                 {"domain", domain.describe()}, {"r0", json_number(cfg.r0)}};
  Emitter em(cfg.out_dir, config);

  const GreenRate rate = green_rate(domain, zeta0);
  DecayOptions opts;
  opts.r0 = cfg.r0;
  const DecayTable table = decay_table(lc.curve, zeta0, cfg.d_list, cfg.e_list, rate, opts);

  CsvWriter csv(em.hash(), {"d", "e", "lambda", "sup_norm_K", "r", "r0", "fitted_C", "passes"});
  json records = json::array();
  for (const auto& r : table.records) {
    csv.row({fmt(r.d), fmt(r.e), fmt(r.lambda), fmt(r.sup_norm_K), fmt(r.r), fmt(r.r0), fmt(r.fitted_C),
             fmt(r.passes)});
    const double rate_emp = r.lambda > 0 ? std::pow(r.sup_norm_K, 1.0 / r.lambda) : kInf;
    records.push_back({{"d", r.d},
                       {"e", r.e},
                       {"degenerate", r.degenerate},
                       {"empirical_rate", json_number(rate_emp)},
                       {"F", poly_to_json(r.F)}});
  }
  em.csv("decay.csv", csv);
  return em.finish("decay.json",
                   {{"r", json_number(table.rate.r)},
                    {"r0", json_number(table.r0)},
                    {"fitted_C", json_number(table.fitted_C)},
                    {"base_point", json_complex(table.base_point)},
                    {"all_pass", table.all_pass}},
                   {{"records", records}});
}

RunOutput run_measure(const MeasureRun& cfg) {
  if (cfg.n_samples < 10000) throw PreconditionError("measure: n_samples must be >= 10000");
  json config = {{"command", "measure"}, {"seed", cfg.seed}, {"n", cfg.n_samples}};
  const bool tset = !cfg.curve_path.empty();
  std::optional<LoadedCurve> lc;
  if (tset) {
    if (cfg.d_list.empty()) throw PreconditionError("measure: --d is required with --curve");
    lc = load(cfg.curve_path);
    config["mode"] = "t_set";
    config["curve_path"] = cfg.curve_path;
    config["curve"] = lc->data;
    config["d"] = int_list(cfg.d_list);
    config["e"] = cfg.e;
    config["r0"] = json_number(cfg.r0);
  } else {
    if (cfg.trials < 0 || cfg.k_max < 1) throw PreconditionError("measure: need trials >= 0 and k_max >= 1");
    config["mode"] = "sublevel";
    config["trials"] = cfg.trials;
    config["k_max"] = cfg.k_max;
    config["alpha"] = cfg.alphas;
    config["monomials"] = int_list(cfg.monomial_degrees);
  }
  Emitter em(cfg.out_dir, config);

  if (tset) {
    const cx zeta0 = default_base_point(lc->curve);
    const double r = green_rate(default_domain(lc->curve), zeta0).r;
    const double r0 = cfg.r0 > 0.0 ? cfg.r0 : std::sqrt(r);
    CsvWriter csv(em.hash(), {"d", "e", "r0", "threshold", "hits", "estimate", "std_error", "bound"});
    int k = 0;
    for (int d : cfg.d_list) {
      const SublevelSet set = t_set(construct_bishop(lc->curve, d, cfg.e, zeta0), r0);
      const MeasureEstimate m = sublevel_measure(set, cfg.n_samples, task_seed(cfg.seed, static_cast<std::uint64_t>(k++)));
      csv.row({fmt(d), fmt(cfg.e), fmt(r0), fmt(set.threshold), fmt(m.hits), fmt(m.estimate), fmt(m.std_error),
               fmt(m.bound)});
    }
    em.csv("measure.csv", csv);
    return em.finish("measure.json", {{"r", json_number(r)}, {"r0", json_number(r0)}});
  }

  CsvWriter csv(em.hash(), {"case", "kind", "degree", "alpha", "threshold", "hits", "estimate", "std_error", "bound",
                            "exact", "holds"});
  int cases = 0, failures = 0;
  std::uint64_t task = 0;
  auto record = [&](const std::string& kind, const UnivariatePoly& p, int degree, double alpha, bool monomial) {
    const SublevelSet set = sublevel_set(p, std::pow(alpha, degree), degree);
    const MeasureEstimate m = sublevel_measure(set, cfg.n_samples, task_seed(cfg.seed, task++));
    const double exact = monomial ? std::numbers::pi * alpha * alpha : kInf;
    const bool holds = monomial ? std::abs(m.estimate - exact) <= 3.0 * m.std_error
                                : m.estimate <= 48.0 * alpha + 3.0 * m.std_error;
    csv.row({fmt(cases), kind, fmt(degree), fmt(alpha), fmt(set.threshold), fmt(m.hits), fmt(m.estimate),
             fmt(m.std_error), fmt(m.bound), monomial ? fmt(exact) : std::string("nan"), fmt(holds)});
    ++cases;
    failures += holds ? 0 : 1;
  };
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(task_seed(cfg.seed ^ 0x5eedULL, static_cast<std::uint64_t>(t)));
    const UnivariatePoly p = random_unit_polynomial(rng, cfg.k_max);
    for (double a : cfg.alphas) record("random", p, p.degree(), a, false);
  }
  for (int k : cfg.monomial_degrees) {
    if (k < 1) throw PreconditionError("measure: monomial degrees must be >= 1");
    std::vector<cx> c(static_cast<std::size_t>(k) + 1, cx(0.0));
    c.back() = 1.0;
    const UnivariatePoly p(std::move(c));
    for (double a : cfg.alphas) record("monomial", p, k, a, true);
  }
  em.csv("measure.csv", csv);
  return em.finish("measure.json", {{"cases", cases}, {"failures", failures}});
}

RunOutput run_finiteness(const FinitenessRun& cfg) {
  const LoadedCurve lc = load(cfg.curve_path);
  const FinitenessOptions& o = cfg.options;
  json config = {{"command", "finiteness"},
                 {"curve_path", cfg.curve_path},
                 {"curve", lc.data},
                 {"M", json_number(cfg.M)},
                 {"e", cfg.e},
                 {"n_z", cfg.n_z},
                 {"seed", cfg.seed},
                 {"d", int_list(o.d_list)},
                 {"grid", o.grid_n},
                 {"d_cap", o.d_cap},
                 {"e_cap", o.e_cap},
                 {"tube", json_number(o.tube)},
                 {"r0", json_number(o.r0)},
                 {"extremal", extremal_config(o.scan.extremal)}};
  Emitter em(cfg.out_dir, config);

  const FinitenessReport rep = finiteness_experiment(lc.curve, cfg.M, cfg.e, cfg.n_z, cfg.seed, o);
  CsvWriter csv(em.hash(), {"index", "z_re", "z_im", "cardinality", "in_exceptional_set", "has_limit", "roots_match",
                            "consistent"});
  json samples = json::array();
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const auto& s = rep.samples[i];
    csv.row({fmt(static_cast<int>(i)), fmt(s.z.real()), fmt(s.z.imag()), fmt(s.cardinality),
             fmt(s.in_exceptional_set), fmt(s.has_limit), fmt(s.roots_match), fmt(s.consistent)});
    json fiber = json::array();
    for (const auto& p : s.fiber) fiber.push_back({json_number(p.w.real()), json_number(p.w.imag()), json_number(p.residual)});
    json roots = json::array();
    for (const cx& r : s.b_star_roots) roots.push_back(json_complex(r));
    json j = {{"z", json_complex(s.z)}, {"fiber", fiber}, {"b_star_roots", roots}, {"cardinality", s.cardinality},
              {"in_exceptional_set", s.in_exceptional_set}, {"consistent", s.consistent}};
    if (!s.note.empty()) j["note"] = s.note;
    samples.push_back(std::move(j));
  }
  em.csv("finiteness.csv", csv);
  return em.finish("finiteness.json",
                   {{"r", json_number(rep.r)},
                    {"r0", json_number(rep.r0)},
                    {"consistent_fraction", json_number(rep.consistent_fraction)},
                    {"exceptional_fraction", json_number(rep.exceptional_fraction)},
                    {"bound_fraction", json_number(rep.bound_fraction)},
                    {"bound_vacuous", rep.bound_vacuous},
                    {"bound_holds", rep.bound_holds}},
                   {{"samples", samples}});
}

RunOutput run_probe(const ProbeRun& cfg) {
  const LoadedCurve lc = load(cfg.curve_path);
  const StabilityOptions& o = cfg.options;
  json config = {{"command", "probe"},
                 {"curve_path", cfg.curve_path},
                 {"curve", lc.data},
                 {"n_points", cfg.n_points},
                 {"d_max", cfg.d_max},
                 {"seed", cfg.seed},
                 {"radii", o.radii},
                 {"grid", o.grid_n},
                 {"d_cap", o.d_cap},
                 {"e_cap", o.e_cap},
                 {"growth_factor", json_number(o.growth_factor)},
                 {"extremal", extremal_config(o.extremal)}};
  Emitter em(cfg.out_dir, config);

  const StabilityReport rep = stability_probe(lc.curve, cfg.n_points, cfg.d_max, cfg.seed, o);
  CsvWriter csv(em.hash(), {"index", "level", "z_re", "z_im", "w_re", "w_im", "best_constant"});
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const auto& s = rep.samples[i];
    csv.row({fmt(static_cast<int>(i)), fmt(s.level), fmt(s.x.z.real()), fmt(s.x.z.imag()), fmt(s.x.w.real()),
             fmt(s.x.w.imag()), fmt(s.best_constant)});
  }
  em.csv("probe.csv", csv);
  json level_max = json::array();
  for (double v : rep.level_max) level_max.push_back(json_number(v));
  return em.finish("probe.json", {{"verdict", to_string(rep.verdict)},
                                  {"reference_median", json_number(rep.reference_median)},
                                  {"sup_estimate", json_number(rep.sup_estimate)},
                                  {"level_max", level_max}});
}

}  // namespace hullscope
