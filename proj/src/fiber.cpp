#include "hullscope/fiber.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hullscope/bishop.hpp"
#include "hullscope/errors.hpp"
#include "hullscope/green.hpp"
#include "hullscope/log.hpp"
#include "hullscope/random.hpp"

namespace hullscope {

namespace {

struct Eval {
  cx w;
  double optimum = kInf;
  LpStatus status = LpStatus::infeasible_numerics;
  BivariatePoly witness;
  LpBasis basis;
};

Eval evaluate(const ExtremalProblem& problem, cx z, cx w, const LpBasis* warm = nullptr) {
  const ExtremalResult r = problem.solve({z, w}, warm);
  Eval out;
  out.w = w;
  out.status = r.status;
  out.optimum = r.status == LpStatus::infeasible_numerics || !std::isfinite(r.optimum) ? kInf : r.optimum;
  out.witness = r.witness;
  out.basis = r.basis;
  return out;
}

/// w -> P(z, w) for a fixed z.
UnivariatePoly w_slice(const BivariatePoly& p, cx z) {
  std::vector<cx> a(static_cast<std::size_t>(p.e() + 1), cx(0.0));
  for (int m = 0; m <= p.e(); ++m) {
    cx s = 0.0;
    for (int n = p.d(); n >= 0; --n) s = s * z + p.coeff(n, m);
    a[static_cast<std::size_t>(m)] = s;
  }
  return UnivariatePoly(a);
}

std::vector<cx> w_roots(const BivariatePoly& p, cx z) {
  const UnivariatePoly a = w_slice(p, z);
  if (a.degree() < 1) return {};
  try {
    return roots(a);
  } catch (const Error&) {
    return {};
  }
}

bool lower(const Eval& a, const Eval& b) { return a.optimum < b.optimum * (1.0 - 1e-13); }

// Nelder-Mead on log(optimum) over (Re w, Im w).
Eval nelder_mead(const ExtremalProblem& problem, cx z, Eval start, double step, int budget) {
  const double tiny = 1e-13 * (1.0 + std::abs(start.w));
  const LpBasis warm = start.basis;
  const LpBasis* hint = warm.empty() ? nullptr : &warm;
  auto eval = [&](cx w) { return evaluate(problem, z, w, hint); };
  std::array<Eval, 3> s{start, eval(start.w + cx(step, 0.0)), eval(start.w + cx(0.0, step))};
  int used = 2;
  auto f = [](const Eval& e) { return e.optimum > 0.0 ? std::log(e.optimum) : -kInf; };
  while (used < budget) {
    std::sort(s.begin(), s.end(), [&](const Eval& a, const Eval& b) { return f(a) < f(b); });
    const double diameter = std::max(std::abs(s[1].w - s[0].w), std::abs(s[2].w - s[0].w));
    if (diameter < tiny || !(f(s[2]) - f(s[0]) > 1e-15)) break;
    const cx centroid = 0.5 * (s[0].w + s[1].w);
    const Eval reflected = eval(centroid + (centroid - s[2].w));
    ++used;
    if (f(reflected) < f(s[0])) {
      const Eval expanded = eval(centroid + 2.0 * (centroid - s[2].w));
      ++used;
      s[2] = f(expanded) < f(reflected) ? expanded : reflected;
    } else if (f(reflected) < f(s[1])) {
      s[2] = reflected;
    } else {
      const bool outside = f(reflected) < f(s[2]);
      const Eval contracted =
          eval(outside ? centroid + 0.5 * (reflected.w - centroid) : centroid + 0.5 * (s[2].w - centroid));
      ++used;
      if (f(contracted) < std::min(f(reflected), f(s[2]))) {
        s[2] = contracted;
      } else {
        for (int i = 1; i < 3; ++i) {
          s[static_cast<std::size_t>(i)] = eval(s[0].w + 0.5 * (s[static_cast<std::size_t>(i)].w - s[0].w));
          ++used;
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), [&](const Eval& a, const Eval& b) { return f(a) < f(b); });
  return s[0];
}

// Polishes a seed toward a local minimizer of the capped optimum. Near a
// fiber point of an algebraic curve the optimizing witness is dominated by
// a capped polynomial vanishing on the curve, so its w-roots at z are
// Newton-like jumps toward the fiber; Nelder-Mead finishes the job (and
// does all of it where the program stays bounded).
Eval refine(const ExtremalProblem& problem, cx z, cx seed, const LpBasis& seed_basis, double h, int budget) {
  Eval best = evaluate(problem, z, seed, seed_basis.empty() ? nullptr : &seed_basis);
  int used = 1;
  double last_jump = 0.0;
  for (int it = 0; it < 12 && used < budget; ++it) {
    const std::vector<cx> rts = w_roots(best.witness, z);
    if (rts.empty()) break;
    const cx target = *std::min_element(rts.begin(), rts.end(), [&](cx a, cx b) {
      return std::abs(a - best.w) < std::abs(b - best.w);
    });
    const double jump = std::abs(target - best.w);
    if (jump > 2.0 * h || jump == 0.0) break;
    const Eval next = evaluate(problem, z, target, &best.basis);
    ++used;
    if (!lower(next, best)) break;
    best = next;
    last_jump = jump;
  }
  const double step = last_jump > 0.0 ? std::min(h, 10.0 * last_jump) : h;
  if (used < budget) best = nelder_mead(problem, z, best, std::max(step, 1e-12 * (1.0 + std::abs(best.w))), budget - used);
  return best;
}

bool in_rect(const Rect& r, cx w, double pad) {
  return w.real() >= r.re_min - pad && w.real() <= r.re_max + pad && w.imag() >= r.im_min - pad &&
         w.imag() <= r.im_max + pad;
}

}  // namespace

std::vector<FiberCandidate> fiber_candidates(const ExtremalProblem& problem, cx z, const Rect& window, int grid_n,
                                             double accept_level, const FiberScanOptions& options) {
  if (grid_n < 2) throw PreconditionError("fiber_candidates: grid too small");
  const double hx = (window.re_max - window.re_min) / grid_n;
  const double hy = (window.im_max - window.im_min) / grid_n;
  if (!(hx > 0.0 && hy > 0.0)) throw PreconditionError("fiber_scan: empty w window");
  const double h = std::max(hx, hy);
  const auto n = static_cast<std::size_t>(grid_n);

  // rows in parallel; along a row each cell warm-starts from its neighbor
  std::vector<Eval> grid(n * n);
  for_each_index(options.exec, n, [&](std::size_t iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const cx w{window.re_min + (static_cast<double>(ix) + 0.5) * hx,
                 window.im_min + (static_cast<double>(iy) + 0.5) * hy};
      const LpBasis* warm = ix > 0 && !grid[iy * n + ix - 1].basis.empty() ? &grid[iy * n + ix - 1].basis : nullptr;
      grid[iy * n + ix] = evaluate(problem, z, w, warm);
    }
  });

  // Seeds: lowest point of each group of accepted cells, then local minima.
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid[a].optimum < grid[b].optimum; });
  std::vector<cx> seeds;
  std::vector<const LpBasis*> seed_basis;
  auto add_seed = [&](cx w, const LpBasis* basis) {
    for (const cx& s : seeds)
      if (std::abs(s - w) < 0.5 * h) return;
    seeds.push_back(w);
    seed_basis.push_back(basis);
  };
  std::vector<std::size_t> accepted_reps;
  for (std::size_t idx : order) {
    if (!(grid[idx].status == LpStatus::bounded && grid[idx].optimum <= accept_level)) continue;
    bool near = false;
    for (std::size_t r : accepted_reps) near = near || std::abs(grid[r].w - grid[idx].w) <= 2.0 * h;
    if (!near) accepted_reps.push_back(idx);
  }
  for (std::size_t r : accepted_reps) add_seed(grid[r].w, &grid[r].basis);

  std::vector<std::size_t> minima;
  for (std::size_t idx : order) {
    const long ix = static_cast<long>(idx % n);
    const long iy = static_cast<long>(idx / n);
    bool is_min = std::isfinite(grid[idx].optimum);
    for (long dy = -1; dy <= 1 && is_min; ++dy)
      for (long dx = -1; dx <= 1 && is_min; ++dx) {
        const long jx = ix + dx;
        const long jy = iy + dy;
        if ((dx == 0 && dy == 0) || jx < 0 || jy < 0 || jx >= grid_n || jy >= grid_n) continue;
        const std::size_t j = static_cast<std::size_t>(jy) * n + static_cast<std::size_t>(jx);
        // ties go to the earlier cell in sort order
        if (grid[j].optimum < grid[idx].optimum) is_min = false;
        if (grid[j].optimum == grid[idx].optimum && j < idx) is_min = false;
      }
    if (is_min) minima.push_back(idx);
  }
  for (std::size_t idx : minima) {
    if (static_cast<int>(seeds.size()) >= options.max_candidates + static_cast<int>(accepted_reps.size())) break;
    add_seed(grid[idx].w, &grid[idx].basis);
  }
  if (options.witness_roots && std::isfinite(grid[order.front()].optimum))
    for (const cx& w : w_roots(grid[order.front()].witness, z)) add_seed(w, &grid[order.front()].basis);

  std::vector<FiberCandidate> out(seeds.size());
  for_each_index(options.exec, seeds.size(), [&](std::size_t i) {
    const Eval e = refine(problem, z, seeds[i], *seed_basis[i], h, options.refine_evaluations);
    out[i] = {e.w, e.optimum, e.status};
  });
  return out;
}

FiberSet fiber_scan(const CappedMembership& caps, cx z, double M, const Rect& window, int grid_n,
                    const FiberScanOptions& options) {
  if (grid_n < 16) throw PreconditionError("fiber_scan: grid_n must be >= 16");
  if (!(M >= 1.0)) throw PreconditionError("fiber_scan: M must be >= 1");
  FiberSet out;
  out.z = z;
  out.M = M;
  out.d_max = caps.d_max();
  out.e_max = caps.e_max();
  out.grid_spacing = std::max(window.re_max - window.re_min, window.im_max - window.im_min) / grid_n;
  out.cluster_eps = 2.0 * out.grid_spacing;

  const int k = caps.d_max() + caps.e_max();
  const double accept_level = std::pow(M * (1.0 + caps.tol()), k);
  const std::vector<FiberCandidate> candidates = fiber_candidates(caps.top(), z, window, grid_n, accept_level, options);
  out.candidates = static_cast<int>(candidates.size());

  std::vector<CapMembership> verdicts(candidates.size());
  for_each_index(options.exec, candidates.size(), [&](std::size_t i) {
    if (options.clip_to_window && !in_rect(window, candidates[i].w, out.grid_spacing)) return;
    verdicts[i] = caps({z, candidates[i].w}, M);
  });

  // Greedy clustering, best residual first.
  std::vector<FiberPoint> accepted;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (verdicts[i].member) accepted.push_back({candidates[i].w, verdicts[i].worst_ratio});
  std::stable_sort(accepted.begin(), accepted.end(),
                   [](const FiberPoint& a, const FiberPoint& b) { return a.residual < b.residual; });
  for (const auto& p : accepted) {
    bool near = false;
    for (const auto& q : out.points) near = near || std::abs(p.w - q.w) <= out.cluster_eps;
    if (!near) out.points.push_back(p);
  }
  std::sort(out.points.begin(), out.points.end(), [](const FiberPoint& a, const FiberPoint& b) {
    return a.w.real() != b.w.real() ? a.w.real() < b.w.real() : a.w.imag() < b.w.imag();
  });
  return out;
}

FiberSet fiber_scan(const CurveC2& curve, cx z, double M, const Rect& window, int grid_n, int d_max, int e_max,
                    const FiberScanOptions& options) {
  const CappedMembership caps(curve, d_max, e_max, {options.tol, options.extremal});
  return fiber_scan(caps, z, M, window, grid_n, options);
}

namespace {

LimitPolynomialResult limit_from_bishop(const std::vector<BivariatePoly>& family, cx z1, double r0,
                                        const std::vector<cx>& fiber_points, const LimitPolynomialOptions& options) {
  LimitPolynomialResult out;
  for (const auto& F : family) {
    const int d = F.d();
    const int e = F.e();
    const double threshold = std::pow(r0, 0.5 * d * e);
    const Slices s = slice_coefficients(F);
    if (std::abs(s.g[static_cast<std::size_t>(s.j0)](z1)) <= threshold) {
      out.skipped_d.push_back(d);
      continue;
    }
    std::vector<cx> a(static_cast<std::size_t>(e + 1));
    for (int j = 0; j <= e; ++j) a[static_cast<std::size_t>(j)] = s.g[static_cast<std::size_t>(j)](z1);
    const UnivariatePoly B = make_unit(UnivariatePoly(a));
    if (!out.sequence.empty()) {
      const auto& prev = out.sequence.back().coeffs();
      const auto& cur = B.coeffs();
      double diff = 0.0;
      for (std::size_t j = 0; j < std::max(prev.size(), cur.size()); ++j) {
        const cx p = j < prev.size() ? prev[j] : cx(0.0);
        const cx c = j < cur.size() ? cur[j] : cx(0.0);
        diff = std::max(diff, std::abs(p - c));
      }
      out.cauchy_differences.push_back(diff);
    }
    for (const cx& w : fiber_points) {
      FiberBoundCheck c{w, d, std::abs(B(w)), threshold, false};
      c.ok = c.value <= threshold * (1.0 + options.tol);
      out.fiber_bound_holds = out.fiber_bound_holds && c.ok;
      out.fiber_checks.push_back(c);
    }
    out.used_d.push_back(d);
    out.sequence.push_back(B);
  }
  if (!out.skipped_d.empty()) {
    std::string list;
    for (int d : out.skipped_d) list += (list.empty() ? "" : ",") + std::to_string(d);
    warn("limit_polynomial: z1 lies in T(d,e) for d = " + list + "; skipped");
  }
  if (out.used_d.empty()) throw ExclusionError("limit_polynomial: z1 lies in T(d,e) for every requested d");
  if (static_cast<int>(out.used_d.size()) < options.min_survivors)
    throw PreconditionError("limit_polynomial: fewer than " + std::to_string(options.min_survivors) +
                            " degrees leave z1 outside T(d,e)");
  out.b_star = out.sequence.back();
  out.d_star = out.used_d.back();
  if (out.b_star.degree() >= 1) out.roots = roots(out.b_star);
  return out;
}

void check_d_list(const std::vector<int>& d_list) {
  if (d_list.empty()) throw PreconditionError("limit_polynomial: empty d list");
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    if (d_list[i] < 1) throw PreconditionError("limit_polynomial: degrees must be >= 1");
    if (i > 0 && d_list[i] <= d_list[i - 1]) throw PreconditionError("limit_polynomial: d list must increase");
  }
}

}  // namespace

LimitPolynomialResult limit_polynomial(const CurveC2& curve, cx z1, int e, const std::vector<int>& d_list, double r0,
                                       cx zeta0, const std::vector<cx>& fiber_points,
                                       const LimitPolynomialOptions& options) {
  check_d_list(d_list);
  if (e < 1) throw PreconditionError("limit_polynomial: e must be >= 1");
  if (!(r0 > 0.0 && r0 < 1.0)) throw PreconditionError("limit_polynomial: r0 must lie in (0, 1)");
  std::vector<BivariatePoly> family;
  for (int d : d_list) family.push_back(construct_bishop(curve, d, e, zeta0, options.null_vector));
  return limit_from_bishop(family, z1, r0, fiber_points, options);
}

double distance_to_projection(const CurveC2& curve, cx z, int samples) {
  double best = kInf;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    cx prev = eval_component(curve, k, circle_point(samples - 1, samples)).z;
    for (int j = 0; j < samples; ++j) {
      const cx cur = eval_component(curve, k, circle_point(j, samples)).z;
      const cx seg = cur - prev;
      const double len2 = std::norm(seg);
      double t = len2 > 0.0 ? ((z - prev) * std::conj(seg)).real() / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      best = std::min(best, std::abs(z - (prev + t * seg)));
      prev = cur;
    }
  }
  return best;
}

FinitenessReport finiteness_experiment(const CurveC2& curve, double M, int e, int n_z, std::uint64_t seed,
                                       const FinitenessOptions& options) {
  if (n_z < 20) throw PreconditionError("finiteness_experiment: n_z must be >= 20");
  if (e < 1) throw PreconditionError("finiteness_experiment: e must be >= 1");
  std::vector<int> d_list = options.d_list;
  if (d_list.empty()) d_list = {e + 2, e + 4, e + 6};
  check_d_list(d_list);

  FinitenessReport out;
  out.M = M;
  out.e = e;
  out.seed = seed;
  const cx zeta0 = default_base_point(curve);
  out.r = green_rate(default_domain(curve), zeta0).r;
  out.r0 = options.r0 > 0.0 ? options.r0 : std::sqrt(out.r);
  out.bound_fraction = 48.0 * std::pow(out.r0, 0.5 * e) / std::numbers::pi;
  out.bound_vacuous = out.bound_fraction >= 1.0;

  std::vector<BivariatePoly> family;
  for (int d : d_list) family.push_back(construct_bishop(curve, d, e, zeta0));
  const BivariatePoly& top = family.back();
  const Slices top_slices = slice_coefficients(top);
  const double top_threshold = std::pow(out.r0, 0.5 * top.d() * e);

  const int d_cap = options.d_cap > 0 ? options.d_cap : std::max(2, e);
  const int e_cap = options.e_cap > 0 ? options.e_cap : e;
  const CappedMembership caps(curve, d_cap, e_cap, {options.scan.tol, options.scan.extremal});
  const Rect window = default_w_window(curve);

  Rng rng(seed);
  int consistent = 0;
  int exceptional = 0;
  while (static_cast<int>(out.samples.size()) < n_z) {
    const cx z = rng.in_disk(1.0);
    if (distance_to_projection(curve, z) < options.tube) continue;
    FinitenessSample s;
    s.z = z;
    const FiberSet fiber = fiber_scan(caps, z, M, window, options.grid_n, options.scan);
    s.fiber = fiber.points;
    s.cardinality = static_cast<int>(fiber.points.size());
    s.in_exceptional_set = std::abs(top_slices.g[static_cast<std::size_t>(top_slices.j0)](z)) <= top_threshold;

    std::vector<cx> ws;
    for (const auto& p : fiber.points) ws.push_back(p.w);
    try {
      const LimitPolynomialResult lp = limit_from_bishop(family, z, out.r0, ws, {});
      s.has_limit = true;
      s.b_star_roots = lp.roots;
      s.roots_match = true;
      for (const auto& p : fiber.points) {
        double nearest = kInf;
        for (const cx& r : lp.roots) nearest = std::min(nearest, std::abs(r - p.w));
        s.roots_match = s.roots_match && nearest <= fiber.cluster_eps + options.root_slack;
      }
    } catch (const PreconditionError& ex) {
      s.note = ex.what();
    }
    s.consistent = s.cardinality <= e && (!s.has_limit || s.roots_match);
    consistent += s.consistent ? 1 : 0;
    exceptional += s.in_exceptional_set ? 1 : 0;
    out.samples.push_back(std::move(s));
  }
  out.consistent_fraction = static_cast<double>(consistent) / n_z;
  out.exceptional_fraction = static_cast<double>(exceptional) / n_z;
  out.bound_holds = out.exceptional_fraction <= out.bound_fraction;
  return out;
}

}  // namespace hullscope
