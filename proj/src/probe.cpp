#include "hullscope/probe.hpp"

#include <algorithm>
#include <cmath>

#include "hullscope/errors.hpp"
#include "hullscope/random.hpp"

namespace hullscope {

const char* to_string(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::evidence_bounded:
      return "evidence_bounded";
    case StabilityVerdict::evidence_unbounded:
      return "evidence_unbounded";
    case StabilityVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

StabilityReport stability_probe(const CurveC2& curve, int n_points, int d_max, std::uint64_t seed,
                                const StabilityOptions& options) {
  if (n_points < 10) throw PreconditionError("stability_probe: n_points must be >= 10");
  if (options.radii.empty()) throw PreconditionError("stability_probe: no radius levels");
  for (double r : options.radii)
    if (!(r > 0.0)) throw PreconditionError("stability_probe: radii must be positive");

  const ExtremalProblem locator(curve, Grading::bidegree, options.d_cap, options.e_cap, options.extremal);
  const BestConstantEvaluator best(curve, d_max, options.extremal);
  const Rect base = default_w_window(curve);
  FiberScanOptions scan;
  scan.extremal = options.extremal;
  scan.witness_roots = true;
  scan.clip_to_window = false;
  scan.max_candidates = 4;
  scan.exec = options.exec;
  // only points where the locating program stays bounded count as hull points
  const double bounded_level = options.extremal.unbounded_threshold;

  StabilityReport out;
  Rng rng(seed);
  const auto levels = static_cast<int>(options.radii.size());
  out.level_max.assign(options.radii.size(), 0.0);
  for (int i = 0; i < n_points; ++i) {
    const int level = i * levels / n_points;
    const double radius = options.radii[static_cast<std::size_t>(level)];
    const cx z = rng.in_disk(radius);
    const Rect window{base.re_min * radius, base.re_max * radius, base.im_min * radius, base.im_max * radius};
    for (const auto& c : fiber_candidates(locator, z, window, options.grid_n, 0.0, scan)) {
      if (c.status != LpStatus::bounded || !(c.optimum < bounded_level)) continue;
      StabilitySample s;
      s.x = {z, c.w};
      s.level = level;
      s.best_constant = best(s.x).value;
      out.samples.push_back(s);
    }
  }

  std::vector<double> reference;
  for (const auto& s : out.samples) {
    if (!std::isfinite(s.best_constant)) continue;
    out.best_constants.push_back(s.best_constant);
    auto& m = out.level_max[static_cast<std::size_t>(s.level)];
    m = std::max(m, s.best_constant);
    if (s.level == 0) reference.push_back(s.best_constant);
  }
  if (out.best_constants.empty() || reference.empty()) {
    out.verdict = StabilityVerdict::inconclusive;
    return out;
  }
  out.sup_estimate = *std::max_element(out.best_constants.begin(), out.best_constants.end());
  std::sort(reference.begin(), reference.end());
  const std::size_t mid = reference.size() / 2;
  out.reference_median = reference.size() % 2 ? reference[mid] : 0.5 * (reference[mid - 1] + reference[mid]);
  out.verdict = out.sup_estimate > options.growth_factor * out.reference_median ? StabilityVerdict::evidence_unbounded
                                                                               : StabilityVerdict::evidence_bounded;
  return out;
}

AnalyticityReport analyticity_probe(const ZGrid& grid, const std::vector<std::vector<cx>>& fibers,
                                    double position_eps) {
  if (grid.nx < 1 || grid.ny < 1 || !(grid.h > 0.0)) throw PreconditionError("analyticity_probe: bad grid");
  if (fibers.size() != grid.size()) throw PreconditionError("analyticity_probe: one fiber per grid point required");

  AnalyticityReport out;
  out.noise_floor = position_eps / grid.h;
  const cx nan(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
  auto at = [&](int ix, int iy) { return static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid.nx) + static_cast<std::size_t>(ix); };

  for (const cx& seed : fibers[0]) {
    Branch b;
    b.values.assign(grid.size(), nan);
    b.tracked.assign(grid.size(), false);
    b.values[0] = seed;
    b.tracked[0] = true;
    for (int iy = 0; iy < grid.ny; ++iy) {
      for (int ix = 0; ix < grid.nx; ++ix) {
        if (ix == 0 && iy == 0) continue;
        std::size_t ref;
        if (ix > 0 && b.tracked[at(ix - 1, iy)]) {
          ref = at(ix - 1, iy);
        } else if (iy > 0 && b.tracked[at(ix, iy - 1)]) {
          ref = at(ix, iy - 1);
        } else {
          continue;
        }
        const cx prev = b.values[ref];
        const double radius = 10.0 * grid.h * (1.0 + std::abs(prev));
        const auto& cell = fibers[at(ix, iy)];
        double best = kInf;
        cx pick = nan;
        for (const cx& w : cell)
          if (std::abs(w - prev) < best) {
            best = std::abs(w - prev);
            pick = w;
          }
        if (best <= radius) {
          b.values[at(ix, iy)] = pick;
          b.tracked[at(ix, iy)] = true;
        }
      }
    }
    for (int iy = 1; iy + 1 < grid.ny; ++iy)
      for (int ix = 1; ix + 1 < grid.nx; ++ix) {
        const std::size_t l = at(ix - 1, iy), r = at(ix + 1, iy), d = at(ix, iy - 1), u = at(ix, iy + 1);
        if (!(b.tracked[l] && b.tracked[r] && b.tracked[d] && b.tracked[u])) continue;
        const cx wx = (b.values[r] - b.values[l]) / (2.0 * grid.h);
        const cx wy = (b.values[u] - b.values[d]) / (2.0 * grid.h);
        b.max_residual = std::max(b.max_residual, std::abs(0.5 * (wx + cx(0.0, 1.0) * wy)));
        ++b.evaluated;
      }
    b.flagged = b.max_residual > 10.0 * out.noise_floor;
    out.any_flagged = out.any_flagged || b.flagged;
    out.branches.push_back(std::move(b));
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (const auto& b : out.branches)
      if (!b.tracked[i]) {
        out.failed.push_back(i);
        break;
      }
  return out;
}

AnalyticityReport analyticity_probe(const ZGrid& grid, const std::vector<FiberSet>& fibers, double position_eps) {
  std::vector<std::vector<cx>> ws;
  ws.reserve(fibers.size());
  for (const auto& f : fibers) {
    std::vector<cx> pts;
    for (const auto& p : f.points) pts.push_back(p.w);
    ws.push_back(std::move(pts));
  }
  return analyticity_probe(grid, ws, position_eps);
}

}  // namespace hullscope
