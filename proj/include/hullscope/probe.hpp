#pragma once

#include <cstdint>
#include <vector>

#include "hullscope/curve.hpp"
#include "hullscope/extremal.hpp"
#include "hullscope/fiber.hpp"

namespace hullscope {

// Numerical evidence only: neither probe proves anything about the hull.

enum class StabilityVerdict { evidence_bounded, evidence_unbounded, inconclusive };

const char* to_string(StabilityVerdict v);

struct StabilityOptions {
  /// z is drawn from the disk of each radius in turn; the first level is the
  /// reference for the growth test.
  std::vector<double> radii{1.0, 2.0, 4.0, 8.0};
  int grid_n = 16;  // w grid for locating hull points
  int d_cap = 3;    // bidegree program used to locate them
  int e_cap = 3;
  double growth_factor = 10.0;
  ExtremalOptions extremal;
  Exec exec = Exec::parallel;
};

struct StabilitySample {
  C2Point x;
  int level = 0;
  double best_constant = kInf;
};

struct StabilityReport {
  std::vector<StabilitySample> samples;
  std::vector<double> best_constants;  // finite ones, in sample order
  std::vector<double> level_max;
  double reference_median = 0.0;
  double sup_estimate = 0.0;
  StabilityVerdict verdict = StabilityVerdict::inconclusive;
};

/// Draws n_points values of z across the radius levels, locates hull points
/// over each z (refined minimizers of the capped bidegree program, including
/// the w-roots of its witness), and evaluates best_constant(d_max) there.
/// evidence_unbounded if some constant exceeds growth_factor times the median
/// at the first level.
StabilityReport stability_probe(const CurveC2& curve, int n_points, int d_max, std::uint64_t seed,
                                const StabilityOptions& options = {});

/// Rectangular grid of z values, x index fastest.
struct ZGrid {
  cx origin = 0.0;  // lower-left grid point
  double h = 0.05;
  int nx = 0;
  int ny = 0;
  cx point(int ix, int iy) const { return origin + cx(ix * h, iy * h); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

struct Branch {
  std::vector<cx> values;     // per grid point; NaN where untracked
  std::vector<bool> tracked;
  double max_residual = 0.0;  // max |dw/dzbar| over interior points
  int evaluated = 0;
  bool flagged = false;
};

struct AnalyticityReport {
  std::vector<Branch> branches;
  double noise_floor = 0.0;          // position_eps / h
  std::vector<std::size_t> failed;   // grid points where some branch was lost
  bool any_flagged = false;
};

/// Follows each fiber point at the first grid point by nearest-neighbor
/// continuation and estimates dw/dzbar = (w_x + i w_y) / 2 with centered
/// differences. Branches whose residual exceeds 10 * noise_floor are flagged.
AnalyticityReport analyticity_probe(const ZGrid& grid, const std::vector<std::vector<cx>>& fibers,
                                    double position_eps = 1e-6);
AnalyticityReport analyticity_probe(const ZGrid& grid, const std::vector<FiberSet>& fibers,
                                    double position_eps = 1e-6);

}  // namespace hullscope
