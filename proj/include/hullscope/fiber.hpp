#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hullscope/curve.hpp"
#include "hullscope/extremal.hpp"
#include "hullscope/membership.hpp"
#include "hullscope/vanishing.hpp"

namespace hullscope {

struct FiberPoint {
  cx w;
  double residual = 0.0;  // worst Lambda / M over the degree caps
};

enum class FiberMethod { grid_scan, limit_roots };

struct FiberSet {
  cx z = 0.0;
  double M = 1.0;
  std::vector<FiberPoint> points;  // cluster representatives, sorted by (Re w, Im w)
  FiberMethod method = FiberMethod::grid_scan;
  int d_max = 0;
  int e_max = 0;
  double grid_spacing = 0.0;
  double cluster_eps = 0.0;
  int candidates = 0;  // refined candidates examined
  std::optional<UnivariatePoly> limit_poly;
};

struct FiberScanOptions {
  double tol = 1e-6;
  ExtremalOptions extremal;
  int max_candidates = 16;
  int refine_evaluations = 160;  // LP budget per candidate
  /// Also seed refinement at the roots in w of the screening witness; finds
  /// fiber points outside the window (kept only if clip_to_window is false).
  bool witness_roots = false;
  bool clip_to_window = true;
  Exec exec = Exec::parallel;
};

/// Screens the w-window on a grid_n x grid_n grid of cell centers with the
/// (d_max, e_max) program, refines the accepted points and local minima of
/// the capped LP optimum, confirms each refined point against every degree
/// pair up to the caps, and clusters survivors within 2 grid spacings.
FiberSet fiber_scan(const CurveC2& curve, cx z, double M, const Rect& w_window, int grid_n, int d_max, int e_max,
                    const FiberScanOptions& options = {});

/// Same, with the degree-cap programs already assembled (for repeated scans).
FiberSet fiber_scan(const CappedMembership& caps, cx z, double M, const Rect& w_window, int grid_n,
                    const FiberScanOptions& options = {});

/// Refined local minimizers of the capped optimum over the window, without
/// the membership decision. `optimum` is the raw capped LP value.
struct FiberCandidate {
  cx w;
  double optimum = kInf;
  LpStatus status = LpStatus::infeasible_numerics;
};
std::vector<FiberCandidate> fiber_candidates(const ExtremalProblem& problem, cx z, const Rect& w_window, int grid_n,
                                             double accept_level, const FiberScanOptions& options = {});

struct FiberBoundCheck {
  cx w;
  int d = 0;
  double value = 0.0;  // |B_d(w)|
  double bound = 0.0;  // r0^{de/2}
  bool ok = false;
};

struct LimitPolynomialResult {
  UnivariatePoly b_star;
  std::vector<cx> roots;
  int d_star = 0;
  std::vector<int> used_d;
  std::vector<int> skipped_d;
  std::vector<UnivariatePoly> sequence;     // B_d for the used d
  std::vector<double> cauchy_differences;   // max |coeff| change between consecutive B_d
  std::vector<FiberBoundCheck> fiber_checks;
  bool fiber_bound_holds = true;
};

struct LimitPolynomialOptions {
  double tol = 1e-6;
  int min_survivors = 3;
  NullVectorOptions null_vector;
};

/// For each d with z1 outside T(d, e), B_d = make_unit(F_{d,e}(z1, .)).
/// Returns the B_d of largest d with its roots, and reports
/// |B_d(w)| <= r0^{de/2} at the supplied fiber points.
LimitPolynomialResult limit_polynomial(const CurveC2& curve, cx z1, int e, const std::vector<int>& d_list, double r0,
                                       cx zeta0, const std::vector<cx>& fiber_points = {},
                                       const LimitPolynomialOptions& options = {});

struct FinitenessOptions {
  std::vector<int> d_list;  // empty: {e + 2, e + 4, e + 6}
  int grid_n = 16;
  int d_cap = 0;  // fiber degree caps; 0: max(2, e) and e
  int e_cap = 0;
  double tube = 0.02;
  double r0 = 0.0;  // 0: sqrt of the default-domain Green rate
  double root_slack = 1e-3;
  FiberScanOptions scan;
};

struct FinitenessSample {
  cx z;
  std::vector<FiberPoint> fiber;
  std::vector<cx> b_star_roots;
  int cardinality = 0;
  bool in_exceptional_set = false;  // z in T(d, e) at the largest d
  bool has_limit = false;
  bool roots_match = false;
  bool consistent = false;  // cardinality <= e and every cluster near a root of B*
  std::string note;
};

struct FinitenessReport {
  double M = 1.0;
  int e = 0;
  std::uint64_t seed = 0;
  double r = 0.0;
  double r0 = 0.0;
  std::vector<FinitenessSample> samples;
  double consistent_fraction = 0.0;
  double exceptional_fraction = 0.0;
  double bound_fraction = 0.0;  // 48 r0^{e/2} / pi
  bool bound_vacuous = false;   // 48 r0^{e/2} >= pi
  bool bound_holds = false;
};

FinitenessReport finiteness_experiment(const CurveC2& curve, double M, int e, int n_z, std::uint64_t seed,
                                       const FinitenessOptions& options = {});

/// Distance from z to the polygonal image of the sampled projection pi(gamma).
double distance_to_projection(const CurveC2& curve, cx z, int samples = 2048);

}  // namespace hullscope
