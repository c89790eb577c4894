#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "hullscope/curve.hpp"
#include "hullscope/modulus_lp.hpp"
#include "hullscope/parallel.hpp"
#include "hullscope/poly.hpp"

namespace hullscope {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ExtremalOptions {
  int samples = 0;  // boundary samples per component; 0 picks default_samples()
  int directions = 32;
  double cap = 1e8;
  double unbounded_threshold = 1e7;
};

/// Samples per component needed to resolve polynomials of degree (dz, dw) on
/// the curve: max(128, 8 * D) rounded up to a multiple of `directions`, where
/// D bounds the trigonometric degree of the pulled-back monomials.
int default_samples(const CurveC2& curve, int dz, int dw, int directions = 32);

struct LpStats {
  int n_constraints = 0;
  int n_variables = 0;
  int directions = 0;
  int samples = 0;
  int iterations = 0;
};

/// Lambda(x) = (LP optimum)^(1/exponent), where exponent is d for total
/// degree d and d + e for bidegree (d, e).
struct ExtremalResult {
  double value = kInf;
  /// value * cos(pi / K)^(1/exponent): the polygonal relaxation can only
  /// overestimate, so [lower, value] encloses the sampled extremal value.
  double lower = kInf;
  double optimum = kInf;  // raw capped LP optimum
  double cap_share = 0.0;
  LpStatus status = LpStatus::infeasible_numerics;
  BivariatePoly witness;
  int degree = 0;
  int exponent = 0;
  LpStats lp_stats;
  LpBasis basis;  // warm start for nearby points of the same problem

  bool bounded() const { return status == LpStatus::bounded; }
};

/// Extremal problem  max{ Re P(x) : |P| <= 1 on the sampled curve }  over a
/// fixed polynomial space. Boundary data are assembled once, in the scaled
/// monomials (z / z_scale)^n (w / w_scale)^m, so many points can be solved
/// against the same discretization.
class ExtremalProblem {
 public:
  ExtremalProblem(const CurveC2& curve, Grading grading, int d, int e, const ExtremalOptions& options = {});

  /// `warm`: basis from an earlier solve of this problem (optional).
  ExtremalResult solve(C2Point x, const LpBasis* warm = nullptr) const;

  Grading grading() const { return grading_; }
  int d() const { return d_; }
  int e() const { return e_; }
  int exponent() const { return grading_ == Grading::total ? d_ : d_ + e_; }
  int samples() const { return samples_; }
  double z_scale() const { return z_scale_; }
  double w_scale() const { return w_scale_; }

 private:
  Eigen::VectorXcd target(C2Point x) const;

  Grading grading_;
  int d_;
  int e_;
  ExtremalOptions options_;
  int samples_;
  double z_scale_ = 1.0;
  double w_scale_ = 1.0;
  std::vector<Monomial> basis_;
  Eigen::MatrixXcd values_;
};

/// Total-degree extremal value Lambda_d(x).
ExtremalResult extremal_value(const CurveC2& curve, C2Point x, int d, const ExtremalOptions& options = {});

/// Bidegree-(d, e) extremal value, exponent d + e.
ExtremalResult extremal_value_bidegree(const CurveC2& curve, C2Point x, int d, int e,
                                       const ExtremalOptions& options = {});

struct BestConstant {
  double value = kInf;  // max_d Lambda_d(x); inf if any degree is unbounded
  double lower = kInf;  // max_d of the enclosure lower ends
  LpStatus status = LpStatus::infeasible_numerics;
  std::vector<double> per_degree;  // Lambda_1 .. Lambda_dmax
};

BestConstant best_constant(const CurveC2& curve, C2Point x, int d_max, const ExtremalOptions& options = {});

/// best_constant with the per-degree problems assembled once, for scans.
class BestConstantEvaluator {
 public:
  BestConstantEvaluator(const CurveC2& curve, int d_max, const ExtremalOptions& options = {});
  /// `warm`, if non-null, holds one basis per degree and is updated in place.
  BestConstant operator()(C2Point x, std::vector<LpBasis>* warm = nullptr) const;
  int d_max() const { return static_cast<int>(problems_.size()); }

 private:
  std::vector<ExtremalProblem> problems_;
};

/// Rectangle [re_min, re_max] x [im_min, im_max] in one coordinate plane.
struct Rect {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
};

/// Square centered at 0 with half-width 1.25 max(1, max_K |g|): the default
/// search window for w.
Rect default_w_window(const CurveC2& curve);

/// A planar slice of C^2: the z-plane at fixed w, or the w-plane at fixed z.
struct SliceSpec {
  enum class Plane { z, w };
  Plane plane = Plane::z;
  cx fixed = 0.0;
  Rect region;
};

using EnvelopePredicate = std::function<bool(C2Point)>;

/// |w|^2 <= |z|^2 + 1.
bool default_envelope(C2Point x);

struct SliceCell {
  cx coordinate;  // the varying coordinate at the cell center
  double value = kInf;
  double lower = kInf;
  LpStatus status = LpStatus::infeasible_numerics;
  bool member = false;
  bool envelope_violation = false;
};

struct HullSlice {
  SliceSpec spec;
  int grid_n = 0;
  double M = 1.0;
  int d_max = 0;
  double tol = 1e-6;
  std::vector<SliceCell> cells;  // row-major, imaginary part outer
  int members = 0;
  int envelope_violations = 0;
  int numerical_failures = 0;

  /// Area of the member cells.
  double member_area() const;
};

struct SliceOptions {
  double tol = 1e-6;
  EnvelopePredicate envelope = default_envelope;
  ExtremalOptions extremal;
  Exec exec = Exec::parallel;
};

HullSlice hull_slice(const CurveC2& curve, double M, const SliceSpec& spec, int grid_n, int d_max,
                     const SliceOptions& options = {});

}  // namespace hullscope
