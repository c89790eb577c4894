#pragma once

#include <cstdint>
#include <vector>

#include "hullscope/curve.hpp"
#include "hullscope/extremal.hpp"

namespace hullscope {

struct MembershipOptions {
  double tol = 1e-6;  // multiplicative slack on Lambda
  ExtremalOptions extremal;
};

struct MembershipResult {
  bool member = false;
  double worst_ratio = kInf;  // Lambda / M
  double value = kInf;
  LpStatus status = LpStatus::infeasible_numerics;
  BivariatePoly witness;
};

/// |Q(x)| <= M^{d+e} sup|Q| for every Q of bidegree (d, e)?
MembershipResult membership_bidegree(const CurveC2& curve, C2Point x, double M, int d, int e,
                                     const MembershipOptions& options = {});

struct CapMembership {
  bool member = false;
  double worst_ratio = 0.0;
  int worst_d = 0;
  int worst_e = 0;
  int checked = 0;
  LpStatus status = LpStatus::bounded;
};

/// Membership at every bidegree (d', e') <= (d_max, e_max). Pairs are tested
/// in increasing d' + e', so a failing low-degree witness stops the scan early.
class CappedMembership {
 public:
  CappedMembership(const CurveC2& curve, int d_max, int e_max, const MembershipOptions& options = {});

  CapMembership operator()(C2Point x, double M, bool short_circuit = true) const;

  /// The (d_max, e_max) problem, used for screening.
  const ExtremalProblem& top() const { return problems_.back(); }
  int d_max() const { return d_max_; }
  int e_max() const { return e_max_; }
  double tol() const { return options_.tol; }

 private:
  int d_max_;
  int e_max_;
  MembershipOptions options_;
  std::vector<ExtremalProblem> problems_;  // ordered by (d + e, d); top last
};

struct InclusionReport {
  int samples = 0;
  int total_members = 0;    // points passing the total-degree test
  int bidegree_members = 0;
  int counterexamples = 0;  // total member but bidegree non-member
  int reverse_failures = 0; // bidegree member but total non-member (allowed)
  int numerical_failures = 0;
  std::vector<C2Point> counterexample_points;
  bool holds = false;
};

/// Checks that total-degree membership at every degree 1..d+e (exponent
/// equal to the degree) implies bidegree-(d, e) membership (exponent d + e).
/// Both programs share one discretization, so the implication is exact up to
/// the LP tolerance.
InclusionReport inclusion_check(const CurveC2& curve, const std::vector<C2Point>& points, double M, int d, int e,
                                const MembershipOptions& options = {}, Exec exec = Exec::parallel);

/// Fixed z, `samples` values of w drawn uniformly from the default w window.
InclusionReport inclusion_check(const CurveC2& curve, cx z, double M, int d, int e, int samples,
                                std::uint64_t seed = 1, const MembershipOptions& options = {},
                                Exec exec = Exec::parallel);

/// Test points for inclusion_check: half on the analytic continuation
/// (f(zeta), g(zeta)) with |zeta| <= 1.2 inside the parameter domain, half
/// uniform in a box around the curve's bounding box.
std::vector<C2Point> inclusion_sample_points(const CurveC2& curve, int n, std::uint64_t seed);

}  // namespace hullscope
