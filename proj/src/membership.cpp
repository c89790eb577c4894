#include "hullscope/membership.hpp"

#include <algorithm>
#include <cmath>

#include "hullscope/errors.hpp"
#include "hullscope/random.hpp"

namespace hullscope {

namespace {

bool passes(const ExtremalResult& r, double M, double tol) {
  return r.status == LpStatus::bounded && r.value <= M * (1.0 + tol);
}

double ratio(const ExtremalResult& r, double M) {
  if (r.status == LpStatus::bounded) return r.value / M;
  if (r.status == LpStatus::unbounded) return kInf;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

MembershipResult membership_bidegree(const CurveC2& curve, C2Point x, double M, int d, int e,
                                     const MembershipOptions& options) {
  if (!(M >= 1.0)) throw PreconditionError("membership: M must be >= 1");
  if (d < 1 || e < 1) throw PreconditionError("membership: d and e must be >= 1");
  const ExtremalResult r = extremal_value_bidegree(curve, x, d, e, options.extremal);
  MembershipResult out;
  out.status = r.status;
  out.value = r.value;
  out.worst_ratio = ratio(r, M);
  out.member = passes(r, M, options.tol);
  out.witness = r.witness;
  return out;
}

CappedMembership::CappedMembership(const CurveC2& curve, int d_max, int e_max, const MembershipOptions& options)
    : d_max_(d_max), e_max_(e_max), options_(options) {
  if (d_max < 1 || e_max < 1) throw PreconditionError("membership: degree caps must be >= 1");
  std::vector<Monomial> pairs;
  for (int d = 1; d <= d_max; ++d)
    for (int e = 1; e <= e_max; ++e) pairs.push_back({d, e});
  std::stable_sort(pairs.begin(), pairs.end(), [](Monomial a, Monomial b) { return a.n + a.m < b.n + b.m; });
  problems_.reserve(pairs.size());
  for (const auto& p : pairs) problems_.emplace_back(curve, Grading::bidegree, p.n, p.m, options.extremal);
}

CapMembership CappedMembership::operator()(C2Point x, double M, bool short_circuit) const {
  CapMembership out;
  out.member = true;
  for (const auto& problem : problems_) {
    const ExtremalResult r = problem.solve(x);
    ++out.checked;
    const double q = ratio(r, M);
    if (!(q <= out.worst_ratio)) {  // NaN-aware: a failed solve is the worst
      out.worst_ratio = q;
      out.worst_d = problem.d();
      out.worst_e = problem.e();
    }
    if (!passes(r, M, options_.tol)) {
      out.member = false;
      if (r.status != LpStatus::bounded) out.status = r.status;
      if (short_circuit) break;
    }
  }
  return out;
}

InclusionReport inclusion_check(const CurveC2& curve, const std::vector<C2Point>& points, double M, int d, int e,
                                const MembershipOptions& options, Exec exec) {
  if (!(M >= 1.0)) throw PreconditionError("inclusion_check: M must be >= 1");
  if (d < 1 || e < 1) throw PreconditionError("inclusion_check: d and e must be >= 1");

  // One discretization for every program, fine enough for total degree d + e.
  MembershipOptions opt = options;
  if (opt.extremal.samples == 0)
    opt.extremal.samples = std::max(default_samples(curve, d + e, 0, opt.extremal.directions),
                                    default_samples(curve, 0, d + e, opt.extremal.directions));
  std::vector<ExtremalProblem> total;
  for (int delta = 1; delta <= d + e; ++delta) total.emplace_back(curve, Grading::total, delta, delta, opt.extremal);
  const ExtremalProblem bidegree(curve, Grading::bidegree, d, e, opt.extremal);

  struct Outcome {
    bool total_member = true;
    bool bidegree_member = false;
    bool failed = false;
  };
  std::vector<Outcome> outcomes(points.size());
  for_each_index(exec, points.size(), [&](std::size_t i) {
    Outcome& o = outcomes[i];
    for (const auto& problem : total) {
      const ExtremalResult r = problem.solve(points[i]);
      if (r.status == LpStatus::infeasible_numerics) o.failed = true;
      if (!passes(r, M, opt.tol)) {
        o.total_member = false;
        break;
      }
    }
    const ExtremalResult b = bidegree.solve(points[i]);
    if (b.status == LpStatus::infeasible_numerics) o.failed = true;
    o.bidegree_member = passes(b, M, opt.tol);
  });

  InclusionReport out;
  out.samples = static_cast<int>(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Outcome& o = outcomes[i];
    out.numerical_failures += o.failed ? 1 : 0;
    out.total_members += o.total_member ? 1 : 0;
    out.bidegree_members += o.bidegree_member ? 1 : 0;
    if (o.total_member && !o.bidegree_member) {
      ++out.counterexamples;
      out.counterexample_points.push_back(points[i]);
    }
    if (o.bidegree_member && !o.total_member) ++out.reverse_failures;
  }
  out.holds = out.counterexamples == 0;
  return out;
}

InclusionReport inclusion_check(const CurveC2& curve, cx z, double M, int d, int e, int samples, std::uint64_t seed,
                                const MembershipOptions& options, Exec exec) {
  if (samples < 1) throw PreconditionError("inclusion_check: samples must be >= 1");
  const Rect box = default_w_window(curve);
  Rng rng(seed);
  std::vector<C2Point> points;
  points.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double re = rng.uniform(box.re_min, box.re_max);
    const double im = rng.uniform(box.im_min, box.im_max);
    points.push_back({z, {re, im}});
  }
  return inclusion_check(curve, points, M, d, e, options, exec);
}

std::vector<C2Point> inclusion_sample_points(const CurveC2& curve, int n, std::uint64_t seed) {
  double zmax = 0.0;
  double wmax = 0.0;
  for (const auto& p : sample_boundary(curve, 512).points) {
    zmax = std::max(zmax, std::abs(p.z));
    wmax = std::max(wmax, std::abs(p.w));
  }
  const double zbox = 1.25 * std::max(1.0, zmax);
  const double wbox = 1.25 * std::max(1.0, wmax);
  Rng rng(seed);
  std::vector<C2Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      cx zeta;
      do {
        zeta = rng.in_disk(1.2);
      } while (!curve.in_domain(zeta));
      const std::size_t k = rng.next() % curve.size();
      out.push_back(eval_component(curve, k, zeta));
    } else {
      const cx z{rng.uniform(-zbox, zbox), rng.uniform(-zbox, zbox)};
      const cx w{rng.uniform(-wbox, wbox), rng.uniform(-wbox, wbox)};
      out.push_back({z, w});
    }
  }
  return out;
}

}  // namespace hullscope
