#include "hullscope/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hullscope/errors.hpp"

namespace hullscope {

namespace {

int trig_degree(const LaurentPoly& p) { return std::max(std::abs(p.min_degree()), std::abs(p.max_degree())); }

void check_options(const ExtremalOptions& o) {
  if (o.directions < 8 || o.directions % 2 != 0) throw PreconditionError("directions must be even and >= 8");
  if (o.samples != 0 && o.samples < 16) throw PreconditionError("samples must be >= 16");
}

}  // namespace

int default_samples(const CurveC2& curve, int dz, int dw, int directions) {
  int degree = 0;
  for (const auto& c : curve.components())
    degree = std::max(degree, dz * trig_degree(c.f) + dw * trig_degree(c.g));
  int s = std::max(128, 8 * degree);
  if (directions > 0) s = (s + directions - 1) / directions * directions;
  return s;
}

ExtremalProblem::ExtremalProblem(const CurveC2& curve, Grading grading, int d, int e,
                                 const ExtremalOptions& options)
    : grading_(grading), d_(d), e_(grading == Grading::total ? d : e), options_(options) {
  if (d < 1 || (grading == Grading::bidegree && e < 1)) throw PreconditionError("degree must be >= 1");
  check_options(options);
  if (options.samples > 0) {
    samples_ = options.samples;
  } else if (grading == Grading::total) {
    // a total-degree monomial z^n w^m has n + m <= d
    samples_ = std::max(default_samples(curve, d, 0, options.directions),
                        default_samples(curve, 0, d, options.directions));
  } else {
    samples_ = default_samples(curve, d, e_, options.directions);
  }
  basis_ = grading == Grading::total ? total_degree_basis(d_) : bidegree_basis(d_, e_);

  const BoundarySample boundary = sample_boundary(curve, samples_);
  double zmax = 0.0;
  double wmax = 0.0;
  for (const auto& p : boundary.points) {
    zmax = std::max(zmax, std::abs(p.z));
    wmax = std::max(wmax, std::abs(p.w));
  }
  z_scale_ = zmax > 0.0 ? zmax : 1.0;
  w_scale_ = wmax > 0.0 ? wmax : 1.0;

  values_.resize(static_cast<Eigen::Index>(boundary.points.size()), static_cast<Eigen::Index>(basis_.size()));
  std::vector<cx> zp(static_cast<std::size_t>(d_ + 1));
  std::vector<cx> wp(static_cast<std::size_t>(e_ + 1));
  for (std::size_t j = 0; j < boundary.points.size(); ++j) {
    const cx z = boundary.points[j].z / z_scale_;
    const cx w = boundary.points[j].w / w_scale_;
    zp[0] = wp[0] = 1.0;
    for (int n = 1; n <= d_; ++n) zp[static_cast<std::size_t>(n)] = zp[static_cast<std::size_t>(n - 1)] * z;
    for (int m = 1; m <= e_; ++m) wp[static_cast<std::size_t>(m)] = wp[static_cast<std::size_t>(m - 1)] * w;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      values_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          zp[static_cast<std::size_t>(basis_[i].n)] * wp[static_cast<std::size_t>(basis_[i].m)];
  }
}

Eigen::VectorXcd ExtremalProblem::target(C2Point x) const {
  const cx z = x.z / z_scale_;
  const cx w = x.w / w_scale_;
  Eigen::VectorXcd t(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i) t(static_cast<Eigen::Index>(i)) = std::pow(z, basis_[i].n) * std::pow(w, basis_[i].m);
  return t;
}

ExtremalResult ExtremalProblem::solve(C2Point x, const LpBasis* warm) const {
  ModulusLpOptions lp;
  lp.directions = options_.directions;
  lp.cap = options_.cap;
  lp.unbounded_threshold = options_.unbounded_threshold;
  const ModulusLpResult sol = solve_modulus_lp(values_, target(x), lp, warm);

  ExtremalResult out;
  out.status = sol.status;
  out.optimum = sol.optimum;
  out.cap_share = sol.cap_share;
  out.degree = d_;
  out.exponent = exponent();
  out.lp_stats = {sol.n_constraints, sol.n_variables, options_.directions, samples_, sol.iterations};
  out.basis = sol.basis;

  out.witness = BivariatePoly(grading_, d_, e_);
  if (sol.coefficients.size() == static_cast<Eigen::Index>(basis_.size())) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Monomial mono = basis_[i];
      const double scale = std::pow(z_scale_, mono.n) * std::pow(w_scale_, mono.m);
      out.witness.set_coeff(mono.n, mono.m, sol.coefficients(static_cast<Eigen::Index>(i)) / scale);
    }
  }

  const double k = static_cast<double>(out.exponent);
  if (sol.status == LpStatus::bounded) {
    out.value = std::pow(std::max(sol.optimum, 0.0), 1.0 / k);
    out.lower = out.value * std::pow(std::cos(std::numbers::pi / options_.directions), 1.0 / k);
  } else if (sol.status == LpStatus::unbounded) {
    out.value = out.lower = kInf;
  } else {
    out.value = out.lower = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

ExtremalResult extremal_value(const CurveC2& curve, C2Point x, int d, const ExtremalOptions& options) {
  return ExtremalProblem(curve, Grading::total, d, d, options).solve(x);
}

ExtremalResult extremal_value_bidegree(const CurveC2& curve, C2Point x, int d, int e,
                                       const ExtremalOptions& options) {
  return ExtremalProblem(curve, Grading::bidegree, d, e, options).solve(x);
}

BestConstantEvaluator::BestConstantEvaluator(const CurveC2& curve, int d_max, const ExtremalOptions& options) {
  if (d_max < 2) throw PreconditionError("best_constant: d_max must be >= 2");
  problems_.reserve(static_cast<std::size_t>(d_max));
  for (int d = 1; d <= d_max; ++d) problems_.emplace_back(curve, Grading::total, d, d, options);
}

BestConstant BestConstantEvaluator::operator()(C2Point x, std::vector<LpBasis>* warm) const {
  BestConstant out;
  out.value = 0.0;
  out.lower = 0.0;
  out.status = LpStatus::bounded;
  if (warm != nullptr) warm->resize(problems_.size());
  for (std::size_t i = 0; i < problems_.size(); ++i) {
    const ExtremalProblem& problem = problems_[i];
    const LpBasis* start = warm != nullptr && !(*warm)[i].empty() ? &(*warm)[i] : nullptr;
    const ExtremalResult r = problem.solve(x, start);
    if (warm != nullptr && !r.basis.empty()) (*warm)[i] = r.basis;
    out.per_degree.push_back(r.value);
    if (r.status == LpStatus::infeasible_numerics) {
      out.status = LpStatus::infeasible_numerics;
      out.value = out.lower = std::numeric_limits<double>::quiet_NaN();
      return out;
    }
    if (r.status == LpStatus::unbounded) {
      out.status = LpStatus::unbounded;
      out.value = out.lower = kInf;
      return out;
    }
    out.value = std::max(out.value, r.value);
    out.lower = std::max(out.lower, r.lower);
  }
  return out;
}

BestConstant best_constant(const CurveC2& curve, C2Point x, int d_max, const ExtremalOptions& options) {
  return BestConstantEvaluator(curve, d_max, options)(x);
}

Rect default_w_window(const CurveC2& curve) {
  double gmax = 0.0;
  for (const auto& p : sample_boundary(curve, 1024).points) gmax = std::max(gmax, std::abs(p.w));
  const double h = 1.25 * std::max(1.0, gmax);
  return {-h, h, -h, h};
}

bool default_envelope(C2Point x) { return std::norm(x.w) <= std::norm(x.z) + 1.0; }

double HullSlice::member_area() const {
  const double dx = (spec.region.re_max - spec.region.re_min) / grid_n;
  const double dy = (spec.region.im_max - spec.region.im_min) / grid_n;
  return members * dx * dy;
}

HullSlice hull_slice(const CurveC2& curve, double M, const SliceSpec& spec, int grid_n, int d_max,
                     const SliceOptions& options) {
  if (grid_n < 32) throw PreconditionError("hull_slice: grid_n must be >= 32");
  if (!(M >= 1.0)) throw PreconditionError("hull_slice: M must be >= 1");
  const Rect& box = spec.region;
  if (!(box.re_max > box.re_min) || !(box.im_max > box.im_min))
    throw PreconditionError("hull_slice: empty region");

  HullSlice out;
  out.spec = spec;
  out.grid_n = grid_n;
  out.M = M;
  out.d_max = d_max;
  out.tol = options.tol;
  out.cells.resize(static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n));

  const BestConstantEvaluator evaluate(curve, d_max, options.extremal);
  const double dx = (box.re_max - box.re_min) / grid_n;
  const double dy = (box.im_max - box.im_min) / grid_n;
  // rows in parallel; along a row each cell warm-starts from its neighbor
  const auto n = static_cast<std::size_t>(grid_n);
  for_each_index(options.exec, n, [&](std::size_t iy) {
    std::vector<LpBasis> warm;
    for (std::size_t ix = 0; ix < n; ++ix) {
      SliceCell& cell = out.cells[iy * n + ix];
      cell.coordinate = {box.re_min + (static_cast<double>(ix) + 0.5) * dx,
                         box.im_min + (static_cast<double>(iy) + 0.5) * dy};
      const C2Point x = spec.plane == SliceSpec::Plane::z ? C2Point{cell.coordinate, spec.fixed}
                                                          : C2Point{spec.fixed, cell.coordinate};
      const BestConstant bc = evaluate(x, &warm);
      cell.value = bc.value;
      cell.lower = bc.lower;
      cell.status = bc.status;
      cell.member = bc.status == LpStatus::bounded && bc.value <= M * (1.0 + options.tol);
      cell.envelope_violation = cell.member && options.envelope && !options.envelope(x);
    }
  });
  for (const auto& c : out.cells) {
    out.members += c.member ? 1 : 0;
    out.envelope_violations += c.envelope_violation ? 1 : 0;
    out.numerical_failures += c.status == LpStatus::infeasible_numerics ? 1 : 0;
  }
  return out;
}

}  // namespace hullscope
