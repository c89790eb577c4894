#include "hullscope/vanishing.hpp"

#include <Eigen/SVD>

#include "hullscope/errors.hpp"
#include "hullscope/log.hpp"

namespace hullscope {
namespace {

using Series = std::vector<cx>;

Series multiply(const Series& a, const Series& b, int order) {
  Series out(static_cast<std::size_t>(order), cx(0.0));
  for (int i = 0; i < order; ++i) {
    if (a[static_cast<std::size_t>(i)] == cx(0.0)) continue;
    for (int j = 0; i + j < order; ++j)
      out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  }
  return out;
}

std::vector<Series> powers(const Series& s, int count, int order) {
  std::vector<Series> out;
  Series one(static_cast<std::size_t>(order), cx(0.0));
  if (order > 0) one[0] = 1.0;
  out.push_back(one);
  for (int k = 1; k <= count; ++k) out.push_back(multiply(out.back(), s, order));
  return out;
}

Eigen::MatrixXcd equilibrate(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd out = a;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double n = out.row(i).norm();
    if (n > 0.0) out.row(i) /= n;
  }
  return out;
}

}  // namespace

VanishingSystem taylor_pullback(const LaurentPoly& f, const LaurentPoly& g, cx zeta0, int d, int e,
                                int order) {
  if (order < 0) throw PreconditionError("taylor_pullback: negative order");
  if (d < 0 || e < 0) throw PreconditionError("taylor_pullback: negative degree");
  if (zeta0 == cx(0.0) && (!f.is_polynomial() || !g.is_polynomial()))
    throw DomainError("taylor_pullback: zeta0 = 0 is a pole of the parameterization");

  VanishingSystem sys;
  sys.base_point = zeta0;
  sys.order = order;
  sys.d = d;
  sys.e = e;
  sys.matrix = Eigen::MatrixXcd::Zero(order, (d + 1) * (e + 1));
  if (order == 0) return sys;

  const auto fp = powers(f.taylor(zeta0, order), d, order);
  const auto gp = powers(g.taylor(zeta0, order), e, order);
  for (int n = 0; n <= d; ++n) {
    for (int m = 0; m <= e; ++m) {
      const Series col = multiply(fp[static_cast<std::size_t>(n)], gp[static_cast<std::size_t>(m)], order);
      for (int nu = 0; nu < order; ++nu) sys.matrix(nu, n * (e + 1) + m) = col[static_cast<std::size_t>(nu)];
    }
  }
  return sys;
}

VanishingSystem taylor_pullback(const CurveC2& curve, std::size_t k, cx zeta0, int d, int e, int order) {
  if (!curve.in_domain(zeta0))
    throw DomainError("taylor_pullback: base point outside the parameter annulus");
  const auto& c = curve.component(k);
  return taylor_pullback(c.f, c.g, zeta0, d, e, order);
}

VanishingSystem stack(const std::vector<VanishingSystem>& systems) {
  if (systems.empty()) throw PreconditionError("stack: no systems");
  VanishingSystem out;
  out.d = systems.front().d;
  out.e = systems.front().e;
  out.base_point = systems.front().base_point;
  Eigen::Index rows = 0;
  for (const auto& s : systems) {
    if (s.d != out.d || s.e != out.e) throw PreconditionError("stack: bidegree mismatch");
    rows += s.matrix.rows();
  }
  out.matrix.resize(rows, (out.d + 1) * (out.e + 1));
  Eigen::Index r = 0;
  for (const auto& s : systems) {
    out.matrix.middleRows(r, s.matrix.rows()) = s.matrix;
    r += s.matrix.rows();
  }
  out.order = static_cast<int>(rows);
  return out;
}

double relative_residual(const VanishingSystem& sys, const BivariatePoly& p) {
  if (sys.matrix.rows() == 0) return 0.0;
  const Eigen::MatrixXcd a = equilibrate(sys.matrix);
  const Eigen::VectorXcd c = p.to_vector();
  const double norm_a = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues()(0);
  if (norm_a == 0.0) return 0.0;
  return (a * c).norm() / (norm_a * c.norm());
}

BivariatePoly null_unit_vector(const VanishingSystem& sys, const NullVectorOptions& options) {
  const int cols = (sys.d + 1) * (sys.e + 1);
  if (sys.matrix.rows() >= cols) {
    throw PreconditionError("null_unit_vector: " + std::to_string(sys.matrix.rows()) +
                            " conditions leave no guaranteed kernel in dimension " + std::to_string(cols));
  }
  if (sys.matrix.rows() == 0) {
    BivariatePoly one = BivariatePoly::bidegree(sys.d, sys.e);
    one.set_coeff(0, 0, 1.0);
    return one;
  }

  const Eigen::MatrixXcd a = equilibrate(sys.matrix);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // rows < cols, so the last right singular vector spans part of the exact kernel
  Eigen::VectorXcd v = svd.matrixV().col(cols - 1);

  const Eigen::Index rank_bound = sv.size();
  const double smallest_nonzero = sv(rank_bound - 1);
  if (smallest_nonzero > 0.0 && sv(0) / smallest_nonzero > options.condition_warning) {
    warn("vanishing system condition number " + std::to_string(sv(0) / smallest_nonzero) + " exceeds " +
         std::to_string(options.condition_warning));
  }

  BivariatePoly p = make_unit(BivariatePoly::from_vector(Grading::bidegree, sys.d, sys.e, v));
  const double res = (a * p.to_vector()).norm() / (sv(0) * p.to_vector().norm());
  if (res > options.residual_bound) {
    throw ConditioningError("null_unit_vector: relative residual " + std::to_string(res) + " exceeds " +
                            std::to_string(options.residual_bound));
  }
  return p;
}

}  // namespace hullscope
