#include <Eigen/Eigenvalues>

#include <cmath>

#include "hullscope/errors.hpp"
#include "hullscope/poly.hpp"

namespace hullscope {
namespace {

// Parlett-Reinsch balancing by powers of two; reduces the norm of the
// companion matrix so the eigenvalues come out with smaller backward error.
void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  const double gamma = 0.9;
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == i) continue;
        row += std::abs(a(i, k));
        col += std::abs(a(k, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col, exponent);
      const double scaled_row = std::ldexp(row, -exponent);
      if (scaled_col + scaled_row < gamma * (row + col)) {
        changed = true;
        a.row(i) *= std::ldexp(1.0, -exponent);
        a.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

cx derivative_at(const std::vector<cx>& c, cx x) {
  cx acc = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) acc = acc * x + static_cast<double>(k) * c[k];
  return acc;
}

}  // namespace

std::vector<cx> roots(const UnivariatePoly& p) {
  if (p.degree() < 1) throw PreconditionError("roots: constant polynomial has no roots to find");

  const auto& c = p.coeffs();
  std::vector<cx> out;

  // exact zero roots first
  std::size_t low = 0;
  while (c[low] == cx(0.0)) {
    out.push_back(0.0);
    ++low;
  }
  const std::vector<cx> q(c.begin() + static_cast<long>(low), c.end());
  const int n = static_cast<int>(q.size()) - 1;
  if (n == 0) return out;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -q[static_cast<std::size_t>(i)] / q.back();
  balance(companion);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("roots: eigenvalue iteration failed");

  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    cx r = solver.eigenvalues()(i);
    double res = std::abs(p(r));
    for (int it = 0; it < 5 && res > 0.0; ++it) {
      const cx dp = derivative_at(c, r);
      if (dp == cx(0.0)) break;
      const cx cand = r - p(r) / dp;
      const double cand_res = std::abs(p(cand));
      if (!(cand_res < res)) break;
      r = cand;
      res = cand_res;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace hullscope
