#pragma once

// Shared fixtures and independent reference computations for the tests.
// Nothing here calls the library routine it is used to check.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hullscope/curve.hpp"
#include "hullscope/poly.hpp"
#include "hullscope/random.hpp"

#ifndef HULLSCOPE_DATA_DIR
#define HULLSCOPE_DATA_DIR "data"
#endif

namespace testing {

using hullscope::cx;
using hullscope::CurveC2;
using hullscope::LaurentPoly;

inline std::string data_path(const std::string& name) { return std::string(HULLSCOPE_DATA_DIR) + "/curves/" + name; }

inline LaurentPoly mono(int k, cx c = 1.0) { return LaurentPoly::monomial(k, c); }

/// (zeta, 0): the unit circle in the z-axis.
inline CurveC2 axis_curve() { return CurveC2({{mono(1), LaurentPoly()}}); }
/// (zeta, zeta^2): the boundary of the graph w = z^2 over the disk.
inline CurveC2 graph_curve() { return CurveC2({{mono(1), mono(2)}}); }
/// (zeta, zeta^3 + 0.2 zeta).
inline CurveC2 cubic_curve() { return CurveC2({{mono(1), LaurentPoly(1, {0.2, 0.0, 1.0})}}); }
/// Circles in w = 0 and w = 1.
inline CurveC2 two_circles() { return CurveC2({{mono(1), LaurentPoly()}, {mono(1), mono(0)}}); }

/// Taylor coefficients a_0..a_{order-1} of h at zeta0 from a discrete Fourier
/// transform on the circle |zeta - zeta0| = radius.
template <class H>
std::vector<cx> dft_taylor(H&& h, cx zeta0, int order, double radius = 1e-3, int n = 64) {
  std::vector<cx> a(static_cast<std::size_t>(order), 0.0);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n;
    const cx u = std::polar(1.0, t);
    const cx v = h(zeta0 + radius * u);
    for (int k = 0; k < order; ++k) a[static_cast<std::size_t>(k)] += v * std::pow(std::conj(u), k);
  }
  for (int k = 0; k < order; ++k) a[static_cast<std::size_t>(k)] /= n * std::pow(radius, k);
  return a;
}

/// r = sup_{|z|=1} exp(-G(zeta0, z)) for the annulus a < |z| < b, with
/// G = -log|z - zeta0| + h and h the harmonic solution of h = log|z - zeta0|
/// on both circles. Five-point stencil in log-polar coordinates (s, theta),
/// where the Laplacian is conformally h_ss + h_tt; s = 0 must be a grid line.
inline double annulus_rate_fd(double a, double b, cx zeta0, int ns, int nt) {
  const double s0 = std::log(a), s1 = std::log(b);
  const double hs = (s1 - s0) / ns, ht = 2.0 * std::numbers::pi / nt;
  const int interior = ns - 1;
  auto id = [&](int i, int j) { return (i - 1) * nt + ((j % nt) + nt) % nt; };
  auto boundary = [&](double s, int j) { return std::log(std::abs(std::polar(std::exp(s), j * ht) - zeta0)); };

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(interior * nt);
  const double cs = 1.0 / (hs * hs), ct = 1.0 / (ht * ht);
  for (int i = 1; i <= interior; ++i)
    for (int j = 0; j < nt; ++j) {
      const int row = id(i, j);
      trip.emplace_back(row, row, -2.0 * cs - 2.0 * ct);
      trip.emplace_back(row, id(i, j - 1), ct);
      trip.emplace_back(row, id(i, j + 1), ct);
      if (i > 1) trip.emplace_back(row, id(i - 1, j), cs);
      else rhs[row] -= cs * boundary(s0, j);
      if (i < interior) trip.emplace_back(row, id(i + 1, j), cs);
      else rhs[row] -= cs * boundary(s1, j);
    }
  Eigen::SparseMatrix<double> A(interior * nt, interior * nt);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
  const Eigen::VectorXd h = lu.solve(rhs);

  const int mid = static_cast<int>(std::lround(-s0 / hs));  // s = 0
  double g_min = 1e300;
  for (int j = 0; j < nt; ++j) {
    const cx z = std::polar(1.0, j * ht);
    g_min = std::min(g_min, -std::log(std::abs(z - zeta0)) + h[id(mid, j)]);
  }
  return std::exp(-g_min);
}

/// Least d0 such that (MC)^{d+e} r^{de} <= r0^{de} for all d, e in (d0, limit],
/// by direct enumeration; -1 if none below limit works.
inline int threshold_by_scan(double MC, double r, double r0, int limit = 100) {
  auto holds = [&](int d, int e) {
    return (d + e) * std::log(MC) + d * e * std::log(r) <= d * e * std::log(r0) + 1e-12;
  };
  for (int d0 = 0; d0 < limit; ++d0) {
    bool ok = true;
    for (int d = d0 + 1; d <= limit && ok; ++d)
      for (int e = d0 + 1; e <= limit && ok; ++e) ok = holds(d, e);
    if (ok) return d0;
  }
  return -1;
}

/// Values of z^n w^m at a point, for the given exponent list.
inline Eigen::VectorXcd monomials_at(const std::vector<hullscope::Monomial>& basis, cx z, cx w) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    v[static_cast<Eigen::Index>(k)] = std::pow(z, basis[k].n) * std::pow(w, basis[k].m);
  return v;
}

/// sup { |t . c| : max_j |(V c)_j| <= 1 }, computed as
/// 1 / min { max_j |(V c)_j| : t . c = 1 } with Lawson's iteratively
/// reweighted least squares (a convex minimax problem, so the iteration
/// converges to the global minimum).
inline double minimax_sup(const Eigen::MatrixXcd& V, const Eigen::VectorXcd& t, int iterations = 20000) {
  const int n = static_cast<int>(t.size());
  Eigen::Index piv = 0;
  t.cwiseAbs().maxCoeff(&piv);
  // c_piv = (1 - sum_{i != piv} t_i c_i) / t_piv
  const Eigen::VectorXcd base = V.col(piv) / t[piv];
  Eigen::MatrixXcd B(V.rows(), n - 1);
  for (int i = 0, k = 0; i < n; ++i)
    if (i != piv) B.col(k++) = V.col(i) - base * t[i];
  const long S = V.rows();
  Eigen::VectorXd wt = Eigen::VectorXd::Constant(S, 1.0 / S);
  double best = base.cwiseAbs().maxCoeff();
  if (n == 1) return 1.0 / best;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd sq = wt.cwiseSqrt();
    const Eigen::VectorXcd c = (sq.asDiagonal() * B).colPivHouseholderQr().solve(-(sq.asDiagonal() * base));
    const Eigen::VectorXd r = (base + B * c).cwiseAbs();
    best = std::min(best, r.maxCoeff());
    wt = wt.cwiseProduct(r);
    const double total = wt.sum();
    if (!(total > 0.0)) break;
    wt /= total;
  }
  return 1.0 / best;
}

/// The same over span(basis) with samples y_j and evaluation point x.
inline double minimax_extremal(const std::vector<hullscope::Monomial>& basis, const std::vector<std::pair<cx, cx>>& ys,
                               cx xz, cx xw, int iterations = 20000) {
  Eigen::MatrixXcd V(static_cast<Eigen::Index>(ys.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < ys.size(); ++j)
    V.row(static_cast<Eigen::Index>(j)) = monomials_at(basis, ys[j].first, ys[j].second).transpose();
  return minimax_sup(V, monomials_at(basis, xz, xw), iterations);
}

/// Exhaustive grid over P = 1 + c_1 (phi_1 - phi_1(x)) + c_2 (phi_2 - phi_2(x))
/// (two complex coefficients, four real ones), refined by repeated local grids.
inline double grid_extremal_2(const std::vector<hullscope::Monomial>& basis, const std::vector<std::pair<cx, cx>>& ys,
                              cx xz, cx xw, int n = 21, int rounds = 6) {
  const Eigen::VectorXcd at_x = monomials_at(basis, xz, xw);
  std::vector<std::array<cx, 2>> rows;
  for (const auto& y : ys) {
    const Eigen::VectorXcd v = monomials_at(basis, y.first, y.second);
    rows.push_back({v[1] - at_x[1], v[2] - at_x[2]});
  }
  auto objective = [&](cx c1, cx c2) {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, std::abs(1.0 + c1 * r[0] + c2 * r[1]));
    return m;
  };
  double scale = 0.0;
  for (const auto& r : rows) scale = std::max({scale, std::abs(r[0]), std::abs(r[1])});
  double half = 4.0 / scale;
  cx c1 = 0.0, c2 = 0.0;
  double best = objective(c1, c2);
  for (int round = 0; round < rounds; ++round) {
    const cx o1 = c1, o2 = c2;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            auto at = [&](int i) { return half * (2.0 * i / (n - 1) - 1.0); };
            const cx t1 = o1 + cx(at(a), at(b)), t2 = o2 + cx(at(c), at(d));
            const double v = objective(t1, t2);
            if (v < best) best = v, c1 = t1, c2 = t2;
          }
    half *= 4.0 / (n - 1);
  }
  return 1.0 / best;
}

/// Lower bound for sup |P(x)|^{1/exponent} / sup_curve |P|^{1/exponent} from
/// random polynomials in span(basis), with the curve sampled densely.
inline double random_ratio_bound(const CurveC2& curve, const std::vector<hullscope::Monomial>& basis, int exponent,
                                 cx xz, cx xw, int trials, std::uint64_t seed, int samples = 2048) {
  hullscope::Rng rng(seed);
  std::vector<Eigen::VectorXcd> ys;
  for (std::size_t k = 0; k < curve.size(); ++k)
    for (int j = 0; j < samples; ++j) {
      const cx zeta = std::polar(1.0, 2.0 * std::numbers::pi * j / samples);
      ys.push_back(monomials_at(basis, curve.component(k).f(zeta), curve.component(k).g(zeta)));
    }
  const Eigen::VectorXcd at_x = monomials_at(basis, xz, xw);
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(basis.size()));
    for (auto& v : c) v = rng.complex_normal();
    double sup = 0.0;
    for (const auto& y : ys) sup = std::max(sup, std::abs(c.dot(y.conjugate())));
    const double val = std::abs(c.dot(at_x.conjugate()));
    best = std::max(best, std::pow(val / sup, 1.0 / exponent));
  }
  return best;
}

}  // namespace testing
