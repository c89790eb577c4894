#pragma once

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace hullscope {

// Discretized Chebyshev-type extremal problem over a finite-dimensional
// space of complex functions phi_1..phi_n:
//
//   maximize   Re sum_i c_i phi_i(x)
//   subject to Re(e^{i theta_k} sum_i c_i phi_i(t_j)) <= rhs
//              for every sample t_j and theta_k = 2 pi k / K,
//              |Re c_i|, |Im c_i| <= cap.
//
// The K half-planes replace |P(t_j)| <= rhs by a circumscribed K-gon, so the
// optimum overestimates the modulus problem by at most a factor
// 1 / cos(pi / K). The coefficient cap keeps the program bounded; a large
// capped optimum, or one carried mostly by the cap, is reported as
// unbounded.

enum class LpStatus { bounded, unbounded, infeasible_numerics };

const char* to_string(LpStatus s);

struct ModulusLpOptions {
  int directions = 32;
  double rhs = 1.0;
  double cap = 1e8;
  /// optimum >= unbounded_threshold * rhs  =>  unbounded
  double unbounded_threshold = 1e7;
  /// cap-carried part of the optimum >= ray_share * optimum  =>  unbounded
  double ray_share = 0.5;
  int max_iterations = 0;  // 0: automatic
};

/// Column ids of an optimal basis; only meaningful for the same constraint data.
using LpBasis = std::vector<long>;

struct ModulusLpResult {
  LpStatus status = LpStatus::infeasible_numerics;
  double optimum = 0.0;
  double cap_share = 0.0;
  double max_violation = 0.0;
  Eigen::VectorXcd coefficients;
  int iterations = 0;
  int n_constraints = 0;
  int n_variables = 0;
  bool warm_started = false;
  LpBasis basis;
};

/// `values` is S x n with values(j, i) = phi_i(t_j); `target` holds phi_i(x).
/// `warm`, if given, is the optimal basis of an earlier solve on the same
/// `values` (any target); it is used when valid and ignored otherwise.
ModulusLpResult solve_modulus_lp(const Eigen::MatrixXcd& values, const Eigen::VectorXcd& target,
                                 const ModulusLpOptions& options = {}, const LpBasis* warm = nullptr);

}  // namespace hullscope
