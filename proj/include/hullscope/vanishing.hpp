#pragma once

#include <Eigen/Core>

#include "hullscope/curve.hpp"
#include "hullscope/poly.hpp"

namespace hullscope {

/// Linear conditions on the (d+1)(e+1) coefficients of a bidegree-(d,e)
/// polynomial F expressing that F(f, g) vanishes to `order` at base_point.
/// Row nu, column (n, m) holds the nu-th Taylor coefficient of f^n g^m.
struct VanishingSystem {
  Eigen::MatrixXcd matrix;
  cx base_point = 0.0;
  int order = 0;
  int d = 0;
  int e = 0;
};

/// Taylor coefficients of the pullbacks f^n g^m at zeta0, by truncated
/// power-series products. zeta0 = 0 requires both maps to be polynomial.
VanishingSystem taylor_pullback(const LaurentPoly& f, const LaurentPoly& g, cx zeta0, int d, int e,
                                int order);

/// Same, for component k of a curve, with the annulus check on zeta0.
VanishingSystem taylor_pullback(const CurveC2& curve, std::size_t k, cx zeta0, int d, int e, int order);

/// Stacks the rows of several systems sharing (d, e).
VanishingSystem stack(const std::vector<VanishingSystem>& systems);

struct NullVectorOptions {
  double residual_bound = 1e-8;
  double condition_warning = 1e12;
};

/// Unit polynomial of bidegree (d, e) in the kernel of the system: the right
/// singular vector of least singular value, with rows equilibrated first.
/// The first maximal-modulus coefficient is rotated to be exactly 1.
/// Throws ConditioningError when the relative residual exceeds the bound.
BivariatePoly null_unit_vector(const VanishingSystem& sys, const NullVectorOptions& options = {});

/// Relative residual  |A c| / (|A| |c|)  of the row-equilibrated system.
double relative_residual(const VanishingSystem& sys, const BivariatePoly& p);

}  // namespace hullscope
