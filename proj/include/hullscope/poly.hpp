#pragma once

#include <Eigen/Core>

#include <complex>
#include <utility>
#include <vector>

#include "hullscope/laurent.hpp"

namespace hullscope {

enum class Grading { total, bidegree };

/// Exponent pair (n, m) of the monomial z^n w^m.
struct Monomial {
  int n;
  int m;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Complex polynomial  sum c_nm z^n w^m.
///
/// Coefficients live in a dense (d+1) x (e+1) matrix. Under total(d) grading
/// e == d and entries with n + m > d are structurally zero. The basis order
/// used by every flat coefficient vector is (n, m) lexicographic, n outer.
class BivariatePoly {
 public:
  BivariatePoly() : BivariatePoly(Grading::bidegree, 0, 0) {}
  BivariatePoly(Grading grading, int d, int e);

  static BivariatePoly total(int d) { return {Grading::total, d, d}; }
  static BivariatePoly bidegree(int d, int e) { return {Grading::bidegree, d, e}; }

  Grading grading() const { return grading_; }
  int d() const { return d_; }
  int e() const { return e_; }

  bool in_support(int n, int m) const;
  cx coeff(int n, int m) const;
  void set_coeff(int n, int m, cx value);
  const Eigen::MatrixXcd& coeff_matrix() const { return coeffs_; }

  /// Monomials of the grading in basis order.
  std::vector<Monomial> basis() const;
  Eigen::VectorXcd to_vector() const;
  static BivariatePoly from_vector(Grading grading, int d, int e, const Eigen::VectorXcd& v);

  cx operator()(cx z, cx w) const;

  double max_abs_coeff() const { return coeffs_.cwiseAbs().maxCoeff(); }
  bool is_zero() const { return max_abs_coeff() == 0.0; }
  bool is_unit(double tol = 1e-12) const { return std::abs(max_abs_coeff() - 1.0) <= tol; }

  BivariatePoly& operator*=(cx s) {
    coeffs_ *= s;
    return *this;
  }
  BivariatePoly& operator/=(cx s) {
    coeffs_ /= s;
    return *this;
  }

 private:
  Grading grading_;
  int d_;
  int e_;
  Eigen::MatrixXcd coeffs_;
};

/// Monomial list of the total-degree space P_d or the bidegree space (d, e).
std::vector<Monomial> total_degree_basis(int d);
std::vector<Monomial> bidegree_basis(int d, int e);

/// Polynomial in one variable, coefficients in ascending order.
/// Exactly-zero leading coefficients are trimmed; the zero polynomial is {0}.
class UnivariatePoly {
 public:
  UnivariatePoly() : coeffs_{cx(0.0)} {}
  explicit UnivariatePoly(std::vector<cx> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cx>& coeffs() const { return coeffs_; }
  cx operator()(cx x) const;
  double max_abs_coeff() const;
  bool is_unit(double tol = 1e-12) const { return std::abs(max_abs_coeff() - 1.0) <= tol; }

 private:
  std::vector<cx> coeffs_;
};

/// Divides by a coefficient of maximal modulus (the first one in basis
/// order), so that coefficient becomes exactly 1.
BivariatePoly make_unit(const BivariatePoly& p);
UnivariatePoly make_unit(const UnivariatePoly& p);

/// F(z, w) = sum_j G_j(z) w^j, plus the least index j0 whose slice carries a
/// coefficient of modulus >= 1 - 1e-12.
struct Slices {
  std::vector<UnivariatePoly> g;
  int j0;
};
Slices slice_coefficients(const BivariatePoly& unit_poly);

/// All complex roots with multiplicity, from the eigenvalues of the companion
/// matrix of the monic rescaling, followed by guarded Newton polishing.
std::vector<cx> roots(const UnivariatePoly& p);

}  // namespace hullscope
