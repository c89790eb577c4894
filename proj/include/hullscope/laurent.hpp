#pragma once

#include <complex>
#include <vector>

namespace hullscope {

using cx = std::complex<double>;

/// Finite Laurent polynomial  sum_k c_k zeta^(min_degree + k).
///
/// Stored canonically: leading and trailing coefficients are nonzero. The
/// zero polynomial is the single exception and is stored as {0, [0]}.
class LaurentPoly {
 public:
  LaurentPoly() : min_degree_(0), coeffs_{cx(0.0)} {}
  LaurentPoly(int min_degree, std::vector<cx> coeffs);

  static LaurentPoly monomial(int degree, cx coeff = 1.0);

  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cx>& coeffs() const { return coeffs_; }
  cx coeff_of(int degree) const;

  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cx(0.0); }
  /// True when there are no negative powers, so the map extends over zeta = 0.
  bool is_polynomial() const { return is_zero() || min_degree_ >= 0; }

  /// Horner evaluation in zeta for the nonnegative part and in 1/zeta for
  /// the principal part. Undefined at zeta = 0 unless is_polynomial().
  cx operator()(cx zeta) const;

  /// First `order` Taylor coefficients at zeta0:  f(zeta0 + t) = sum a_k t^k.
  std::vector<cx> taylor(cx zeta0, int order) const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  int min_degree_;
  std::vector<cx> coeffs_;
};

}  // namespace hullscope
