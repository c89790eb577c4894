#include "hullscope/laurent.hpp"

#include "hullscope/errors.hpp"

namespace hullscope {

LaurentPoly::LaurentPoly(int min_degree, std::vector<cx> coeffs)
    : min_degree_(min_degree), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw PreconditionError("LaurentPoly: empty coefficient list");
  std::size_t lo = 0;
  while (lo < coeffs_.size() && coeffs_[lo] == cx(0.0)) ++lo;
  if (lo == coeffs_.size()) {
    min_degree_ = 0;
    coeffs_.assign(1, cx(0.0));
    return;
  }
  std::size_t hi = coeffs_.size();
  while (coeffs_[hi - 1] == cx(0.0)) --hi;
  coeffs_ = std::vector<cx>(coeffs_.begin() + static_cast<long>(lo),
                            coeffs_.begin() + static_cast<long>(hi));
  min_degree_ += static_cast<int>(lo);
}

LaurentPoly LaurentPoly::monomial(int degree, cx coeff) { return LaurentPoly(degree, {coeff}); }

cx LaurentPoly::coeff_of(int degree) const {
  const int k = degree - min_degree_;
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

cx LaurentPoly::operator()(cx zeta) const {
  if (is_zero()) return 0.0;
  const int lo = min_degree_;
  const int hi = max_degree();

  cx value = 0.0;
  if (hi >= 0) {
    const int start = std::max(lo, 0);
    cx acc = 0.0;
    for (int p = hi; p >= start; --p) acc = acc * zeta + coeff_of(p);
    for (int p = 0; p < start; ++p) acc *= zeta;
    value = acc;
  }
  if (lo < 0) {
    const cx u = cx(1.0) / zeta;
    const int stop = std::min(hi, -1);
    // sum_{p=lo}^{stop} c_p u^{-p}, Horner from the most negative power
    cx acc = 0.0;
    for (int p = lo; p <= stop; ++p) acc = acc * u + coeff_of(p);
    for (int p = stop; p < -1; ++p) acc *= u;
    value += acc * u;
  }
  return value;
}

std::vector<cx> LaurentPoly::taylor(cx zeta0, int order) const {
  std::vector<cx> out(static_cast<std::size_t>(std::max(order, 0)), cx(0.0));
  if (is_zero()) return out;
  for (int idx = 0; idx < static_cast<int>(coeffs_.size()); ++idx) {
    const cx c = coeffs_[static_cast<std::size_t>(idx)];
    if (c == cx(0.0)) continue;
    const int p = min_degree_ + idx;
    if (zeta0 == cx(0.0)) {
      // only the t^p term survives; p >= 0 is guaranteed by the caller
      if (p >= 0 && p < order) out[static_cast<std::size_t>(p)] += c;
      continue;
    }
    // (zeta0 + t)^p = sum_k binom(p, k) zeta0^(p-k) t^k, generalized binomial
    cx term = c * std::pow(zeta0, p);
    for (int k = 0; k < order; ++k) {
      out[static_cast<std::size_t>(k)] += term;
      term *= static_cast<double>(p - k) / static_cast<double>(k + 1);
      term /= zeta0;
      if (term == cx(0.0)) break;
    }
  }
  return out;
}

}  // namespace hullscope
