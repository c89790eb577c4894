#include "hullscope/poly.hpp"

#include "hullscope/errors.hpp"

namespace hullscope {

BivariatePoly::BivariatePoly(Grading grading, int d, int e)
    : grading_(grading), d_(d), e_(grading == Grading::total ? d : e) {
  if (d_ < 0 || e_ < 0) throw PreconditionError("BivariatePoly: negative degree");
  coeffs_ = Eigen::MatrixXcd::Zero(d_ + 1, e_ + 1);
}

bool BivariatePoly::in_support(int n, int m) const {
  if (n < 0 || m < 0 || n > d_ || m > e_) return false;
  return grading_ == Grading::bidegree || n + m <= d_;
}

cx BivariatePoly::coeff(int n, int m) const {
  return in_support(n, m) ? coeffs_(n, m) : cx(0.0);
}

void BivariatePoly::set_coeff(int n, int m, cx value) {
  if (!in_support(n, m)) {
    throw PreconditionError("BivariatePoly: monomial (" + std::to_string(n) + "," +
                            std::to_string(m) + ") outside the grading");
  }
  coeffs_(n, m) = value;
}

std::vector<Monomial> total_degree_basis(int d) {
  std::vector<Monomial> out;
  for (int n = 0; n <= d; ++n)
    for (int m = 0; m + n <= d; ++m) out.push_back({n, m});
  return out;
}

std::vector<Monomial> bidegree_basis(int d, int e) {
  std::vector<Monomial> out;
  for (int n = 0; n <= d; ++n)
    for (int m = 0; m <= e; ++m) out.push_back({n, m});
  return out;
}

std::vector<Monomial> BivariatePoly::basis() const {
  return grading_ == Grading::total ? total_degree_basis(d_) : bidegree_basis(d_, e_);
}

Eigen::VectorXcd BivariatePoly::to_vector() const {
  const auto b = basis();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) v(static_cast<Eigen::Index>(i)) = coeffs_(b[i].n, b[i].m);
  return v;
}

BivariatePoly BivariatePoly::from_vector(Grading grading, int d, int e, const Eigen::VectorXcd& v) {
  BivariatePoly p(grading, d, e);
  const auto b = p.basis();
  if (static_cast<std::size_t>(v.size()) != b.size())
    throw PreconditionError("BivariatePoly::from_vector: length does not match the basis");
  for (std::size_t i = 0; i < b.size(); ++i) p.coeffs_(b[i].n, b[i].m) = v(static_cast<Eigen::Index>(i));
  return p;
}

cx BivariatePoly::operator()(cx z, cx w) const {
  // Horner in z over Horner-in-w row values
  cx acc = 0.0;
  for (int n = d_; n >= 0; --n) {
    cx row = 0.0;
    for (int m = e_; m >= 0; --m) row = row * w + coeffs_(n, m);
    acc = acc * z + row;
  }
  return acc;
}

UnivariatePoly::UnivariatePoly(std::vector<cx> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == cx(0.0)) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.assign(1, cx(0.0));
}

cx UnivariatePoly::operator()(cx x) const {
  cx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UnivariatePoly::max_abs_coeff() const {
  double m = 0.0;
  for (const cx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

BivariatePoly make_unit(const BivariatePoly& p) {
  const auto b = p.basis();
  cx pivot = 0.0;
  double best = 0.0;
  for (const auto& mon : b) {
    const double a = std::abs(p.coeff(mon.n, mon.m));
    if (a > best) {
      best = a;
      pivot = p.coeff(mon.n, mon.m);
    }
  }
  if (best == 0.0) throw PreconditionError("make_unit: zero polynomial");
  BivariatePoly out = p;
  out /= pivot;
  // the pivot entry is set exactly, independent of complex division rounding
  for (const auto& mon : b) {
    if (p.coeff(mon.n, mon.m) == pivot) {
      out.set_coeff(mon.n, mon.m, 1.0);
      break;
    }
  }
  return out;
}

UnivariatePoly make_unit(const UnivariatePoly& p) {
  std::size_t idx = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const double a = std::abs(p.coeffs()[i]);
    if (a > best) {
      best = a;
      idx = i;
    }
  }
  if (best == 0.0) throw PreconditionError("make_unit: zero polynomial");
  std::vector<cx> c = p.coeffs();
  const cx pivot = c[idx];
  for (auto& v : c) v /= pivot;
  c[idx] = 1.0;
  return UnivariatePoly(std::move(c));
}

Slices slice_coefficients(const BivariatePoly& f) {
  if (!f.is_unit()) throw PreconditionError("slice_coefficients: polynomial is not unit");
  Slices out;
  out.j0 = -1;
  for (int j = 0; j <= f.e(); ++j) {
    std::vector<cx> g(static_cast<std::size_t>(f.d() + 1));
    bool carries_unit = false;
    for (int n = 0; n <= f.d(); ++n) {
      g[static_cast<std::size_t>(n)] = f.coeff(n, j);
      if (std::abs(g[static_cast<std::size_t>(n)]) >= 1.0 - 1e-12) carries_unit = true;
    }
    out.g.emplace_back(std::move(g));
    if (carries_unit && out.j0 < 0) out.j0 = j;
  }
  return out;
}

}  // namespace hullscope
