#include "hullscope/green.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hullscope/curve.hpp"
#include "hullscope/errors.hpp"

namespace hullscope {

namespace {

constexpr int kHarmonicTerms = 64;
constexpr int kRingSamples = 512;

void check_geometry(const DomainSpec& d, cx zeta0) {
  if (d.kind == DomainSpec::Kind::disk) {
    if (!(d.R > 0.0)) throw DomainError("green_rate: disk radius must be positive");
    if (!(std::abs(d.center) + 1.0 < d.R)) throw DomainError("green_rate: unit circle not inside the disk");
  } else {
    if (!(d.a > 0.0 && d.a < 1.0 && d.b > 1.0))
      throw DomainError("green_rate: unit circle not inside the annulus");
  }
  if (!d.contains(zeta0)) throw DomainError("green_rate: pole outside the domain");
  if (std::abs(std::abs(zeta0) - 1.0) < 1e-12) throw DomainError("green_rate: pole on the unit circle");
}

// Moebius map of the disk onto the unit disk sending zeta0 to 0.
cx disk_map(const DomainSpec& d, cx zeta0, cx z) {
  const cx u = (z - d.center) / d.R;
  const cx a = (zeta0 - d.center) / d.R;
  return (u - a) / (1.0 - std::conj(a) * u);
}

}  // namespace

bool DomainSpec::contains(cx zeta) const {
  if (kind == Kind::disk) return std::abs(zeta - center) < R;
  const double m = std::abs(zeta);
  return m > a && m < b;
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind == Kind::disk) {
    os << "disk(R=" << R << ", center=" << center.real() << (center.imag() < 0 ? "-" : "+") << std::abs(center.imag())
       << "i)";
  } else {
    os << "annulus(" << a << ", " << b << ")";
  }
  return os.str();
}

GreenFunction::GreenFunction(const DomainSpec& domain, cx zeta0) : domain_(domain), pole_(zeta0) {
  check_geometry(domain, zeta0);
  if (domain.kind == DomainSpec::Kind::disk) return;

  // h harmonic on a < |z| < b with h = log|z - zeta0| on both circles.
  terms_ = kHarmonicTerms;
  const int cols = 2 + 4 * terms_;
  const int rows = 2 * kRingSamples;
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (int ring = 0; ring < 2; ++ring) {
    const double radius = ring == 0 ? domain.a : domain.b;
    for (int j = 0; j < kRingSamples; ++j) {
      const int row = ring * kRingSamples + j;
      const cx z = radius * circle_point(j, kRingSamples);
      A(row, 0) = 1.0;
      A(row, 1) = std::log(radius);
      cx outer = 1.0;
      cx inner = 1.0;
      const cx zo = z / domain.b;
      const cx zi = domain.a / z;
      for (int n = 1; n <= terms_; ++n) {
        outer *= zo;
        inner *= zi;
        A(row, 2 + 4 * (n - 1)) = outer.real();
        A(row, 3 + 4 * (n - 1)) = outer.imag();
        A(row, 4 + 4 * (n - 1)) = inner.real();
        A(row, 5 + 4 * (n - 1)) = inner.imag();
      }
      rhs(row) = std::log(std::abs(z - zeta0));
    }
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(rhs);
  if (!x.allFinite()) throw NumericalError("green_rate: harmonic fit failed");
  coef_.assign(x.data(), x.data() + x.size());
}

double GreenFunction::operator()(cx z) const {
  if (domain_.kind == DomainSpec::Kind::disk) return -std::log(std::abs(disk_map(domain_, pole_, z)));
  double h = coef_[0] + coef_[1] * std::log(std::abs(z));
  cx outer = 1.0;
  cx inner = 1.0;
  const cx zo = z / domain_.b;
  const cx zi = domain_.a / z;
  for (int n = 1; n <= terms_; ++n) {
    outer *= zo;
    inner *= zi;
    const auto base = static_cast<std::size_t>(2 + 4 * (n - 1));
    h += coef_[base] * outer.real() + coef_[base + 1] * outer.imag() + coef_[base + 2] * inner.real() +
         coef_[base + 3] * inner.imag();
  }
  return -std::log(std::abs(z - pole_)) + h;
}

GreenRate green_rate(const DomainSpec& domain, cx zeta0) {
  GreenRate out;
  out.domain = domain;
  out.pole = zeta0;
  out.k_samples = kGreenSamples;
  if (domain.kind == DomainSpec::Kind::disk && domain.center == cx(0.0) && zeta0 == cx(0.0)) {
    check_geometry(domain, zeta0);
    out.r = 1.0 / domain.R;  // G(0, z) = log(R / |z|)
    return out;
  }
  const GreenFunction green(domain, zeta0);
  double r = 0.0;
  for (int j = 0; j < kGreenSamples; ++j) r = std::max(r, std::exp(-green(circle_point(j, kGreenSamples))));
  if (!(r > 0.0 && r < 1.0)) throw NumericalError("green_rate: rate outside (0, 1)");
  out.r = r;
  return out;
}

}  // namespace hullscope
