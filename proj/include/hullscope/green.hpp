#pragma once

#include <string>

#include "hullscope/laurent.hpp"

namespace hullscope {

/// Subdomain Omega_0 of the parameter plane containing the unit circle K.
struct DomainSpec {
  enum class Kind { disk, annulus };
  Kind kind = Kind::disk;
  double R = 2.0;    // disk radius
  cx center = 0.0;   // disk center
  double a = 0.5;    // annulus inner radius
  double b = 2.0;    // annulus outer radius

  static DomainSpec disk(double radius, cx c = 0.0) { return {Kind::disk, radius, c, 0.0, 0.0}; }
  static DomainSpec annulus(double inner, double outer) { return {Kind::annulus, 0.0, 0.0, inner, outer}; }

  bool contains(cx zeta) const;
  std::string describe() const;
};

/// r = sup_K exp(-G(zeta0, .)) for the Green's function of the domain.
struct GreenRate {
  double r = 0.0;
  DomainSpec domain;
  cx pole = 0.0;
  int k_samples = 0;
};

inline constexpr int kGreenSamples = 4096;

/// Disks use the Moebius map to the unit disk (r = 1/R exactly for a
/// centered disk with pole 0). Annuli use G = -log|z - zeta0| + h with h a
/// truncated harmonic Laurent series fitted by least squares on both
/// boundary circles. Throws DomainError unless K is compactly inside the
/// domain and zeta0 is an interior point off K.
GreenRate green_rate(const DomainSpec& domain, cx zeta0);

/// G(zeta0, z) for the same construction (for diagnostics and tests).
class GreenFunction {
 public:
  GreenFunction(const DomainSpec& domain, cx zeta0);
  double operator()(cx z) const;

 private:
  DomainSpec domain_;
  cx pole_;
  int terms_ = 0;
  std::vector<double> coef_;  // [const, log|z|, (Re, Im) of (z/b)^n, (Re, Im) of (a/z)^n ...]
};

}  // namespace hullscope
