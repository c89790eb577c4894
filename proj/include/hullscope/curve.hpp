#pragma once

#include <string>
#include <vector>

#include "hullscope/laurent.hpp"
#include "hullscope/parallel.hpp"
#include "hullscope/poly.hpp"

namespace hullscope {

struct C2Point {
  cx z;
  cx w;
};

/// One closed component  zeta -> (f(zeta), g(zeta)),  |zeta| = 1.
struct CurveComponent {
  LaurentPoly f;
  LaurentPoly g;
};

/// Finite union of closed real-analytic curves in C^2. Each component is
/// parameterized by Laurent polynomials valid on rho < |zeta| < 1/rho; when
/// every component is polynomial the maps extend to the disk |zeta| < 1/rho.
class CurveC2 {
 public:
  static constexpr double kDefaultRho = 0.5;

  CurveC2(std::vector<CurveComponent> components, double rho = kDefaultRho, std::string label = {});

  std::size_t size() const { return components_.size(); }
  const CurveComponent& component(std::size_t k) const { return components_.at(k); }
  const std::vector<CurveComponent>& components() const { return components_; }
  double rho() const { return rho_; }
  const std::string& label() const { return label_; }

  bool is_polynomial() const;
  /// Whether the parameterization is defined at zeta.
  bool in_domain(cx zeta) const;

  /// Largest |exponent| appearing in any f_k or g_k.
  int max_laurent_degree() const;

 private:
  std::vector<CurveComponent> components_;
  double rho_;
  std::string label_;
};

/// Discretization of the parameter circle K over all components.
struct BoundarySample {
  std::vector<C2Point> points;
  std::vector<cx> parameters;
  std::vector<int> component_index;  // 0-based
};

/// (f_k(zeta), g_k(zeta)); k is 0-based. Throws DomainError off the annulus.
C2Point eval_component(const CurveC2& curve, std::size_t k, cx zeta);

/// The K*S points at zeta_j = exp(2 pi i j / S); nested in S by construction.
BoundarySample sample_boundary(const CurveC2& curve, int samples_per_component);

/// e^{2 pi i j / S}, computed so that index 2j of 2S reproduces index j of S exactly.
cx circle_point(int j, int samples);

/// max |p| over the sampled curve.
double sup_norm_on_curve(const BivariatePoly& p, const CurveC2& curve, int samples);

/// Numerical simple-closed-curve test: pairwise C^2 distance of samples
/// inside each component must stay above `tolerance`.
struct SimplicityReport {
  bool simple = true;
  double min_distance = 0.0;
  std::size_t component = 0;
  int index_a = -1;
  int index_b = -1;
};
SimplicityReport check_simple(const CurveC2& curve, int samples = 4096, double tolerance = 1e-9,
                              Exec exec = Exec::parallel);

// Curve files:
//   {"label": str, "rho": float, "components": [{"f": {"min_degree": int,
//     "coeffs": [[re, im], ...]}, "g": {...}}]}
// "rho" is optional (default 0.5); unknown members are rejected.
CurveC2 parse_curve_json(const std::string& text);
CurveC2 load_curve(const std::string& path);
std::string curve_to_json(const CurveC2& curve);

}  // namespace hullscope
