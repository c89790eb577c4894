#pragma once

#include <cstdint>
#include <vector>

#include "hullscope/curve.hpp"
#include "hullscope/green.hpp"
#include "hullscope/parallel.hpp"
#include "hullscope/poly.hpp"
#include "hullscope/vanishing.hpp"

namespace hullscope {

/// Base point for the vanishing conditions: 0 for polynomial curves,
/// otherwise 0.5 (1 + rho) on the positive real axis.
cx default_base_point(const CurveC2& curve);

/// Omega_0: disk(0.9 / rho) for polynomial curves, otherwise
/// annulus(1.1 rho, 0.9 / rho).
DomainSpec default_domain(const CurveC2& curve);

/// lambda = de for one component, floor(de / N) for N > 1 (requires d + e > N).
int vanishing_order(std::size_t components, int d, int e);

/// Unit F of bidegree (d, e) whose pullback along every component vanishes
/// to order vanishing_order() at zeta0.
BivariatePoly construct_bishop(const CurveC2& curve, int d, int e, cx zeta0, const NullVectorOptions& options = {});

struct DecayRecord {
  int d = 0;
  int e = 0;
  int lambda = 0;
  double sup_norm_K = 0.0;
  double r = 0.0;
  double r0 = 0.0;
  double fitted_C = 0.0;
  bool degenerate = false;  // identically zero pullback (up to rounding)
  bool passes = false;
  BivariatePoly F;
};

struct DecayTable {
  std::vector<DecayRecord> records;  // ordered by (d, e)
  GreenRate rate;
  double r0 = 0.0;
  double fitted_C = 0.0;
  cx base_point = 0.0;
  bool all_pass = false;
};

struct DecayOptions {
  double r0 = 0.0;  // 0: sqrt(r)
  int k_samples = kGreenSamples;
  /// pullbacks below this fraction of the trivial coefficient bound count
  /// as identically zero
  double degenerate_fraction = 1e-12;
  double pass_slack = 1e-9;
  Exec exec = Exec::parallel;
};

/// Builds F_{d,e} for every pair, measures sup_K |F(f, g)|, and fits the
/// least C with sup <= C^{d+e} r^lambda across the non-degenerate records.
DecayTable decay_table(const CurveC2& curve, cx zeta0, const std::vector<int>& d_list, const std::vector<int>& e_list,
                       const GreenRate& rate, const DecayOptions& options = {});

/// Least d0 with (1/d + 1/e) log(MC) <= log(r0 / r) for all d, e > d0.
/// Verifies the worst case d = e = d0 + 1 before returning.
int degree_threshold(double M, double C, double r, double r0);

/// Whether (d, e) satisfies (MC)^{d+e} r^{de} <= r0^{de}.
bool threshold_inequality(double M, double C, double r, double r0, int d, int e);

struct VanishingBoundReport {
  int trials = 0;
  int lambda = 0;
  double r = 0.0;
  double bound = 0.0;      // r^lambda
  double max_ratio = 0.0;  // max over trials of sup_K |f| / r^lambda
  double extremal_ratio = 0.0;  // the pure zero factor, which attains the bound
  int failures = 0;
  bool passes = false;
};

/// Synthesizes functions bounded by 1 on the domain with a zero of order
/// lambda at zeta0 and checks sup_K |f| <= r^lambda (1 + 1e-9).
VanishingBoundReport vanishing_bound_check(const DomainSpec& domain, cx zeta0, int lambda, int trials, std::uint64_t seed = 1);

}  // namespace hullscope
