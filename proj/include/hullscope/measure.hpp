#pragma once

#include <cstdint>

#include "hullscope/parallel.hpp"
#include "hullscope/poly.hpp"

namespace hullscope {

/// {z in the unit disk : |poly(z)| <= threshold}. `k` is the nominal degree
/// used for the 48 alpha bound, alpha = threshold^(1/k).
struct SublevelSet {
  UnivariatePoly poly;
  double threshold = 0.0;
  int k = 0;

  bool contains(cx z) const { return std::abs(z) < 1.0 && std::abs(poly(z)) <= threshold; }
};

SublevelSet sublevel_set(const UnivariatePoly& poly, double threshold, int k = -1);

/// T(d, e) for a unit F of bidegree (d, e): the sublevel set of G_{j0} at
/// r0^{de/2}, nominal degree d (so the bound is 48 r0^{e/2}).
SublevelSet t_set(const BivariatePoly& F, double r0);

struct MeasureEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long long n_samples = 0;
  long long hits = 0;
  double bound = 0.0;  // 48 alpha; infinite for k = 0
  std::uint64_t seed = 0;
};

/// Monte Carlo area of the set inside the unit disk. Samples are drawn in
/// fixed-size chunks with per-chunk seeds, so the result does not depend on
/// the thread count.
MeasureEstimate sublevel_measure(const SublevelSet& set, long long n_samples, std::uint64_t seed,
                                 Exec exec = Exec::parallel);

}  // namespace hullscope
