#include "hullscope/measure.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "hullscope/errors.hpp"
#include "hullscope/random.hpp"

namespace hullscope {

namespace {
constexpr long long kChunk = 4096;
}

SublevelSet sublevel_set(const UnivariatePoly& poly, double threshold, int k) {
  if (!(threshold > 0.0)) throw PreconditionError("sublevel set: threshold must be positive");
  return {poly, threshold, k < 0 ? poly.degree() : k};
}

SublevelSet t_set(const BivariatePoly& F, double r0) {
  if (!F.is_unit()) throw PreconditionError("t_set: F must be a unit polynomial");
  if (F.grading() != Grading::bidegree) throw PreconditionError("t_set: F must have bidegree grading");
  if (!(r0 > 0.0 && r0 < 1.0)) throw PreconditionError("t_set: r0 must lie in (0, 1)");
  const Slices s = slice_coefficients(F);
  return sublevel_set(s.g[static_cast<std::size_t>(s.j0)], std::pow(r0, 0.5 * F.d() * F.e()), F.d());
}

MeasureEstimate sublevel_measure(const SublevelSet& set, long long n_samples, std::uint64_t seed, Exec exec) {
  if (n_samples < 10000) throw PreconditionError("sublevel_measure: need at least 10^4 samples");
  const long long chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<long long> hits(static_cast<std::size_t>(chunks), 0);
  for_each_index(exec, hits.size(), [&](std::size_t c) {
    Rng rng(task_seed(seed, c));
    const long long begin = static_cast<long long>(c) * kChunk;
    const long long end = std::min(n_samples, begin + kChunk);
    long long h = 0;
    for (long long i = begin; i < end; ++i) h += set.contains(rng.in_disk(1.0)) ? 1 : 0;
    hits[c] = h;
  });

  MeasureEstimate out;
  out.n_samples = n_samples;
  out.seed = seed;
  for (long long h : hits) out.hits += h;
  const double p = static_cast<double>(out.hits) / static_cast<double>(n_samples);
  out.estimate = std::numbers::pi * p;
  out.std_error = std::numbers::pi * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
  out.bound = set.k > 0 ? 48.0 * std::pow(set.threshold, 1.0 / set.k) : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace hullscope
