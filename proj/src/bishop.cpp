#include "hullscope/bishop.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hullscope/errors.hpp"
#include "hullscope/random.hpp"

namespace hullscope {

cx default_base_point(const CurveC2& curve) {
  return curve.is_polynomial() ? cx(0.0) : cx(0.5 * (1.0 + curve.rho()));
}

DomainSpec default_domain(const CurveC2& curve) {
  if (curve.is_polynomial()) return DomainSpec::disk(0.9 / curve.rho());
  return DomainSpec::annulus(1.1 * curve.rho(), 0.9 / curve.rho());
}

int vanishing_order(std::size_t components, int d, int e) {
  if (d < 1 || e < 1) throw PreconditionError("bishop: d and e must be >= 1");
  if (components == 0) throw PreconditionError("bishop: curve has no components");
  if (components == 1) return d * e;
  if (static_cast<std::size_t>(d + e) <= components)
    throw PreconditionError("bishop: need d + e > number of components");
  return d * e / static_cast<int>(components);
}

BivariatePoly construct_bishop(const CurveC2& curve, int d, int e, cx zeta0, const NullVectorOptions& options) {
  const int lambda = vanishing_order(curve.size(), d, e);
  std::vector<VanishingSystem> systems;
  systems.reserve(curve.size());
  for (std::size_t k = 0; k < curve.size(); ++k) systems.push_back(taylor_pullback(curve, k, zeta0, d, e, lambda));
  const VanishingSystem sys = stack(systems);
  BivariatePoly F = null_unit_vector(sys, options);

  // When the kernel has several dimensions (e.g. it contains multiples of an
  // algebraic relation satisfied by the curve), prefer the element whose
  // pullback is smallest on K; it still satisfies every vanishing condition.
  const int cols = (d + 1) * (e + 1);
  Eigen::MatrixXcd a = sys.matrix;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double m = a.row(i).cwiseAbs().maxCoeff();
    if (m > 0.0) a.row(i) /= m;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-10 * sv(0)) ++rank;
  if (cols - rank < 2) return F;
  const Eigen::MatrixXcd kernel = svd.matrixV().rightCols(cols - rank);

  int trig = 0;
  for (const auto& c : curve.components())
    trig = std::max(trig, d * std::max(-c.f.min_degree(), c.f.max_degree()) + e * std::max(-c.g.min_degree(), c.g.max_degree()));
  const BoundarySample k = sample_boundary(curve, std::max(64, 4 * trig + 4));
  const auto basis = bidegree_basis(d, e);
  Eigen::MatrixXcd eval(static_cast<Eigen::Index>(k.points.size()), cols);
  for (std::size_t j = 0; j < k.points.size(); ++j)
    for (int i = 0; i < cols; ++i)
      eval(static_cast<Eigen::Index>(j), i) =
          std::pow(k.points[j].z, basis[static_cast<std::size_t>(i)].n) * std::pow(k.points[j].w, basis[static_cast<std::size_t>(i)].m);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> small(eval * kernel, Eigen::ComputeFullV);
  const auto& ps = small.singularValues();
  const Eigen::Index kdim = kernel.cols();
  const double tau = std::max(10.0 * ps(kdim - 1), 1e-10 * ps(0));
  Eigen::Index keep = 0;
  while (keep < kdim && ps(kdim - 1 - keep) <= tau) ++keep;
  // Ties (the curve lies on an algebraic set, so every multiple of its
  // equation pulls back to zero): prefer low powers of z, whose w-slices stay
  // large inside the disk.
  const Eigen::MatrixXcd sub = kernel * small.matrixV().rightCols(keep);
  Eigen::VectorXd weight(cols);
  for (int i = 0; i < cols; ++i) weight(i) = std::pow(2.0, basis[static_cast<std::size_t>(i)].n);
  const Eigen::MatrixXcd gram = sub.adjoint() * weight.asDiagonal() * sub;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (gram + gram.adjoint()));
  const Eigen::VectorXcd v = sub * eig.eigenvectors().col(0);
  BivariatePoly G = make_unit(BivariatePoly::from_vector(Grading::bidegree, d, e, v));
  return relative_residual(sys, G) <= options.residual_bound ? G : F;
}

namespace {

struct Measured {
  double sup = 0.0;
  double trivial = 0.0;
};

Measured measure_on_k(const CurveC2& curve, const BivariatePoly& F, int samples) {
  const BoundarySample boundary = sample_boundary(curve, samples);
  Measured out;
  double fmax = 0.0;
  double gmax = 0.0;
  for (const auto& p : boundary.points) {
    out.sup = std::max(out.sup, std::abs(F(p.z, p.w)));
    fmax = std::max(fmax, std::abs(p.z));
    gmax = std::max(gmax, std::abs(p.w));
  }
  for (int n = 0; n <= F.d(); ++n)
    for (int m = 0; m <= F.e(); ++m) out.trivial += std::abs(F.coeff(n, m)) * std::pow(fmax, n) * std::pow(gmax, m);
  return out;
}

}  // namespace

DecayTable decay_table(const CurveC2& curve, cx zeta0, const std::vector<int>& d_list, const std::vector<int>& e_list,
                       const GreenRate& rate, const DecayOptions& options) {
  if (d_list.empty() || e_list.empty()) throw PreconditionError("decay_table: empty degree list");
  if (!(rate.r > 0.0 && rate.r < 1.0)) throw PreconditionError("decay_table: rate must lie in (0, 1)");
  DecayTable table;
  table.rate = rate;
  table.base_point = zeta0;
  table.r0 = options.r0 > 0.0 ? options.r0 : std::sqrt(rate.r);
  if (!(table.r0 > rate.r && table.r0 < 1.0)) throw PreconditionError("decay_table: need r < r0 < 1");

  std::vector<int> ds = d_list;
  std::vector<int> es = e_list;
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  for (int d : ds)
    for (int e : es) {
      DecayRecord rec;
      rec.d = d;
      rec.e = e;
      rec.lambda = vanishing_order(curve.size(), d, e);  // validates before any work
      rec.r = rate.r;
      rec.r0 = table.r0;
      table.records.push_back(rec);
    }

  for_each_index(options.exec, table.records.size(), [&](std::size_t i) {
    DecayRecord& rec = table.records[i];
    rec.F = construct_bishop(curve, rec.d, rec.e, zeta0);
    const Measured m = measure_on_k(curve, rec.F, options.k_samples);
    rec.sup_norm_K = m.sup;
    rec.degenerate = m.sup <= options.degenerate_fraction * m.trivial;
  });

  double C = 0.0;
  for (const auto& rec : table.records) {
    if (rec.degenerate) continue;
    const double k = rec.d + rec.e;
    C = std::max(C, std::pow(rec.sup_norm_K, 1.0 / k) / std::pow(rate.r, rec.lambda / k));
  }
  table.fitted_C = C;
  table.all_pass = true;
  for (auto& rec : table.records) {
    rec.fitted_C = C;
    rec.passes = rec.degenerate ||
                 rec.sup_norm_K <= std::pow(C, rec.d + rec.e) * std::pow(rate.r, rec.lambda) * (1.0 + options.pass_slack);
    table.all_pass = table.all_pass && rec.passes;
  }
  return table;
}

bool threshold_inequality(double M, double C, double r, double r0, int d, int e) {
  // (MC)^{d+e} r^{de} <= r0^{de}, in logarithms
  return (d + e) * std::log(M * C) <= static_cast<double>(d) * e * std::log(r0 / r);
}

int degree_threshold(double M, double C, double r, double r0) {
  if (!(M >= 1.0)) throw PreconditionError("degree_threshold: M must be >= 1");
  if (!(r > 0.0 && r0 < 1.0)) throw PreconditionError("degree_threshold: need 0 < r < r0 < 1");
  if (!(r < r0)) throw PreconditionError("degree_threshold: need r < r0");
  if (!(M * C >= 1.0)) throw PreconditionError("degree_threshold: need M C >= 1");

  // For d, e > d0 the left side (1/d + 1/e) log(MC) is largest at d = e = d0 + 1.
  const double q = 2.0 * std::log(M * C) / std::log(r0 / r);
  int d0 = std::max(0, static_cast<int>(std::ceil(q)) - 1);
  // guard the rounding of q near an integer
  while (d0 > 0 && threshold_inequality(M, C, r, r0, d0, d0)) --d0;
  while (!threshold_inequality(M, C, r, r0, d0 + 1, d0 + 1)) ++d0;
  return d0;
}

namespace {

cx blaschke(cx a, cx u) { return (u - a) / (1.0 - std::conj(a) * u); }

}  // namespace

VanishingBoundReport vanishing_bound_check(const DomainSpec& domain, cx zeta0, int lambda, int trials, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("vanishing_bound_check: trials must be >= 1");
  if (lambda < 0) throw PreconditionError("vanishing_bound_check: lambda must be >= 0");
  const GreenRate rate = green_rate(domain, zeta0);

  VanishingBoundReport out;
  out.trials = trials;
  out.lambda = lambda;
  out.r = rate.r;
  out.bound = std::pow(rate.r, lambda);

  const int n = kGreenSamples;
  std::vector<cx> k_points(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) k_points[static_cast<std::size_t>(j)] = circle_point(j, n);
  auto sup_k = [&](auto&& f) {
    double s = 0.0;
    for (const cx& z : k_points) s = std::max(s, std::abs(f(z)));
    return s;
  };

  if (domain.kind == DomainSpec::Kind::disk) {
    const cx a0 = (zeta0 - domain.center) / domain.R;
    auto zero_factor = [&](cx z) {
      const cx u = (z - domain.center) / domain.R;
      if (domain.center == cx(0.0) && zeta0 == cx(0.0)) return u;
      return blaschke(a0, u);
    };
    out.extremal_ratio = sup_k([&](cx z) { return std::pow(zero_factor(z), lambda); }) / out.bound;

    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
      const int extra = static_cast<int>(rng.next() % 4);
      std::vector<cx> zeros;
      for (int i = 0; i < extra; ++i) zeros.push_back(rng.in_disk(0.95));
      const cx unimodular = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
      const double s = sup_k([&](cx z) {
        const cx u = (z - domain.center) / domain.R;
        cx v = unimodular * std::pow(zero_factor(z), lambda);
        for (const cx& a : zeros) v *= blaschke(a, u);
        return v;
      });
      const double ratio = s / out.bound;
      out.max_ratio = std::max(out.max_ratio, ratio);
      if (ratio > 1.0 + 1e-9) ++out.failures;
    }
  } else {
    // (z - zeta0)^lambda q(z), renormalized by its maximum on the two
    // boundary circles; the maximum principle bounds it by 1 inside.
    constexpr int kBoundary = 16384;
    auto boundary_max = [&](auto&& f) {
      double s = 0.0;
      for (int j = 0; j < kBoundary; ++j) {
        const cx u = circle_point(j, kBoundary);
        s = std::max({s, std::abs(f(domain.a * u)), std::abs(f(domain.b * u))});
      }
      return s;
    };
    auto pure = [&](cx z) { return std::pow(z - zeta0, lambda); };
    out.extremal_ratio = sup_k(pure) / boundary_max(pure) / out.bound;

    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
      std::vector<cx> q(7);
      for (auto& c : q) c = rng.complex_normal();
      auto f = [&](cx z) {
        cx v = 0.0;
        for (int k = -3; k <= 3; ++k) v += q[static_cast<std::size_t>(k + 3)] * std::pow(z, k);
        return std::pow(z - zeta0, lambda) * v;
      };
      const double ratio = sup_k(f) / boundary_max(f) / out.bound;
      out.max_ratio = std::max(out.max_ratio, ratio);
      if (ratio > 1.0 + 1e-9) ++out.failures;
    }
  }
  out.passes = out.failures == 0;
  return out;
}

}  // namespace hullscope
