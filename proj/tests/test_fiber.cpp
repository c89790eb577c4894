#include <doctest.h>

#include "hullscope/bishop.hpp"
#include "hullscope/errors.hpp"
#include "hullscope/fiber.hpp"
#include "hullscope/membership.hpp"
#include "support.hpp"

using namespace hullscope;

namespace {

bool near_any(cx w, const std::vector<FiberPoint>& pts, double eps) {
  for (const auto& p : pts)
    if (std::abs(p.w - w) <= eps) return true;
  return false;
}

}  // namespace

TEST_SUITE("fiber") {

TEST_CASE("bidegree membership") {
  const CurveC2 axis = testing::axis_curve();
  CHECK(membership_bidegree(axis, {0.5, 0.0}, 1.0, 3, 3).member);
  const MembershipResult off = membership_bidegree(axis, {0.0, 0.1}, 3.0, 3, 3);
  CHECK_FALSE(off.member);
  CHECK(off.status == LpStatus::unbounded);

  const CurveC2 graph = testing::graph_curve();
  const MembershipResult g = membership_bidegree(graph, {0.5, 0.25}, 2.0, 4, 4);
  CHECK(g.member);
  CHECK(g.worst_ratio <= 1.0);
  // random bidegree polynomials never beat the LP
  const double sampled = testing::random_ratio_bound(graph, bidegree_basis(4, 4), 8, 0.5, 0.25, 3000, 4);
  CHECK(sampled <= g.value * (1 + 1e-9));
}

TEST_CASE("capped membership nests in the degrees") {
  const CurveC2 c = testing::cubic_curve();
  const CappedMembership caps(c, 2, 2);
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const C2Point x{rng.in_disk(1.2), rng.in_disk(1.2)};
    const CapMembership m = caps(x, 2.0, false);
    CHECK(m.checked == 4);
    if (!m.member) continue;
    for (int d = 1; d <= 2; ++d)
      for (int e = 1; e <= 2; ++e) CHECK(membership_bidegree(c, x, 2.0, d, e).member);
  }
}

TEST_CASE("fibers of the graph curve") {
  const CurveC2 graph = testing::graph_curve();
  const Rect window = default_w_window(graph);
  const FiberSet f = fiber_scan(graph, 0.4, 3.0, window, 16, 4, 4);
  REQUIRE(f.points.size() == 1);
  CHECK(std::abs(f.points[0].w - 0.16) <= 2 * f.grid_spacing);
  CHECK(f.cluster_eps == doctest::Approx(2 * f.grid_spacing));
  CHECK(f.method == FiberMethod::grid_scan);

  // Bishop certificate: |F(z, w)| <= M^{d+e} sup |F| at accepted points
  const BivariatePoly F = construct_bishop(graph, 3, 2, 0.0);
  const double sup = sup_norm_on_curve(F, graph, 1024);
  for (const auto& p : f.points) CHECK(std::abs(F(0.4, p.w)) <= std::pow(3.0, 5) * std::max(sup, 1e-300) * (1 + 1e-6) + 1e-12);

  // nesting in M and in the degree caps
  const FiberSet small = fiber_scan(graph, 0.4, 2.0, window, 16, 4, 4);
  for (const auto& p : small.points) CHECK(near_any(p.w, f.points, f.cluster_eps));
  const FiberSet loose = fiber_scan(graph, 0.4, 3.0, window, 16, 2, 2);
  for (const auto& p : f.points) CHECK(near_any(p.w, loose.points, loose.cluster_eps));
}

TEST_CASE("fibers of the axis curve") {
  const CurveC2 axis = testing::axis_curve();
  const Rect window = default_w_window(axis);
  const FiberSet a = fiber_scan(axis, 0.3, 2.0, window, 16, 3, 3);
  REQUIRE(a.points.size() == 1);
  CHECK(std::abs(a.points[0].w) <= 2 * a.grid_spacing);
  CHECK(fiber_scan(axis, 2.0, 1.5, window, 16, 3, 3).points.empty());
  const FiberSet b = fiber_scan(axis, 2.0, 2.5, window, 16, 3, 3);
  REQUIRE(b.points.size() == 1);
  CHECK(std::abs(b.points[0].w) <= 2 * b.grid_spacing);
  CHECK_THROWS_AS(fiber_scan(axis, 0.3, 2.0, window, 8, 3, 3), PreconditionError);
}

TEST_CASE("inclusion of total-degree in bidegree membership") {
  const CurveC2 graph = testing::graph_curve();
  const InclusionReport one = inclusion_check(graph, 0.4, 1.0, 2, 2, 40, 3);
  CHECK(one.holds);
  const InclusionReport r = inclusion_check(graph, 0.4, 2.0, 3, 3, 200, 5);
  CHECK(r.samples == 200);
  CHECK(r.holds);
  CHECK(r.counterexamples == 0);
  const auto pts = inclusion_sample_points(graph, 20, 1);
  CHECK(pts.size() == 20);
  CHECK(inclusion_check(graph, pts, 2.0, 2, 2).holds);
}

TEST_CASE("limit polynomial on the graph curve") {
  const CurveC2 graph = testing::graph_curve();
  const double r0 = std::sqrt(green_rate(default_domain(graph), 0.0).r);
  const LimitPolynomialResult l = limit_polynomial(graph, 0.5, 2, {4, 6, 8}, r0, 0.0, {0.25});
  CHECK(l.b_star.degree() <= 2);
  CHECK(l.b_star.is_unit());
  bool found = false;
  for (const cx& w : l.roots) found = found || std::abs(w - 0.25) <= 1e-2;
  CHECK(found);
  CHECK(l.fiber_bound_holds);
  CHECK(l.cauchy_differences.size() + 1 == l.used_d.size());
  CHECK_THROWS_AS(limit_polynomial(graph, 0.5, 2, {4, 4, 6}, r0, 0.0), PreconditionError);
}

TEST_CASE("finiteness on the axis curve") {
  FinitenessOptions o;
  o.grid_n = 16;
  const FinitenessReport rep = finiteness_experiment(testing::axis_curve(), 3.0, 2, 20, 4, o);
  REQUIRE(rep.samples.size() == 20);
  for (const auto& s : rep.samples) {
    REQUIRE(s.cardinality == 1);
    CHECK(std::abs(s.fiber[0].w) <= 0.3);
  }
  // r0 near 1 makes the measure bound exceed the disk
  FinitenessOptions vac = o;
  vac.r0 = 0.999;
  vac.d_list = {4, 6, 8};
  CHECK(finiteness_experiment(testing::axis_curve(), 3.0, 2, 20, 4, vac).bound_vacuous);
  CHECK_THROWS_AS(finiteness_experiment(testing::axis_curve(), 3.0, 2, 5, 4, o), PreconditionError);
}

TEST_CASE("distance to the projected curve") {
  CHECK(distance_to_projection(testing::graph_curve(), 0.0) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(distance_to_projection(testing::graph_curve(), 0.5) == doctest::Approx(0.5).epsilon(1e-5));
}

}  // TEST_SUITE
