#include <doctest.h>

#include "hullscope/bishop.hpp"
#include "hullscope/errors.hpp"
#include "support.hpp"

using namespace hullscope;
using testing::mono;

namespace {

/// max |Taylor coefficient| of F(f, g) at zeta0 below `order`, relative to sup_K.
double taylor_residual(const BivariatePoly& F, const CurveComponent& c, cx zeta0, int order) {
  auto h = [&](cx s) { return F(c.f(s), c.g(s)); };
  double norm = 0.0;
  for (int j = 0; j < 512; ++j) norm = std::max(norm, std::abs(h(std::polar(1.0, 2 * std::numbers::pi * j / 512))));
  double worst = 0.0;
  // the pullbacks here are polynomials of degree < 128: no aliasing on a unit-radius circle
  for (const cx& a : testing::dft_taylor(h, zeta0, order, 1.0, 128)) worst = std::max(worst, std::abs(a));
  return worst / std::max(norm, 1.0);
}

}  // namespace

TEST_SUITE("bishop") {

TEST_CASE("Green rates of disks") {
  CHECK(green_rate(DomainSpec::disk(4.0), 0.0).r == 0.25);
  CHECK(green_rate(DomainSpec::disk(2.0), 0.0).r == 0.5);
  double prev = 1.0;
  for (double R = 1.5; R < 10.0; R += 0.5) {
    const double r = green_rate(DomainSpec::disk(R), 0.0).r;
    CHECK(r == 1.0 / R);
    CHECK(r < prev);
    prev = r;
  }
  // off-center pole: r from the Moebius map, checked against the closed form
  const double R = 3.0;
  const cx z0 = 0.4;
  double worst = 0.0;
  for (int j = 0; j < 4096; ++j) {
    const cx z = std::polar(1.0, 2 * std::numbers::pi * j / 4096);
    worst = std::max(worst, std::abs(R * (z - z0) / (R * R - std::conj(z0) * z)));
  }
  CHECK(green_rate(DomainSpec::disk(R), z0).r == doctest::Approx(worst).epsilon(1e-12));
  CHECK_THROWS_AS(green_rate(DomainSpec::disk(0.9), 0.0), DomainError);
  CHECK_THROWS_AS(green_rate(DomainSpec::disk(2.0), 1.0), DomainError);
}

TEST_CASE("annulus Green rate against a finite-difference Laplace solve") {
  const double fd = testing::annulus_rate_fd(0.25, 4.0, 0.55, 160, 320);
  const double r = green_rate(DomainSpec::annulus(0.25, 4.0), 0.55).r;
  CHECK(std::abs(r - fd) < 1e-3);
  // the fitted Green function vanishes on both circles
  const GreenFunction G(DomainSpec::annulus(0.25, 4.0), 0.55);
  for (int j = 0; j < 64; ++j) {
    const double t = 2 * std::numbers::pi * j / 64;
    CHECK(std::abs(G(std::polar(0.25, t))) < 1e-6);
    CHECK(std::abs(G(std::polar(4.0, t))) < 1e-6);
  }
}

TEST_CASE("Bishop polynomials vanish to the required order") {
  const CurveC2 graph = testing::graph_curve();
  const BivariatePoly F = construct_bishop(graph, 2, 1, 0.3);
  CHECK(F.is_unit());
  CHECK(taylor_residual(F, graph.component(0), 0.3, 2) < 1e-8);

  const CurveC2 cubic = testing::cubic_curve();
  for (int d = 2; d <= 4; ++d) {
    const BivariatePoly G = construct_bishop(cubic, d, 2, 0.0);
    CHECK(G.is_unit());
    CHECK(taylor_residual(G, cubic.component(0), 0.0, 2 * d) < 1e-8);
  }

  const CurveC2 two = testing::two_circles();
  CHECK(vanishing_order(2, 2, 2) == 2);
  const BivariatePoly H = construct_bishop(two, 2, 2, 0.0);
  CHECK(taylor_residual(H, two.component(0), 0.0, 2) < 1e-8);
  CHECK(taylor_residual(H, two.component(1), 0.0, 2) < 1e-8);

  const CurveC2 three({{mono(1), LaurentPoly()}, {mono(1), mono(0)}, {mono(1), mono(0, 2.0)}});
  CHECK_THROWS_AS(construct_bishop(three, 1, 1, 0.0), PreconditionError);
}

TEST_CASE("defaults") {
  CHECK(default_base_point(testing::graph_curve()) == cx(0.0));
  const CurveC2 jouk({{LaurentPoly(-1, {0.5, 0.0, 1.0}), mono(1)}}, 0.6);
  CHECK(default_base_point(jouk) == cx(0.8));
  const DomainSpec d = default_domain(jouk);
  CHECK(d.kind == DomainSpec::Kind::annulus);
  CHECK(d.a == doctest::Approx(0.66));
  CHECK(d.b == doctest::Approx(1.5));
  CHECK(default_domain(testing::graph_curve()).R == doctest::Approx(1.8));
}

TEST_CASE("decay table") {
  const CurveC2 graph = testing::graph_curve();
  const GreenRate rate = green_rate(DomainSpec::disk(1.8), 0.0);
  const DecayTable t = decay_table(graph, 0.0, {3, 4, 5, 6, 7, 8, 9, 10}, {3}, rate);
  CHECK(t.all_pass);
  for (const auto& r : t.records) {
    CHECK(r.lambda == 3 * r.d);
    // the curve lies on w = z^2, so the pullbacks vanish identically
    CHECK(r.sup_norm_K <= 1e-10);
    CHECK(std::pow(r.sup_norm_K, 1.0 / r.lambda) <= rate.r * 1.05);
  }
  CHECK_THROWS_AS(decay_table(graph, 0.0, {}, {3}, rate), PreconditionError);

  const CurveC2 cubic = testing::cubic_curve();
  const DecayTable c = decay_table(cubic, 0.0, {3, 4, 5, 6}, {2, 3}, green_rate(DomainSpec::disk(2.0), 0.0));
  CHECK(c.all_pass);
  for (const auto& r : c.records) {
    CHECK(r.passes == (r.degenerate || r.sup_norm_K <= std::pow(c.fitted_C, r.d + r.e) * std::pow(r.r, r.lambda) * (1 + 1e-9)));
    if (!r.degenerate)
      CHECK(std::pow(r.sup_norm_K, 1.0 / (r.d + r.e)) / std::pow(r.r, static_cast<double>(r.lambda) / (r.d + r.e)) <=
            c.fitted_C * (1 + 1e-12));
  }
  // serial reference agrees
  DecayOptions serial;
  serial.exec = Exec::serial;
  const DecayTable s = decay_table(cubic, 0.0, {3, 4, 5, 6}, {2, 3}, green_rate(DomainSpec::disk(2.0), 0.0), serial);
  for (std::size_t i = 0; i < s.records.size(); ++i) CHECK(s.records[i].sup_norm_K == c.records[i].sup_norm_K);
}

TEST_CASE("degree threshold") {
  CHECK(degree_threshold(1.0, 1.0, 0.5, 0.9) == 0);
  CHECK(degree_threshold(10.0, 1.0, 0.5, 0.9) == 7);
  CHECK(testing::threshold_by_scan(10.0, 0.5, 0.9) == 7);
  CHECK(threshold_inequality(10.0, 1.0, 0.5, 0.9, 8, 8));
  CHECK_FALSE(threshold_inequality(10.0, 1.0, 0.5, 0.9, 7, 7));
  CHECK_THROWS_AS(degree_threshold(2.0, 1.0, 0.5, 0.5), PreconditionError);
  CHECK_THROWS_AS(degree_threshold(0.5, 1.0, 0.5, 0.9), PreconditionError);

  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const double M = rng.uniform(1.0, 4.0), C = rng.uniform(1.0, 3.0);
    const double r = rng.uniform(0.1, 0.7), r0 = rng.uniform(r + 0.05, 0.99);
    const int d0 = degree_threshold(M, C, r, r0);
    for (int d = d0 + 1; d <= d0 + 50; d += 7)
      for (int e = d0 + 1; e <= d0 + 50; e += 3) CHECK(threshold_inequality(M, C, r, r0, d, e));
    if (d0 >= 1) CHECK_FALSE(threshold_inequality(M, C, r, r0, d0, d0));
    if (d0 < 40) CHECK(testing::threshold_by_scan(M * C, r, r0, 100) == d0);
  }
}

TEST_CASE("bounded functions with a high-order zero") {
  const VanishingBoundReport ex = vanishing_bound_check(DomainSpec::disk(2.0), 0.0, 4, 5);
  CHECK(ex.extremal_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ex.bound == 0.0625);
  const VanishingBoundReport zero = vanishing_bound_check(DomainSpec::disk(3.0), 0.0, 0, 10);
  CHECK(zero.bound == 1.0);
  CHECK(zero.passes);
  const VanishingBoundReport r = vanishing_bound_check(DomainSpec::disk(3.0), 0.0, 5, 100, 3);
  CHECK(r.passes);
  CHECK(r.failures == 0);
  CHECK(r.max_ratio <= 1.0 + 1e-9);
  const VanishingBoundReport a = vanishing_bound_check(DomainSpec::annulus(0.5, 2.0), 0.8, 3, 30, 4);
  CHECK(a.passes);
  CHECK(a.max_ratio <= 1.0 + 1e-9);
}

}  // TEST_SUITE
