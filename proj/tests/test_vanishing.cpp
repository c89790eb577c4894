#include <doctest.h>

#include "hullscope/errors.hpp"
#include "hullscope/vanishing.hpp"
#include "support.hpp"

using namespace hullscope;
using testing::mono;

namespace {

cx pullback(const BivariatePoly& p, const LaurentPoly& f, const LaurentPoly& g, cx zeta) { return p(f(zeta), g(zeta)); }

}  // namespace

TEST_SUITE("vanishing") {

TEST_CASE("pullback rows for the graph curve at the origin") {
  const VanishingSystem s1 = taylor_pullback(mono(1), mono(2), 0.0, 1, 1, 1);
  REQUIRE(s1.matrix.rows() == 1);
  REQUIRE(s1.matrix.cols() == 4);
  CHECK(s1.matrix(0, 0) == cx(1.0));
  CHECK(s1.matrix.row(0).tail(3).cwiseAbs().maxCoeff() == 0.0);

  const VanishingSystem s2 = taylor_pullback(mono(1), mono(2), 0.0, 1, 1, 2);
  REQUIRE(s2.matrix.rows() == 2);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(2, 4);
  expect(0, 0) = 1.0;
  expect(1, 2) = 1.0;
  CHECK((s2.matrix - expect).cwiseAbs().maxCoeff() == 0.0);

  // zeta0 = 0 is not available for genuinely Laurent maps
  CHECK_THROWS_AS(taylor_pullback(LaurentPoly(-1, {1.0, 0.0, 1.0}), mono(1), 0.0, 1, 1, 1), DomainError);
}

TEST_CASE("pullback matrix matches Fourier Taylor coefficients") {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    std::vector<cx> fc(4), gc(4);
    for (auto& v : fc) v = rng.complex_normal();
    for (auto& v : gc) v = rng.complex_normal();
    const LaurentPoly f(0, fc), g(0, gc);
    const cx zeta0 = rng.in_disk(0.8);
    const int d = 2, e = 2, order = 5;
    const VanishingSystem sys = taylor_pullback(f, g, zeta0, d, e, order);

    BivariatePoly p = BivariatePoly::bidegree(d, e);
    for (const auto& m : p.basis()) p.set_coeff(m.n, m.m, rng.complex_normal());
    const Eigen::VectorXcd via_matrix = sys.matrix * p.to_vector();
    // h has degree 12 < 64, so the 64-point transform has no aliasing at any radius
    const auto oracle = testing::dft_taylor([&](cx s) { return pullback(p, f, g, s); }, zeta0, order, 0.1);
    for (int k = 0; k < order; ++k) {
      const double scale = std::max(1.0, std::abs(oracle[static_cast<std::size_t>(k)]));
      CHECK(std::abs(via_matrix[k] - oracle[static_cast<std::size_t>(k)]) / scale < 1e-6);
    }
  }
}

TEST_CASE("Laurent pullbacks match the Fourier oracle too") {
  const LaurentPoly f(-1, {0.5, 0.0, 1.0}), g(-2, {0.2, 0.0, 0.0, 0.0, 1.0});
  const cx zeta0 = 0.75;
  const VanishingSystem sys = taylor_pullback(f, g, zeta0, 2, 1, 4);
  BivariatePoly p = BivariatePoly::bidegree(2, 1);
  Rng rng(4);
  for (const auto& m : p.basis()) p.set_coeff(m.n, m.m, rng.complex_normal());
  const Eigen::VectorXcd v = sys.matrix * p.to_vector();
  const auto oracle = testing::dft_taylor([&](cx s) { return pullback(p, f, g, s); }, zeta0, 4, 0.1);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(v[k] - oracle[static_cast<std::size_t>(k)]) < 1e-6 * std::max(1.0, std::abs(v[k])));
}

TEST_CASE("null vectors") {
  // no conditions: the constant 1
  const VanishingSystem empty = taylor_pullback(mono(1), mono(2), 0.0, 1, 1, 0);
  const BivariatePoly one = null_unit_vector(empty);
  CHECK(one.coeff(0, 0) == cx(1.0));
  CHECK(one.max_abs_coeff() == 1.0);
  CHECK((one.coeff_matrix().cwiseAbs().sum() - 1.0) == 0.0);

  const LaurentPoly f = mono(1), g = mono(2);
  for (auto [d, e, order] : {std::tuple{2, 1, 2}, std::tuple{1, 1, 3}}) {
    const BivariatePoly F = null_unit_vector(taylor_pullback(f, g, 0.0, d, e, order));
    CHECK(F.is_unit());
    const auto a = testing::dft_taylor([&](cx s) { return pullback(F, f, g, s); }, 0.0, order, 1.0);
    for (const cx& v : a) CHECK(std::abs(v) < 1e-10);
  }
}

TEST_CASE("kernel exists whenever conditions are fewer than unknowns") {
  const CurveC2 c = testing::cubic_curve();
  for (int d = 1; d <= 3; ++d)
    for (int e = 1; e <= 3; ++e)
      for (int order = 0; order < (d + 1) * (e + 1); ++order) {
        const VanishingSystem sys = taylor_pullback(c, 0, 0.3, d, e, order);
        BivariatePoly F;
        CHECK_NOTHROW(F = null_unit_vector(sys));
        CHECK(F.is_unit());
        CHECK(relative_residual(sys, F) < 1e-8);
      }
}

TEST_CASE("full vanishing order on a single component") {
  const CurveC2 c = testing::cubic_curve();
  const LaurentPoly& f = c.component(0).f;
  const LaurentPoly& g = c.component(0).g;
  for (auto [d, e] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{4, 3}}) {
    const int lambda = d * e;
    const BivariatePoly F = null_unit_vector(taylor_pullback(c, 0, 0.0, d, e, lambda));
    auto h = [&](cx s) { return pullback(F, f, g, s); };
    // at zeta0 = 0 the Taylor coefficients are the coefficients of h itself
    const auto a = testing::dft_taylor(h, 0.0, lambda, 1.0, 128);
    double norm = 0.0;
    for (int j = 0; j < 256; ++j) norm = std::max(norm, std::abs(h(std::polar(1.0, 2 * std::numbers::pi * j / 256))));
    for (const cx& v : a) CHECK(std::abs(v) <= 1e-8 * std::max(norm, 1.0));
  }
}

TEST_CASE("stacked systems") {
  const CurveC2 c = testing::two_circles();
  const VanishingSystem a = taylor_pullback(c, 0, 0.0, 2, 2, 2);
  const VanishingSystem b = taylor_pullback(c, 1, 0.0, 2, 2, 2);
  const VanishingSystem s = stack({a, b});
  CHECK(s.matrix.rows() == 4);
  CHECK(s.matrix.topRows(2) == a.matrix);
  CHECK(s.matrix.bottomRows(2) == b.matrix);
  CHECK_THROWS_AS(stack({a, taylor_pullback(c, 0, 0.0, 1, 2, 2)}), PreconditionError);
}

}  // TEST_SUITE
