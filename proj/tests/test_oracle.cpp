#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bregman/bregman_core.hpp"
#include "bregman/catalog.hpp"
#include "bregman/errors.hpp"
#include "bregman/oracle.hpp"
#include "bregman/transform.hpp"

using namespace bregman;

TEST_CASE("brute conjugate examples") {
  Grid1D g = Grid1D::linspace(-5.0, 5.0, 1001);
  Grid1D dual = Grid1D::linspace(-2.5, 2.5, 501);

  SampledFunction point = build_function("indicator_point 1", g);
  SampledFunction pc = oracle::brute_conjugate(point, dual);
  for (Eigen::Index i = 0; i < dual.size(); ++i)
    CHECK(pc.value(i) == dual[i]);

  SampledFunction absf = build_function("abs", g);
  CHECK(oracle::brute_conjugate(absf, dual).value(dual.nearest(2.0)) ==
        doctest::Approx(5.0));

  Grid1D g2 = Grid1D::linspace(-2.0, 2.0, 801);
  SampledFunction quad = SampledFunction::from_callable(
      g2, [](double x) { return 0.5 * x * x; }, "q");
  CHECK(oracle::brute_conjugate(quad, dual).value(dual.nearest(1.0)) ==
        doctest::Approx(0.5));
}

TEST_CASE("brute envelope examples") {
  Grid1D g = Grid1D::linspace(0.25, 4.0, 121);
  SampledFunction point = build_function("indicator_point 1", g);
  SampledFunction benv =
      oracle::brute_envelope(point, kernel("burg_energy"), 1.0, g);
  CHECK(benv.value(g.nearest(2.0)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  SampledFunction cenv = oracle::brute_envelope(point, kernel("cubic"), 1.0, g);
  CHECK(cenv.value(g.nearest(1.0)) == doctest::Approx(0.0));

  Grid1D wide = Grid1D::linspace(-4.0, 4.0, 801);
  SampledFunction absf = build_function("abs", wide);
  SampledFunction menv = oracle::brute_envelope(absf, kernel("energy"), 1.0, wide);
  CHECK(menv.value(wide.nearest(-2.0)) == doctest::Approx(1.5));
}

TEST_CASE("brute infimal convolution examples") {
  Grid1D g = Grid1D::linspace(-2.0, 2.0, 401);
  SampledFunction unit = build_function("indicator_point 0", g);
  SampledFunction absf = build_function("abs", g);
  SampledFunction same = oracle::brute_infconv(unit, absf, g);
  for (Eigen::Index i = 0; i < g.size(); ++i)
    CHECK(same.value(i) == absf.value(i));

  SampledFunction quad = SampledFunction::from_callable(
      g, [](double x) { return 0.5 * x * x; }, "q");
  SampledFunction self = oracle::brute_infconv(quad, quad, g);
  CHECK(std::abs(self.value(g.nearest(2.0)) - 1.0) <= g.step());

  Grid1D out = Grid1D::linspace(0.0, 4.0, 401);
  SampledFunction p1 = build_function("indicator_point 1", g);
  SampledFunction p2 = build_function("indicator_point 2", g);
  SampledFunction glue = oracle::brute_infconv(p1, p2, out);
  CHECK(glue.value(out.nearest(3.0)) == 0.0);
  CHECK(glue.finite_count() == 1);
}

TEST_CASE("oracle equals the fast transform on random data") {
  std::mt19937_64 rng(42);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  Grid1D g = Grid1D::linspace(-3.0, 3.0, 501);
  for (int trial = 0; trial < 20; ++trial) {
    double q = uniform(0.0, 2.0), s = uniform(-1.0, 2.0);
    double a = uniform(-3.0, 3.0), c = uniform(-4.0, 4.0);
    auto lo = static_cast<Eigen::Index>(uniform(0, 100));
    auto hi = static_cast<Eigen::Index>(uniform(400, 500));
    Eigen::ArrayXd v = Eigen::ArrayXd::Constant(g.size(), kInf);
    for (Eigen::Index i = lo; i <= hi && i < g.size(); ++i)
      v[i] = q * g[i] * g[i] + s * std::abs(g[i] - a) + c;
    SampledFunction f(g, std::move(v), "rand");
    Grid1D dual = default_dual_grid(f);
    SampledFunction fast = legendre_transform(f, dual);
    SampledFunction brute = oracle::brute_conjugate(f, dual);
    for (Eigen::Index i = 0; i < dual.size(); ++i)
      CHECK(std::abs(fast.value(i) - brute.value(i)) <= 1e-12);
  }
}

TEST_CASE("oracle envelope is the same scan as the fast envelope") {
  LegendreKernel k = kernel("boltzmann_shannon");
  Grid1D g = kernel_grid(k, 0.1, 5.0, 491);
  SampledFunction f = SampledFunction::from_callable(
      g, [](double x) { return std::min(std::abs(x - 1.0), 0.4 * x); }, "vee");
  for (double lambda : {0.5, 1.0, 2.0}) {
    SampledFunction fast = envelope(f, k, lambda);
    SampledFunction brute = oracle::brute_envelope(f, k, lambda, g);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (is_inf(fast.value(i)) && is_inf(brute.value(i))) continue;
      CHECK(fast.value(i) == brute.value(i));  // bitwise: same scan
    }
  }
}

TEST_CASE("brute infconv brackets the fast path") {
  Grid1D g = Grid1D::linspace(-3.0, 3.0, 301);
  SampledFunction f = SampledFunction::from_callable(
      g, [](double x) { return std::abs(x - 0.5); }, "f");
  SampledFunction h = SampledFunction::from_callable(
      g, [](double x) { return 0.3 * x * x; }, "g");
  SampledFunction brute = oracle::brute_infconv(f, h, g);
  SampledFunction direct = inf_convolution(f, h, g);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (is_inf(brute.value(i)) && is_inf(direct.value(i))) continue;
    CHECK(brute.value(i) == direct.value(i));  // same binning
  }
  SampledFunction fast = inf_convolution_via_conjugate(f, h, g);
  double slack = g.step() * std::max(f.slope_bound(), h.slope_bound());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!is_finite(brute.value(i)) || !is_finite(fast.value(i))) continue;
    CHECK(brute.value(i) >= fast.value(i) - 1e-12);
    CHECK(brute.value(i) <= fast.value(i) + slack + 1e-12);
  }
}

TEST_CASE("improper inputs are rejected") {
  Grid1D g = Grid1D::linspace(-1.0, 1.0, 11);
  Grid1D dual = Grid1D::linspace(-1.0, 1.0, 11);
  SampledFunction ok = build_function("abs", g);
  SampledFunction shifted = build_function("indicator_point 5", g);  // snaps to 1
  CHECK_NOTHROW(oracle::brute_conjugate(shifted, dual));
  CHECK_THROWS_AS(
      oracle::brute_envelope(build_function("indicator_point -0.8", g),
                             kernel("boltzmann_shannon"), 1.0, g),
      EmptyCommonDomain);
  CHECK_THROWS_AS(oracle::brute_envelope(ok, kernel("energy"), -0.5, g),
                  NonPositiveLambda);
}
