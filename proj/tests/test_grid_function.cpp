#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bregman/catalog.hpp"
#include "bregman/errors.hpp"
#include "bregman/io.hpp"
#include "bregman/oracle.hpp"
#include "bregman/transform.hpp"

using namespace bregman;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

SampledFunction random_function(std::mt19937_64& rng, const Grid1D& grid) {
  double q = uniform(rng, 0.0, 2.0), s = uniform(rng, -1.0, 2.0);
  double t = uniform(rng, -2.0, 2.0), c = uniform(rng, -3.0, 3.0);
  double a = uniform(rng, grid.lo(), grid.hi());
  auto lo = static_cast<Eigen::Index>(uniform(rng, 0, grid.size() / 4.0));
  auto hi = static_cast<Eigen::Index>(
      uniform(rng, 3.0 * grid.size() / 4.0, grid.size() - 1.0));
  Eigen::ArrayXd v = Eigen::ArrayXd::Constant(grid.size(), kInf);
  for (Eigen::Index i = lo; i <= hi; ++i) {
    double x = grid[i];
    v[i] = q * x * x + s * std::abs(x - a) + t * x + c;
  }
  return SampledFunction(grid, std::move(v), "rand");
}

}  // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid1D::linspace(0.0, 1.0, 1), BadGrid);
  Eigen::ArrayXd bad(3);
  bad << 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(Grid1D{bad}, BadGrid);
  Grid1D g = Grid1D::linspace(-1.0, 1.0, 21);
  CHECK(g.nearest(0.149) == 11);  // 0.1 is closer than 0.2
  CHECK(g.nearest(-5.0) == 0);
  CHECK(g.floor_index(0.05) == 10);
}

TEST_CASE("sampled function properness and interpolation") {
  Grid1D g = Grid1D::linspace(0.0, 1.0, 3);
  Eigen::ArrayXd all_inf = Eigen::ArrayXd::Constant(3, kInf);
  CHECK_THROWS_AS(SampledFunction(g, all_inf), ImproperFunction);
  Eigen::ArrayXd neg(3);
  neg << 0.0, -kInf, 1.0;
  CHECK_THROWS_AS(SampledFunction(g, neg), ImproperFunction);

  Eigen::ArrayXd v(3);
  v << 1.0, kInf, 3.0;
  SampledFunction f(g, v, "gap");
  CHECK(f.interp(0.0) == 1.0);
  CHECK(is_inf(f.interp(0.5)));    // node value wins at an exact node
  CHECK(is_inf(f.interp(0.25)));   // infinite endpoint poisons the cell
  CHECK(is_inf(f.interp(-0.1)));
  CHECK(is_inf(f.interp(0.75)));

  Eigen::ArrayXd w(3);
  w << 1.0, 2.0, 4.0;
  SampledFunction h(g, w, "pl");
  CHECK(h.interp(0.25) == doctest::Approx(1.5));
  CHECK(h.interp(0.75) == doctest::Approx(3.0));
}

TEST_CASE("legendre transform examples") {
  // Energy is self-conjugate up to grid quantization.
  Grid1D g = Grid1D::linspace(-2.0, 2.0, 801);
  SampledFunction f = SampledFunction::from_callable(
      g, [](double x) { return 0.5 * x * x; }, "energy");
  Grid1D dual = Grid1D::linspace(-2.0, 2.0, 801);
  SampledFunction conj = legendre_transform(f, dual);
  double h = g.step();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < dual.size(); ++i)
    worst =
        std::max(worst, std::abs(conj.value(i) - 0.5 * dual[i] * dual[i]));
  CHECK(worst <= 0.5 * h * h);

  // Point indicator: exactly linear.
  SampledFunction point = build_function("indicator_point 1", g);
  SampledFunction pconj = legendre_transform(point, dual);
  for (Eigen::Index i = 0; i < dual.size(); ++i)
    CHECK(pconj.value(i) == dual[i]);

  // |x| on [-5, 5] at s = 2 equals 5 (truncated-domain conjugate).
  Grid1D wide = Grid1D::linspace(-5.0, 5.0, 1001);
  SampledFunction absf = build_function("abs", wide);
  Grid1D dual2 = Grid1D::linspace(-2.5, 2.5, 501);
  SampledFunction aconj = legendre_transform(absf, dual2);
  CHECK(aconj.value(dual2.nearest(2.0)) == doctest::Approx(5.0));
}

TEST_CASE("lower convex envelope examples") {
  Grid1D g = Grid1D::linspace(-2.0, 2.0, 81);  // h = 0.05, nodes at +-1, 1.5
  SampledFunction f = SampledFunction::from_callable(
      g, [](double x) { return std::abs(x * x - 1.0); }, "|x^2-1|");
  SampledFunction env = lower_convex_envelope(f).second;
  CHECK(env.value(g.nearest(0.0)) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(env.value(g.nearest(1.5)) == doctest::Approx(1.25));
  for (Eigen::Index i = 0; i < g.size(); ++i)
    CHECK(env.value(i) <= f.value(i) + 1e-12);

  SampledFunction convex = SampledFunction::from_callable(
      g, [](double x) { return x * x; }, "x^2");
  SampledFunction cenv = lower_convex_envelope(convex).second;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    CHECK(cenv.value(i) == doctest::Approx(convex.value(i)).epsilon(1e-13));
}

TEST_CASE("infimal convolution examples") {
  Grid1D g = Grid1D::linspace(-2.0, 2.0, 401);
  SampledFunction shift = build_function("indicator_point 1", g);
  SampledFunction quad = SampledFunction::from_callable(
      g, [](double x) { return 0.5 * x * x; }, "q");
  Grid1D out = Grid1D::linspace(-1.0, 3.0, 401);
  SampledFunction shifted = inf_convolution(shift, quad, out);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    double x = out[i];
    CHECK(std::abs(shifted.value(i) - 0.5 * (x - 1.0) * (x - 1.0)) <=
          2.0 * out.step());
  }

  SampledFunction self = inf_convolution(quad, quad, g);
  double h = g.step();
  for (Eigen::Index i = 0; i < g.size(); ++i)
    CHECK(std::abs(self.value(i) - g[i] * g[i] / 4.0) <= h);

  // Unit law: the zero-point indicator leaves functions unchanged.
  SampledFunction unit = build_function("indicator_point 0", g);
  SampledFunction absf = build_function("abs", g);
  SampledFunction same = inf_convolution(unit, absf, g);
  for (Eigen::Index i = 0; i < g.size(); ++i)
    CHECK(same.value(i) == absf.value(i));
}

TEST_CASE("conjugate shortcut matches the direct path on convex data") {
  Grid1D g = Grid1D::linspace(-3.0, 3.0, 601);
  SampledFunction a = SampledFunction::from_callable(
      g, [](double x) { return x * x; }, "x^2");
  SampledFunction b = build_function("abs", g);
  SampledFunction direct = inf_convolution(a, b, g);
  SampledFunction fast = inf_convolution_via_conjugate(a, b, g);
  double h = g.step();
  double L = std::max(a.slope_bound(), b.slope_bound());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!is_finite(direct.value(i)) || !is_finite(fast.value(i))) continue;
    CHECK(std::abs(direct.value(i) - fast.value(i)) <= 5.0 * h * L);
  }
}

TEST_CASE("epi scaling") {
  Grid1D g = Grid1D::linspace(-2.0, 2.0, 401);
  SampledFunction quad = SampledFunction::from_callable(
      g, [](double x) { return 0.5 * x * x; }, "q");

  SampledFunction zero_scale = epi_scale(quad, 0.0, g);
  CHECK(zero_scale.value(g.nearest(0.0)) == 0.0);
  CHECK(zero_scale.finite_count() == 1);
  Grid1D off = Grid1D::linspace(1.0, 2.0, 11);
  CHECK_THROWS_AS(epi_scale(quad, 0.0, off), ZeroNotInGrid);

  // Piecewise-linear resampling of a quadratic: O(h^2) interpolation error.
  SampledFunction doubled = epi_scale(quad, 2.0, g);
  double h2 = g.step() * g.step();
  for (Eigen::Index i = 0; i < g.size(); ++i)
    CHECK(std::abs(doubled.value(i) - g[i] * g[i] / 4.0) <= h2);

  SampledFunction same = epi_scale(quad, 1.0, g);
  for (Eigen::Index i = 0; i < g.size(); ++i)
    CHECK(same.value(i) == quad.value(i));
}

TEST_CASE("property: conjugation reverses order") {
  std::mt19937_64 rng(7);
  Grid1D g = Grid1D::linspace(-3.0, 3.0, 301);
  for (int trial = 0; trial < 25; ++trial) {
    SampledFunction f = random_function(rng, g);
    // fg = f + random nonnegative bump, so f <= fg pointwise.
    Eigen::ArrayXd bumped(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      double bump = uniform(rng, 0.0, 2.0);
      bumped[i] = is_finite(f.value(i)) ? f.value(i) + bump : kInf;
    }
    SampledFunction fg(g, std::move(bumped), "f+bump");
    Grid1D dual = default_dual_grid(f);
    SampledFunction cf = legendre_transform(f, dual);
    SampledFunction cg = legendre_transform(fg, dual);
    for (Eigen::Index i = 0; i < dual.size(); ++i)
      CHECK(cg.value(i) <= cf.value(i) + 1e-12);
  }
}

TEST_CASE("property: transform output is convex data") {
  std::mt19937_64 rng(11);
  Grid1D g = Grid1D::linspace(-3.0, 3.0, 301);
  for (int trial = 0; trial < 25; ++trial) {
    SampledFunction f = random_function(rng, g);
    SampledFunction conj = legendre_transform(f, default_dual_grid(f));
    CHECK(conj.convexity_violation() <= 1e-10 * (1.0 + conj.slope_bound()));
  }
}

TEST_CASE("property: biconjugation reproduces the lower convex envelope") {
  std::mt19937_64 rng(13);
  Grid1D g = Grid1D::linspace(-3.0, 3.0, 301);
  for (int trial = 0; trial < 25; ++trial) {
    SampledFunction f = random_function(rng, g);
    SampledFunction env = lower_convex_envelope(f).second;
    // Every hull slope present as a dual node makes the round trip exact.
    Grid1D dual = slope_dual_grid(f);
    PLConvex chull = PLConvex::of(legendre_transform(f, dual));
    double scale = 1.0;
    for (Eigen::Index i = 0; i < g.size(); ++i)
      if (is_finite(env.value(i)))
        scale = std::max(scale, std::abs(env.value(i)));
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (!is_finite(env.value(i))) continue;
      CHECK(std::abs(chull.conjugate_at(g[i]) - env.value(i)) <=
            1e-10 * scale);
    }
  }
}

TEST_CASE("csv round trip with infinities") {
  Grid1D g = Grid1D::linspace(-1.0, 1.0, 5);
  Eigen::ArrayXd v(5);
  v << kInf, 0.25, -1.0, 0.125, kInf;
  SampledFunction f(g, v, "io");
  std::string csv = to_csv(f);
  CHECK(csv.rfind("x,value\n", 0) == 0);
  CHECK(csv.find("inf") != std::string::npos);
  std::istringstream in(csv);
  SampledFunction back = from_csv(in);
  REQUIRE(back.size() == f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    CHECK(back.x(i) == f.x(i));
    CHECK(back.value(i) == f.value(i));
  }
  std::string json = to_json(f);
  CHECK(json.find("\"inf\"") != std::string::npos);
}

TEST_CASE("catalog specifiers") {
  Grid1D g = Grid1D::linspace(-2.0, 2.0, 401);
  SampledFunction q = build_function("quad 1 0 0 shift 1 scale 2", g);
  CHECK(q.value(g.nearest(1.5)) == doctest::Approx(0.5));
  SampledFunction pts = build_function("indicator_finite -1 1", g);
  CHECK(pts.finite_count() == 2);
  CHECK_THROWS_AS(build_function("mystery", g), Error);
  CHECK_THROWS_AS(build_function("quad 1", g), Error);
}
