#include "bregman/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bregman/errors.hpp"

namespace bregman {

namespace {

std::string grid_tag(const Grid1D& g) {
  std::ostringstream os;
  os << "[" << g.lo() << "," << g.hi() << ";" << g.size() << "]";
  return os.str();
}

}  // namespace

SampledFunction legendre_transform(const SampledFunction& f,
                                   const Grid1D& dual_grid) {
  PLConvex hull = PLConvex::of(f);
  Eigen::ArrayXd vals = hull.conjugate_on(dual_grid.nodes());
  return SampledFunction(dual_grid, std::move(vals),
                         "conj(" + f.label() + ")@" + grid_tag(f.grid()));
}

std::pair<PLConvex, SampledFunction> lower_convex_envelope(
    const SampledFunction& f) {
  PLConvex hull = PLConvex::of(f);
  Eigen::ArrayXd vals(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) vals[i] = hull(f.x(i));
  SampledFunction env(f.grid(), std::move(vals), "conv(" + f.label() + ")");
  return {std::move(hull), std::move(env)};
}

SampledFunction inf_convolution(const SampledFunction& f,
                                const SampledFunction& g,
                                const Grid1D& out_grid) {
  Eigen::ArrayXd out = Eigen::ArrayXd::Constant(out_grid.size(), kInf);
  const double half_cell = 0.5 * out_grid.step();
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (!is_finite(f.value(i))) continue;
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      if (!is_finite(g.value(j))) continue;
      double s = f.x(i) + g.x(j);
      if (s < out_grid.lo() - half_cell || s > out_grid.hi() + half_cell)
        continue;
      Eigen::Index k = out_grid.nearest(s);
      out[k] = std::min(out[k], f.value(i) + g.value(j));
    }
  }
  return SampledFunction(out_grid, std::move(out),
                         "infconv(" + f.label() + "," + g.label() + ")");
}

SampledFunction inf_convolution_via_conjugate(const SampledFunction& f,
                                              const SampledFunction& g,
                                              const Grid1D& out_grid) {
  Grid1D dual = shared_dual_grid(f, g);
  SampledFunction fc = legendre_transform(f, dual);
  SampledFunction gc = legendre_transform(g, dual);
  Eigen::ArrayXd sum = fc.values() + gc.values();
  PLConvex hull =
      PLConvex::of(SampledFunction(dual, std::move(sum), "conj_sum"));
  Eigen::ArrayXd vals = hull.conjugate_on(out_grid.nodes());
  return SampledFunction(out_grid, std::move(vals),
                         "infconv*(" + f.label() + "," + g.label() + ")");
}

SampledFunction epi_scale(const SampledFunction& f, double t,
                          const Grid1D& out_grid) {
  if (t < 0) throw NonPositiveLambda("epi_scale needs t >= 0");
  Eigen::ArrayXd out(out_grid.size());
  if (t == 0.0) {
    if (out_grid.lo() > 0.0 || out_grid.hi() < 0.0)
      throw ZeroNotInGrid("epi_scale(., 0) needs 0 inside the grid range");
    out.setConstant(kInf);
    out[out_grid.nearest(0.0)] = 0.0;
  } else {
    for (Eigen::Index i = 0; i < out_grid.size(); ++i) {
      double v = f.interp(out_grid[i] / t);
      out[i] = is_finite(v) ? t * v : kInf;
    }
  }
  return SampledFunction(out_grid, std::move(out), "epi_scale(" + f.label() + ")");
}

namespace {

Grid1D dual_from_slope_range(double smin, double smax, Eigen::Index n) {
  double w = smax - smin;
  if (!(w > 1e-9 * (1.0 + std::abs(smin) + std::abs(smax)))) {
    double half = std::max(1.0, 0.1 * (1.0 + std::abs(smin)));
    return Grid1D::linspace(smin - half, smax + half, n);
  }
  return Grid1D::linspace(smin - 0.1 * w, smax + 0.1 * w, n);
}

void hull_slope_range(const SampledFunction& f, double& smin, double& smax) {
  PLConvex hull = PLConvex::of(f);
  if (hull.has_segments()) {
    smin = hull.slope_min();
    smax = hull.slope_max();
  } else {
    smin = smax = 0.0;  // point mass: any dual range works
  }
}

}  // namespace

Grid1D default_dual_grid(const SampledFunction& f) {
  double smin, smax;
  hull_slope_range(f, smin, smax);
  return dual_from_slope_range(smin, smax, f.grid().size());
}

Grid1D shared_dual_grid(const SampledFunction& f, const SampledFunction& g) {
  double a0, a1, b0, b1;
  hull_slope_range(f, a0, a1);
  hull_slope_range(g, b0, b1);
  return dual_from_slope_range(std::min(a0, b0), std::max(a1, b1),
                               std::max(f.grid().size(), g.grid().size()));
}

Grid1D slope_dual_grid(const SampledFunction& f) {
  PLConvex hull = PLConvex::of(f);
  std::vector<double> s;
  for (Eigen::Index i = 0; i + 1 < hull.size(); ++i)
    s.push_back((hull.vs()[i + 1] - hull.vs()[i]) /
                (hull.xs()[i + 1] - hull.xs()[i]));
  double pad = s.empty() ? 1.0 : std::max(1.0, 0.05 * (s.back() - s.front()));
  s.insert(s.begin(), (s.empty() ? 0.0 : s.front()) - pad);
  s.push_back(s.back() + pad);
  std::vector<double> nodes;
  for (double v : s)
    if (nodes.empty() || v > nodes.back() + 1e-14 * (1.0 + std::abs(v)))
      nodes.push_back(v);
  return Grid1D(Eigen::Map<Eigen::ArrayXd>(
      nodes.data(), static_cast<Eigen::Index>(nodes.size())));
}

}  // namespace bregman
