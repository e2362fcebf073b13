#include "bregman/oracle.hpp"

#include <algorithm>

#include "bregman/errors.hpp"

namespace bregman {
namespace oracle {

SampledFunction brute_conjugate(const SampledFunction& f,
                                const Grid1D& dual_grid) {
  Eigen::ArrayXd out(dual_grid.size());
  for (Eigen::Index j = 0; j < dual_grid.size(); ++j) {
    double s = dual_grid[j];
    double best = -kInf;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      if (!is_finite(f.value(i))) continue;
      best = std::max(best, s * f.x(i) - f.value(i));
    }
    if (!is_finite(best)) throw ImproperFunction("brute_conjugate: " + f.label());
    out[j] = best;
  }
  return SampledFunction(dual_grid, std::move(out),
                         "brute_conj(" + f.label() + ")");
}

SampledFunction brute_envelope(const SampledFunction& f,
                               const LegendreKernel& k, double lambda,
                               const Grid1D& base_points) {
  if (!(lambda > 0)) throw NonPositiveLambda("brute_envelope");
  bool common = false;
  for (Eigen::Index i = 0; i < f.size() && !common; ++i)
    common = is_finite(f.value(i)) && is_finite(k.phi(f.x(i)));
  if (!common) throw EmptyCommonDomain("brute_envelope: " + f.label());
  Eigen::ArrayXd out(base_points.size());
  for (Eigen::Index j = 0; j < base_points.size(); ++j) {
    double y = base_points[j];
    double best = kInf;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      double v = f.value(i) + bregman_distance(k, f.x(i), y) / lambda;
      if (v < best) best = v;
    }
    out[j] = best;
  }
  return SampledFunction(base_points, std::move(out),
                         "brute_env(" + f.label() + ")");
}

SampledFunction brute_infconv(const SampledFunction& f,
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
      Eigen::Index idx = out_grid.nearest(s);
      out[idx] = std::min(out[idx], f.value(i) + g.value(j));
    }
  }
  return SampledFunction(out_grid, std::move(out),
                         "brute_infconv(" + f.label() + "," + g.label() + ")");
}

}  // namespace oracle
}  // namespace bregman
