#include "bregman/sampled_function.hpp"

#include <cmath>

#include "bregman/errors.hpp"

namespace bregman {

SampledFunction::SampledFunction(Grid1D grid, Eigen::ArrayXd values,
                                 std::string label)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      label_(std::move(label)) {
  if (values_.size() != grid_.size())
    throw BadGrid("values and grid sizes differ");
  bool any_finite = false;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    double v = values_[i];
    if (std::isnan(v) || (std::isinf(v) && v < 0))
      throw ImproperFunction("values must be finite or +inf");
    any_finite = any_finite || std::isfinite(v);
  }
  if (!any_finite) throw ImproperFunction("no finite value: " + label_);
}

SampledFunction SampledFunction::from_callable(
    const Grid1D& grid, const std::function<double(double)>& f,
    std::string label) {
  Eigen::ArrayXd v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  return SampledFunction(grid, std::move(v), std::move(label));
}

double SampledFunction::interp(double x) const {
  if (x < grid_.lo() || x > grid_.hi()) return kInf;
  Eigen::Index i = grid_.floor_index(x);
  if (i < 0) return kInf;
  if (x == grid_[i]) return values_[i];
  if (i + 1 >= grid_.size()) return values_[i];
  double v0 = values_[i], v1 = values_[i + 1];
  if (!is_finite(v0) || !is_finite(v1)) return kInf;
  double t = (x - grid_[i]) / (grid_[i + 1] - grid_[i]);
  return v0 + t * (v1 - v0);
}

Eigen::Index SampledFunction::first_finite() const {
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (is_finite(values_[i])) return i;
  return -1;
}

Eigen::Index SampledFunction::last_finite() const {
  for (Eigen::Index i = values_.size() - 1; i >= 0; --i)
    if (is_finite(values_[i])) return i;
  return -1;
}

Eigen::Index SampledFunction::finite_count() const {
  Eigen::Index n = 0;
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (is_finite(values_[i])) ++n;
  return n;
}

double SampledFunction::slope_bound() const {
  double bound = 0.0;
  for (Eigen::Index i = 0; i + 1 < values_.size(); ++i) {
    if (!is_finite(values_[i]) || !is_finite(values_[i + 1])) continue;
    double s = std::abs((values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]));
    bound = std::max(bound, s);
  }
  return bound;
}

double SampledFunction::convexity_violation(double* witness_x) const {
  Eigen::Index lo = first_finite(), hi = last_finite();
  for (Eigen::Index i = lo; i <= hi; ++i)
    if (!is_finite(values_[i])) {
      if (witness_x) *witness_x = grid_[i];
      return kInf;  // hole in the domain
    }
  double worst = 0.0;
  double worst_x = grid_[lo];
  for (Eigen::Index i = lo + 1; i + 1 <= hi; ++i) {
    double sl = (values_[i] - values_[i - 1]) / (grid_[i] - grid_[i - 1]);
    double sr = (values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]);
    if (sl - sr > worst) {
      worst = sl - sr;
      worst_x = grid_[i];
    }
  }
  if (witness_x) *witness_x = worst_x;
  return worst;
}

SampledFunction add_pointwise(const SampledFunction& f,
                              const std::function<double(double)>& g,
                              double w, const std::string& label) {
  Eigen::ArrayXd v(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    double a = f.value(i), b = g(f.x(i));
    v[i] = (is_inf(a) || is_inf(b)) ? kInf : a + w * b;
  }
  return SampledFunction(f.grid(), std::move(v),
                         label.empty() ? f.label() : label);
}

}  // namespace bregman
