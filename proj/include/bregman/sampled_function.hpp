#pragma once

#include <functional>
#include <string>
#include <utility>

#include "bregman/extended.hpp"
#include "bregman/grid.hpp"

namespace bregman {

// Extended-real function sampled on a grid. Values are finite or +inf,
// never -inf or NaN, and at least one value is finite (proper).
class SampledFunction {
 public:
  SampledFunction(Grid1D grid, Eigen::ArrayXd values, std::string label = "");

  // Samples a pointwise formula on the grid.
  static SampledFunction from_callable(const Grid1D& grid,
                                       const std::function<double(double)>& f,
                                       std::string label = "");

  const Grid1D& grid() const { return grid_; }
  const Eigen::ArrayXd& values() const { return values_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  Eigen::Index size() const { return values_.size(); }
  double x(Eigen::Index i) const { return grid_[i]; }
  double value(Eigen::Index i) const { return values_[i]; }

  // Piecewise-linear evaluation between finite nodes; +inf propagates to
  // any interval with an infinite endpoint, and outside the grid range.
  double interp(double x) const;

  // Index range [first, last] of finite values; properness guarantees
  // at least one.
  Eigen::Index first_finite() const;
  Eigen::Index last_finite() const;
  Eigen::Index finite_count() const;

  // Largest |dv/dx| over adjacent finite pairs (0 when none).
  double slope_bound() const;

  // Largest convexity defect of the data: the worst decrease between
  // consecutive discrete slopes (0 for convex data, +inf when the finite
  // part is not contiguous). witness_x receives the offending node.
  double convexity_violation(double* witness_x = nullptr) const;

  // Values are convex as extended-real data: finite part contiguous with
  // nondecreasing slopes, up to `tol` slack on slope decreases.
  bool is_convex_data(double tol = 0.0, double* witness_x = nullptr) const {
    return convexity_violation(witness_x) <= tol;
  }

 private:
  Grid1D grid_;
  Eigen::ArrayXd values_;
  std::string label_;
};

// f + w*g evaluated nodewise on f's grid; g given pointwise.
SampledFunction add_pointwise(const SampledFunction& f,
                              const std::function<double(double)>& g,
                              double w, const std::string& label = "");

}  // namespace bregman
